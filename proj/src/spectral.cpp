#include "spt/spectral.hpp"

#include <cmath>
#include <string>

namespace spt {

namespace {

constexpr double kDegenerateTol = 1e-8;

// Largest-magnitude entry of each column made positive; ties broken by the
// lowest row index so the output is deterministic.
void fix_eigenvector_signs(Eigen::MatrixXd& v) {
  for (int c = 0; c < v.cols(); ++c) {
    int best = 0;
    double mx = std::abs(v(0, c));
    for (int r = 1; r < v.rows(); ++r) {
      double a = std::abs(v(r, c));
      if (a > mx) {
        mx = a;
        best = r;
      }
    }
    if (v(best, c) < 0.0) v.col(c) = -v.col(c);
  }
}

Eigen::MatrixXd normalized_adjacency_impl(const Eigen::MatrixXd& w,
                                          const Eigen::VectorXd& marginals) {
  Eigen::VectorXd inv_sqrt = marginals.array().sqrt().inverse();
  return inv_sqrt.asDiagonal() * w * inv_sqrt.asDiagonal();
}

}  // namespace

Eigen::MatrixXd normalized_adjacency(const PositivePairGraph& g) {
  return normalized_adjacency_impl(g.weights, g.marginals);
}

Eigen::MatrixXd normalized_adjacency(const RestrictedGraph& g) {
  return normalized_adjacency_impl(g.weights, g.marginals);
}

Eigen::MatrixXd laplacian(const PositivePairGraph& g) {
  return Eigen::MatrixXd::Identity(g.n, g.n) - normalized_adjacency(g);
}

SpectralDecomposition decompose(const PositivePairGraph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(g));
  if (solver.info() != Eigen::Success)
    throw EigensolverFailure("eigendecomposition of the Laplacian did not converge");

  SpectralDecomposition d;
  d.laplacian_eigenvalues = solver.eigenvalues();
  d.eigenvectors = solver.eigenvectors();
  fix_eigenvector_signs(d.eigenvectors);
  return d;
}

Representation minimize_loss(const PositivePairGraph& g, int k, double sigma) {
  if (k < 1 || k > g.n)
    throw DimensionMismatch("k = " + std::to_string(k) + " outside [1, " +
                            std::to_string(g.n) + "]");
  if (sigma <= 0.0) throw DegenerateParams("sigma must be positive");

  const int n = g.n;
  Eigen::MatrixXd m = normalized_adjacency(g) / sigma;
  m.diagonal().array() += 1.0 - 1.0 / sigma;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw EigensolverFailure("eigendecomposition did not converge");

  // Top k eigenpairs, reordered to decreasing eigenvalue.
  Eigen::MatrixXd vk(n, k);
  Eigen::VectorXd sk(k);
  for (int i = 0; i < k; ++i) {
    vk.col(i) = solver.eigenvectors().col(n - 1 - i);
    sk(i) = std::max(solver.eigenvalues()(n - 1 - i), 0.0);
  }
  fix_eigenvector_signs(vk);

  Representation rep;
  rep.k = k;
  rep.sigma = sigma;
  rep.degenerate_cut =
      k < n && sigma * (solver.eigenvalues()(n - k) - solver.eigenvalues()(n - k - 1)) <=
                   kDegenerateTol;
  rep.F_tilde = vk * sk.array().sqrt().matrix().asDiagonal();
  rep.F = g.marginals.array().sqrt().inverse().matrix().asDiagonal() * rep.F_tilde;
  return rep;
}

double generalized_loss(const PositivePairGraph& g, const Eigen::MatrixXd& F,
                        double sigma) {
  if (F.rows() != g.n)
    throw DimensionMismatch("representation has " + std::to_string(F.rows()) +
                            " rows, graph has " + std::to_string(g.n) + " vertices");
  const int k = static_cast<int>(F.cols());
  Eigen::MatrixXd df = g.marginals.asDiagonal() * F;
  Eigen::MatrixXd second_moment = F.transpose() * df;
  double pair_term = 2.0 * (F.transpose() * df - F.transpose() * g.weights * F).trace();
  double reg = (second_moment - Eigen::MatrixXd::Identity(k, k)).squaredNorm();
  return pair_term + sigma * reg;
}

double spectral_contrastive_loss(const PositivePairGraph& g, const Eigen::MatrixXd& F) {
  if (F.rows() != g.n)
    throw DimensionMismatch("representation has " + std::to_string(F.rows()) +
                            " rows, graph has " + std::to_string(g.n) + " vertices");
  Eigen::MatrixXd second_moment = F.transpose() * (g.marginals.asDiagonal() * F);
  double attract = (F.transpose() * g.weights * F).trace();
  return -2.0 * attract + second_moment.squaredNorm();
}

}  // namespace spt
