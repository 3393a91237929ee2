#include "spt/pfa.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "spt/errors.hpp"

namespace spt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sigma^p with eigenvalues clamped at zero; Sigma is PSD up to roundoff and
// p >= 0, so the clamp only removes noise-sized negatives.
Eigen::MatrixXd psd_power(const Eigen::MatrixXd& sigma, int p) {
  const int k = static_cast<int>(sigma.rows());
  if (p == 0) return Eigen::MatrixXd::Identity(k, k);
  if (p == 1) return sigma;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  if (es.info() != Eigen::Success) throw EigensolverFailure("psd_power: eigensolver failed");
  Eigen::VectorXd powered = es.eigenvalues();
  for (int i = 0; i < k; ++i) {
    powered(i) = std::pow(std::max(powered(i), 0.0), p);
  }
  return es.eigenvectors() * powered.asDiagonal() * es.eigenvectors().transpose();
}

// Scores of every vertex against every class: row x holds
// <f(x), Sigma^{t-1} b_i> for i in [0, r).
Eigen::MatrixXd score_matrix(const PfaClassifier& cls, const Representation& rep, int t) {
  if (t < 1) throw DegenerateParams("predict: t must be >= 1");
  const Eigen::MatrixXd precond = psd_power(cls.sigma_matrix, t - 1);
  return rep.F * (precond * cls.class_means);
}

int argmax_smallest_index(const Eigen::RowVectorXd& row) {
  int best = 0;
  for (int i = 1; i < row.size(); ++i) {
    if (row(i) > row(best)) best = i;
  }
  return best;
}

}  // namespace

PfaClassifier fit_pfa(const Representation& rep, const PositivePairGraph& g,
                      const DomainSpec& spec) {
  const int n = g.n;
  if (rep.F.rows() != n) throw DimensionMismatch("fit_pfa: representation size mismatch");
  validate_domain_spec(g, spec);

  PfaClassifier cls;
  cls.sigma_matrix = rep.F_tilde.transpose() * rep.F_tilde;

  const int k = rep.k;
  const int r = spec.r;
  cls.class_means = Eigen::MatrixXd::Zero(k, r);
  for (int i = 0; i < r; ++i) {
    const VertexSet& cluster = spec.source_class(i);
    double mass = 0.0;
    for (int x : cluster) {
      cls.class_means.col(i) += g.marginals(x) * rep.F.row(x).transpose();
      mass += g.marginals(x);
    }
    if (mass <= 0.0) throw EmptySourceClass("fit_pfa: source class has zero mass");
  }
  double source_mass = 0.0;
  for (int i = 0; i < r; ++i) {
    for (int x : spec.source_class(i)) source_mass += g.marginals(x);
  }
  cls.class_means /= source_mass;
  return cls;
}

int predict(const PfaClassifier& cls, const Representation& rep, int x, int t) {
  if (x < 0 || x >= rep.F.rows()) throw DimensionMismatch("predict: vertex out of range");
  const Eigen::MatrixXd scores = score_matrix(cls, rep, t);
  return argmax_smallest_index(scores.row(x));
}

std::vector<int> predict_all(const PfaClassifier& cls, const Representation& rep, int t) {
  const Eigen::MatrixXd scores = score_matrix(cls, rep, t);
  std::vector<int> labels(scores.rows());
  for (int x = 0; x < scores.rows(); ++x) {
    labels[x] = argmax_smallest_index(scores.row(x));
  }
  return labels;
}

ErrorReport target_error(const PfaClassifier& cls, const Representation& rep,
                         const PositivePairGraph& g, const DomainSpec& spec, int t) {
  validate_domain_spec(g, spec);
  const std::vector<int> labels = predict_all(cls, rep, t);

  ErrorReport report;
  report.t = t;
  report.per_class_errors.assign(spec.r, 0.0);

  double target_mass = 0.0;
  double wrong_mass = 0.0;
  for (int i = 0; i < spec.r; ++i) {
    const VertexSet& cluster = spec.target_class(i);
    double class_mass = 0.0;
    double class_wrong = 0.0;
    for (int x : cluster) {
      class_mass += g.marginals(x);
      if (labels[x] != i) class_wrong += g.marginals(x);
    }
    report.per_class_errors[i] = class_mass > 0.0 ? class_wrong / class_mass : 0.0;
    target_mass += class_mass;
    wrong_mass += class_wrong;
  }
  report.target_error = target_mass > 0.0 ? wrong_mass / target_mass : 0.0;
  return report;
}

ProbeResult linear_probe_error(const Representation& rep, const PositivePairGraph& g,
                               const std::vector<VertexSet>& clusters) {
  const int n = g.n;
  if (rep.F_tilde.rows() != n) throw DimensionMismatch("linear_probe_error: size mismatch");
  const int m = static_cast<int>(clusters.size());
  if (m < 1) throw InvalidPartition("linear_probe_error: no clusters");
  validate_partition(n, clusters);

  Eigen::MatrixXd indicators = Eigen::MatrixXd::Zero(n, m);
  Eigen::VectorXd cluster_mass = Eigen::VectorXd::Zero(m);
  std::vector<int> owner(n, -1);
  for (int i = 0; i < m; ++i) {
    for (int x : clusters[i]) {
      indicators(x, i) = std::sqrt(g.marginals(x));
      owner[x] = i;
      cluster_mass(i) += g.marginals(x);
    }
  }

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(rep.F_tilde);
  const Eigen::MatrixXd probe = cod.solve(indicators);

  ProbeResult result;
  result.rank_deficient = cod.rank() < rep.k;
  result.k_below_m = rep.k < m;

  const Eigen::MatrixXd scores = rep.F_tilde * probe;
  double wrong = 0.0;
  for (int x = 0; x < n; ++x) {
    int best = 0;
    for (int i = 1; i < m; ++i) {
      const double diff = scores(x, i) - scores(x, best);
      if (diff > 0.0) {
        best = i;
      } else if (diff == 0.0 && cluster_mass(i) > cluster_mass(best)) {
        best = i;
      }
    }
    if (best != owner[x]) wrong += g.marginals(x);
  }
  result.error = wrong;
  return result;
}

double pfa_error_bound(const GraphStats& stats, int r, int t) {
  if (t < 1) throw DegenerateParams("pfa_error_bound: t must be >= 1");
  const double lam = stats.lambda_k1;
  if (stats.rho <= 0.0 || lam <= 0.0) return kInf;
  const double decay = std::pow((1.0 - lam / 2.0) * (1.0 - lam / 2.0), t);
  return 128.0 * decay * static_cast<double>(r) * stats.alpha * stats.alpha /
         (stats.rho * stats.rho * lam * lam) * stats.source_target_mass_ratio;
}

int pfa_bound_t_max(const GraphStats& stats) {
  if (stats.alpha <= 0.0 || stats.rho <= 0.0) return 0;
  const double limit = stats.rho / (8.0 * stats.alpha * stats.alpha);
  if (limit < 1.0) return 0;
  return static_cast<int>(std::floor(limit + 1e-12));
}

double structural_error_bound(const GraphStats& stats, int r) {
  // When gamma is exact the bracket collapses, so the lower end is the value.
  const double gamma = stats.gamma.lower;
  if (stats.alpha <= 0.0 || stats.alpha >= 1.0) return kInf;
  if (stats.tau <= 0.0 || gamma <= 0.0) return kInf;
  const double log_term = std::log(1.0 / stats.alpha);
  return static_cast<double>(r) * log_term * log_term /
         (stats.tau * std::pow(gamma, 8.0));
}

int structural_bound_t(const GraphStats& stats) {
  const double gamma = stats.gamma.lower;
  if (stats.alpha <= 0.0 || stats.alpha >= 1.0 || gamma <= 0.0) return 0;
  return static_cast<int>(std::ceil(std::log(1.0 / stats.alpha) / (gamma * gamma)));
}

}  // namespace spt
