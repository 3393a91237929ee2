#pragma once

// Test-local reference implementations, kept independent of the library's
// code paths: a Jacobi eigensolver, naive quadruple-sum losses, brute-force
// conductance, and fixture graphs with hand-checked numbers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "spt/generators.hpp"
#include "spt/graph.hpp"

namespace testing {

// Cyclic Jacobi sweeps on a symmetric matrix; eigenvalues ascending,
// eigenvector columns to match.
inline void jacobi_eigen(Eigen::MatrixXd a, Eigen::VectorXd& values,
                         Eigen::MatrixXd& vectors) {
  const int n = static_cast<int>(a.rows());
  vectors = Eigen::MatrixXd::Identity(n, n);
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-28) break;
    for (int p = 0; p + 1 < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double sign = theta >= 0.0 ? 1.0 : -1.0;
        const double t = sign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = a(p, i), aqi = a(q, i);
          a(p, i) = c * api - s * aqi;
          a(q, i) = s * api + c * aqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = vectors(i, p), viq = vectors(i, q);
          vectors(i, p) = c * vip - s * viq;
          vectors(i, q) = s * vip + c * viq;
        }
      }
    }
  }
  values.resize(n);
  for (int i = 0; i < n; ++i) values(i) = a(i, i);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int l, int r) { return values(l) < values(r); });
  Eigen::VectorXd sorted_values(n);
  Eigen::MatrixXd sorted_vectors(n, n);
  for (int i = 0; i < n; ++i) {
    sorted_values(i) = values(idx[i]);
    sorted_vectors.col(i) = vectors.col(idx[i]);
  }
  values = sorted_values;
  vectors = sorted_vectors;
}

// Connected random graph with positive mass on every vertex, total mass 1.
inline spt::PositivePairGraph make_random_graph(int n, std::uint64_t seed,
                                                double density = 0.5,
                                                bool self_loops = true) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<spt::WeightedEdge> edges;
  for (int x = 0; x + 1 < n; ++x) edges.push_back({x, x + 1, weight(rng)});
  for (int x = 0; x < n; ++x) {
    for (int y = x; y < n; ++y) {
      if (y == x + 1) continue;
      if (y == x && !self_loops) continue;
      if (coin(rng) < density) edges.push_back({x, y, weight(rng)});
    }
  }
  return spt::build_graph(n, edges, true);
}

// The running 4-vertex example: uniform marginals 0.25, total mass 1.
inline spt::PositivePairGraph make_g4() {
  return spt::build_graph(
      4, {{0, 1, 0.2}, {2, 3, 0.2}, {1, 2, 0.05}, {0, 0, 0.05}, {3, 3, 0.05}});
}

// Complete graph on 4 vertices, equal weights, no self-loops: Laplacian
// spectrum {0, 4/3, 4/3, 4/3}.
inline spt::PositivePairGraph make_complete4() {
  std::vector<spt::WeightedEdge> edges;
  for (int x = 0; x < 4; ++x)
    for (int y = x + 1; y < 4; ++y) edges.push_back({x, y, 1.0 / 12.0});
  return spt::build_graph(4, edges);
}

// Two disconnected class pairs: S_1 u T_1 and S_2 u T_2 share no edges.
inline spt::PositivePairGraph make_two_pair_graph(spt::DomainSpec& spec) {
  const std::vector<spt::WeightedEdge> edges = {
      {0, 1, 1.0}, {4, 5, 1.0}, {0, 4, 0.2}, {1, 5, 0.2},
      {2, 3, 1.0}, {6, 7, 1.0}, {2, 6, 0.2}, {3, 7, 0.2},
  };
  spec.clusters = {{0, 1}, {2, 3}, {4, 5}, {6, 7}};
  spec.r = 2;
  return spt::build_graph(8, edges, true);
}

// Downsized analogue of the default block-model instance; n = 40, all
// expansion quantities available in closed form.
inline spt::SbmParams small_reference_params() {
  spt::SbmParams params;
  params.r = 2;
  params.cluster_size = 10;
  params.p_intra = 1.0;
  params.q_same = 0.03;
  params.q_cross = 0.003;
  params.q_other = 0.0015;
  return params;
}

inline double naive_generalized_loss(const spt::PositivePairGraph& g,
                                     const Eigen::MatrixXd& F, double sigma) {
  const int n = g.n;
  const int k = static_cast<int>(F.cols());
  double pair_term = 0.0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      pair_term += g.weights(x, y) * (F.row(x) - F.row(y)).squaredNorm();
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(k, k);
  for (int x = 0; x < n; ++x)
    second += g.marginals(x) * F.row(x).transpose() * F.row(x);
  return pair_term + sigma * (second - Eigen::MatrixXd::Identity(k, k)).squaredNorm();
}

inline double naive_scl_loss(const spt::PositivePairGraph& g, const Eigen::MatrixXd& F) {
  const int n = g.n;
  double first = 0.0;
  double second = 0.0;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const double ip = F.row(x).dot(F.row(y));
      first += g.weights(x, y) * ip;
      second += g.marginals(x) * g.marginals(y) * ip * ip;
    }
  }
  return -2.0 * first + second;
}

// Minimum of cut(A, C \ A) / w(A) over subsets with w(A) <= w(C) / 2,
// enumerated directly; marginals are the global ones.
inline double brute_cluster_conductance(const spt::PositivePairGraph& g,
                                        const spt::VertexSet& cluster) {
  const int s = static_cast<int>(cluster.size());
  double cluster_mass = 0.0;
  for (int v : cluster) cluster_mass += g.marginals(v);
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask + 1 < (1u << s); ++mask) {
    double side_mass = 0.0;
    for (int b = 0; b < s; ++b)
      if (mask >> b & 1u) side_mass += g.marginals(cluster[b]);
    if (side_mass > cluster_mass / 2.0 + 1e-12 * cluster_mass) continue;
    double cut = 0.0;
    for (int b = 0; b < s; ++b) {
      if (!(mask >> b & 1u)) continue;
      for (int b2 = 0; b2 < s; ++b2)
        if (!(mask >> b2 & 1u)) cut += g.weights(cluster[b], cluster[b2]);
    }
    best = std::min(best, cut / side_mass);
  }
  return best;
}

inline Eigen::MatrixXd random_orthogonal(int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < k; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

inline Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed,
                                     double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

inline Eigen::VectorXd naive_matrix_power_vec(const Eigen::MatrixXd& m,
                                              const Eigen::VectorXd& v, int t) {
  Eigen::VectorXd out = v;
  for (int step = 0; step < t; ++step) out = m * out;
  return out;
}

}  // namespace testing
