#include "spt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace spt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_expansion_args(const PositivePairGraph& g, const VertexSet& a,
                          const VertexSet& b) {
  if (a.empty()) throw EmptySet("expansion from an empty set");
  check_vertex_set(g.n, a);
  check_vertex_set(g.n, b);
  if (!sets_disjoint(a, b)) throw OverlappingSets("expansion sets overlap");
}

double vertex_mass_to(const PositivePairGraph& g, int x, const VertexSet& b) {
  double s = 0.0;
  for (int y : b) s += g.weights(x, y);
  return s;
}

// Minimum conductance over nonempty proper subsets with at most half the
// cluster mass, by exhaustive enumeration in Gray-code order. The cut and
// set masses are updated incrementally per flipped vertex.
double enumerate_conductance(const PositivePairGraph& g, const VertexSet& cluster) {
  const int s = static_cast<int>(cluster.size());
  if (s < 2) return kInf;  // no nonempty proper subset to cut

  Eigen::MatrixXd w(s, s);
  Eigen::VectorXd row_in_cluster(s), mass(s);
  for (int i = 0; i < s; ++i) {
    mass(i) = g.marginals(cluster[i]);
    for (int j = 0; j < s; ++j) w(i, j) = g.weights(cluster[i], cluster[j]);
  }
  for (int i = 0; i < s; ++i) row_in_cluster(i) = w.row(i).sum();

  const double half = mass.sum() / 2.0;
  const double half_tol = 1e-12 * mass.sum();

  std::vector<bool> in_set(s, false);
  Eigen::VectorXd to_set = Eigen::VectorXd::Zero(s);  // weight from each vertex into A
  double cut = 0.0, set_mass = 0.0;
  int count = 0;
  double best = kInf;

  const std::uint64_t total = 1ull << s;
  for (std::uint64_t it = 1; it < total; ++it) {
    const int y = __builtin_ctzll(it);  // Gray-code flip position
    if (!in_set[y]) {
      cut += row_in_cluster(y) - w(y, y) - 2.0 * to_set(y);
      set_mass += mass(y);
      ++count;
      in_set[y] = true;
      to_set += w.col(y);
    } else {
      cut += 2.0 * to_set(y) - row_in_cluster(y) - w(y, y);
      set_mass -= mass(y);
      --count;
      in_set[y] = false;
      to_set -= w.col(y);
    }
    if (count > 0 && count < s && set_mass <= half + half_tol)
      best = std::min(best, std::max(cut, 0.0) / set_mass);
  }
  return best;
}

}  // namespace

double expansion(const PositivePairGraph& g, const VertexSet& a, const VertexSet& b) {
  check_expansion_args(g, a, b);
  if (b.empty()) return 0.0;
  return cut_weight(g, a, b) / set_weight(g, a);
}

double max_expansion(const PositivePairGraph& g, const VertexSet& a, const VertexSet& b) {
  check_expansion_args(g, a, b);
  if (b.empty()) return 0.0;
  double best = 0.0;
  for (int x : a) best = std::max(best, vertex_mass_to(g, x, b) / g.marginals(x));
  return best;
}

double min_expansion(const PositivePairGraph& g, const VertexSet& a, const VertexSet& b) {
  check_expansion_args(g, a, b);
  if (b.empty()) return 0.0;
  double best = kInf;
  for (int x : a) best = std::min(best, vertex_mass_to(g, x, b) / g.marginals(x));
  return best;
}

double compute_alpha(const PositivePairGraph& g, const std::vector<VertexSet>& clusters) {
  validate_partition(g.n, clusters);
  double alpha = 0.0;
  for (const auto& c : clusters) {
    VertexSet rest = complement(g.n, c);
    if (rest.empty()) continue;
    alpha = std::max(alpha, max_expansion(g, c, rest));
  }
  return alpha;
}

RhoResult compute_rho(const PositivePairGraph& g, const DomainSpec& spec, double c) {
  validate_domain_spec(g, spec);
  RhoResult out;
  out.rho = kInf;
  for (int i = 0; i < spec.r; ++i) {
    out.rho = std::min(out.rho, min_expansion(g, spec.target_class(i), spec.source_class(i)));
    for (int j = 0; j < spec.r; ++j)
      if (j != i)
        out.beta_max =
            std::max(out.beta_max, max_expansion(g, spec.target_class(i), spec.source_class(j)));
  }
  const double alpha = compute_alpha(g, spec.clusters);
  out.assumption3.margin = std::min(out.rho - c * alpha * alpha, out.rho - c * out.beta_max);
  out.assumption3.holds = out.assumption3.margin >= 0.0;
  return out;
}

std::vector<std::vector<double>> tau_candidates(const PositivePairGraph& g,
                                                const DomainSpec& spec) {
  validate_domain_spec(g, spec);
  const double alpha = compute_alpha(g, spec.clusters);
  std::vector<std::vector<double>> cand(spec.r, std::vector<double>(spec.r, kInf));
  for (int i = 0; i < spec.r; ++i) {
    const double same = expansion(g, spec.target_class(i), spec.source_class(i));
    for (int j = 0; j < spec.r; ++j) {
      const double denom = (j == i) ? alpha * alpha
                                    : expansion(g, spec.target_class(i), spec.source_class(j));
      if (same == 0.0)
        cand[i][j] = 0.0;
      else
        cand[i][j] = (denom == 0.0) ? kInf : same / denom;
    }
  }
  return cand;
}

double compute_tau(const PositivePairGraph& g, const DomainSpec& spec) {
  double tau = kInf;
  for (const auto& row : tau_candidates(g, spec))
    for (double v : row) tau = std::min(tau, v);
  return tau;
}

double restricted_gap(const PositivePairGraph& g, const VertexSet& cluster) {
  if (cluster.size() < 2)
    throw InvalidPartition("restricted gap needs a cluster of at least 2 vertices");
  RestrictedGraph r = restrict_graph(g, cluster);
  const int s = static_cast<int>(cluster.size());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(s, s) - normalized_adjacency(r);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success)
    throw EigensolverFailure("restricted Laplacian eigendecomposition did not converge");
  return solver.eigenvalues()(1);
}

GammaResult conductance_gamma(const PositivePairGraph& g,
                              const std::vector<VertexSet>& clusters, int exact_cap) {
  validate_partition(g.n, clusters);
  GammaResult out;
  out.lower = kInf;
  out.upper = kInf;
  out.exact = true;
  for (const auto& cluster : clusters) {
    ClusterConductance cc;
    if (static_cast<int>(cluster.size()) <= exact_cap) {
      cc.exact = true;
      cc.lower = cc.upper = enumerate_conductance(g, cluster);
    } else {
      cc.exact = false;
      double lam;
      try {
        lam = restricted_gap(g, cluster);
      } catch (const DisconnectedVertexInRestriction&) {
        lam = 0.0;  // an internally isolated vertex forces zero conductance
      }
      lam = std::max(lam, 0.0);
      cc.lower = lam / 2.0;
      cc.upper = std::sqrt(2.0 * lam);
    }
    out.exact = out.exact && cc.exact;
    out.lower = std::min(out.lower, cc.lower);
    out.upper = std::min(out.upper, cc.upper);
    out.per_cluster.push_back(cc);
  }
  return out;
}

GraphStats assumption_report(const PositivePairGraph& g, const DomainSpec& spec,
                             int k, double c, int exact_gamma_cap) {
  validate_domain_spec(g, spec);
  if (k < 1 || k >= g.n)
    throw DegenerateParams("assumption report needs 1 <= k < n, got k = " +
                           std::to_string(k));

  GraphStats s;
  s.k = k;
  s.c = c;
  s.alpha = compute_alpha(g, spec.clusters);

  RhoResult rho = compute_rho(g, spec, c);
  s.rho = rho.rho;
  s.beta_max = rho.beta_max;
  s.a3 = rho.assumption3;

  s.tau_candidates = tau_candidates(g, spec);
  s.tau = kInf;
  for (const auto& row : s.tau_candidates)
    for (double v : row) s.tau = std::min(s.tau, v);

  s.gamma = conductance_gamma(g, spec.clusters, exact_gamma_cap);

  for (int i = 0; i < spec.r; ++i) {
    double gap = 0.0;
    try {
      gap = restricted_gap(g, spec.target_class(i));
    } catch (const DisconnectedVertexInRestriction&) {
      gap = 0.0;
    } catch (const InvalidPartition&) {
      gap = 0.0;  // single-vertex class
    }
    s.restricted_gaps.push_back(gap);
  }

  s.lambda_spectrum = decompose(g).laplacian_eigenvalues;
  s.lambda_k1 = s.lambda_spectrum(k);
  s.source_target_mass_ratio =
      set_weight(g, spec.source_union()) / set_weight(g, spec.target_union());

  s.a1 = {s.alpha < 1.0, 1.0 - s.alpha};
  s.a2 = {s.gamma.lower > 0.0, s.gamma.lower};
  s.a4 = {s.tau >= c, s.tau - c};
  return s;
}

}  // namespace spt
