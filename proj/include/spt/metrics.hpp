#pragma once

#include <vector>

#include "spt/graph.hpp"
#include "spt/spectral.hpp"

namespace spt {

struct Verdict {
  bool holds = false;
  double margin = 0.0;  // slack of the defining inequality
};

// Conductance of one cluster: exact value when the cluster was enumerated
// (lower == upper), otherwise the Cheeger bracket
// [lambda_restricted / 2, sqrt(2 lambda_restricted)].
struct ClusterConductance {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
};

struct GammaResult {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;  // true iff every cluster was enumerated exactly
  std::vector<ClusterConductance> per_cluster;
};

// Everything the assumptions and theorem bounds reference.
// Verdicts: a1 holds iff alpha < 1; a2 iff gamma lower bound > 0;
// a3 iff rho >= c alpha^2 and rho >= c beta_max; a4 iff tau >= c.
struct GraphStats {
  double alpha = 0.0;
  double rho = 0.0;
  double beta_max = 0.0;
  double tau = 0.0;
  std::vector<std::vector<double>> tau_candidates;  // r x r, diagonal vs alpha^2
  GammaResult gamma;
  std::vector<double> restricted_gaps;  // per target class, 0 if restriction invalid
  Eigen::VectorXd lambda_spectrum;
  double lambda_k1 = 0.0;
  double source_target_mass_ratio = 0.0;
  int k = 0;
  double c = 8.0;
  Verdict a1, a2, a3, a4;
};

struct RhoResult {
  double rho = 0.0;
  double beta_max = 0.0;
  Verdict assumption3;
};

// phi(A, B) = w(A, B) / w(A); the max/min variants take the worst/best
// per-vertex ratio w(x, B) / w(x) over x in A. A and B must be disjoint and
// A nonempty; an empty B gives 0 for all three.
double expansion(const PositivePairGraph& g, const VertexSet& a, const VertexSet& b);
double max_expansion(const PositivePairGraph& g, const VertexSet& a, const VertexSet& b);
double min_expansion(const PositivePairGraph& g, const VertexSet& a, const VertexSet& b);

// Largest max-expansion from any cluster to its complement.
double compute_alpha(const PositivePairGraph& g, const std::vector<VertexSet>& clusters);

// rho = min_i min-expansion(T_i, S_i), beta_max = max_{i != j}
// max-expansion(T_i, S_j). The verdict requires rho >= c alpha^2 and
// rho >= c beta_max.
RhoResult compute_rho(const PositivePairGraph& g, const DomainSpec& spec, double c = 8.0);

// tau = min_i min( phi(T_i,S_i)/alpha^2, min_{j != i} phi(T_i,S_i)/phi(T_i,S_j) ),
// with division by zero mapped to +infinity (and phi(T_i,S_i) = 0 giving 0).
double compute_tau(const PositivePairGraph& g, const DomainSpec& spec);
std::vector<std::vector<double>> tau_candidates(const PositivePairGraph& g,
                                                const DomainSpec& spec);

// Minimum conductance over subsets A of each cluster with w(A) <= w(C)/2,
// enumerated exactly for clusters up to exact_cap vertices and bracketed by
// Cheeger's inequality above that. The overall result is the minimum (resp.
// bracket of minima) over clusters.
GammaResult conductance_gamma(const PositivePairGraph& g,
                              const std::vector<VertexSet>& clusters,
                              int exact_cap = 22);

// Second-smallest eigenvalue of the restricted graph's Laplacian (restricted
// marginals).
double restricted_gap(const PositivePairGraph& g, const VertexSet& cluster);

// Aggregates all of the above plus the Laplacian spectrum, lambda_{k+1} and
// the source/target mass ratio. Requires 1 <= k < n.
GraphStats assumption_report(const PositivePairGraph& g, const DomainSpec& spec,
                             int k, double c = 8.0, int exact_gamma_cap = 22);

}  // namespace spt
