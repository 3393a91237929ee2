#pragma once

#include <limits>
#include <vector>

#include "spt/graph.hpp"
#include "spt/metrics.hpp"
#include "spt/spectral.hpp"

namespace spt {

// Preconditioned feature averaging. sigma_matrix is the feature covariance
// E_{x ~ P_X} f(x) f(x)^T; column i of class_means is
// b_i = E_{x ~ P_S} 1{x in S_i} f(x). The power t is supplied at predict
// time: g_t(x) = argmax_i <f(x), Sigma^{t-1} b_i>.
struct PfaClassifier {
  Eigen::MatrixXd sigma_matrix;  // k x k
  Eigen::MatrixXd class_means;   // k x r
};

struct ErrorReport {
  int t = 1;
  double target_error = 0.0;
  std::vector<double> per_class_errors;
  // Filled by the harness when the theorem hypothesis applies.
  double bound_value = std::numeric_limits<double>::quiet_NaN();
  int bound_satisfied = -1;  // -1 absent, 0 violated, 1 satisfied
};

struct ProbeResult {
  double error = 0.0;
  bool rank_deficient = false;  // span of F_tilde smaller than k
  bool k_below_m = false;       // fewer feature dimensions than clusters
};

PfaClassifier fit_pfa(const Representation& rep, const PositivePairGraph& g,
                      const DomainSpec& spec);

// Class index in [0, r); ties broken toward the smallest index.
int predict(const PfaClassifier& cls, const Representation& rep, int x, int t);
std::vector<int> predict_all(const PfaClassifier& cls, const Representation& rep, int t);

// Exact population error over the target-restricted distribution, with the
// per-class breakdown (class i weighted by w(T_i) / w(T)).
ErrorReport target_error(const PfaClassifier& cls, const Representation& rep,
                         const PositivePairGraph& g, const DomainSpec& spec, int t);

// Error of the constructive linear probe: column i of B solves
// F_tilde B_i ~ indicator of cluster i (orthogonal projection onto the span
// of F_tilde), prediction is argmax of B^T f(x). Ties go to the cluster of
// larger mass, then the smaller index. Upper-bounds the best linear probe.
ProbeResult linear_probe_error(const Representation& rep, const PositivePairGraph& g,
                               const std::vector<VertexSet>& clusters);

// Error bound of the power-t head under the expansion assumptions:
// 128 (1 - lambda_{k+1}/2)^{2t} r alpha^2 / (rho^2 lambda_{k+1}^2) * w(S)/w(T),
// valid for 1 <= t <= rho / (8 alpha^2).
double pfa_error_bound(const GraphStats& stats, int r, int t);
int pfa_bound_t_max(const GraphStats& stats);

// Structural bound r log^2(1/alpha) / (tau gamma^8), reported with constant 1
// at t near ceil(log(1/alpha) / gamma^2). Uses exact gamma when available,
// else its lower bracket end.
double structural_error_bound(const GraphStats& stats, int r);
int structural_bound_t(const GraphStats& stats);

}  // namespace spt
