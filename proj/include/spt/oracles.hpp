#pragma once

#include <string>
#include <vector>

#include "spt/graph.hpp"
#include "spt/metrics.hpp"
#include "spt/spectral.hpp"

namespace spt {

enum class LemmaId {
  laplacian_square,
  induction_in,
  induction_out,
  induction_target,
  power_t_error,
  restricted_cheeger,
  multistep_rho,
  multistep_beta,
};

inline constexpr LemmaId kAllLemmas[] = {
    LemmaId::laplacian_square, LemmaId::induction_in,
    LemmaId::induction_out,    LemmaId::induction_target,
    LemmaId::power_t_error,    LemmaId::restricted_cheeger,
    LemmaId::multistep_rho,    LemmaId::multistep_beta,
};

enum class LemmaStatus { holds, violated, not_applicable };

const char* lemma_name(LemmaId id);
bool lemma_from_name(const std::string& name, LemmaId& out);

// Indices of one offending quantified instance; -1 where the lemma does not
// quantify over that slot.
struct LemmaWitness {
  int i = -1;
  int j = -1;
  int x = -1;
  int t = -1;
  double margin = 0.0;
};

// Result of exhaustively checking one inequality over its quantifier set.
// worst_margin is the minimum slack; the check holds iff it stays above
// -1e-10 (exact-zero margins are legitimate, e.g. at t = 0).
struct LemmaReport {
  LemmaId id = LemmaId::laplacian_square;
  LemmaStatus status = LemmaStatus::holds;
  double worst_margin = 0.0;  // NaN when not applicable
  std::vector<LemmaWitness> witnesses;
  std::string note;
};

inline constexpr double kLemmaTol = 1e-10;
inline constexpr int kMaxWitnesses = 10;

// Entries sqrt(w(x)) on A, zero elsewhere.
Eigen::VectorXd indicator_vector(const PositivePairGraph& g, const VertexSet& a);

// ((I + Abar) / 2)^t v by repeated mat-vec.
Eigen::VectorXd smoothed_power(const PositivePairGraph& g, const Eigen::VectorXd& v, int t);
Eigen::VectorXd smoothed_power(const Eigen::MatrixXd& abar, const Eigen::VectorXd& v, int t);

// (F_tilde F_tilde^T)^t v, computed in the k-dimensional coordinates.
Eigen::VectorXd low_rank_power(const Representation& rep, const Eigen::VectorXd& v, int t);

// Probability that a t-step random walk with kernel Pr[x -> y] = w(x,y)/w(x)
// started at x lands in A.
double random_walk_probability(const PositivePairGraph& g, int x, const VertexSet& a, int t);

// Exhaustive check of one inequality. stats must come from assumption_report
// on the same graph and domain, and rep from minimize_loss with the same k.
// t_max <= 0 picks the per-check default: the hypothesis range
// [0, min(floor(1/alpha), 50)] for the induction and beta checks,
// [1, floor(rho / (8 alpha^2))] for the target separation, and [1, 20] for
// the power-approximation and rho lower-bound checks. A positive t_max
// shrinks or (where the inequality holds for all t) extends the range.
LemmaReport check_lemma(const PositivePairGraph& g, const DomainSpec& spec,
                        const Representation& rep, const GraphStats& stats,
                        LemmaId id, int t_max = 0);

std::vector<LemmaReport> run_all_lemmas(const PositivePairGraph& g, const DomainSpec& spec,
                                        const Representation& rep, const GraphStats& stats,
                                        int t_max = 0);

}  // namespace spt
