#include "spt/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spt/errors.hpp"

namespace spt {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Accumulates the minimum slack and the first few offending instances.
struct MarginTracker {
  double worst = std::numeric_limits<double>::infinity();
  std::vector<LemmaWitness> witnesses;
  bool any = false;

  void add(double margin, int i, int j, int x, int t) {
    any = true;
    if (margin < worst) worst = margin;
    if (margin < -kLemmaTol && witnesses.size() < kMaxWitnesses) {
      witnesses.push_back({i, j, x, t, margin});
    }
  }

  LemmaReport finish(LemmaId id, std::string note) const {
    LemmaReport report;
    report.id = id;
    report.note = std::move(note);
    if (!any) {
      report.status = LemmaStatus::not_applicable;
      report.worst_margin = kNan;
      if (report.note.empty()) report.note = "empty quantifier set";
      return report;
    }
    report.worst_margin = worst;
    report.witnesses = witnesses;
    report.status = worst >= -kLemmaTol ? LemmaStatus::holds : LemmaStatus::violated;
    return report;
  }
};

LemmaReport not_applicable(LemmaId id, std::string note) {
  LemmaReport report;
  report.id = id;
  report.status = LemmaStatus::not_applicable;
  report.worst_margin = kNan;
  report.note = std::move(note);
  return report;
}

// Upper end of the hypothesis range [0, floor(1/alpha)], capped at 50.
int hypothesis_cap(double alpha) {
  if (alpha <= 0.0) return 50;
  const double limit = 1.0 / alpha;
  if (limit >= 50.0) return 50;
  return static_cast<int>(std::floor(limit + 1e-9));
}

std::vector<char> membership(int n, const VertexSet& a) {
  std::vector<char> in(n, 0);
  for (int x : a) in[x] = 1;
  return in;
}

Eigen::VectorXd smooth_step(const Eigen::MatrixXd& abar, const Eigen::VectorXd& v) {
  return 0.5 * (v + abar * v);
}

LemmaReport check_laplacian_square(const PositivePairGraph& g, const DomainSpec& spec,
                                   const GraphStats& stats) {
  const Eigen::MatrixXd abar = normalized_adjacency(g);
  MarginTracker tracker;
  for (int i = 0; i < spec.m(); ++i) {
    const Eigen::VectorXd gi = indicator_vector(g, spec.clusters[i]);
    const Eigen::VectorXd lg = gi - abar * gi;
    const double margin =
        2.0 * stats.alpha * stats.alpha * gi.squaredNorm() - lg.squaredNorm();
    tracker.add(margin, i, -1, -1, -1);
  }
  return tracker.finish(LemmaId::laplacian_square, "");
}

LemmaReport check_induction(const PositivePairGraph& g, const DomainSpec& spec,
                            const GraphStats& stats, bool inside, int t_max) {
  const int cap =
      t_max > 0 ? std::min(t_max, hypothesis_cap(stats.alpha)) : hypothesis_cap(stats.alpha);
  const Eigen::MatrixXd abar = normalized_adjacency(g);
  const Eigen::VectorXd root = g.marginals.cwiseSqrt();
  const LemmaId id = inside ? LemmaId::induction_in : LemmaId::induction_out;

  MarginTracker tracker;
  for (int i = 0; i < spec.m(); ++i) {
    const std::vector<char> in = membership(g.n, spec.clusters[i]);
    Eigen::VectorXd v = indicator_vector(g, spec.clusters[i]);
    for (int t = 0; t <= cap; ++t) {
      for (int x = 0; x < g.n; ++x) {
        if (static_cast<bool>(in[x]) != inside) continue;
        if (inside) {
          tracker.add(v(x) - (1.0 - t * stats.alpha) * root(x), i, -1, x, t);
          tracker.add(root(x) - v(x), i, -1, x, t);
        } else {
          tracker.add(v(x), i, -1, x, t);
          tracker.add(t * stats.alpha * root(x) - v(x), i, -1, x, t);
        }
      }
      if (t < cap) v = smooth_step(abar, v);
    }
  }
  return tracker.finish(id, "");
}

LemmaReport check_induction_target(const PositivePairGraph& g, const DomainSpec& spec,
                                   const GraphStats& stats, int t_max) {
  const LemmaId id = LemmaId::induction_target;
  if (spec.r < 2) return not_applicable(id, "needs at least two classes");
  if (!stats.a3.holds) return not_applicable(id, "average-expansion verdict fails");
  if (stats.alpha <= 0.0) return not_applicable(id, "alpha is zero");
  if (stats.rho > stats.alpha) return not_applicable(id, "rho exceeds alpha");
  const double limit = stats.rho / (8.0 * stats.alpha * stats.alpha);
  int cap = limit >= 1.0 ? static_cast<int>(std::floor(limit + 1e-9)) : 0;
  if (t_max > 0) cap = std::min(cap, t_max);
  if (cap < 1) return not_applicable(id, "valid t range is empty");

  const Eigen::MatrixXd abar = normalized_adjacency(g);
  const Eigen::VectorXd root = g.marginals.cwiseSqrt();
  const int r = spec.r;
  Eigen::MatrixXd walks(g.n, r);
  for (int i = 0; i < r; ++i) {
    walks.col(i) = indicator_vector(g, spec.source_class(i));
  }

  MarginTracker tracker;
  for (int t = 1; t <= cap; ++t) {
    walks = 0.5 * (walks + abar * walks);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) {
        if (j == i) continue;
        for (int x : spec.target_class(i)) {
          const double margin =
              walks(x, i) - walks(x, j) - 0.25 * stats.rho * root(x);
          tracker.add(margin, i, j, x, t);
        }
      }
    }
  }
  return tracker.finish(id, "");
}

LemmaReport check_power_t_error(const PositivePairGraph& g, const DomainSpec& spec,
                                const Representation& rep, const GraphStats& stats,
                                int t_max) {
  const LemmaId id = LemmaId::power_t_error;
  if (rep.sigma != 2.0) return not_applicable(id, "requires sigma = 2");
  if (rep.k >= g.n) return not_applicable(id, "requires k < n");
  if (stats.lambda_k1 <= 0.0) return not_applicable(id, "graph has more than k components");
  if (rep.k != stats.k) throw DimensionMismatch("check_lemma: representation and stats disagree on k");
  const int cap = t_max > 0 ? t_max : 20;

  const Eigen::MatrixXd abar = normalized_adjacency(g);
  const double lam = stats.lambda_k1;
  const double base = 2.0 * stats.alpha * stats.alpha / (lam * lam);
  const double decay = (1.0 - lam / 2.0) * (1.0 - lam / 2.0);

  MarginTracker tracker;
  for (int i = 0; i < spec.m(); ++i) {
    const Eigen::VectorXd gi = indicator_vector(g, spec.clusters[i]);
    const double norm2 = gi.squaredNorm();
    Eigen::VectorXd smoothed = gi;
    Eigen::VectorXd low_rank = gi;
    double eps_t = 1.0;
    for (int t = 1; t <= cap; ++t) {
      smoothed = smooth_step(abar, smoothed);
      low_rank = rep.F_tilde * (rep.F_tilde.transpose() * low_rank);
      eps_t *= decay;
      const double margin = eps_t * base * norm2 - (smoothed - low_rank).squaredNorm();
      tracker.add(margin, i, -1, -1, t);
    }
  }
  return tracker.finish(id, "");
}

LemmaReport check_restricted_cheeger(const DomainSpec& spec, const GraphStats& stats) {
  const LemmaId id = LemmaId::restricted_cheeger;
  if (!stats.gamma.exact) return not_applicable(id, "conductance only bracketed");
  const double gamma = stats.gamma.lower;

  MarginTracker tracker;
  std::string note;
  for (int i = 0; i < spec.r; ++i) {
    if (spec.target_class(i).size() < 2) {
      note += "target class " + std::to_string(i) + " has a single vertex; ";
      continue;
    }
    tracker.add(stats.restricted_gaps[i] - gamma * gamma / 2.0, i, -1, -1, -1);
  }
  return tracker.finish(id, note);
}

LemmaReport check_multistep_rho(const PositivePairGraph& g, const DomainSpec& spec,
                                const GraphStats& stats, int t_max) {
  const LemmaId id = LemmaId::multistep_rho;
  const int cap = t_max > 0 ? t_max : 20;
  const Eigen::MatrixXd abar = normalized_adjacency(g);
  const Eigen::VectorXd root = g.marginals.cwiseSqrt();
  const double alpha = stats.alpha;

  MarginTracker tracker;
  std::string note;
  for (int i = 0; i < spec.r; ++i) {
    const VertexSet& target = spec.target_class(i);
    RestrictedGraph restricted;
    try {
      restricted = restrict_graph(g, target);
    } catch (const DisconnectedVertexInRestriction&) {
      note += "target class " + std::to_string(i) + " restriction invalid; ";
      continue;
    }
    const Eigen::MatrixXd abar_t = normalized_adjacency(restricted);
    const Eigen::VectorXd top = restricted.marginals.cwiseSqrt();
    const int size = static_cast<int>(restricted.vertices.size());

    const Eigen::VectorXd gi = indicator_vector(g, spec.source_class(i));
    const Eigen::VectorXd pushed = abar * gi;
    Eigen::VectorXd head(size);
    for (int a = 0; a < size; ++a) head(a) = pushed(restricted.vertices[a]);

    // Split against the top eigenvector of the restricted walk; the aligned
    // part survives smoothing untouched, the rest decays with the gap.
    const Eigen::VectorXd aligned = (top.dot(head) / top.squaredNorm()) * top;
    const Eigen::VectorXd residual = head - aligned;

    const double rho_i = expansion(g, target, spec.source_class(i));
    const double target_mass = set_weight(g, target);
    const double gap = stats.restricted_gaps[i];

    Eigen::VectorXd walk = gi;
    Eigen::VectorXd tail = residual;
    for (int t = 1; t <= cap; ++t) {
      walk = smooth_step(abar, walk);
      if (t > 1) tail = smooth_step(abar_t, tail);
      const Eigen::VectorXd delta = 0.5 * std::pow(1.0 - alpha, t - 1) * tail;
      const double floor_coef = 0.5 * std::pow(1.0 - alpha, t) * rho_i;
      for (int a = 0; a < size; ++a) {
        const int x = restricted.vertices[a];
        tracker.add(walk(x) - floor_coef * root(x) - delta(a), i, -1, x, t);
      }
      const double budget = std::pow(1.0 - gap / 2.0, 2 * (t - 1)) * target_mass;
      tracker.add(budget - delta.squaredNorm(), i, -1, -1, t);
    }
  }
  return tracker.finish(id, note);
}

LemmaReport check_multistep_beta(const PositivePairGraph& g, const DomainSpec& spec,
                                 const GraphStats& stats, int t_max) {
  const LemmaId id = LemmaId::multistep_beta;
  if (spec.r < 2) return not_applicable(id, "needs at least two classes");
  const int cap =
      t_max > 0 ? std::min(t_max, hypothesis_cap(stats.alpha)) : hypothesis_cap(stats.alpha);
  const Eigen::MatrixXd abar = normalized_adjacency(g);
  const Eigen::VectorXd root = g.marginals.cwiseSqrt();
  const int r = spec.r;

  std::vector<double> target_mass(r);
  std::vector<std::vector<double>> beta(r, std::vector<double>(r, 0.0));
  for (int i = 0; i < r; ++i) {
    target_mass[i] = set_weight(g, spec.target_class(i));
    for (int j = 0; j < r; ++j) {
      if (j != i) beta[i][j] = expansion(g, spec.target_class(i), spec.source_class(j));
    }
  }

  MarginTracker tracker;
  for (int j = 0; j < r; ++j) {
    Eigen::VectorXd v = indicator_vector(g, spec.source_class(j));
    for (int t = 0; t <= cap; ++t) {
      for (int i = 0; i < r; ++i) {
        if (i == j) continue;
        double mass_in_target = 0.0;
        for (int x : spec.target_class(i)) mass_in_target += root(x) * v(x);
        const double budget =
            (static_cast<double>(t) * t * stats.alpha * stats.alpha + t * beta[i][j]) *
            target_mass[i];
        tracker.add(budget - mass_in_target, i, j, -1, t);
      }
      if (t < cap) v = smooth_step(abar, v);
    }
  }
  return tracker.finish(id, "");
}

}  // namespace

const char* lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::laplacian_square: return "laplacian_square";
    case LemmaId::induction_in: return "induction_in";
    case LemmaId::induction_out: return "induction_out";
    case LemmaId::induction_target: return "induction_target";
    case LemmaId::power_t_error: return "power_t_error";
    case LemmaId::restricted_cheeger: return "restricted_cheeger";
    case LemmaId::multistep_rho: return "multistep_rho";
    case LemmaId::multistep_beta: return "multistep_beta";
  }
  return "unknown";
}

bool lemma_from_name(const std::string& name, LemmaId& out) {
  for (LemmaId id : kAllLemmas) {
    if (name == lemma_name(id)) {
      out = id;
      return true;
    }
  }
  return false;
}

Eigen::VectorXd indicator_vector(const PositivePairGraph& g, const VertexSet& a) {
  if (a.empty()) throw EmptySet("indicator_vector: empty set");
  check_vertex_set(g.n, a);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(g.n);
  for (int x : a) v(x) = std::sqrt(g.marginals(x));
  return v;
}

Eigen::VectorXd smoothed_power(const Eigen::MatrixXd& abar, const Eigen::VectorXd& v, int t) {
  if (t < 0) throw DegenerateParams("smoothed_power: t must be >= 0");
  if (abar.rows() != v.size()) throw DimensionMismatch("smoothed_power: size mismatch");
  Eigen::VectorXd out = v;
  for (int s = 0; s < t; ++s) out = smooth_step(abar, out);
  return out;
}

Eigen::VectorXd smoothed_power(const PositivePairGraph& g, const Eigen::VectorXd& v, int t) {
  return smoothed_power(normalized_adjacency(g), v, t);
}

Eigen::VectorXd low_rank_power(const Representation& rep, const Eigen::VectorXd& v, int t) {
  if (t < 1) throw DegenerateParams("low_rank_power: t must be >= 1");
  if (rep.F_tilde.rows() != v.size()) throw DimensionMismatch("low_rank_power: size mismatch");
  Eigen::VectorXd coords = rep.F_tilde.transpose() * v;
  const Eigen::MatrixXd gram = rep.F_tilde.transpose() * rep.F_tilde;
  for (int s = 1; s < t; ++s) coords = gram * coords;
  return rep.F_tilde * coords;
}

double random_walk_probability(const PositivePairGraph& g, int x, const VertexSet& a, int t) {
  if (t < 0) throw DegenerateParams("random_walk_probability: t must be >= 0");
  if (x < 0 || x >= g.n) throw DimensionMismatch("random_walk_probability: vertex out of range");
  check_vertex_set(g.n, a);

  // Column-stochastic kernel: column y holds the step distribution from y.
  Eigen::MatrixXd kernel = g.weights.array().rowwise() / g.marginals.transpose().array();
  Eigen::VectorXd p = Eigen::VectorXd::Zero(g.n);
  p(x) = 1.0;
  for (int s = 0; s < t; ++s) p = kernel * p;

  double total = 0.0;
  for (int y : a) total += p(y);
  return total;
}

LemmaReport check_lemma(const PositivePairGraph& g, const DomainSpec& spec,
                        const Representation& rep, const GraphStats& stats,
                        LemmaId id, int t_max) {
  switch (id) {
    case LemmaId::laplacian_square: return check_laplacian_square(g, spec, stats);
    case LemmaId::induction_in: return check_induction(g, spec, stats, true, t_max);
    case LemmaId::induction_out: return check_induction(g, spec, stats, false, t_max);
    case LemmaId::induction_target: return check_induction_target(g, spec, stats, t_max);
    case LemmaId::power_t_error: return check_power_t_error(g, spec, rep, stats, t_max);
    case LemmaId::restricted_cheeger: return check_restricted_cheeger(spec, stats);
    case LemmaId::multistep_rho: return check_multistep_rho(g, spec, stats, t_max);
    case LemmaId::multistep_beta: return check_multistep_beta(g, spec, stats, t_max);
  }
  throw DegenerateParams("check_lemma: unknown lemma id");
}

std::vector<LemmaReport> run_all_lemmas(const PositivePairGraph& g, const DomainSpec& spec,
                                        const Representation& rep, const GraphStats& stats,
                                        int t_max) {
  std::vector<LemmaReport> reports;
  reports.reserve(std::size(kAllLemmas));
  for (LemmaId id : kAllLemmas) {
    reports.push_back(check_lemma(g, spec, rep, stats, id, t_max));
  }
  return reports;
}

}  // namespace spt
