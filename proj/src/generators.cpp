#include "spt/generators.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "spt/errors.hpp"
#include "spt/metrics.hpp"

namespace spt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void add_pair(Eigen::MatrixXd& w, int x, int y, double value) {
  w(x, y) += value;
  if (x != y) w(y, x) += value;
}

void fill_intra_block(Eigen::MatrixXd& w, int base, int s, const SbmParams& params) {
  switch (params.topology) {
    case IntraTopology::complete:
      for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j) add_pair(w, base + i, base + j, params.p_intra);
      return;
    case IntraTopology::ring_plus_chords:
      if (s <= 2) {
        for (int i = 0; i < s; ++i)
          for (int j = i + 1; j < s; ++j) add_pair(w, base + i, base + j, params.p_intra);
        return;
      }
      for (int i = 0; i < s; ++i) {
        add_pair(w, base + i, base + (i + 1) % s, params.p_intra);
        add_pair(w, base + i, base + (i + 2) % s, params.p_intra / 2.0);
      }
      return;
    case IntraTopology::two_communities: {
      const int half = s / 2;
      for (int i = 0; i < s; ++i) {
        for (int j = i + 1; j < s; ++j) {
          const bool same_half = (i < half) == (j < half);
          add_pair(w, base + i, base + j,
                   same_half ? params.p_intra : params.epsilon * params.p_intra);
        }
      }
      return;
    }
  }
}

double cross_block_weight(const SbmParams& params, int b1, int b2) {
  const int r = params.r;
  const int lo = std::min(b1, b2);
  const int hi = std::max(b1, b2);
  if (lo < r && hi >= r && hi < 2 * r) {
    return hi - r == lo ? params.q_same : params.q_cross;
  }
  return params.q_other;
}

PredictedStats predict_complete(const SbmParams& params) {
  PredictedStats p;
  p.closed_form = true;
  const double s = params.cluster_size;
  const int r = params.r;
  const double extra = params.extra_clusters;

  const double leak_class =
      s * (params.q_same + (r - 1) * params.q_cross + ((r - 1) + extra) * params.q_other);
  const double w_class = (s - 1) * params.p_intra + leak_class;
  p.alpha = leak_class / w_class;
  if (params.extra_clusters > 0) {
    const double leak_extra = s * (2 * r + extra - 1) * params.q_other;
    const double w_extra = (s - 1) * params.p_intra + leak_extra;
    p.alpha = std::max(p.alpha, leak_extra / w_extra);
  }

  p.rho = s * params.q_same / w_class;
  p.beta_max = r >= 2 ? s * params.q_cross / w_class : 0.0;

  double tau = p.rho == 0.0 ? 0.0 : (p.alpha == 0.0 ? kInf : p.rho / (p.alpha * p.alpha));
  if (r >= 2) {
    const double same_vs_cross =
        params.q_same == 0.0 ? 0.0
                             : (params.q_cross == 0.0 ? kInf : params.q_same / params.q_cross);
    tau = std::min(tau, same_vs_cross);
  }
  p.tau = tau;
  return p;
}

PredictedStats predict_numeric(const PositivePairGraph& g, const DomainSpec& domain) {
  PredictedStats p;
  p.closed_form = false;
  p.alpha = compute_alpha(g, domain.clusters);
  const RhoResult rho = compute_rho(g, domain);
  p.rho = rho.rho;
  p.beta_max = rho.beta_max;
  p.tau = compute_tau(g, domain);
  return p;
}

}  // namespace

const char* topology_name(IntraTopology t) {
  switch (t) {
    case IntraTopology::complete: return "complete";
    case IntraTopology::ring_plus_chords: return "ring_plus_chords";
    case IntraTopology::two_communities: return "two_communities";
  }
  return "unknown";
}

bool topology_from_name(const std::string& name, IntraTopology& out) {
  for (IntraTopology t : {IntraTopology::complete, IntraTopology::ring_plus_chords,
                          IntraTopology::two_communities}) {
    if (name == topology_name(t)) {
      out = t;
      return true;
    }
  }
  return false;
}

GeneratedInstance generate_sbm(const SbmParams& params) {
  if (params.r < 1) throw DegenerateParams("generate_sbm: need r >= 1");
  if (params.cluster_size < 2) throw DegenerateParams("generate_sbm: need cluster_size >= 2");
  if (params.extra_clusters < 0) throw DegenerateParams("generate_sbm: negative extra_clusters");
  if (params.p_intra < 0.0 || params.q_same < 0.0 || params.q_cross < 0.0 ||
      params.q_other < 0.0 || params.epsilon < 0.0) {
    throw DegenerateParams("generate_sbm: negative weight parameter");
  }

  const int s = params.cluster_size;
  const int m = 2 * params.r + params.extra_clusters;
  const int n = m * s;

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int b = 0; b < m; ++b) fill_intra_block(w, b * s, s, params);
  for (int b1 = 0; b1 < m; ++b1) {
    for (int b2 = b1 + 1; b2 < m; ++b2) {
      const double q = cross_block_weight(params, b1, b2);
      if (q == 0.0) continue;
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) add_pair(w, b1 * s + i, b2 * s + j, q);
    }
  }

  std::vector<WeightedEdge> edges;
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y)
      if (w(x, y) != 0.0) edges.push_back({x, y, w(x, y)});

  GeneratedInstance out;
  out.graph = build_graph(n, edges, /*auto_normalize=*/true);
  out.domain.r = params.r;
  out.domain.clusters.resize(m);
  for (int b = 0; b < m; ++b) {
    out.domain.clusters[b].resize(s);
    for (int i = 0; i < s; ++i) out.domain.clusters[b][i] = b * s + i;
  }

  out.predicted = params.topology == IntraTopology::complete
                      ? predict_complete(params)
                      : predict_numeric(out.graph, out.domain);
  return out;
}

GeneratedInstance perturb(const GeneratedInstance& instance, double noise_scale,
                          std::uint64_t seed) {
  if (noise_scale < 0.0) throw DegenerateParams("perturb: negative noise_scale");
  if (noise_scale == 0.0) return instance;

  const PositivePairGraph& g = instance.graph;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  std::vector<WeightedEdge> edges;
  for (int x = 0; x < g.n; ++x) {
    for (int y = x; y < g.n; ++y) {
      const double weight = g.weights(x, y);
      if (weight == 0.0) continue;
      edges.push_back({x, y, weight * (1.0 + noise_scale * unit(rng))});
    }
  }

  GeneratedInstance out;
  out.graph = build_graph(g.n, edges, /*auto_normalize=*/true);
  out.domain = instance.domain;
  out.predicted = predict_numeric(out.graph, out.domain);
  return out;
}

}  // namespace spt
