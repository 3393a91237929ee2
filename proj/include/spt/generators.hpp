#pragma once

#include <cstdint>
#include <string>

#include "spt/graph.hpp"

namespace spt {

enum class IntraTopology { complete, ring_plus_chords, two_communities };

const char* topology_name(IntraTopology t);
bool topology_from_name(const std::string& name, IntraTopology& out);

// Block model with 2r + extra_clusters blocks of cluster_size vertices each.
// Blocks 0..r-1 are the source classes, r..2r-1 the target classes. Pair
// weights before normalization: p_intra within a block (shaped by the
// topology), q_same between S_i and T_i, q_cross between S_i and T_j for
// j != i, q_other for every remaining cross-block pair.
struct SbmParams {
  int r = 2;
  int cluster_size = 50;
  int extra_clusters = 0;
  double p_intra = 1.0;
  double q_same = 0.01;
  double q_cross = 0.001;
  double q_other = 0.0005;
  IntraTopology topology = IntraTopology::complete;
  double epsilon = 0.1;  // two_communities: cross-community factor on p_intra
  std::uint64_t seed = 0;
};

// Closed-form expansion quantities, available for the complete topology
// where every vertex of a block has identical ratios.
struct PredictedStats {
  bool closed_form = false;
  double alpha = 0.0;
  double rho = 0.0;
  double beta_max = 0.0;
  double tau = 0.0;
};

struct GeneratedInstance {
  PositivePairGraph graph;
  DomainSpec domain;
  PredictedStats predicted;
};

GeneratedInstance generate_sbm(const SbmParams& params);

// Multiplies each pair weight by an independent factor uniform in
// [1 - noise_scale, 1 + noise_scale] and renormalizes. noise_scale = 0
// returns the instance unchanged. Predictions are recomputed numerically.
GeneratedInstance perturb(const GeneratedInstance& instance, double noise_scale,
                          std::uint64_t seed);

}  // namespace spt
