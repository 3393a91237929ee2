#pragma once

#include <cstdint>

#include "spt/graph.hpp"
#include "spt/spectral.hpp"

namespace spt {

struct GdConfig {
  int k = 4;
  double sigma = 2.0;
  int steps = 5000;
  double lr = 0.05;
  std::uint64_t seed = 0;
};

struct GdReport {
  double final_loss = 0.0;
  double closed_form_loss = 0.0;
  double loss_gap = 0.0;     // final_loss - closed_form_loss
  double product_gap = 0.0;  // Frobenius gap of F_tilde F_tilde^T vs the minimizer's
  int steps_run = 0;
};

// Full-batch gradient descent on the generalized loss from a seeded random
// start, compared against the closed-form minimizer. Kept to n <= 200.
// Throws Divergence when the loss goes non-finite or increases 10 steps in
// a row.
GdReport gd_crosscheck(const PositivePairGraph& g, const GdConfig& config);

}  // namespace spt
