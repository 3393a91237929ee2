#include "spt/gd.hpp"

#include <cmath>
#include <random>

#include "spt/errors.hpp"

namespace spt {

GdReport gd_crosscheck(const PositivePairGraph& g, const GdConfig& config) {
  if (g.n > 200) throw DegenerateParams("gd_crosscheck: graph too large (n <= 200)");
  if (config.k < 1 || config.k > g.n) throw DimensionMismatch("gd_crosscheck: invalid k");
  if (config.sigma <= 0.0) throw DegenerateParams("gd_crosscheck: sigma must be positive");
  if (config.steps < 0) throw DegenerateParams("gd_crosscheck: negative step count");
  if (config.lr < 0.0) throw DegenerateParams("gd_crosscheck: negative learning rate");

  const int n = g.n;
  const int k = config.k;
  const Eigen::VectorXd& d = g.marginals;
  const Eigen::MatrixXd& w = g.weights;

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> init(0.0, 0.5);
  Eigen::MatrixXd f(n, k);
  for (int x = 0; x < n; ++x)
    for (int c = 0; c < k; ++c) f(x, c) = init(rng);

  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(k, k);
  double loss = generalized_loss(g, f, config.sigma);
  int rises = 0;
  int step = 0;
  for (; step < config.steps; ++step) {
    const Eigen::MatrixXd df = d.asDiagonal() * f;
    const Eigen::MatrixXd gram = f.transpose() * df;
    const Eigen::MatrixXd grad =
        4.0 * (df - w * f) + 4.0 * config.sigma * df * (gram - identity);
    f -= config.lr * grad;

    const double next = generalized_loss(g, f, config.sigma);
    if (!std::isfinite(next)) throw Divergence("gd_crosscheck: loss is not finite");
    rises = next > loss ? rises + 1 : 0;
    if (rises >= 10) throw Divergence("gd_crosscheck: loss rose 10 steps in a row");
    loss = next;
  }

  const Representation closed = minimize_loss(g, k, config.sigma);
  const Eigen::MatrixXd root_d = d.cwiseSqrt().asDiagonal();
  const Eigen::MatrixXd f_tilde = root_d * f;

  GdReport report;
  report.final_loss = loss;
  report.closed_form_loss = generalized_loss(g, closed.F, config.sigma);
  report.loss_gap = loss - report.closed_form_loss;
  report.product_gap = (f_tilde * f_tilde.transpose() -
                        closed.F_tilde * closed.F_tilde.transpose())
                           .norm();
  report.steps_run = step;
  return report;
}

}  // namespace spt
