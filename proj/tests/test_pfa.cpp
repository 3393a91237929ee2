#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracle_helpers.hpp"
#include "spt/generators.hpp"
#include "spt/metrics.hpp"
#include "spt/oracles.hpp"
#include "spt/pfa.hpp"
#include "spt/spectral.hpp"

using namespace spt;

namespace {

struct Fixture {
  GeneratedInstance inst;
  Representation rep;
  PfaClassifier cls;
};

Fixture make_fixture(int k = 4) {
  Fixture f;
  f.inst = generate_sbm(testing::small_reference_params());
  f.rep = minimize_loss(f.inst.graph, k, 2.0);
  f.cls = fit_pfa(f.rep, f.inst.graph, f.inst.domain);
  return f;
}

Representation rotated(const Representation& rep, const Eigen::MatrixXd& q) {
  Representation out = rep;
  out.F = rep.F * q;
  out.F_tilde = rep.F_tilde * q;
  return out;
}

}  // namespace

TEST_CASE("covariance of the exact minimizer is the clipped eigenvalue diagonal") {
  const Fixture f = make_fixture();
  const SpectralDecomposition d = decompose(f.inst.graph);
  REQUIRE_FALSE(f.rep.degenerate_cut);
  for (int i = 0; i < 4; ++i) {
    CHECK(f.cls.sigma_matrix(i, i) ==
          doctest::Approx(1.0 - d.laplacian_eigenvalues(i) / 2.0).epsilon(1e-7));
    for (int j = 0; j < 4; ++j)
      if (j != i) CHECK(std::abs(f.cls.sigma_matrix(i, j)) < 1e-7);
  }
  CHECK((f.cls.sigma_matrix - f.cls.sigma_matrix.transpose()).norm() < 1e-9);
}

TEST_CASE("class means are recomputable population averages") {
  const Fixture f = make_fixture();
  const PositivePairGraph& g = f.inst.graph;
  const DomainSpec& spec = f.inst.domain;
  const double source_mass = set_weight(g, spec.source_union());
  for (int i = 0; i < spec.r; ++i) {
    Eigen::VectorXd expected = Eigen::VectorXd::Zero(f.rep.k);
    for (int x : spec.source_class(i))
      expected += g.marginals(x) * f.rep.F.row(x).transpose();
    expected /= source_mass;
    CHECK((f.cls.class_means.col(i) - expected).norm() < 1e-12);
  }
}

TEST_CASE("zero features give zero covariance and means") {
  const PositivePairGraph g = testing::make_g4();
  DomainSpec spec;
  spec.clusters = {{0, 1}, {2, 3}};
  spec.r = 1;
  Representation rep;
  rep.k = 2;
  rep.F = Eigen::MatrixXd::Zero(4, 2);
  rep.F_tilde = Eigen::MatrixXd::Zero(4, 2);
  const PfaClassifier cls = fit_pfa(rep, g, spec);
  CHECK(cls.sigma_matrix.norm() == 0.0);
  CHECK(cls.class_means.norm() == 0.0);

  // All scores tie, so everything lands in class 0: half the target mass is
  // misclassified on a balanced single-class... with r = 1 the error is 0.
  const ErrorReport err = target_error(cls, rep, g, spec, 1);
  CHECK(err.target_error == 0.0);
}

TEST_CASE("ties with zero means predict the first class") {
  DomainSpec spec;
  const PositivePairGraph g = testing::make_two_pair_graph(spec);
  const Representation rep = minimize_loss(g, 2, 2.0);
  PfaClassifier cls = fit_pfa(rep, g, spec);
  cls.class_means.setZero();
  const std::vector<int> pred = predict_all(cls, rep, 1);
  for (int p : pred) CHECK(p == 0);
  const ErrorReport err = target_error(cls, rep, g, spec, 1);
  CHECK(err.target_error == doctest::Approx(0.5).epsilon(1e-12));
  REQUIRE(err.per_class_errors.size() == 2);
  CHECK(err.per_class_errors[0] == 0.0);
  CHECK(err.per_class_errors[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("disconnected class pairs are classified perfectly at any power") {
  DomainSpec spec;
  const PositivePairGraph g = testing::make_two_pair_graph(spec);
  const Representation rep = minimize_loss(g, 2, 2.0);
  const PfaClassifier cls = fit_pfa(rep, g, spec);
  for (const int t : {1, 2, 5}) {
    const ErrorReport err = target_error(cls, rep, g, spec, t);
    CHECK(err.target_error == 0.0);
    for (int i = 0; i < 2; ++i)
      for (int x : spec.target_class(i)) CHECK(predict(cls, rep, x, t) == i);
  }
}

TEST_CASE("power one head equals the plain mean-feature head") {
  const Fixture f = make_fixture();
  for (int x = 0; x < f.inst.graph.n; ++x) {
    int best = 0;
    double best_score = f.rep.F.row(x).dot(f.cls.class_means.col(0));
    for (int i = 1; i < f.inst.domain.r; ++i) {
      const double score = f.rep.F.row(x).dot(f.cls.class_means.col(i));
      if (score > best_score) {
        best = i;
        best_score = score;
      }
    }
    CHECK(predict(f.cls, f.rep, x, 1) == best);
  }
}

TEST_CASE("head scores match the power-of-the-product identity") {
  const Fixture f = make_fixture();
  const PositivePairGraph& g = f.inst.graph;
  const DomainSpec& spec = f.inst.domain;
  const double source_mass = set_weight(g, spec.source_union());
  const Eigen::MatrixXd product = f.rep.F_tilde * f.rep.F_tilde.transpose();

  for (int t = 1; t <= 10; ++t) {
    for (int i = 0; i < spec.r; ++i) {
      const Eigen::VectorXd g_i = indicator_vector(g, spec.source_class(i));
      const Eigen::VectorXd powered = testing::naive_matrix_power_vec(product, g_i, t);
      for (int x = 0; x < g.n; ++x) {
        Eigen::VectorXd precond = f.cls.class_means.col(i);
        for (int step = 1; step < t; ++step) precond = f.cls.sigma_matrix * precond;
        const double score = f.rep.F.row(x).dot(precond);
        const double lhs = score * std::sqrt(g.marginals(x)) * source_mass;
        CHECK(lhs == doctest::Approx(powered(x)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("predictions at power two match the product-power argmax") {
  const Fixture f = make_fixture();
  const PositivePairGraph& g = f.inst.graph;
  const DomainSpec& spec = f.inst.domain;
  const Eigen::MatrixXd product = f.rep.F_tilde * f.rep.F_tilde.transpose();
  std::vector<Eigen::VectorXd> powered;
  for (int i = 0; i < spec.r; ++i)
    powered.push_back(testing::naive_matrix_power_vec(
        product, indicator_vector(g, spec.source_class(i)), 2));
  for (int i = 0; i < spec.r; ++i) {
    for (int x : spec.target_class(i)) {
      int best = 0;
      for (int j = 1; j < spec.r; ++j)
        if (powered[j](x) > powered[best](x)) best = j;
      CHECK(predict(f.cls, f.rep, x, 2) == best);
    }
  }
}

TEST_CASE("rotating the representation changes nothing observable") {
  const Fixture f = make_fixture();
  const Eigen::MatrixXd q = testing::random_orthogonal(4, 99);
  const Representation rep_q = rotated(f.rep, q);
  const PfaClassifier cls_q = fit_pfa(rep_q, f.inst.graph, f.inst.domain);

  for (const int t : {1, 2, 3}) {
    CHECK(predict_all(f.cls, f.rep, t) == predict_all(cls_q, rep_q, t));
    const ErrorReport a = target_error(f.cls, f.rep, f.inst.graph, f.inst.domain, t);
    const ErrorReport b = target_error(cls_q, rep_q, f.inst.graph, f.inst.domain, t);
    CHECK(a.target_error == doctest::Approx(b.target_error).epsilon(1e-12));
  }

  const ProbeResult pa = linear_probe_error(f.rep, f.inst.graph, f.inst.domain.clusters);
  const ProbeResult pb = linear_probe_error(rep_q, f.inst.graph, f.inst.domain.clusters);
  CHECK(pa.error == doctest::Approx(pb.error).epsilon(1e-12));
}

TEST_CASE("relabeling vertices permutes predictions") {
  const SbmParams params = testing::small_reference_params();
  const GeneratedInstance inst = generate_sbm(params);
  const int n = inst.graph.n;

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(3);
  std::shuffle(perm.begin(), perm.end(), rng);

  std::vector<WeightedEdge> edges;
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y)
      if (inst.graph.weights(x, y) > 0.0)
        edges.push_back({perm[x], perm[y], inst.graph.weights(x, y)});
  const PositivePairGraph shuffled = build_graph(n, edges, true);
  DomainSpec shuffled_spec;
  shuffled_spec.r = inst.domain.r;
  for (const VertexSet& cluster : inst.domain.clusters) {
    VertexSet mapped;
    for (int x : cluster) mapped.push_back(perm[x]);
    std::sort(mapped.begin(), mapped.end());
    shuffled_spec.clusters.push_back(mapped);
  }

  const Representation rep = minimize_loss(inst.graph, 4, 2.0);
  const Representation rep_s = minimize_loss(shuffled, 4, 2.0);
  const PfaClassifier cls = fit_pfa(rep, inst.graph, inst.domain);
  const PfaClassifier cls_s = fit_pfa(rep_s, shuffled, shuffled_spec);

  const std::vector<int> pred = predict_all(cls, rep, 2);
  const std::vector<int> pred_s = predict_all(cls_s, rep_s, 2);
  for (int x = 0; x < n; ++x) CHECK(pred_s[perm[x]] == pred[x]);

  const ErrorReport a = target_error(cls, rep, inst.graph, inst.domain, 2);
  const ErrorReport b = target_error(cls_s, rep_s, shuffled, shuffled_spec, 2);
  CHECK(a.target_error == doctest::Approx(b.target_error).epsilon(1e-12));
}

TEST_CASE("scaling all class means preserves predictions") {
  const Fixture f = make_fixture();
  PfaClassifier scaled = f.cls;
  scaled.class_means *= 2.9;
  for (const int t : {1, 3})
    CHECK(predict_all(f.cls, f.rep, t) == predict_all(scaled, f.rep, t));
}

TEST_CASE("target error aggregates the per-class masses") {
  const Fixture f = make_fixture();
  const PositivePairGraph& g = f.inst.graph;
  const DomainSpec& spec = f.inst.domain;
  const ErrorReport err = target_error(f.cls, f.rep, g, spec, 1);
  REQUIRE(err.per_class_errors.size() == 2);
  const double target_mass = set_weight(g, spec.target_union());
  double recombined = 0.0;
  for (int i = 0; i < spec.r; ++i)
    recombined +=
        err.per_class_errors[i] * set_weight(g, spec.target_class(i)) / target_mass;
  CHECK(err.target_error == doctest::Approx(recombined).epsilon(1e-12));
  CHECK(err.target_error >= 0.0);
  CHECK(err.target_error <= 1.0);
}

TEST_CASE("reference instance is solved exactly at low powers") {
  const Fixture f = make_fixture();
  for (const int t : {1, 2}) {
    const ErrorReport err = target_error(f.cls, f.rep, f.inst.graph, f.inst.domain, t);
    CHECK(err.target_error == 0.0);
  }
}

TEST_CASE("probe error vanishes when indicators span the representation") {
  const PositivePairGraph g =
      build_graph(6, {{0, 1, 0.2}, {2, 3, 0.2}, {4, 5, 0.1}});
  const std::vector<VertexSet> clusters = {{0, 1}, {2, 3}, {4, 5}};
  const Representation rep = minimize_loss(g, 3, 2.0);
  const ProbeResult probe = linear_probe_error(rep, g, clusters);
  CHECK(probe.error == 0.0);
  CHECK_FALSE(probe.k_below_m);
}

TEST_CASE("zero probe features fall back to the largest cluster") {
  DomainSpec spec;
  const PositivePairGraph g = testing::make_two_pair_graph(spec);
  Representation rep;
  rep.k = 2;
  rep.F = Eigen::MatrixXd::Zero(8, 2);
  rep.F_tilde = Eigen::MatrixXd::Zero(8, 2);
  const ProbeResult probe = linear_probe_error(rep, g, spec.clusters);
  CHECK(probe.error == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(probe.rank_deficient);
  CHECK(probe.k_below_m);
}

TEST_CASE("probe satisfies the cluster bound on the reference instance") {
  const Fixture f = make_fixture();
  const GraphStats stats = assumption_report(f.inst.graph, f.inst.domain, 4);
  const ProbeResult probe =
      linear_probe_error(f.rep, f.inst.graph, f.inst.domain.clusters);
  const double bound =
      4.0 * f.inst.domain.m() * stats.alpha * stats.alpha / (stats.lambda_k1 * stats.lambda_k1);
  CHECK(probe.error <= bound);
}

TEST_CASE("theorem bound helpers") {
  const Fixture f = make_fixture();
  const GraphStats stats = assumption_report(f.inst.graph, f.inst.domain, 4);

  CHECK(pfa_bound_t_max(stats) == 2);

  for (const int t : {1, 2, 5}) {
    const double expected = 128.0 *
                            std::pow(1.0 - stats.lambda_k1 / 2.0, 2.0 * t) * 2.0 *
                            stats.alpha * stats.alpha /
                            (stats.rho * stats.rho * stats.lambda_k1 * stats.lambda_k1) *
                            stats.source_target_mass_ratio;
    CHECK(pfa_error_bound(stats, 2, t) == doctest::Approx(expected).epsilon(1e-12));
  }

  const double gamma = stats.gamma.lower;
  const double log_term = std::log(1.0 / stats.alpha);
  CHECK(structural_bound_t(stats) == 12);
  CHECK(structural_bound_t(stats) ==
        static_cast<int>(std::ceil(log_term / (gamma * gamma))));
  CHECK(structural_error_bound(stats, 2) ==
        doctest::Approx(2.0 * log_term * log_term / (stats.tau * std::pow(gamma, 8.0)))
            .epsilon(1e-12));

  GraphStats broken = stats;
  broken.rho = 0.0;
  CHECK(std::isinf(pfa_error_bound(broken, 2, 1)));
  CHECK(pfa_bound_t_max(broken) == 0);
  broken = stats;
  broken.alpha = 0.0;
  CHECK(std::isinf(structural_error_bound(broken, 2)));
  CHECK(structural_bound_t(broken) == 0);
}

TEST_CASE("pfa argument validation") {
  const Fixture f = make_fixture();
  CHECK_THROWS_AS(predict(f.cls, f.rep, 0, 0), DegenerateParams);

  Representation bad = f.rep;
  bad.F = Eigen::MatrixXd::Zero(7, 4);
  bad.F_tilde = Eigen::MatrixXd::Zero(7, 4);
  CHECK_THROWS_AS(fit_pfa(bad, f.inst.graph, f.inst.domain), DimensionMismatch);
}
