#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spt/errors.hpp"
#include "spt/gd.hpp"
#include "spt/generators.hpp"
#include "spt/graph_io.hpp"
#include "spt/oracles.hpp"
#include "spt/reports.hpp"

namespace {

using nlohmann::json;

spt::LoadedGraph load_graph_or_exit(const std::string& path, bool normalize) {
  if (!std::filesystem::exists(path)) {
    std::cerr << "error: no such file: " << path << "\n";
    std::exit(2);
  }
  return spt::load_graph(path, normalize);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw spt::ParseError("cannot write " + path);
  out << content;
}

struct GenerateArgs {
  std::string params_path;
  std::string out;
  int r = 2;
  int cluster_size = 50;
  int extra_clusters = 0;
  double p_intra = 1.0;
  double q_same = 0.01;
  double q_cross = 0.001;
  double q_other = 0.0005;
  std::string topology = "complete";
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  double noise = 0.0;
};

spt::SbmParams params_from_json(const json& doc, double& noise) {
  spt::SbmParams p;
  if (doc.contains("r")) p.r = doc.at("r").get<int>();
  if (doc.contains("cluster_size")) p.cluster_size = doc.at("cluster_size").get<int>();
  if (doc.contains("extra_clusters")) p.extra_clusters = doc.at("extra_clusters").get<int>();
  if (doc.contains("p_intra")) p.p_intra = doc.at("p_intra").get<double>();
  if (doc.contains("q_same")) p.q_same = doc.at("q_same").get<double>();
  if (doc.contains("q_cross")) p.q_cross = doc.at("q_cross").get<double>();
  if (doc.contains("q_other")) p.q_other = doc.at("q_other").get<double>();
  if (doc.contains("epsilon")) p.epsilon = doc.at("epsilon").get<double>();
  if (doc.contains("seed")) p.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("noise")) noise = doc.at("noise").get<double>();
  if (doc.contains("topology")) {
    const std::string name = doc.at("topology").get<std::string>();
    if (!spt::topology_from_name(name, p.topology))
      throw spt::SchemaValidationError("unknown topology: " + name);
  }
  return p;
}

int cmd_generate(const CLI::App& sub, const GenerateArgs& args) {
  spt::SbmParams params;
  double noise = 0.0;
  if (!args.params_path.empty()) {
    if (!std::filesystem::exists(args.params_path)) {
      std::cerr << "error: no such file: " << args.params_path << "\n";
      return 2;
    }
    std::ifstream in(args.params_path);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw spt::ParseError(std::string("params file: ") + e.what());
    }
    params = params_from_json(doc, noise);
  }
  if (sub.count("--r")) params.r = args.r;
  if (sub.count("--cluster-size")) params.cluster_size = args.cluster_size;
  if (sub.count("--extra-clusters")) params.extra_clusters = args.extra_clusters;
  if (sub.count("--p-intra")) params.p_intra = args.p_intra;
  if (sub.count("--q-same")) params.q_same = args.q_same;
  if (sub.count("--q-cross")) params.q_cross = args.q_cross;
  if (sub.count("--q-other")) params.q_other = args.q_other;
  if (sub.count("--epsilon")) params.epsilon = args.epsilon;
  if (sub.count("--seed")) params.seed = args.seed;
  if (sub.count("--noise")) noise = args.noise;
  if (sub.count("--topology") &&
      !spt::topology_from_name(args.topology, params.topology)) {
    std::cerr << "error: unknown topology: " << args.topology << "\n";
    return 1;
  }

  spt::GeneratedInstance instance = spt::generate_sbm(params);
  if (noise != 0.0) instance = spt::perturb(instance, noise, params.seed);
  spt::save_graph(instance.graph, instance.domain, args.out);

  std::cout << "wrote " << args.out << ": n=" << instance.graph.n << ", "
            << instance.domain.m() << " clusters, r=" << instance.domain.r << "\n";
  if (instance.predicted.closed_form) {
    std::cout << "predicted alpha=" << spt::fmt_g17(instance.predicted.alpha)
              << " rho=" << spt::fmt_g17(instance.predicted.rho)
              << " beta_max=" << spt::fmt_g17(instance.predicted.beta_max)
              << " tau=" << spt::fmt_g17(instance.predicted.tau) << "\n";
  }
  return 0;
}

struct VerifyArgs {
  std::string graph;
  std::string out;
  int k = 4;
  double sigma = 2.0;
  double c = 8.0;
  int t = 1;
  int exact_gamma_cap = 22;
  bool normalize = false;
  std::vector<std::string> checks;
};

int cmd_verify(const VerifyArgs& args) {
  const spt::LoadedGraph loaded = load_graph_or_exit(args.graph, args.normalize);
  const spt::PositivePairGraph& g = loaded.graph;
  const spt::DomainSpec& spec = loaded.domain;

  std::vector<spt::LemmaId> enabled(std::begin(spt::kAllLemmas), std::end(spt::kAllLemmas));
  if (!args.checks.empty()) {
    enabled.clear();
    for (const std::string& name : args.checks) {
      spt::LemmaId id;
      if (!spt::lemma_from_name(name, id)) {
        std::cerr << "error: unknown check: " << name << "\n";
        return 1;
      }
      enabled.push_back(id);
    }
  }

  const spt::GraphStats stats =
      spt::assumption_report(g, spec, args.k, args.c, args.exact_gamma_cap);
  const spt::Representation rep = spt::minimize_loss(g, args.k, args.sigma);

  std::cout << "n=" << g.n << ", " << spec.m() << " clusters, r=" << spec.r << "\n";
  std::cout << "alpha=" << spt::fmt_g17(stats.alpha) << " rho=" << spt::fmt_g17(stats.rho)
            << " beta_max=" << spt::fmt_g17(stats.beta_max)
            << " tau=" << spt::fmt_g17(stats.tau) << "\n";
  std::cout << "gamma in [" << spt::fmt_g17(stats.gamma.lower) << ", "
            << spt::fmt_g17(stats.gamma.upper) << "]"
            << (stats.gamma.exact ? " (exact)" : " (bracket)") << "\n";
  std::cout << "lambda_" << args.k + 1 << "=" << spt::fmt_g17(stats.lambda_k1)
            << "  P(S)/P(T)=" << spt::fmt_g17(stats.source_target_mass_ratio) << "\n";
  const auto show_verdict = [](const char* name, const spt::Verdict& v) {
    std::cout << name << ": " << (v.holds ? "holds" : "fails")
              << " (margin " << spt::fmt_g17(v.margin) << ")\n";
  };
  show_verdict("assumption 1 (cross-cluster bound)", stats.a1);
  show_verdict("assumption 2 (conductance)", stats.a2);
  show_verdict("assumption 3 (relative expansion)", stats.a3);
  show_verdict("assumption 4 (average expansion)", stats.a4);

  bool any_violated = false;
  json lemma_json = json::array();
  for (spt::LemmaId id : enabled) {
    const spt::LemmaReport report = spt::check_lemma(g, spec, rep, stats, id);
    lemma_json.push_back(spt::lemma_to_json(report));
    std::cout << spt::lemma_name(id) << ": " << spt::lemma_status_name(report.status);
    if (report.status == spt::LemmaStatus::not_applicable) {
      std::cout << " (" << report.note << ")";
    } else {
      std::cout << " (worst margin " << spt::fmt_g17(report.worst_margin) << ")";
    }
    std::cout << "\n";
    if (report.status == spt::LemmaStatus::violated) any_violated = true;
  }

  const spt::PfaClassifier cls = spt::fit_pfa(rep, g, spec);
  spt::ErrorReport err = spt::target_error(cls, rep, g, spec, args.t);
  const int t_max = spt::pfa_bound_t_max(stats);
  if (args.t >= 1 && args.t <= t_max) {
    err.bound_value = spt::pfa_error_bound(stats, spec.r, args.t);
    err.bound_satisfied = err.target_error <= err.bound_value ? 1 : 0;
  }
  std::cout << "target error at t=" << args.t << ": " << spt::fmt_g17(err.target_error);
  if (err.bound_satisfied >= 0) {
    std::cout << " (bound " << spt::fmt_g17(err.bound_value) << ", "
              << (err.bound_satisfied == 1 ? "satisfied" : "violated") << ")";
  } else {
    std::cout << " (t outside theorem range, max " << t_max << ")";
  }
  std::cout << "\n";

  if (!args.out.empty()) {
    json doc{{"graph", json{{"n", g.n}, {"clusters", spec.m()}, {"r", spec.r}}},
             {"k", args.k},
             {"sigma", spt::json_number(args.sigma)},
             {"c", spt::json_number(args.c)},
             {"stats", spt::stats_to_json(stats)},
             {"representation",
              json{{"k", rep.k},
                   {"sigma", spt::json_number(rep.sigma)},
                   {"degenerate_cut", rep.degenerate_cut}}},
             {"lemmas", lemma_json},
             {"pfa", spt::error_report_to_json(err)}};
    write_file(args.out, doc.dump(2) + "\n");
  }

  std::cout << (any_violated ? "verdict: VIOLATIONS FOUND" : "verdict: all applicable checks hold")
            << "\n";
  return any_violated ? 1 : 0;
}

struct EmbedArgs {
  std::string graph;
  std::string out;
  int k = 4;
  double sigma = 2.0;
  bool normalize = false;
};

int cmd_embed(const EmbedArgs& args) {
  const spt::LoadedGraph loaded = load_graph_or_exit(args.graph, args.normalize);
  const spt::Representation rep = spt::minimize_loss(loaded.graph, args.k, args.sigma);

  std::string csv = "vertex";
  for (int c = 1; c <= rep.k; ++c) csv += ",f_" + std::to_string(c);
  csv += "\n";
  for (int x = 0; x < loaded.graph.n; ++x) {
    csv += std::to_string(x);
    for (int c = 0; c < rep.k; ++c) csv += "," + spt::fmt_g17(rep.F(x, c));
    csv += "\n";
  }
  write_file(args.out, csv);
  std::cout << "wrote " << args.out << " (" << loaded.graph.n << " rows, k=" << rep.k
            << (rep.degenerate_cut ? ", degenerate cut)" : ")") << "\n";
  return 0;
}

struct SweepArgs {
  std::string graph;
  std::string out;
  std::vector<int> k_values{4};
  std::vector<int> t_values{1, 2, 3, 4, 5};
  double sigma = 2.0;
  double c = 8.0;
  int exact_gamma_cap = 22;
  bool normalize = false;
};

int cmd_sweep(const SweepArgs& args) {
  const spt::LoadedGraph loaded = load_graph_or_exit(args.graph, args.normalize);
  const spt::PositivePairGraph& g = loaded.graph;
  const spt::DomainSpec& spec = loaded.domain;
  for (int t : args.t_values)
    if (t < 1) throw spt::DegenerateParams("sweep: t values must be >= 1");

  std::string csv = spt::sweep_csv_header() + "\n";
  std::vector<int> ks = args.k_values;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  for (int k : ks) {
    const spt::GraphStats stats =
        spt::assumption_report(g, spec, k, args.c, args.exact_gamma_cap);
    const spt::Representation rep = spt::minimize_loss(g, k, args.sigma);
    const spt::PfaClassifier cls = spt::fit_pfa(rep, g, spec);

    const int t_max = spt::pfa_bound_t_max(stats);
    const int t32 = spt::structural_bound_t(stats);
    const double structural = spt::structural_error_bound(stats, spec.r);
    std::set<int> probe_ts;
    if (t32 >= 1) probe_ts = {t32, 2 * t32, 4 * t32};

    std::set<int> ts(args.t_values.begin(), args.t_values.end());
    ts.insert(probe_ts.begin(), probe_ts.end());

    for (int t : ts) {
      const spt::ErrorReport err = spt::target_error(cls, rep, g, spec, t);
      spt::SweepRow row;
      row.t = t;
      row.k = k;
      row.sigma = args.sigma;
      row.target_error = err.target_error;
      row.in_theorem_range = t >= 1 && t <= t_max;
      if (row.in_theorem_range) {
        row.bound_thm31 = spt::pfa_error_bound(stats, spec.r, t);
        row.bound_satisfied = err.target_error <= row.bound_thm31 ? 1 : 0;
      }
      if (probe_ts.count(t)) {
        row.has_ratio = true;
        row.ratio_thm32 = err.target_error / structural;
      }
      row.alpha = stats.alpha;
      row.rho = stats.rho;
      row.beta_max = stats.beta_max;
      row.tau = stats.tau;
      row.gamma_lower = stats.gamma.lower;
      row.gamma_upper = stats.gamma.upper;
      row.lambda_k1 = stats.lambda_k1;
      row.mass_ratio = stats.source_target_mass_ratio;
      csv += spt::sweep_csv_row(row) + "\n";
    }
  }
  write_file(args.out, csv);
  std::cout << "wrote " << args.out << "\n";
  return 0;
}

struct GdArgs {
  std::string graph;
  std::string out;
  int k = 4;
  double sigma = 2.0;
  int steps = 5000;
  double lr = 0.05;
  std::uint64_t seed = 0;
  bool normalize = false;
};

int cmd_gd_check(const GdArgs& args) {
  const spt::LoadedGraph loaded = load_graph_or_exit(args.graph, args.normalize);
  spt::GdConfig config;
  config.k = args.k;
  config.sigma = args.sigma;
  config.steps = args.steps;
  config.lr = args.lr;
  config.seed = args.seed;

  const spt::GdReport report = spt::gd_crosscheck(loaded.graph, config);
  std::cout << "final loss " << spt::fmt_g17(report.final_loss) << " vs closed form "
            << spt::fmt_g17(report.closed_form_loss) << " (gap "
            << spt::fmt_g17(report.loss_gap) << ")\n";
  std::cout << "product gap " << spt::fmt_g17(report.product_gap) << " after "
            << report.steps_run << " steps\n";

  if (!args.out.empty()) {
    json doc{{"final_loss", spt::json_number(report.final_loss)},
             {"closed_form_loss", spt::json_number(report.closed_form_loss)},
             {"loss_gap", spt::json_number(report.loss_gap)},
             {"product_gap", spt::json_number(report.product_gap)},
             {"steps_run", report.steps_run}};
    write_file(args.out, doc.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"positive-pair graphs: spectral embeddings, expansion metrics, transfer checks"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "generate a block-model instance");
  generate->add_option("--params", gen.params_path, "JSON file with generator params");
  generate->add_option("--out", gen.out, "output graph path")->required();
  generate->add_option("--r", gen.r, "classes per domain");
  generate->add_option("--cluster-size", gen.cluster_size, "vertices per cluster");
  generate->add_option("--extra-clusters", gen.extra_clusters, "clusters outside both domains");
  generate->add_option("--p-intra", gen.p_intra, "within-cluster pair weight");
  generate->add_option("--q-same", gen.q_same, "S_i to T_i pair weight");
  generate->add_option("--q-cross", gen.q_cross, "S_i to T_j pair weight");
  generate->add_option("--q-other", gen.q_other, "remaining cross-cluster pair weight");
  generate->add_option("--topology", gen.topology,
                       "complete | ring_plus_chords | two_communities");
  generate->add_option("--epsilon", gen.epsilon, "two_communities cross factor");
  generate->add_option("--seed", gen.seed, "seed for --noise");
  generate->add_option("--noise", gen.noise, "multiplicative weight noise in [0,1)");

  VerifyArgs ver;
  CLI::App* verify = app.add_subcommand("verify", "check assumptions, bounds and inequalities");
  verify->add_option("--graph", ver.graph, "input graph path")->required();
  verify->add_option("--k", ver.k, "embedding dimension")->capture_default_str();
  verify->add_option("--sigma", ver.sigma, "regularization strength")->capture_default_str();
  verify->add_option("--c", ver.c, "relative-expansion constant")->capture_default_str();
  verify->add_option("--t", ver.t, "head power for the error report")->capture_default_str();
  verify->add_option("--exact-gamma-cap", ver.exact_gamma_cap,
                     "max cluster size for exact conductance")->capture_default_str();
  verify->add_option("--checks", ver.checks, "subset of checks to run")->delimiter(',');
  verify->add_flag("--normalize", ver.normalize, "rescale weights to total mass 1");
  verify->add_option("--out", ver.out, "write the JSON report here");

  EmbedArgs emb;
  CLI::App* embed = app.add_subcommand("embed", "write the embedding as CSV");
  embed->add_option("--graph", emb.graph, "input graph path")->required();
  embed->add_option("--k", emb.k, "embedding dimension")->capture_default_str();
  embed->add_option("--sigma", emb.sigma, "regularization strength")->capture_default_str();
  embed->add_flag("--normalize", emb.normalize, "rescale weights to total mass 1");
  embed->add_option("--out", emb.out, "output CSV path")->required();

  SweepArgs swp;
  CLI::App* sweep = app.add_subcommand("sweep", "error and bound table over t and k");
  sweep->add_option("--graph", swp.graph, "input graph path")->required();
  sweep->add_option("--k", swp.k_values, "embedding dimensions")->delimiter(',');
  sweep->add_option("--t", swp.t_values, "head powers")->delimiter(',');
  sweep->add_option("--sigma", swp.sigma, "regularization strength")->capture_default_str();
  sweep->add_option("--c", swp.c, "relative-expansion constant")->capture_default_str();
  sweep->add_option("--exact-gamma-cap", swp.exact_gamma_cap,
                    "max cluster size for exact conductance")->capture_default_str();
  sweep->add_flag("--normalize", swp.normalize, "rescale weights to total mass 1");
  sweep->add_option("--out", swp.out, "output CSV path")->required();

  GdArgs gd;
  CLI::App* gd_check = app.add_subcommand("gd-check", "gradient-descent loss cross-check");
  gd_check->add_option("--graph", gd.graph, "input graph path")->required();
  gd_check->add_option("--k", gd.k, "embedding dimension")->capture_default_str();
  gd_check->add_option("--sigma", gd.sigma, "regularization strength")->capture_default_str();
  gd_check->add_option("--steps", gd.steps, "descent steps")->capture_default_str();
  gd_check->add_option("--lr", gd.lr, "learning rate")->capture_default_str();
  gd_check->add_option("--seed", gd.seed, "init seed")->capture_default_str();
  gd_check->add_flag("--normalize", gd.normalize, "rescale weights to total mass 1");
  gd_check->add_option("--out", gd.out, "write the JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(*generate, gen);
    if (verify->parsed()) return cmd_verify(ver);
    if (embed->parsed()) return cmd_embed(emb);
    if (sweep->parsed()) return cmd_sweep(swp);
    if (gd_check->parsed()) return cmd_gd_check(gd);
  } catch (const spt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
