#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spt/metrics.hpp"
#include "spt/oracles.hpp"
#include "spt/pfa.hpp"

namespace spt {

// Deterministic %.17g rendering; non-finite values become "inf", "-inf",
// "nan".
std::string fmt_g17(double v);

// JSON value for a real number; non-finite values become strings, since
// JSON has no representation for them.
nlohmann::json json_number(double v);

nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json gamma_to_json(const GammaResult& gamma);
nlohmann::json stats_to_json(const GraphStats& stats);
nlohmann::json lemma_to_json(const LemmaReport& report);
nlohmann::json error_report_to_json(const ErrorReport& report);

const char* lemma_status_name(LemmaStatus status);

std::string error_report_csv_header();
std::string error_report_csv_row(const ErrorReport& report, int k, double sigma,
                                 const GraphStats& stats);

// One sweep line per (t, k). bound_satisfied: 1 true, 0 false, -1 n/a.
struct SweepRow {
  int t = 1;
  int k = 1;
  double sigma = 2.0;
  double target_error = 0.0;
  bool in_theorem_range = false;
  double bound_thm31 = 0.0;
  int bound_satisfied = -1;
  bool has_ratio = false;  // set on the structural-bound probe rows
  double ratio_thm32 = 0.0;
  double alpha = 0.0;
  double rho = 0.0;
  double beta_max = 0.0;
  double tau = 0.0;
  double gamma_lower = 0.0;
  double gamma_upper = 0.0;
  double lambda_k1 = 0.0;
  double mass_ratio = 0.0;
};

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

}  // namespace spt
