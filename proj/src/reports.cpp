#include "spt/reports.hpp"

#include <cmath>
#include <cstdio>

namespace spt {

using nlohmann::json;

std::string fmt_g17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json json_number(double v) {
  if (!std::isfinite(v)) return fmt_g17(v);
  return v;
}

json verdict_to_json(const Verdict& v) {
  return json{{"holds", v.holds}, {"margin", json_number(v.margin)}};
}

json gamma_to_json(const GammaResult& gamma) {
  json per = json::array();
  for (const auto& cc : gamma.per_cluster) {
    per.push_back(json{{"lower", json_number(cc.lower)},
                       {"upper", json_number(cc.upper)},
                       {"exact", cc.exact}});
  }
  return json{{"lower", json_number(gamma.lower)},
              {"upper", json_number(gamma.upper)},
              {"exact", gamma.exact},
              {"per_cluster", per}};
}

json stats_to_json(const GraphStats& stats) {
  json spectrum = json::array();
  for (int i = 0; i < stats.lambda_spectrum.size(); ++i) {
    spectrum.push_back(json_number(stats.lambda_spectrum(i)));
  }
  json gaps = json::array();
  for (double g : stats.restricted_gaps) gaps.push_back(json_number(g));
  json tau_rows = json::array();
  for (const auto& row : stats.tau_candidates) {
    json cells = json::array();
    for (double c : row) cells.push_back(json_number(c));
    tau_rows.push_back(cells);
  }
  return json{{"alpha", json_number(stats.alpha)},
              {"rho", json_number(stats.rho)},
              {"beta_max", json_number(stats.beta_max)},
              {"tau", json_number(stats.tau)},
              {"tau_candidates", tau_rows},
              {"gamma", gamma_to_json(stats.gamma)},
              {"restricted_gaps", gaps},
              {"lambda_spectrum", spectrum},
              {"lambda_k1", json_number(stats.lambda_k1)},
              {"source_target_mass_ratio", json_number(stats.source_target_mass_ratio)},
              {"k", stats.k},
              {"c", json_number(stats.c)},
              {"assumptions",
               json{{"a1_cross_cluster", verdict_to_json(stats.a1)},
                    {"a2_conductance", verdict_to_json(stats.a2)},
                    {"a3_relative_expansion", verdict_to_json(stats.a3)},
                    {"a4_average_expansion", verdict_to_json(stats.a4)}}}};
}

const char* lemma_status_name(LemmaStatus status) {
  switch (status) {
    case LemmaStatus::holds: return "holds";
    case LemmaStatus::violated: return "violated";
    case LemmaStatus::not_applicable: return "not_applicable";
  }
  return "unknown";
}

json lemma_to_json(const LemmaReport& report) {
  json witnesses = json::array();
  for (const auto& w : report.witnesses) {
    witnesses.push_back(json{{"i", w.i},
                             {"j", w.j},
                             {"x", w.x},
                             {"t", w.t},
                             {"margin", json_number(w.margin)}});
  }
  return json{{"lemma", lemma_name(report.id)},
              {"status", lemma_status_name(report.status)},
              {"worst_margin", json_number(report.worst_margin)},
              {"witnesses", witnesses},
              {"note", report.note}};
}

json error_report_to_json(const ErrorReport& report) {
  json per = json::array();
  for (double e : report.per_class_errors) per.push_back(json_number(e));
  json out{{"t", report.t},
           {"target_error", json_number(report.target_error)},
           {"per_class_errors", per}};
  if (report.bound_satisfied >= 0) {
    out["bound_value"] = json_number(report.bound_value);
    out["bound_satisfied"] = report.bound_satisfied == 1;
  }
  return out;
}

std::string error_report_csv_header() {
  return "t,k,sigma,target_error,bound_value,bound_satisfied,alpha,rho,"
         "gamma_lower,gamma_upper,lambda_k1";
}

std::string error_report_csv_row(const ErrorReport& report, int k, double sigma,
                                 const GraphStats& stats) {
  std::string row = std::to_string(report.t) + "," + std::to_string(k) + "," +
                    fmt_g17(sigma) + "," + fmt_g17(report.target_error) + ",";
  if (report.bound_satisfied >= 0) {
    row += fmt_g17(report.bound_value);
    row += report.bound_satisfied == 1 ? ",true," : ",false,";
  } else {
    row += "n/a,n/a,";
  }
  row += fmt_g17(stats.alpha) + "," + fmt_g17(stats.rho) + "," +
         fmt_g17(stats.gamma.lower) + "," + fmt_g17(stats.gamma.upper) + "," +
         fmt_g17(stats.lambda_k1);
  return row;
}

std::string sweep_csv_header() {
  return "t,k,sigma,target_error,bound_thm31,bound_satisfied,ratio_thm32,alpha,"
         "rho,beta_max,tau,gamma_lower,gamma_upper,lambda_k1,mass_ratio";
}

std::string sweep_csv_row(const SweepRow& row) {
  std::string line = std::to_string(row.t) + "," + std::to_string(row.k) + "," +
                     fmt_g17(row.sigma) + "," + fmt_g17(row.target_error) + ",";
  if (row.in_theorem_range) {
    line += fmt_g17(row.bound_thm31);
    line += row.bound_satisfied == 1 ? ",true," : ",false,";
  } else {
    line += "out_of_theorem_range,n/a,";
  }
  line += row.has_ratio ? fmt_g17(row.ratio_thm32) : "n/a";
  line += "," + fmt_g17(row.alpha) + "," + fmt_g17(row.rho) + "," +
          fmt_g17(row.beta_max) + "," + fmt_g17(row.tau) + "," +
          fmt_g17(row.gamma_lower) + "," + fmt_g17(row.gamma_upper) + "," +
          fmt_g17(row.lambda_k1) + "," + fmt_g17(row.mass_ratio);
  return line;
}

}  // namespace spt
