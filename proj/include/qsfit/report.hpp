#pragma once

// JSON documents and gnuplot-style TSV plot data for fits, model rankings
// and parameter series. Every JSON document embeds a RunManifest.

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qsfit/analysis.hpp"
#include "qsfit/fit.hpp"
#include "qsfit/ingest.hpp"
#include "qsfit/models.hpp"

namespace qsfit {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  FitConfig config;
  double mean_offset = 5.0;
  double reject_below = kDefaultRejectBelow;
  double scale = 1.0;
  std::string family;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

/// R² as a table would print it: four decimals, "1" from 0.99995 upward.
inline std::string display_r_squared(double r2) {
  if (!std::isfinite(r2)) return "nan";
  if (r2 >= 0.99995) return "1";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", r2);
  return buf;
}

inline nlohmann::ordered_json to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["inputs"] = m.inputs;
  j["tool_version"] = kToolVersion;
  j["seed"] = m.config.seed;
  j["config"] = {
      {"family", m.family},
      {"max_iterations", m.config.max_iterations},
      {"gradient_tolerance", m.config.gradient_tolerance},
      {"step_tolerance", m.config.step_tolerance},
      {"lambda_init", m.config.lambda_init},
      {"lambda_up", m.config.lambda_up},
      {"lambda_down", m.config.lambda_down},
      {"multistart", m.config.multistart},
      {"pole_guard", m.config.pole_guard},
      {"mean_offset", m.mean_offset},
      {"reject_below", m.reject_below},
      {"scale", m.scale},
  };
  for (auto it = m.extra.begin(); it != m.extra.end(); ++it) j["config"][it.key()] = it.value();
  return j;
}

inline nlohmann::ordered_json to_json(const ModelParams& p) {
  return {{"T", p.temperature}, {"mu", p.chemical_potential}, {"c", p.degeneracy}};
}

inline nlohmann::ordered_json to_json(const TableRef& t) {
  nlohmann::ordered_json j;
  j["country"] = t.country;
  j["year"] = t.year;
  j["month"] = t.month ? nlohmann::ordered_json(*t.month) : nlohmann::ordered_json();
  j["kind"] = to_string(t.kind);
  j["basis"] = to_string(t.basis);
  j["holder"] = to_string(t.holder);
  j["currency"] = t.currency;
  return j;
}

inline nlohmann::ordered_json to_json(const FitResult& r, double reject_below) {
  nlohmann::ordered_json j;
  j["family"] = to_string(r.family);
  j["params"] = to_json(r.params);
  j["log_amplitude"] = r.log_amplitude;
  j["r_squared"] = r.r_squared;
  j["r_squared_display"] = display_r_squared(r.r_squared);
  j["ss_res"] = r.ss_res;
  j["residuals"] = r.residuals;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["termination"] = to_string(r.termination);
  j["restart"] = r.restart;
  j["rejected"] = is_rejected(r, reject_below);
  return j;
}

inline nlohmann::ordered_json to_json(const CumulativePoints& pts) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& p : pts.points) arr.push_back({p.x, p.y});
  return arr;
}

inline nlohmann::ordered_json to_json(const ModelOutcome& o, double reject_below) {
  if (o.fit) return to_json(*o.fit, reject_below);
  nlohmann::ordered_json j;
  j["family"] = to_string(o.family);
  j["error_kind"] = o.error_kind ? to_string(*o.error_kind) : "Error";
  j["error"] = o.error;
  return j;
}

inline nlohmann::ordered_json to_json(const ParamSeries& s) {
  nlohmann::ordered_json j;
  j["country"] = s.country;
  j["kind"] = to_string(s.kind);
  j["basis"] = to_string(s.basis);
  j["family"] = to_string(s.family);
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : s.entries) {
    nlohmann::ordered_json je;
    je["year"] = e.year;
    je["month"] = e.month ? nlohmann::ordered_json(*e.month) : nlohmann::ordered_json();
    if (e.params) {
      je["T"] = e.params->temperature;
      je["mu"] = e.params->chemical_potential;
      je["c"] = e.params->degeneracy;
      je["r_squared"] = e.r_squared;
      je["converged"] = e.fit->converged;
    } else {
      je["error"] = e.error;
    }
    je["rejected"] = e.rejected;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline nlohmann::ordered_json to_json(const TrendReport& r) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) {
    rows.push_back({{"year", e.year},
                    {"T", e.temperature},
                    {"delta_T", e.delta ? nlohmann::ordered_json(*e.delta)
                                        : nlohmann::ordered_json()}});
  }
  j["entries"] = std::move(rows);
  j["flagged_drops"] = r.flagged_drops;
  return j;
}

inline nlohmann::ordered_json to_json(const SymmetryReport& r) {
  nlohmann::ordered_json j;
  j["pearson_r"] = r.pearson_r;
  j["sign_agreement"] = r.sign_agreement;
  j["n_overlap"] = r.n_overlap;
  j["years"] = r.years;
  j["delta_mu"] = r.delta_mu;
  j["proxy"] = r.proxy;
  return j;
}

/// Two gnuplot data blocks separated by a double blank line (select with
/// `index 0` / `index 1`): the data points with the model at each, then a
/// 200-point model curve spanning the data's x range. Model values that
/// cannot be evaluated (poles) are written as NaN.
inline void write_curve_tsv(std::ostream& out, const CumulativePoints& pts,
                            ModelFamily family, const ModelParams& params,
                            std::size_t dense_points = 200) {
  auto model = [&](double x) {
    try {
      return eval(family, params, x);
    } catch (const PoleError&) {
      return std::nan("");
    }
  };
  out << "# " << to_string(family) << " T=" << format_double(params.temperature)
      << " mu=" << format_double(params.chemical_potential)
      << " c=" << format_double(params.degeneracy) << '\n';
  out << "# x\ty_data\ty_model\n";
  for (const auto& p : pts.points) {
    out << format_double(p.x) << '\t' << format_double(p.y) << '\t'
        << format_double(model(p.x)) << '\n';
  }
  out << "\n\n# x\ty_model\n";
  if (pts.size() == 0) return;
  const double lo = pts.points.front().x, hi = pts.points.back().x;
  for (std::size_t i = 0; i < dense_points; ++i) {
    const double x = dense_points == 1
                         ? lo
                         : lo + (hi - lo) * static_cast<double>(i) /
                                    static_cast<double>(dense_points - 1);
    out << format_double(x) << '\t' << format_double(model(x)) << '\n';
  }
}

/// year, value[, rejected] rows for one parameter of a series.
inline void write_series_tsv(std::ostream& out, const ParamSeries& s, const char* name,
                             double ModelParams::*field) {
  out << "# " << s.country << ' ' << to_string(s.kind) << '/' << to_string(s.basis) << '\n';
  out << "# year\t" << name << "\trejected\n";
  for (const auto& e : s.entries) {
    if (!e.params) continue;
    out << e.year << '\t' << format_double((*e.params).*field) << '\t' << (e.rejected ? 1 : 0)
        << '\n';
  }
}

}  // namespace qsfit
