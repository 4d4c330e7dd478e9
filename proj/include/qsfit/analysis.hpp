#pragma once

// Multi-year parameter series, synthetic decile tables, and the two series
// diagnostics: temperature drops and chemical-potential vs productivity
// anti-correlation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "qsfit/errors.hpp"
#include "qsfit/fit.hpp"
#include "qsfit/ingest.hpp"
#include "qsfit/models.hpp"

namespace qsfit {

struct SeriesEntry {
  int year = 0;
  std::optional<int> month;
  std::optional<ModelParams> params;  // empty when the fit itself failed
  double r_squared = std::numeric_limits<double>::quiet_NaN();
  bool rejected = true;
  std::optional<FitResult> fit;
  std::string error;
};

struct ParamSeries {
  std::string country;
  TableKind kind = TableKind::MeanIncome;
  IncomeBasis basis = IncomeBasis::Unspecified;
  ModelFamily family = ModelFamily::FermiDirac;
  std::vector<SeriesEntry> entries;  // strictly increasing (year, month)
};

struct ProxyEntry {
  int year;
  double value;  // annual growth rate, percent
};

struct ProxySeries {
  std::vector<ProxyEntry> entries;  // strictly increasing years
};

struct SeriesOptions {
  MeanOffset mean_offset;
  double reject_below = kDefaultRejectBelow;
  double scale = 1.0;  // applied via rescale() before fitting
};

/// Fits one family to every table. Tables must agree on (country, kind,
/// basis); entries come out ordered by period regardless of input order.
inline ParamSeries extract_series(std::span<const DecileTable> tables, ModelFamily family,
                                  const FitConfig& config = {},
                                  const SeriesOptions& options = {}) {
  if (tables.empty()) throw InsufficientOverlapError("no tables to build a series from");
  ParamSeries series;
  series.country = tables.front().country;
  series.kind = tables.front().kind;
  series.basis = tables.front().basis;
  series.family = family;

  std::vector<const DecileTable*> ordered;
  for (const auto& t : tables) {
    if (t.country != series.country || t.kind != series.kind || t.basis != series.basis) {
      throw MixedSeriesError("table " + t.label() + " does not match series " +
                             series.country + " " + std::string(to_string(series.kind)) +
                             "/" + std::string(to_string(series.basis)));
    }
    ordered.push_back(&t);
  }
  auto period = [](const DecileTable* t) { return std::make_pair(t->year, t->month.value_or(0)); };
  std::stable_sort(ordered.begin(), ordered.end(),
                   [&](auto* a, auto* b) { return period(a) < period(b); });
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    if (period(ordered[i]) == period(ordered[i - 1])) {
      throw MixedSeriesError("two tables for the same period: " + ordered[i]->label());
    }
  }

  for (const DecileTable* t : ordered) {
    SeriesEntry e;
    e.year = t->year;
    e.month = t->month;
    try {
      auto pts = to_cumulative(*t, options.mean_offset);
      if (options.scale != 1.0) pts = rescale(std::move(pts), options.scale);
      FitResult r = lm_fit(pts, family, config);
      e.params = r.params;
      e.r_squared = r.r_squared;
      e.rejected = is_rejected(r, options.reject_below);
      e.fit = std::move(r);
    } catch (const Error& err) {
      e.error = std::string(to_string(err.kind())) + ": " + err.what();
      e.rejected = true;
    }
    series.entries.push_back(std::move(e));
  }
  return series;
}

// ---------------------------------------------------------------------------
// Synthetic tables

struct SynthOptions {
  MeanOffset mean_offset;
  std::string country = "synthetic";
  int year = 2000;
  std::optional<int> month;
  IncomeBasis basis = IncomeBasis::Unspecified;
  UnitHolder holder = UnitHolder::Individual;
  std::string currency = "unit";
};

/// x at which the model takes value y: the closed-form inverse of eval().
inline double invert(ModelFamily family, const ModelParams& p, double y) {
  const double ratio = p.degeneracy / y;
  double z = 0;
  switch (family) {
    case ModelFamily::FermiDirac: z = std::log(ratio - 1.0); break;
    case ModelFamily::BoseEinstein: z = std::log1p(ratio); break;
    case ModelFamily::BoltzmannGibbs: z = std::log(ratio); break;
  }
  return p.chemical_potential + p.temperature * z;
}

/// Decile table whose cumulative points lie on the model curve, with
/// optional Gaussian noise (std `noise_sigma`) added to each target level
/// before inversion.
inline DecileTable synth_table(const ModelParams& params, ModelFamily family, TableKind kind,
                               double noise_sigma = 0.0, std::uint64_t seed = 0,
                               const SynthOptions& options = {}) {
  if (!params.valid()) throw SchemaError("synth_table: parameters must have T > 0, c > 0");
  if (!(noise_sigma >= 0)) throw NoiseError("noise sigma must be non-negative");
  const std::size_t n = expected_length(kind);
  const double top = std::log(cumulative_percent(kind, 1, options.mean_offset));
  if (family == ModelFamily::FermiDirac && !(params.degeneracy > top)) {
    throw UnrepresentableError("FermiDirac ceiling c=" + format_double(params.degeneracy) +
                               " does not exceed the top grid level " + format_double(top));
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, noise_sigma > 0 ? noise_sigma : 1.0);

  DecileTable t;
  t.country = options.country;
  t.year = options.year;
  t.month = options.month;
  t.kind = kind;
  t.basis = options.basis;
  t.holder = options.holder;
  t.currency = options.currency;
  t.values.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    double y = std::log(cumulative_percent(kind, k, options.mean_offset));
    if (noise_sigma > 0) y += noise(rng);
    if (!(y > 0) || (family == ModelFamily::FermiDirac && !(y < params.degeneracy))) {
      throw NoiseError("noisy level " + format_double(y) + " at decile " + std::to_string(k) +
                       " falls outside the model's range");
    }
    const double income = std::exp(invert(family, params, y));
    if (!(income > 0) || !std::isfinite(income)) {
      throw UnrepresentableError("decile " + std::to_string(k) + " income is not representable");
    }
    if (!t.values.empty() && !(income > t.values.back())) {
      throw NoiseError("noise reordered deciles " + std::to_string(k - 1) + " and " +
                       std::to_string(k));
    }
    t.values.push_back(income);
  }
  validate(t);
  return t;
}

// ---------------------------------------------------------------------------
// Diagnostics

struct SymmetryReport {
  double pearson_r = 0;
  double sign_agreement = 0;  // fraction of years with opposite signs
  std::size_t n_overlap = 0;
  std::vector<int> years;
  std::vector<double> delta_mu;
  std::vector<double> proxy;
};

struct DiagnosticOptions {
  bool include_rejected = false;
  int lag = 0;  // Δμ of year t is paired with proxy year t + lag
};

namespace detail {
inline bool usable(const SeriesEntry& e, bool include_rejected) {
  return e.params.has_value() && (include_rejected || !e.rejected);
}
}  // namespace detail

/// Pearson correlation and opposite-sign fraction between year-over-year Δμ
/// and the proxy growth rate. Δμ exists only for consecutive calendar years.
inline SymmetryReport symmetry_check(const ParamSeries& series, const ProxySeries& proxy,
                                     const DiagnosticOptions& options = {}) {
  std::map<int, double> mu_by_year;
  for (const auto& e : series.entries) {
    if (e.month || !detail::usable(e, options.include_rejected)) continue;
    mu_by_year[e.year] = e.params->chemical_potential;
  }
  std::map<int, double> proxy_by_year;
  for (const auto& p : proxy.entries) proxy_by_year[p.year] = p.value;

  SymmetryReport rep;
  for (const auto& [year, mu] : mu_by_year) {
    auto prev = mu_by_year.find(year - 1);
    if (prev == mu_by_year.end()) continue;
    auto px = proxy_by_year.find(year + options.lag);
    if (px == proxy_by_year.end()) continue;
    rep.years.push_back(year);
    rep.delta_mu.push_back(mu - prev->second);
    rep.proxy.push_back(px->second);
  }
  rep.n_overlap = rep.years.size();
  if (rep.n_overlap < 3) {
    throw InsufficientOverlapError("symmetry check needs >= 3 overlapping years, got " +
                                   std::to_string(rep.n_overlap));
  }

  const double n = static_cast<double>(rep.n_overlap);
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < rep.n_overlap; ++i) {
    ma += rep.delta_mu[i];
    mb += rep.proxy[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  std::size_t opposite = 0;
  for (std::size_t i = 0; i < rep.n_overlap; ++i) {
    const double a = rep.delta_mu[i] - ma, b = rep.proxy[i] - mb;
    sab += a * b;
    saa += a * a;
    sbb += b * b;
    if (rep.delta_mu[i] * rep.proxy[i] < 0) ++opposite;
  }
  if (!(saa > 0) || !(sbb > 0)) {
    throw DegenerateDataError("symmetry check: Δμ or proxy has zero variance");
  }
  rep.pearson_r = sab / std::sqrt(saa * sbb);
  rep.sign_agreement = static_cast<double>(opposite) / n;
  return rep;
}

struct TrendEntry {
  int year;
  std::optional<int> month;
  double temperature;
  std::optional<double> delta;  // vs previous usable entry
};

struct TrendReport {
  std::vector<TrendEntry> entries;
  std::vector<int> flagged_drops;  // years whose T fell from the previous entry
};

/// T trajectory across usable entries with the years where it fell.
inline TrendReport temperature_report(const ParamSeries& series,
                                      const DiagnosticOptions& options = {}) {
  TrendReport rep;
  for (const auto& e : series.entries) {
    if (!detail::usable(e, options.include_rejected)) continue;
    TrendEntry te{e.year, e.month, e.params->temperature, std::nullopt};
    if (!rep.entries.empty()) {
      te.delta = te.temperature - rep.entries.back().temperature;
      if (*te.delta < 0) rep.flagged_drops.push_back(e.year);
    }
    rep.entries.push_back(te);
  }
  return rep;
}

/// Parses a `year,growth_percent` CSV.
inline ProxySeries parse_proxy(std::istream& in, std::string_view source = "<proxy>") {
  const std::string src(source);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!detail::trim(line).empty()) {
      header = detail::split_csv(line);
      break;
    }
  }
  auto year_col = std::find(header.begin(), header.end(), "year");
  auto value_col = std::find(header.begin(), header.end(), "growth_percent");
  if (year_col == header.end() || value_col == header.end()) {
    throw SchemaError(src + ":" + std::to_string(lineno) +
                      ": proxy header must contain year,growth_percent");
  }
  const auto yi = static_cast<std::size_t>(year_col - header.begin());
  const auto vi = static_cast<std::size_t>(value_col - header.begin());

  ProxySeries out;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    auto fields = detail::split_csv(line);
    const std::string at = src + ":" + std::to_string(lineno);
    if (fields.size() != header.size()) throw SchemaError(at + ": wrong field count");
    auto year = detail::to_int(fields[yi]);
    auto value = detail::to_double(fields[vi]);
    if (!year || !value || !std::isfinite(*value)) throw SchemaError(at + ": bad proxy row");
    if (!out.entries.empty() && !(*year > out.entries.back().year)) {
      throw OrderError(at + ": proxy years must be strictly increasing");
    }
    out.entries.push_back({*year, *value});
  }
  return out;
}

}  // namespace qsfit
