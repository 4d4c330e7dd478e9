// qsfit: fit Fermi-Dirac / Bose-Einstein / Boltzmann-Gibbs curves to decile
// income tables and track the fitted parameters across years.
//
// Exit codes: 0 success, 2 input/parse error, 3 fit error, 4 mixed series,
// 5 insufficient data.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qsfit/qsfit.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kParse = 2, kFit = 3, kMixed = 4, kInsufficient = 5 };

int exit_code_for(qsfit::ErrorKind kind) {
  using qsfit::ErrorKind;
  switch (kind) {
    case ErrorKind::Schema:
    case ErrorKind::Order:
    case ErrorKind::Unit:
    case ErrorKind::Scale:
      return kParse;
    case ErrorKind::MixedSeries:
      return kMixed;
    case ErrorKind::InsufficientOverlap:
      return kInsufficient;
    default:
      return kFit;
  }
}

struct CommonOptions {
  std::vector<std::string> files;
  std::string family = "fd";
  double mean_offset = 5.0;
  double reject_below = qsfit::kDefaultRejectBelow;
  int max_iter = 200;
  int multistart = 8;
  std::uint64_t seed = 0;
  double scale = 1.0;
  std::string out;
};

struct LoadedTable {
  std::string file;
  qsfit::DecileTable table;
};

std::vector<LoadedTable> load_tables(const std::vector<std::string>& files) {
  std::vector<LoadedTable> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw qsfit::SchemaError(f + ": cannot open file");
    for (auto& t : qsfit::parse_tables(in, f)) out.push_back({f, std::move(t)});
  }
  return out;
}

qsfit::FitConfig fit_config(const CommonOptions& o) {
  qsfit::FitConfig c;
  c.max_iterations = o.max_iter;
  c.multistart = o.multistart;
  c.seed = o.seed;
  c.validate();
  return c;
}

qsfit::RunManifest manifest(const std::string& command, const CommonOptions& o) {
  qsfit::RunManifest m;
  m.command = command;
  m.inputs = o.files;
  m.config = fit_config(o);
  m.mean_offset = o.mean_offset;
  m.reject_below = o.reject_below;
  m.scale = o.scale;
  m.family = o.family;
  return m;
}

std::vector<qsfit::ModelFamily> families_for(const std::string& flag) {
  if (flag == "all") return {qsfit::kAllFamilies.begin(), qsfit::kAllFamilies.end()};
  auto f = qsfit::parse_family(flag);
  if (!f) throw qsfit::SchemaError("unknown family '" + flag + "' (fd, be, bg, all)");
  return {*f};
}

qsfit::CumulativePoints points_for(const qsfit::DecileTable& t, const CommonOptions& o) {
  auto pts = qsfit::to_cumulative(t, qsfit::MeanOffset(o.mean_offset));
  if (o.scale != 1.0) pts = qsfit::rescale(std::move(pts), o.scale);
  return pts;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qsfit::SchemaError(path.string() + ": cannot write");
  out << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void emit(const CommonOptions& o, const std::string& name, const json& doc) {
  const std::string text = dump(doc);
  std::cout << text;
  if (!o.out.empty()) write_file(fs::path(o.out) / name, text);
}

std::string file_stem(const qsfit::DecileTable& t, std::size_t index) {
  std::ostringstream os;
  os << index << '_' << t.country << '_' << t.year;
  if (t.month) os << '-' << *t.month;
  os << '_' << qsfit::to_string(t.kind) << '_' << qsfit::to_string(t.basis);
  std::string s = os.str();
  for (char& ch : s) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-') ch = '_';
  }
  return s;
}

int cmd_fit(const CommonOptions& o) {
  const auto config = fit_config(o);
  const auto families = families_for(o.family);
  const auto tables = load_tables(o.files);
  if (!o.out.empty()) fs::create_directories(o.out);

  json doc;
  doc["manifest"] = to_json(manifest("fit", o));
  json reports = json::array();
  int status = kOk;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const auto& [file, table] = tables[i];
    const auto pts = points_for(table, o);
    json entry;
    entry["file"] = file;
    entry["table"] = qsfit::to_json(qsfit::TableRef::of(table));
    entry["points"] = qsfit::to_json(pts);
    json fits = json::array();
    for (auto family : families) {
      try {
        const auto r = qsfit::lm_fit(pts, family, config);
        fits.push_back(qsfit::to_json(r, o.reject_below));
        if (!o.out.empty()) {
          std::ostringstream tsv;
          qsfit::write_curve_tsv(tsv, pts, family, r.params);
          const std::string name =
              "curve_" + file_stem(table, i) + "_" + std::string(qsfit::short_name(family)) + ".tsv";
          write_file(fs::path(o.out) / name, tsv.str());
        }
      } catch (const qsfit::Error& e) {
        std::cerr << file << " (" << table.label() << "): " << e.what() << '\n';
        fits.push_back({{"family", qsfit::to_string(family)},
                        {"error_kind", qsfit::to_string(e.kind())},
                        {"error", e.what()}});
        status = kFit;
      }
    }
    entry["fits"] = std::move(fits);
    reports.push_back(std::move(entry));
  }
  doc["tables"] = std::move(reports);
  emit(o, "fit.json", doc);
  return status;
}

int cmd_compare(const CommonOptions& o) {
  const auto config = fit_config(o);
  const auto tables = load_tables(o.files);
  if (!o.out.empty()) fs::create_directories(o.out);

  json doc;
  doc["manifest"] = to_json(manifest("compare", o));
  json reports = json::array();
  int status = kOk;
  for (const auto& [file, table] : tables) {
    const auto pts = points_for(table, o);
    const auto ranking = qsfit::select_model(pts, config);
    json entry;
    entry["file"] = file;
    entry["table"] = qsfit::to_json(qsfit::TableRef::of(table));
    json ranked = json::array();
    bool any_ok = false;
    for (const auto& outcome : ranking) {
      ranked.push_back(qsfit::to_json(outcome, o.reject_below));
      any_ok = any_ok || outcome.ok();
    }
    entry["best"] = any_ok ? json(qsfit::to_string(ranking.front().family)) : json();
    entry["ranking"] = std::move(ranked);
    if (!any_ok) {
      std::cerr << file << " (" << table.label() << "): no family could be fitted: "
                << ranking.front().error << '\n';
      status = kFit;
    }
    reports.push_back(std::move(entry));
  }
  doc["tables"] = std::move(reports);
  emit(o, "compare.json", doc);
  return status;
}

struct SeriesOptionsCli {
  std::string proxy;
  int lag = 0;
  bool include_rejected = false;
};

int cmd_series(const CommonOptions& o, const SeriesOptionsCli& so) {
  const auto config = fit_config(o);
  const auto families = families_for(o.family);
  if (families.size() != 1) throw qsfit::SchemaError("series needs a single --family");
  const auto loaded = load_tables(o.files);
  std::vector<qsfit::DecileTable> tables;
  for (const auto& l : loaded) tables.push_back(l.table);

  std::optional<qsfit::ProxySeries> proxy;
  if (!so.proxy.empty()) {
    std::ifstream in(so.proxy);
    if (!in) throw qsfit::SchemaError(so.proxy + ": cannot open file");
    proxy = qsfit::parse_proxy(in, so.proxy);
  }

  qsfit::SeriesOptions sopt;
  sopt.mean_offset = qsfit::MeanOffset(o.mean_offset);
  sopt.reject_below = o.reject_below;
  sopt.scale = o.scale;
  const auto series = qsfit::extract_series(tables, families.front(), config, sopt);
  const qsfit::DiagnosticOptions dopt{so.include_rejected, so.lag};

  auto m = manifest("series", o);
  if (!so.proxy.empty()) m.inputs.push_back(so.proxy);
  m.extra["proxy"] = so.proxy;
  m.extra["lag"] = so.lag;
  m.extra["include_rejected"] = so.include_rejected;

  json doc;
  doc["manifest"] = to_json(m);
  doc["series"] = qsfit::to_json(series);
  doc["temperature_report"] = qsfit::to_json(qsfit::temperature_report(series, dopt));
  if (proxy) doc["symmetry"] = qsfit::to_json(qsfit::symmetry_check(series, *proxy, dopt));

  if (!o.out.empty()) {
    fs::create_directories(o.out);
    std::ostringstream t, mu;
    qsfit::write_series_tsv(t, series, "T", &qsfit::ModelParams::temperature);
    qsfit::write_series_tsv(mu, series, "mu", &qsfit::ModelParams::chemical_potential);
    write_file(fs::path(o.out) / "temperature.tsv", t.str());
    write_file(fs::path(o.out) / "chemical_potential.tsv", mu.str());
  }
  emit(o, "series.json", doc);
  return kOk;
}

struct SynthCli {
  std::vector<double> params;
  std::string family = "fd";
  std::string kind = "upper";
  double sigma = 0.0;
  std::uint64_t seed = 0;
  double mean_offset = 5.0;
  std::string country = "synthetic";
  int year = 2000;
  std::string basis = "net";
  std::string holder = "individual";
  std::string currency = "EUR";
  std::string out;
};

int cmd_synth(const SynthCli& s) {
  if (s.params.size() != 3) throw qsfit::SchemaError("--params expects T,mu,c");
  auto family = qsfit::parse_family(s.family);
  if (!family) throw qsfit::SchemaError("unknown family '" + s.family + "' (fd, be, bg)");
  auto kind = qsfit::parse_kind(s.kind);
  if (!kind) throw qsfit::SchemaError("unknown kind '" + s.kind + "'");
  auto basis = qsfit::parse_basis(s.basis);
  if (!basis) throw qsfit::SchemaError("unknown basis '" + s.basis + "'");
  auto holder = qsfit::parse_holder(s.holder);
  if (!holder) throw qsfit::SchemaError("unknown holder '" + s.holder + "'");

  qsfit::SynthOptions opt;
  opt.mean_offset = qsfit::MeanOffset(s.mean_offset);
  opt.country = s.country;
  opt.year = s.year;
  opt.basis = *basis;
  opt.holder = *holder;
  opt.currency = s.currency;
  const qsfit::ModelParams p{s.params[0], s.params[1], s.params[2]};
  const auto table = qsfit::synth_table(p, *family, *kind, s.sigma, s.seed, opt);

  std::ostringstream csv;
  qsfit::write_table_csv(csv, table);
  std::cout << csv.str();
  if (!s.out.empty()) {
    fs::create_directories(s.out);
    write_file(fs::path(s.out) / "synth.csv", csv.str());
  }
  return kOk;
}

void add_common(CLI::App* app, CommonOptions& o, bool with_family) {
  app->add_option("files", o.files, "Decile table CSV files")->required();
  if (with_family) {
    app->add_option("--family", o.family, "fd, be, bg or all")->capture_default_str();
  }
  app->add_option("--mean-offset", o.mean_offset, "Percent offset for decile means, [0, 10)")
      ->capture_default_str();
  app->add_option("--reject-below", o.reject_below, "Flag fits with R^2 below this")
      ->capture_default_str();
  app->add_option("--max-iter", o.max_iter, "Levenberg-Marquardt iterations per start")
      ->capture_default_str();
  app->add_option("--multistart", o.multistart, "Number of starts")->capture_default_str();
  app->add_option("--seed", o.seed, "Seed for restart perturbations")->capture_default_str();
  app->add_option("--scale", o.scale, "Multiply all incomes by this factor")
      ->capture_default_str();
  app->add_option("--out", o.out, "Directory for JSON and TSV outputs");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-statistics fits of decile income distributions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qsfit::kToolVersion);

  CommonOptions fit_opts, compare_opts, series_opts;
  SeriesOptionsCli series_extra;
  SynthCli synth;

  auto* fit = app.add_subcommand("fit", "Fit one model family to each table");
  add_common(fit, fit_opts, true);

  auto* compare = app.add_subcommand("compare", "Rank all model families by R^2 per table");
  add_common(compare, compare_opts, false);
  compare_opts.family = "all";

  auto* series = app.add_subcommand("series", "Parameter time series with trend diagnostics");
  add_common(series, series_opts, true);
  series->add_option("--proxy", series_extra.proxy, "year,growth_percent CSV");
  series->add_option("--lag", series_extra.lag, "Pair delta-mu of year t with proxy year t+lag")
      ->capture_default_str();
  series->add_flag("--include-rejected", series_extra.include_rejected,
                   "Keep rejected fits in the diagnostics");

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic decile table");
  synth_cmd->add_option("--params", synth.params, "T,mu,c")->delimiter(',')->required();
  synth_cmd->add_option("--family", synth.family, "fd, be or bg")->capture_default_str();
  synth_cmd->add_option("--kind", synth.kind, "mean, upper or median_monthly")
      ->capture_default_str();
  synth_cmd->add_option("--sigma", synth.sigma, "Std of noise on ln-percent levels")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Noise seed")->capture_default_str();
  synth_cmd->add_option("--mean-offset", synth.mean_offset, "Percent offset for decile means")
      ->capture_default_str();
  synth_cmd->add_option("--country", synth.country)->capture_default_str();
  synth_cmd->add_option("--year", synth.year)->capture_default_str();
  synth_cmd->add_option("--basis", synth.basis)->capture_default_str();
  synth_cmd->add_option("--holder", synth.holder)->capture_default_str();
  synth_cmd->add_option("--currency", synth.currency)->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "Directory for synth.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*fit) return cmd_fit(fit_opts);
    if (*compare) return cmd_compare(compare_opts);
    if (*series) return cmd_series(series_opts, series_extra);
    if (*synth_cmd) return cmd_synth(synth);
  } catch (const qsfit::Error& e) {
    std::cerr << "qsfit: " << qsfit::to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "qsfit: " << e.what() << '\n';
    return kParse;
  }
  return kOk;
}
