#pragma once

// Decile income tables: CSV parsing, validation, denomination rescaling and
// the cumulative log-log transform that every model is fitted on.
//
// CSV columns (header row required, any order):
//   country, year, month, kind, basis, holder, currency, scale_factor,
//   decile, income
// One row per decile. Rows sharing (country, year, month, kind, basis,
// holder) form one table and must list deciles 1..n in ascending order.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "qsfit/errors.hpp"

namespace qsfit {

enum class TableKind { MeanIncome, UpperLimit, MedianMonthly };
enum class IncomeBasis { Net, Gross, Inactive, Unspecified };
enum class UnitHolder { Individual, Household };

inline std::string_view to_string(TableKind kind) {
  switch (kind) {
    case TableKind::MeanIncome: return "mean";
    case TableKind::UpperLimit: return "upper";
    case TableKind::MedianMonthly: return "median_monthly";
  }
  return "?";
}

inline std::string_view to_string(IncomeBasis basis) {
  switch (basis) {
    case IncomeBasis::Net: return "net";
    case IncomeBasis::Gross: return "gross";
    case IncomeBasis::Inactive: return "inactive";
    case IncomeBasis::Unspecified: return "unspecified";
  }
  return "?";
}

inline std::string_view to_string(UnitHolder holder) {
  switch (holder) {
    case UnitHolder::Individual: return "individual";
    case UnitHolder::Household: return "household";
  }
  return "?";
}

inline std::optional<TableKind> parse_kind(std::string_view s) {
  if (s == "mean") return TableKind::MeanIncome;
  if (s == "upper") return TableKind::UpperLimit;
  if (s == "median_monthly") return TableKind::MedianMonthly;
  return std::nullopt;
}

inline std::optional<IncomeBasis> parse_basis(std::string_view s) {
  if (s == "net") return IncomeBasis::Net;
  if (s == "gross") return IncomeBasis::Gross;
  if (s == "inactive") return IncomeBasis::Inactive;
  if (s == "unspecified" || s.empty()) return IncomeBasis::Unspecified;
  return std::nullopt;
}

inline std::optional<UnitHolder> parse_holder(std::string_view s) {
  if (s == "individual") return UnitHolder::Individual;
  if (s == "household") return UnitHolder::Household;
  return std::nullopt;
}

/// Number of published figures for a table kind. Upper limits stop at the
/// ninth decile boundary.
constexpr std::size_t expected_length(TableKind kind) {
  return kind == TableKind::UpperLimit ? 9 : 10;
}

struct DecileTable {
  std::string country;
  int year = 0;
  std::optional<int> month;  // empty for annual data
  TableKind kind = TableKind::MeanIncome;
  IncomeBasis basis = IncomeBasis::Unspecified;
  UnitHolder holder = UnitHolder::Individual;
  std::string currency;
  double scale_factor = 1.0;   // already applied to values
  std::vector<double> values;  // strictly increasing, positive

  /// Human-readable identifier, e.g. "Finland 2008 upper/net".
  std::string label() const {
    std::ostringstream os;
    os << country << ' ' << year;
    if (month) os << '-' << *month;
    os << ' ' << to_string(kind) << '/' << to_string(basis);
    return os.str();
  }
};

/// Throws SchemaError, OrderError or UnitError when a table breaks its
/// invariants. `where` prefixes the message.
inline void validate(const DecileTable& t, std::string_view where = {}) {
  const std::string prefix =
      where.empty() ? t.label() + ": " : std::string(where) + ": ";
  if (t.values.size() != expected_length(t.kind)) {
    throw SchemaError(prefix + "expected " +
                      std::to_string(expected_length(t.kind)) + " deciles for kind '" +
                      std::string(to_string(t.kind)) + "', got " +
                      std::to_string(t.values.size()));
  }
  if (!(t.scale_factor > 0) || !std::isfinite(t.scale_factor)) {
    throw ScaleError(prefix + "scale_factor must be positive");
  }
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    if (!(t.values[i] > 0) || !std::isfinite(t.values[i])) {
      throw UnitError(prefix + "decile " + std::to_string(i + 1) +
                      " income must be positive and finite");
    }
    if (i > 0 && !(t.values[i] > t.values[i - 1])) {
      throw OrderError(prefix + "decile " + std::to_string(i + 1) +
                       " income does not exceed decile " + std::to_string(i));
    }
  }
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Comma-separated fields; double quotes group a field and "" escapes a quote.
inline std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.emplace_back(trim(cur));
  return fields;
}

inline std::optional<double> to_double(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<int> to_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Decimal or "num/den".
inline std::optional<double> to_ratio(std::string_view s) {
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = to_double(trim(s.substr(0, slash)));
    auto den = to_double(trim(s.substr(slash + 1)));
    if (!num || !den || *den == 0) return std::nullopt;
    return *num / *den;
  }
  return to_double(s);
}

struct Denomination {
  std::string_view from;
  double factor;
  std::string_view to;
};

// Redenominations applied via scale_factor that carry a new currency name.
inline constexpr Denomination kDenominations[] = {
    {"leu", 1.0 / 10000.0, "heavy-leu"},
};

}  // namespace detail

/// Currency label after applying `scale_factor` to figures quoted in
/// `currency`; unchanged unless a known redenomination matches.
inline std::string relabel_currency(std::string_view currency, double scale_factor) {
  for (const auto& d : detail::kDenominations) {
    if (currency == d.from &&
        std::abs(scale_factor - d.factor) <= 1e-12 * d.factor) {
      return std::string(d.to);
    }
  }
  return std::string(currency);
}

/// Parses every table in a CSV stream, in order of first appearance.
/// Errors name `source` and the 1-based line number.
inline std::vector<DecileTable> parse_tables(std::istream& in,
                                             std::string_view source = "<input>") {
  static constexpr std::string_view kColumns[] = {
      "country", "year",     "month",        "kind",   "basis",
      "holder",  "currency", "scale_factor", "decile", "income"};
  enum Col { Country, Year, Month, Kind, Basis, Holder, Currency, Scale, Decile, Income };

  const std::string src(source);
  auto at = [&](std::size_t line) { return src + ":" + std::to_string(line); };

  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
      line.erase(0, 3);
    if (!detail::trim(line).empty()) {
      header = detail::split_csv(line);
      break;
    }
  }
  if (header.empty()) throw SchemaError(src + ": missing header row");

  std::size_t index[std::size(kColumns)];
  for (std::size_t c = 0; c < std::size(kColumns); ++c) {
    auto it = std::find(header.begin(), header.end(), kColumns[c]);
    if (it == header.end()) {
      throw SchemaError(at(lineno) + ": missing column '" + std::string(kColumns[c]) + "'");
    }
    index[c] = static_cast<std::size_t>(it - header.begin());
  }

  struct Pending {
    DecileTable table;
    std::size_t first_line;
    double raw_scale;
    std::string raw_currency;
  };
  std::vector<Pending> pending;
  std::map<std::string, std::size_t> by_key;

  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    auto fields = detail::split_csv(line);
    if (fields.size() != header.size()) {
      throw SchemaError(at(lineno) + ": expected " + std::to_string(header.size()) +
                        " fields, got " + std::to_string(fields.size()));
    }
    auto field = [&](Col c) -> const std::string& { return fields[index[c]]; };

    auto year = detail::to_int(field(Year));
    if (!year) throw SchemaError(at(lineno) + ": bad year '" + field(Year) + "'");
    std::optional<int> month;
    if (!field(Month).empty()) {
      month = detail::to_int(field(Month));
      if (!month || *month < 1 || *month > 12)
        throw SchemaError(at(lineno) + ": bad month '" + field(Month) + "'");
    }
    auto kind = parse_kind(field(Kind));
    if (!kind) throw SchemaError(at(lineno) + ": bad kind '" + field(Kind) + "'");
    auto basis = parse_basis(field(Basis));
    if (!basis) throw SchemaError(at(lineno) + ": bad basis '" + field(Basis) + "'");
    auto holder = parse_holder(field(Holder));
    if (!holder) throw SchemaError(at(lineno) + ": bad holder '" + field(Holder) + "'");
    double scale = 1.0;
    if (!field(Scale).empty()) {
      auto s = detail::to_ratio(field(Scale));
      if (!s) throw SchemaError(at(lineno) + ": bad scale_factor '" + field(Scale) + "'");
      if (!(*s > 0) || !std::isfinite(*s))
        throw ScaleError(at(lineno) + ": scale_factor must be positive");
      scale = *s;
    }
    auto decile = detail::to_int(field(Decile));
    if (!decile) throw SchemaError(at(lineno) + ": bad decile '" + field(Decile) + "'");
    auto income = detail::to_double(field(Income));
    if (!income) throw SchemaError(at(lineno) + ": bad income '" + field(Income) + "'");
    if (!(*income > 0) || !std::isfinite(*income))
      throw UnitError(at(lineno) + ": income must be positive, got " + field(Income));

    std::string key = field(Country) + '\x1f' + field(Year) + '\x1f' +
                      (month ? std::to_string(*month) : "") + '\x1f' +
                      field(Kind) + '\x1f' + std::string(to_string(*basis)) +
                      '\x1f' + field(Holder);
    auto [it, inserted] = by_key.try_emplace(key, pending.size());
    if (inserted) {
      DecileTable t;
      t.country = field(Country);
      t.year = *year;
      t.month = month;
      t.kind = *kind;
      t.basis = *basis;
      t.holder = *holder;
      t.scale_factor = scale;
      t.currency = relabel_currency(field(Currency), scale);
      pending.push_back({std::move(t), lineno, scale, field(Currency)});
    }
    Pending& p = pending[it->second];
    if (p.raw_scale != scale || p.raw_currency != field(Currency)) {
      throw SchemaError(at(lineno) + ": currency/scale_factor differ from line " +
                        std::to_string(p.first_line) + " of the same table");
    }
    const auto expected = static_cast<int>(p.table.values.size()) + 1;
    if (*decile != expected) {
      throw SchemaError(at(lineno) + ": expected decile " + std::to_string(expected) +
                        ", got " + field(Decile));
    }
    if (static_cast<std::size_t>(*decile) > expected_length(*kind)) {
      throw SchemaError(at(lineno) + ": kind '" + field(Kind) + "' has only " +
                        std::to_string(expected_length(*kind)) + " deciles");
    }
    const double value = *income * scale;
    if (!p.table.values.empty() && !(value > p.table.values.back())) {
      throw OrderError(at(lineno) + ": decile " + field(Decile) +
                       " income does not exceed the previous decile");
    }
    p.table.values.push_back(value);
  }

  if (pending.empty()) throw SchemaError(src + ": no data rows");
  std::vector<DecileTable> tables;
  tables.reserve(pending.size());
  for (auto& p : pending) {
    validate(p.table, at(p.first_line) + " (" + p.table.label() + ")");
    tables.push_back(std::move(p.table));
  }
  return tables;
}

/// Parses a stream that must hold exactly one table.
inline DecileTable parse_table(std::istream& in, std::string_view source = "<input>") {
  auto tables = parse_tables(in, source);
  if (tables.size() != 1) {
    throw SchemaError(std::string(source) + ": expected one table, found " +
                      std::to_string(tables.size()));
  }
  return std::move(tables.front());
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Writes a table in the CSV schema accepted by parse_tables(). Values are
/// emitted already scaled, so scale_factor is written as 1.
inline void write_table_csv(std::ostream& out, const DecileTable& t, bool header = true) {
  if (header) {
    out << "country,year,month,kind,basis,holder,currency,scale_factor,decile,income\n";
  }
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    out << t.country << ',' << t.year << ',' << (t.month ? std::to_string(*t.month) : "")
        << ',' << to_string(t.kind) << ',' << to_string(t.basis) << ','
        << to_string(t.holder) << ',' << t.currency << ",1," << (i + 1) << ','
        << format_double(t.values[i]) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Cumulative log-log points

/// Percent offset below a decile's upper cumulative level at which its mean
/// is placed; 5 puts it at the decile midpoint. Must lie in [0, 10).
class MeanOffset {
 public:
  constexpr MeanOffset() = default;
  explicit MeanOffset(double percent) : percent_(percent) {
    if (!(percent >= 0 && percent < 10)) {
      throw SchemaError("mean offset must lie in [0, 10), got " + format_double(percent));
    }
  }
  constexpr double percent() const { return percent_; }

 private:
  double percent_ = 5.0;
};

struct Point {
  double x;  // ln income
  double y;  // ln cumulative percent
};

struct TableRef {
  std::string country;
  int year = 0;
  std::optional<int> month;
  TableKind kind = TableKind::MeanIncome;
  IncomeBasis basis = IncomeBasis::Unspecified;
  UnitHolder holder = UnitHolder::Individual;
  std::string currency;

  static TableRef of(const DecileTable& t) {
    return {t.country, t.year, t.month, t.kind, t.basis, t.holder, t.currency};
  }
};

struct CumulativePoints {
  std::vector<Point> points;
  TableRef source;

  std::size_t size() const { return points.size(); }
};

/// Cumulative percent paired with the k-th figure (1-based) of a table kind.
inline double cumulative_percent(TableKind kind, std::size_t k, MeanOffset offset = {}) {
  const double kk = static_cast<double>(k);
  if (kind == TableKind::UpperLimit) return 100.0 - 10.0 * kk;
  return 100.0 - 10.0 * (kk - 1.0) - offset.percent();
}

inline CumulativePoints to_cumulative(const DecileTable& table, MeanOffset offset = {}) {
  CumulativePoints out;
  out.source = TableRef::of(table);
  out.points.reserve(table.values.size());
  for (std::size_t k = 1; k <= table.values.size(); ++k) {
    out.points.push_back(
        {std::log(table.values[k - 1]), std::log(cumulative_percent(table.kind, k, offset))});
  }
  return out;
}

/// Inverse of to_cumulative(): exponentiates x back into incomes. The y
/// values are not consulted; the kind fixes the grid.
inline DecileTable from_cumulative(const CumulativePoints& points) {
  DecileTable t;
  t.country = points.source.country;
  t.year = points.source.year;
  t.month = points.source.month;
  t.kind = points.source.kind;
  t.basis = points.source.basis;
  t.holder = points.source.holder;
  t.currency = points.source.currency;
  t.values.reserve(points.size());
  for (const auto& p : points.points) t.values.push_back(std::exp(p.x));
  validate(t);
  return t;
}

/// Shifts every x by ln(s): incomes quoted in a unit s times smaller.
inline CumulativePoints rescale(CumulativePoints points, double s) {
  if (!(s > 0) || !std::isfinite(s)) {
    throw ScaleError("rescale factor must be positive and finite, got " + format_double(s));
  }
  const double shift = std::log(s);
  for (auto& p : points.points) p.x += shift;
  return points;
}

}  // namespace qsfit
