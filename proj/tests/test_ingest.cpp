#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "qsfit/analysis.hpp"
#include "qsfit/ingest.hpp"

namespace qsfit {
namespace {

constexpr const char* kHeader =
    "country,year,month,kind,basis,holder,currency,scale_factor,decile,income\n";

std::string table_csv(const std::string& country, int year, const std::string& kind,
                      const std::vector<double>& incomes, const std::string& currency = "EUR",
                      const std::string& scale = "1", const std::string& basis = "net") {
  std::ostringstream os;
  for (std::size_t i = 0; i < incomes.size(); ++i) {
    os << country << ',' << year << ",," << kind << ',' << basis << ",individual," << currency
       << ',' << scale << ',' << (i + 1) << ',' << format_double(incomes[i]) << '\n';
  }
  return os.str();
}

std::vector<double> increasing(std::size_t n, double start = 8000, double step = 2500) {
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(start + step * static_cast<double>(i));
  return v;
}

TEST(IngestTest, ParsesUpperLimitTable) {
  std::istringstream in(kHeader + table_csv("Finland", 2008, "upper", increasing(9)));
  const DecileTable t = parse_table(in, "finland.csv");
  EXPECT_EQ(t.country, "Finland");
  EXPECT_EQ(t.year, 2008);
  EXPECT_FALSE(t.month.has_value());
  EXPECT_EQ(t.kind, TableKind::UpperLimit);
  EXPECT_EQ(t.basis, IncomeBasis::Net);
  EXPECT_EQ(t.values.size(), 9u);
  EXPECT_DOUBLE_EQ(t.values.front(), 8000.0);
}

TEST(IngestTest, DuplicateValueIsOrderError) {
  auto v = increasing(10);
  v[4] = v[3];
  std::istringstream in(kHeader + table_csv("Finland", 1990, "mean", v));
  EXPECT_THROW(parse_table(in), OrderError);
}

TEST(IngestTest, HeavyLeuRescaling) {
  const std::vector<double> lei = {5.0e6, 7.0e6, 9.0e6, 1.1e7, 1.3e7,
                                   1.5e7, 1.8e7, 2.2e7, 2.8e7, 4.0e7};
  std::istringstream in(kHeader + table_csv("Romania", 2004, "mean", lei, "leu", "1/10000"));
  const DecileTable t = parse_table(in);
  EXPECT_EQ(t.currency, "heavy-leu");
  EXPECT_DOUBLE_EQ(t.scale_factor, 1e-4);
  for (std::size_t i = 0; i < lei.size(); ++i) EXPECT_DOUBLE_EQ(t.values[i], lei[i] / 10000.0);
}

TEST(IngestTest, OtherScaleKeepsCurrencyLabel) {
  std::istringstream in(kHeader + table_csv("X", 2000, "upper", increasing(9), "EUR", "0.5"));
  const DecileTable t = parse_table(in);
  EXPECT_EQ(t.currency, "EUR");
  EXPECT_DOUBLE_EQ(t.values.front(), 4000.0);
}

TEST(IngestTest, SchemaErrors) {
  {
    std::istringstream in("country,year,kind,decile,income\nA,2000,upper,1,10\n");
    EXPECT_THROW(parse_tables(in), SchemaError);
  }
  {
    std::istringstream in(kHeader + table_csv("A", 2000, "upper", increasing(8)));
    EXPECT_THROW(parse_tables(in), SchemaError);
  }
  {
    std::istringstream in(kHeader + table_csv("A", 2000, "mean", increasing(9)));
    EXPECT_THROW(parse_tables(in), SchemaError);
  }
  {
    std::istringstream in(kHeader + table_csv("A", 2000, "upper", increasing(10)));
    EXPECT_THROW(parse_tables(in), SchemaError);
  }
  {
    std::istringstream in(kHeader + table_csv("A", 2000, "weekly", increasing(9)));
    EXPECT_THROW(parse_tables(in), SchemaError);
  }
  {
    std::istringstream in("");
    EXPECT_THROW(parse_tables(in), SchemaError);
  }
  {
    std::istringstream in(kHeader);
    EXPECT_THROW(parse_tables(in), SchemaError);
  }
}

TEST(IngestTest, DecilesMustAscend) {
  std::string rows = table_csv("A", 2000, "upper", increasing(9));
  // Swap rows 1 and 2.
  auto first = rows.find('\n');
  auto second = rows.find('\n', first + 1);
  std::string swapped =
      rows.substr(first + 1, second - first) + rows.substr(0, first + 1) + rows.substr(second + 1);
  std::istringstream in(kHeader + swapped);
  EXPECT_THROW(parse_tables(in), SchemaError);
}

TEST(IngestTest, NonPositiveIncomeIsUnitError) {
  auto v = increasing(9);
  v[0] = 0.0;
  std::istringstream in(kHeader + table_csv("A", 2000, "upper", v));
  EXPECT_THROW(parse_tables(in), UnitError);
  v[0] = -5.0;
  std::istringstream in2(kHeader + table_csv("A", 2000, "upper", v));
  EXPECT_THROW(parse_tables(in2), UnitError);
}

TEST(IngestTest, ErrorsNameSourceAndLine) {
  auto v = increasing(9);
  v[5] = v[4];
  std::istringstream in(kHeader + table_csv("A", 2000, "upper", v));
  try {
    parse_tables(in, "data/a.csv");
    FAIL() << "expected OrderError";
  } catch (const OrderError& e) {
    EXPECT_NE(std::string(e.what()).find("data/a.csv:7"), std::string::npos) << e.what();
  }
}

TEST(IngestTest, MultipleTablesInOneFile) {
  std::istringstream in(kHeader + table_csv("France", 2003, "mean", increasing(10)) +
                        table_csv("France", 2003, "mean", increasing(10, 9000), "EUR", "1",
                                  "inactive") +
                        table_csv("France", 2004, "mean", increasing(10, 8500)));
  const auto tables = parse_tables(in);
  ASSERT_EQ(tables.size(), 3u);
  EXPECT_EQ(tables[0].basis, IncomeBasis::Net);
  EXPECT_EQ(tables[1].basis, IncomeBasis::Inactive);
  EXPECT_EQ(tables[2].year, 2004);
  std::istringstream again(kHeader + table_csv("F", 1, "mean", increasing(10)) +
                           table_csv("F", 2, "mean", increasing(10)));
  EXPECT_THROW(parse_table(again), SchemaError);
}

TEST(IngestTest, QuotedFieldsAndMonth) {
  std::ostringstream os;
  os << kHeader;
  for (int k = 1; k <= 10; ++k) {
    os << "\"Hong Kong\",2001,6,median_monthly,unspecified,household,HKD,,"
       << k << ',' << 5000 + 1000 * k << "\r\n";
  }
  std::istringstream in(os.str());
  const DecileTable t = parse_table(in);
  EXPECT_EQ(t.country, "Hong Kong");
  EXPECT_EQ(t.month, 6);
  EXPECT_EQ(t.kind, TableKind::MedianMonthly);
  EXPECT_EQ(t.holder, UnitHolder::Household);
  EXPECT_DOUBLE_EQ(t.scale_factor, 1.0);
}

TEST(IngestTest, CumulativeUpperLimitGrid) {
  DecileTable t;
  t.kind = TableKind::UpperLimit;
  for (int k = 0; k < 9; ++k) t.values.push_back(std::exp(9.0 + 0.2 * k));
  const auto pts = to_cumulative(t);
  ASSERT_EQ(pts.size(), 9u);
  EXPECT_NEAR(pts.points[0].x, 9.0, 1e-15);
  EXPECT_NEAR(pts.points[0].y, 4.4998096703302650, 1e-15);
  for (std::size_t k = 1; k <= 9; ++k) {
    EXPECT_DOUBLE_EQ(pts.points[k - 1].y, std::log(100.0 - 10.0 * static_cast<double>(k)));
  }
}

TEST(IngestTest, CumulativeMeanGridOffsets) {
  DecileTable t;
  t.kind = TableKind::MeanIncome;
  for (int k = 0; k < 10; ++k) t.values.push_back(std::exp(8.0 + k / 3.0));
  const auto mid = to_cumulative(t);
  EXPECT_NEAR(mid.points.back().x, 11.0, 1e-14);
  EXPECT_NEAR(mid.points.back().y, 1.6094379124341003, 1e-15);  // ln 5
  EXPECT_NEAR(mid.points.front().y, std::log(95.0), 1e-15);
  const auto edge = to_cumulative(t, MeanOffset(0.0));
  EXPECT_NEAR(edge.points.front().x, 8.0, 1e-15);
  EXPECT_NEAR(edge.points.front().y, 4.6051701859880914, 1e-15);  // ln 100
  EXPECT_THROW(MeanOffset(10.0), SchemaError);
  EXPECT_THROW(MeanOffset(-0.5), SchemaError);
}

TEST(IngestTest, CumulativePointsMonotoneAndDeterministic) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> step(1.01, 1.5);
  for (int trial = 0; trial < 200; ++trial) {
    DecileTable t;
    t.kind = trial % 2 ? TableKind::UpperLimit : TableKind::MeanIncome;
    double v = 1000;
    for (std::size_t k = 0; k < expected_length(t.kind); ++k) t.values.push_back(v *= step(rng));
    const auto a = to_cumulative(t);
    const auto b = to_cumulative(t);
    for (std::size_t i = 0; i < a.size(); ++i) {
      ASSERT_EQ(a.points[i].x, b.points[i].x);
      ASSERT_EQ(a.points[i].y, b.points[i].y);
      ASSERT_GT(a.points[i].y, 0.0);
      ASSERT_LE(a.points[i].y, std::log(100.0));
      if (i > 0) {
        ASSERT_GT(a.points[i].x, a.points[i - 1].x);
        ASSERT_LT(a.points[i].y, a.points[i - 1].y);
      }
    }
    // from_cumulative inverts to_cumulative.
    const DecileTable back = from_cumulative(a);
    for (std::size_t i = 0; i < t.values.size(); ++i)
      ASSERT_NEAR(back.values[i], t.values[i], 1e-12 * t.values[i]);
  }
}

TEST(IngestTest, Rescale) {
  DecileTable t;
  t.kind = TableKind::UpperLimit;
  for (int k = 0; k < 9; ++k) t.values.push_back(1000.0 * (k + 1));
  const auto pts = to_cumulative(t);

  const auto same = rescale(pts, 1.0);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(same.points[i].x, pts.points[i].x);

  const auto big = rescale(pts, 10000.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_NEAR(big.points[i].x - pts.points[i].x, 9.210340371976184, 1e-12);
    EXPECT_EQ(big.points[i].y, pts.points[i].y);
  }

  const auto twice = rescale(rescale(pts, 0.5), 0.5);
  const auto once = rescale(pts, 0.25);
  for (std::size_t i = 0; i < pts.size(); ++i)
    EXPECT_NEAR(twice.points[i].x, once.points[i].x, 1e-14);

  EXPECT_THROW(rescale(pts, 0.0), ScaleError);
  EXPECT_THROW(rescale(pts, -2.0), ScaleError);
}

TEST(IngestTest, WrittenTablesReparse) {
  const DecileTable t = synth_table({0.3074, 10.56, 4.621}, ModelFamily::FermiDirac,
                                    TableKind::UpperLimit);
  std::ostringstream os;
  write_table_csv(os, t);
  std::istringstream in(os.str());
  const DecileTable back = parse_table(in);
  ASSERT_EQ(back.values.size(), t.values.size());
  for (std::size_t i = 0; i < t.values.size(); ++i) EXPECT_EQ(back.values[i], t.values[i]);
  EXPECT_EQ(back.kind, t.kind);
}

}  // namespace
}  // namespace qsfit
