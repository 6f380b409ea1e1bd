#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "scitype/data.hpp"
#include "scitype/error.hpp"

namespace scitype {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

Table small_table() {
  return Table({Column::numeric("x0", {3.0, 1.0, 2.0}), Column::categorical("c", {"b", "a", "b"})});
}

TEST(Column, NumericRejectsNonFinite) {
  EXPECT_EQ(code_of([] { Column::numeric("x", {1.0, std::numeric_limits<double>::quiet_NaN()}); }),
            ErrorCode::DomainViolation);
}

TEST(Column, TypedAccessIsChecked) {
  const Column c = Column::categorical("c", {"a"});
  EXPECT_EQ(code_of([&] { (void)c.numeric_values(); }), ErrorCode::ScitypeMismatch);
}

TEST(Column, EqualityIsBitwise) {
  EXPECT_NE(Column::numeric("x", {0.0}), Column::numeric("x", {-0.0}));
  EXPECT_EQ(Column::numeric("x", {0.1}), Column::numeric("x", {0.1}));
  EXPECT_NE(Column::numeric("x", {1.0}), Column::numeric("y", {1.0}));
}

TEST(Table, RejectsDuplicateNamesAndRaggedColumns) {
  EXPECT_EQ(code_of([] { Table({Column::numeric("x", {1.0}), Column::numeric("x", {2.0})}); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Table({Column::numeric("x", {1.0}), Column::numeric("y", {1.0, 2.0})}); }),
            ErrorCode::LengthMismatch);
}

TEST(Table, SchemaListsNamesAndScitypes) {
  const TableSchema s = small_table().schema();
  EXPECT_EQ(s.names, (std::vector<std::string>{"x0", "c"}));
  EXPECT_EQ(s.scitypes, (std::vector<ColumnScitype>{ColumnScitype::Numeric, ColumnScitype::Categorical}));
}

TEST(Table, SelectReordersAndReportsMissingColumns) {
  const Table t = small_table();
  const std::vector<std::string> order{"c", "x0"};
  EXPECT_EQ(t.select(order).names(), order);
  const std::vector<std::string> missing{"zz"};
  EXPECT_EQ(code_of([&] { (void)t.select(missing); }), ErrorCode::SchemaMismatch);
}

TEST(Table, TakeRowsAndDrop) {
  const Table t = small_table();
  const std::vector<std::size_t> rows{2, 0};
  const Table u = t.take_rows(rows);
  EXPECT_EQ(u.column("x0").numeric_values(), (std::vector<double>{2.0, 3.0}));
  EXPECT_EQ(t.drop("c").names(), (std::vector<std::string>{"x0"}));
}

TEST(Table, NumericMatrixRequiresNumericColumns) {
  EXPECT_EQ(code_of([] { (void)small_table().numeric_matrix(); }), ErrorCode::ScitypeMismatch);
  const Eigen::MatrixXd m = small_table().drop("c").numeric_matrix();
  EXPECT_EQ(m.rows(), 3);
  EXPECT_EQ(m(1, 0), 1.0);
}

TEST(LabelVector, DistinctIsCanonicallyOrdered) {
  const auto d = LabelVector::classes(std::vector<std::string>{"b", "a", "b", "c"}).distinct();
  EXPECT_EQ(d, (std::vector<ParamValue>{"a", "b", "c"}));
  const auto n = LabelVector::classes(std::vector<double>{2.0, 1.0, 2.0}).distinct();
  EXPECT_EQ(n, (std::vector<ParamValue>{1.0, 2.0}));
}

TEST(LabelVector, NumericSortsBeforeText) {
  EXPECT_TRUE(label_less(ParamValue(10.0), ParamValue("a")));
  EXPECT_FALSE(label_less(ParamValue("a"), ParamValue(10.0)));
  EXPECT_TRUE(label_less(ParamValue("a"), ParamValue("b")));
}

TEST(LabelVector, DomainsAreExplicit) {
  EXPECT_EQ(LabelVector::real({1.0}).domain(), LabelDomain::Real);
  EXPECT_EQ(LabelVector::classes(std::vector<double>{1.0}).domain(), LabelDomain::Finite);
  EXPECT_NE(LabelVector::real({1.0}), LabelVector::classes(std::vector<double>{1.0}));
}

TEST(TimeSeries, IndexMustIncreaseStrictly) {
  EXPECT_EQ(code_of([] { TimeSeries({0, 0}, {1.0, 2.0}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { TimeSeries({0}, {1.0, 2.0}); }), ErrorCode::LengthMismatch);
  const TimeSeries y({1.0, 2.0, 3.0});
  EXPECT_EQ(y.index(), (std::vector<std::int64_t>{0, 1, 2}));
  EXPECT_EQ(y.head(2).values(), (std::vector<double>{1.0, 2.0}));
}

TEST(ForecastingHorizon, OffsetsArePositiveAndIncreasing) {
  EXPECT_EQ(code_of([] { ForecastingHorizon{0}; }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { ForecastingHorizon{2, 1}; }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { (void)ForecastingHorizon{}.max(); }), ErrorCode::EmptyHorizon);
  EXPECT_EQ((ForecastingHorizon{1, 3}).max(), 3);
}

TEST(CanonicalOrder, SortsRowsLexicographically) {
  const Table t({Column::numeric("a", {2.0, 1.0, 2.0, 1.0}), Column::numeric("b", {1.0, 5.0, 0.0, 4.0})});
  EXPECT_EQ(canonical_row_order(t), (std::vector<std::size_t>{3, 1, 2, 0}));
}

TEST(CanonicalOrder, BreaksTiesByLabel) {
  const Table t({Column::numeric("a", {1.0, 1.0})});
  const LabelVector y = LabelVector::classes(std::vector<std::string>{"b", "a"});
  EXPECT_EQ(canonical_row_order(t, &y), (std::vector<std::size_t>{1, 0}));
}

TEST(Csv, InfersColumnScitypes) {
  const Table t = parse_csv("x,label\n1.5,a\n2,b\n");
  EXPECT_EQ(t.n_rows(), 2U);
  EXPECT_EQ(t.column("x").scitype(), ColumnScitype::Numeric);
  EXPECT_EQ(t.column("label").scitype(), ColumnScitype::Categorical);
  EXPECT_EQ(t.column("x").numeric_values(), (std::vector<double>{1.5, 2.0}));
}

TEST(Csv, MalformedInputIsADataError) {
  EXPECT_EQ(code_of([] { (void)parse_csv(""); }), ErrorCode::DataError);
  EXPECT_EQ(code_of([] { (void)parse_csv("a,b\n1\n"); }), ErrorCode::DataError);
  EXPECT_EQ(code_of([] { (void)read_csv("/nonexistent/file.csv"); }), ErrorCode::DataError);
}

}  // namespace
}  // namespace scitype
