#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "scitype/param.hpp"

namespace scitype {

enum class ColumnScitype { Numeric, Categorical };

std::string_view to_string(ColumnScitype s) noexcept;
ColumnScitype column_scitype_from_string(std::string_view s);

/// Named, typed column. Numeric cells are finite reals.
class Column {
 public:
  static Column numeric(std::string name, std::vector<double> values);
  static Column categorical(std::string name, std::vector<std::string> values);

  const std::string& name() const noexcept { return name_; }
  ColumnScitype scitype() const noexcept { return scitype_; }
  std::size_t size() const noexcept;

  const std::vector<double>& numeric_values() const;
  const std::vector<std::string>& categorical_values() const;

  Column take(std::span<const std::size_t> rows) const;
  Column renamed(std::string name) const;

  /// Bitwise equality: reals compare by representation.
  friend bool operator==(const Column& a, const Column& b);

 private:
  Column(std::string name, ColumnScitype scitype,
         std::variant<std::vector<double>, std::vector<std::string>> values);

  std::string name_;
  ColumnScitype scitype_;
  std::variant<std::vector<double>, std::vector<std::string>> values_;
};

struct TableSchema {
  std::vector<std::string> names;
  std::vector<ColumnScitype> scitypes;

  friend bool operator==(const TableSchema&, const TableSchema&) = default;
};

/// Immutable column-typed table. Column names are unique.
class Table {
 public:
  Table() = default;
  explicit Table(std::vector<Column> columns);
  /// Table with `n_rows` rows and no columns.
  static Table empty_with_rows(std::size_t n_rows);

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return columns_.size(); }

  const std::vector<Column>& columns() const noexcept { return columns_; }
  const Column& column(std::size_t i) const { return columns_.at(i); }
  /// Throws SchemaMismatch when missing.
  const Column& column(std::string_view name) const;
  const Column* find(std::string_view name) const noexcept;

  std::vector<std::string> names() const;
  TableSchema schema() const;

  Table take_rows(std::span<const std::size_t> rows) const;
  /// Columns in the given order; SchemaMismatch if one is missing.
  Table select(std::span<const std::string> names) const;
  Table drop(std::string_view name) const;

  /// rows x cols matrix of the numeric columns, in column order.
  /// ScitypeMismatch if a categorical column is present.
  Eigen::MatrixXd numeric_matrix() const;

  friend bool operator==(const Table& a, const Table& b) = default;

 private:
  std::vector<Column> columns_;
  std::size_t n_rows_ = 0;
};

enum class LabelDomain { Finite, Real };

/// Target vector: finite label set (classification) or reals (regression).
/// Values are homogeneous: all numeric or all text. Text requires Finite.
class LabelVector {
 public:
  LabelVector() = default;
  static LabelVector real(std::vector<double> values);
  static LabelVector classes(std::vector<std::string> values);
  static LabelVector classes(std::vector<double> values);

  LabelDomain domain() const noexcept { return domain_; }
  std::size_t size() const noexcept;
  bool is_numeric() const noexcept { return values_.index() == 0; }
  const std::vector<double>& numeric() const;
  const std::vector<std::string>& text() const;

  /// Single label as a real or text ParamValue.
  ParamValue at(std::size_t i) const;
  LabelVector take(std::span<const std::size_t> rows) const;
  /// Same domain, values replaced by a constant of matching kind.
  static LabelVector filled(const ParamValue& label, std::size_t n, LabelDomain domain);

  /// Distinct labels in canonical order (numeric ascending, then text
  /// lexicographic).
  std::vector<ParamValue> distinct() const;

  friend bool operator==(const LabelVector& a, const LabelVector& b);

 private:
  LabelVector(std::variant<std::vector<double>, std::vector<std::string>> v, LabelDomain d);

  std::variant<std::vector<double>, std::vector<std::string>> values_;
  LabelDomain domain_ = LabelDomain::Real;
};

/// Canonical label order: numeric before text, numeric ascending, text
/// lexicographic.
bool label_less(const ParamValue& a, const ParamValue& b);

/// Strictly increasing integer index paired with real values.
class TimeSeries {
 public:
  TimeSeries() = default;
  /// Index 0..n-1.
  explicit TimeSeries(std::vector<double> values);
  TimeSeries(std::vector<std::int64_t> index, std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  const std::vector<std::int64_t>& index() const noexcept { return index_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// First `n` observations.
  TimeSeries head(std::size_t n) const;

  friend bool operator==(const TimeSeries& a, const TimeSeries& b);

 private:
  std::vector<std::int64_t> index_;
  std::vector<double> values_;
};

/// Strictly increasing positive offsets relative to the training cutoff.
class ForecastingHorizon {
 public:
  ForecastingHorizon() = default;
  ForecastingHorizon(std::initializer_list<std::int64_t> offsets);
  explicit ForecastingHorizon(std::vector<std::int64_t> offsets);

  const std::vector<std::int64_t>& offsets() const noexcept { return offsets_; }
  bool empty() const noexcept { return offsets_.empty(); }
  std::size_t size() const noexcept { return offsets_.size(); }
  std::int64_t max() const;

  friend bool operator==(const ForecastingHorizon&, const ForecastingHorizon&) = default;

 private:
  std::vector<std::int64_t> offsets_;
};

/// Row order that sorts rows lexicographically by cell values (columns in
/// table order), then by label. Identical multisets of rows always map to
/// the same ordered sequence.
std::vector<std::size_t> canonical_row_order(const Table& X, const LabelVector* y = nullptr);

/// CSV with a header row. Columns whose every cell parses as a finite real
/// are numeric, all others categorical. Throws DataError.
Table parse_csv(std::string_view text);
Table read_csv(const std::filesystem::path& path);

}  // namespace scitype
