#include "scitype/data.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace scitype {

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  }
  return true;
}

void require_finite(const std::vector<double>& xs, std::string_view what) {
  for (double x : xs) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::DomainViolation, std::string(what) + " contains a non-finite value");
    }
  }
}

// Total order on reals used for canonical sorting; -0.0 sorts before +0.0.
int compare_real(double a, double b) {
  if (a < b) return -1;
  if (b < a) return 1;
  const bool sa = std::signbit(a), sb = std::signbit(b);
  if (sa != sb) return sa ? -1 : 1;
  return 0;
}

template <class T>
std::vector<T> gather(const std::vector<T>& xs, std::span<const std::size_t> rows) {
  std::vector<T> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(xs.at(r));
  return out;
}

}  // namespace

std::string_view to_string(ColumnScitype s) noexcept {
  return s == ColumnScitype::Numeric ? "numeric" : "categorical";
}

ColumnScitype column_scitype_from_string(std::string_view s) {
  if (s == "numeric") return ColumnScitype::Numeric;
  if (s == "categorical") return ColumnScitype::Categorical;
  throw Error(ErrorCode::DomainViolation, "unknown column scitype '" + std::string(s) + "'");
}

// ---------------------------------------------------------------- Column

Column::Column(std::string name, ColumnScitype scitype,
               std::variant<std::vector<double>, std::vector<std::string>> values)
    : name_(std::move(name)), scitype_(scitype), values_(std::move(values)) {}

Column Column::numeric(std::string name, std::vector<double> values) {
  require_finite(values, "column '" + name + "'");
  return Column(std::move(name), ColumnScitype::Numeric, std::move(values));
}

Column Column::categorical(std::string name, std::vector<std::string> values) {
  return Column(std::move(name), ColumnScitype::Categorical, std::move(values));
}

std::size_t Column::size() const noexcept {
  return std::visit([](const auto& v) { return v.size(); }, values_);
}

const std::vector<double>& Column::numeric_values() const {
  if (const auto* v = std::get_if<std::vector<double>>(&values_)) return *v;
  throw Error(ErrorCode::ScitypeMismatch, "column '" + name_ + "' is categorical");
}

const std::vector<std::string>& Column::categorical_values() const {
  if (const auto* v = std::get_if<std::vector<std::string>>(&values_)) return *v;
  throw Error(ErrorCode::ScitypeMismatch, "column '" + name_ + "' is numeric");
}

Column Column::take(std::span<const std::size_t> rows) const {
  return std::visit(
      [&](const auto& v) {
        return Column(name_, scitype_,
                      std::variant<std::vector<double>, std::vector<std::string>>(gather(v, rows)));
      },
      values_);
}

Column Column::renamed(std::string name) const {
  Column c = *this;
  c.name_ = std::move(name);
  return c;
}

bool operator==(const Column& a, const Column& b) {
  if (a.name_ != b.name_ || a.scitype_ != b.scitype_) return false;
  if (a.values_.index() != b.values_.index()) return false;
  if (a.values_.index() == 0) {
    return same_bits(std::get<0>(a.values_), std::get<0>(b.values_));
  }
  return std::get<1>(a.values_) == std::get<1>(b.values_);
}

// ---------------------------------------------------------------- Table

Table::Table(std::vector<Column> columns) : columns_(std::move(columns)) {
  std::set<std::string> seen;
  for (const auto& c : columns_) {
    if (!seen.insert(c.name()).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate column name '" + c.name() + "'");
    }
  }
  if (!columns_.empty()) {
    n_rows_ = columns_.front().size();
    for (const auto& c : columns_) {
      if (c.size() != n_rows_) {
        throw Error(ErrorCode::LengthMismatch, "column '" + c.name() + "' has " +
                                                   std::to_string(c.size()) + " rows, expected " +
                                                   std::to_string(n_rows_));
      }
    }
  }
}

Table Table::empty_with_rows(std::size_t n_rows) {
  Table t;
  t.n_rows_ = n_rows;
  return t;
}

const Column* Table::find(std::string_view name) const noexcept {
  for (const auto& c : columns_) {
    if (c.name() == name) return &c;
  }
  return nullptr;
}

const Column& Table::column(std::string_view name) const {
  if (const auto* c = find(name)) return *c;
  throw Error(ErrorCode::SchemaMismatch, "missing column '" + std::string(name) + "'");
}

std::vector<std::string> Table::names() const {
  std::vector<std::string> out;
  for (const auto& c : columns_) out.push_back(c.name());
  return out;
}

TableSchema Table::schema() const {
  TableSchema s;
  for (const auto& c : columns_) {
    s.names.push_back(c.name());
    s.scitypes.push_back(c.scitype());
  }
  return s;
}

Table Table::take_rows(std::span<const std::size_t> rows) const {
  for (std::size_t r : rows) {
    if (r >= n_rows_) throw Error(ErrorCode::InvalidArgument, "row index out of range");
  }
  if (columns_.empty()) return empty_with_rows(rows.size());
  std::vector<Column> cols;
  cols.reserve(columns_.size());
  for (const auto& c : columns_) cols.push_back(c.take(rows));
  return Table(std::move(cols));
}

Table Table::select(std::span<const std::string> names) const {
  if (names.empty()) return empty_with_rows(n_rows_);
  std::vector<Column> cols;
  cols.reserve(names.size());
  for (const auto& n : names) cols.push_back(column(n));
  return Table(std::move(cols));
}

Table Table::drop(std::string_view name) const {
  std::vector<std::string> keep;
  for (const auto& c : columns_) {
    if (c.name() != name) keep.push_back(c.name());
  }
  return select(keep);
}

Eigen::MatrixXd Table::numeric_matrix() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n_rows_), static_cast<Eigen::Index>(columns_.size()));
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    const auto& v = columns_[j].numeric_values();
    m.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  return m;
}

// ---------------------------------------------------------------- LabelVector

LabelVector::LabelVector(std::variant<std::vector<double>, std::vector<std::string>> v,
                         LabelDomain d)
    : values_(std::move(v)), domain_(d) {}

LabelVector LabelVector::real(std::vector<double> values) {
  require_finite(values, "label vector");
  return LabelVector(std::move(values), LabelDomain::Real);
}

LabelVector LabelVector::classes(std::vector<std::string> values) {
  return LabelVector(std::move(values), LabelDomain::Finite);
}

LabelVector LabelVector::classes(std::vector<double> values) {
  require_finite(values, "label vector");
  return LabelVector(std::move(values), LabelDomain::Finite);
}

std::size_t LabelVector::size() const noexcept {
  return std::visit([](const auto& v) { return v.size(); }, values_);
}

const std::vector<double>& LabelVector::numeric() const {
  if (const auto* v = std::get_if<std::vector<double>>(&values_)) return *v;
  throw Error(ErrorCode::ScitypeMismatch, "labels are text, not numeric");
}

const std::vector<std::string>& LabelVector::text() const {
  if (const auto* v = std::get_if<std::vector<std::string>>(&values_)) return *v;
  throw Error(ErrorCode::ScitypeMismatch, "labels are numeric, not text");
}

ParamValue LabelVector::at(std::size_t i) const {
  if (is_numeric()) return ParamValue(numeric().at(i));
  return ParamValue(text().at(i));
}

LabelVector LabelVector::take(std::span<const std::size_t> rows) const {
  return std::visit(
      [&](const auto& v) {
        return LabelVector(
            std::variant<std::vector<double>, std::vector<std::string>>(gather(v, rows)), domain_);
      },
      values_);
}

LabelVector LabelVector::filled(const ParamValue& label, std::size_t n, LabelDomain domain) {
  if (label.is<std::string>()) {
    if (domain == LabelDomain::Real) {
      throw Error(ErrorCode::DomainViolation, "text label in a real-valued domain");
    }
    return LabelVector(std::vector<std::string>(n, label.as<std::string>()), domain);
  }
  return LabelVector(std::vector<double>(n, label.as_real()), domain);
}

std::vector<ParamValue> LabelVector::distinct() const {
  std::vector<ParamValue> out;
  if (is_numeric()) {
    std::vector<double> v = numeric();
    std::sort(v.begin(), v.end(), [](double a, double b) { return compare_real(a, b) < 0; });
    v.erase(std::unique(v.begin(), v.end(),
                        [](double a, double b) { return compare_real(a, b) == 0; }),
            v.end());
    for (double x : v) out.emplace_back(x);
  } else {
    std::set<std::string> s(text().begin(), text().end());
    for (const auto& x : s) out.emplace_back(x);
  }
  return out;
}

bool operator==(const LabelVector& a, const LabelVector& b) {
  if (a.domain_ != b.domain_ || a.values_.index() != b.values_.index()) return false;
  if (a.is_numeric()) return same_bits(a.numeric(), b.numeric());
  return a.text() == b.text();
}

bool label_less(const ParamValue& a, const ParamValue& b) {
  const bool an = !a.is<std::string>(), bn = !b.is<std::string>();
  if (an != bn) return an;
  if (an) return compare_real(a.as_real(), b.as_real()) < 0;
  return a.as<std::string>() < b.as<std::string>();
}

// ---------------------------------------------------------------- TimeSeries

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
  require_finite(values_, "time series");
  index_.resize(values_.size());
  std::iota(index_.begin(), index_.end(), std::int64_t{0});
}

TimeSeries::TimeSeries(std::vector<std::int64_t> index, std::vector<double> values)
    : index_(std::move(index)), values_(std::move(values)) {
  if (index_.size() != values_.size()) {
    throw Error(ErrorCode::LengthMismatch, "time series index and values differ in length");
  }
  require_finite(values_, "time series");
  for (std::size_t i = 1; i < index_.size(); ++i) {
    if (index_[i] <= index_[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "time series index is not strictly increasing");
    }
  }
}

TimeSeries TimeSeries::head(std::size_t n) const {
  n = std::min(n, size());
  return TimeSeries(std::vector<std::int64_t>(index_.begin(), index_.begin() + static_cast<std::ptrdiff_t>(n)),
                    std::vector<double>(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n)));
}

bool operator==(const TimeSeries& a, const TimeSeries& b) {
  return a.index_ == b.index_ && same_bits(a.values_, b.values_);
}

// ---------------------------------------------------------------- ForecastingHorizon

ForecastingHorizon::ForecastingHorizon(std::initializer_list<std::int64_t> offsets)
    : ForecastingHorizon(std::vector<std::int64_t>(offsets)) {}

ForecastingHorizon::ForecastingHorizon(std::vector<std::int64_t> offsets)
    : offsets_(std::move(offsets)) {
  for (std::size_t i = 0; i < offsets_.size(); ++i) {
    if (offsets_[i] < 1) {
      throw Error(ErrorCode::InvalidArgument, "forecasting horizon offsets must be >= 1");
    }
    if (i > 0 && offsets_[i] <= offsets_[i - 1]) {
      throw Error(ErrorCode::InvalidArgument,
                  "forecasting horizon offsets must be strictly increasing");
    }
  }
}

std::int64_t ForecastingHorizon::max() const {
  if (offsets_.empty()) throw Error(ErrorCode::EmptyHorizon, "forecasting horizon is empty");
  return offsets_.back();
}

// ---------------------------------------------------------------- canonical order

std::vector<std::size_t> canonical_row_order(const Table& X, const LabelVector* y) {
  std::vector<std::size_t> order(X.n_rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto cmp = [&](std::size_t a, std::size_t b) {
    for (const auto& c : X.columns()) {
      int r = 0;
      if (c.scitype() == ColumnScitype::Numeric) {
        r = compare_real(c.numeric_values()[a], c.numeric_values()[b]);
      } else {
        r = c.categorical_values()[a].compare(c.categorical_values()[b]);
      }
      if (r != 0) return r < 0;
    }
    if (y != nullptr) {
      const ParamValue la = y->at(a), lb = y->at(b);
      if (label_less(la, lb)) return true;
      if (label_less(lb, la)) return false;
    }
    return false;
  };
  std::stable_sort(order.begin(), order.end(), cmp);
  return order;
}

// ---------------------------------------------------------------- CSV

namespace {

std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool in_quotes = false, cell_started = false;
  auto end_cell = [&] {
    row.push_back(std::move(cell));
    cell.clear();
    cell_started = false;
  };
  auto end_row = [&] {
    end_cell();
    const bool blank = row.size() == 1 && row.front().empty();
    if (!blank) rows.push_back(std::move(row));
    row.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cell += ch;
      }
      continue;
    }
    if (ch == '"' && !cell_started) {
      in_quotes = true;
      cell_started = true;
    } else if (ch == ',') {
      end_cell();
    } else if (ch == '\n') {
      end_row();
    } else if (ch == '\r') {
      // CRLF
    } else {
      cell += ch;
      cell_started = true;
    }
  }
  if (in_quotes) throw Error(ErrorCode::DataError, "unterminated quoted CSV field");
  if (cell_started || !row.empty()) end_row();
  return rows;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_real(const std::string& raw) {
  std::string s = trim(raw);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

Table parse_csv(std::string_view text) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  const auto rows = split_csv(text);
  if (rows.empty()) throw Error(ErrorCode::DataError, "CSV has no header row");
  const auto& header = rows.front();
  const std::size_t p = header.size();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != p) {
      throw Error(ErrorCode::DataError, "CSV row " + std::to_string(r + 1) + " has " +
                                            std::to_string(rows[r].size()) + " fields, expected " +
                                            std::to_string(p));
    }
  }
  std::vector<Column> cols;
  for (std::size_t j = 0; j < p; ++j) {
    std::vector<double> nums;
    bool numeric = true;
    for (std::size_t r = 1; r < rows.size() && numeric; ++r) {
      if (auto v = parse_real(rows[r][j])) nums.push_back(*v);
      else numeric = false;
    }
    const std::string name = trim(header[j]);
    if (numeric && rows.size() > 1) {
      cols.push_back(Column::numeric(name, std::move(nums)));
    } else {
      std::vector<std::string> cats;
      for (std::size_t r = 1; r < rows.size(); ++r) cats.push_back(trim(rows[r][j]));
      cols.push_back(Column::categorical(name, std::move(cats)));
    }
  }
  try {
    return Table(std::move(cols));
  } catch (const Error& e) {
    throw Error(ErrorCode::DataError, e.detail());
  }
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::DataError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace scitype
