#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "scitype/error.hpp"

namespace scitype {

class Estimator;

/// Immutable handle to an (unfitted) estimator used as a parameter value,
/// e.g. a pipeline step. Equality is structural: same kind, same params.
struct EstimatorRef {
  std::shared_ptr<const Estimator> estimator;

  const Estimator& operator*() const { return *estimator; }
  const Estimator* operator->() const { return estimator.get(); }
};

enum class ParamType { Integer, Real, Text, Boolean, RealList, TextList, Estimator };

std::string_view to_string(ParamType type) noexcept;

class ParamValue {
 public:
  using Storage = std::variant<std::int64_t, double, std::string, bool, std::vector<double>,
                               std::vector<std::string>, EstimatorRef>;

  ParamValue(int v) : v_(std::int64_t{v}) {}
  ParamValue(std::int64_t v) : v_(v) {}
  ParamValue(double v) : v_(v) {}
  ParamValue(const char* v) : v_(std::string(v)) {}
  ParamValue(std::string v) : v_(std::move(v)) {}
  template <std::same_as<bool> B>
  ParamValue(B v) : v_(bool{v}) {}
  ParamValue(std::vector<double> v) : v_(std::move(v)) {}
  ParamValue(std::vector<std::string> v) : v_(std::move(v)) {}
  ParamValue(EstimatorRef v) : v_(std::move(v)) {}

  ParamType type() const noexcept { return static_cast<ParamType>(v_.index()); }

  template <class T>
  bool is() const noexcept {
    return std::holds_alternative<T>(v_);
  }

  /// Typed access; a type mismatch is a DomainViolation.
  template <class T>
  const T& as() const {
    if (const T* p = std::get_if<T>(&v_)) return *p;
    throw Error(ErrorCode::DomainViolation, "expected " + std::string(to_string(type_of<T>())) +
                                                ", got " + std::string(to_string(type())));
  }

  template <class T>
  static constexpr ParamType type_of() noexcept {
    if constexpr (std::same_as<T, std::int64_t>) return ParamType::Integer;
    else if constexpr (std::same_as<T, double>) return ParamType::Real;
    else if constexpr (std::same_as<T, std::string>) return ParamType::Text;
    else if constexpr (std::same_as<T, bool>) return ParamType::Boolean;
    else if constexpr (std::same_as<T, std::vector<double>>) return ParamType::RealList;
    else if constexpr (std::same_as<T, std::vector<std::string>>) return ParamType::TextList;
    else return ParamType::Estimator;
  }

  /// Numeric access accepting both integer and real values.
  double as_real() const;

  const Storage& storage() const noexcept { return v_; }

  /// Compact textual rendering, e.g. `3`, `0.5`, `true`, `[1, 2]`, `"a"`.
  std::string render() const;

  friend bool operator==(const ParamValue& a, const ParamValue& b);

 private:
  Storage v_;
};

/// `[a-z][a-z0-9_]*`; `__` is the nesting separator between segments.
bool is_valid_param_name(std::string_view name) noexcept;

/// Splits `component__rest` at the first separator. Keys without a separator
/// come back as (key, "").
std::pair<std::string_view, std::string_view> split_nested(std::string_view key) noexcept;

/// Ordered name -> value association with unique names.
class ParamMap {
 public:
  using Entry = std::pair<std::string, ParamValue>;
  using const_iterator = std::vector<Entry>::const_iterator;

  ParamMap() = default;
  ParamMap(std::initializer_list<Entry> entries);

  /// Inserts or replaces, keeping the original position of an existing key.
  void set(std::string name, ParamValue value);
  bool erase(std::string_view name);

  bool contains(std::string_view name) const noexcept { return find(name) != nullptr; }
  const ParamValue* find(std::string_view name) const noexcept;
  /// Throws UnknownParameter when absent.
  const ParamValue& at(std::string_view name) const;

  std::vector<std::string> keys() const;
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const_iterator begin() const noexcept { return entries_.begin(); }
  const_iterator end() const noexcept { return entries_.end(); }

  /// Entries `component__k`, re-keyed as `k`.
  ParamMap nested(std::string_view component) const;
  /// Every key rewritten as `prefix__key`.
  ParamMap prefixed(std::string_view prefix) const;
  /// Appends all entries of `other` (replacing duplicates).
  void merge(const ParamMap& other);

  friend bool operator==(const ParamMap& a, const ParamMap& b) = default;

 private:
  std::vector<Entry> entries_;
};

/// Read-only trait table of an object kind. There is deliberately no
/// mutating member: tags cannot be changed from outside.
class TagMap {
 public:
  TagMap() = default;
  TagMap(std::initializer_list<ParamMap::Entry> entries) : tags_(entries) {}
  explicit TagMap(ParamMap tags) : tags_(std::move(tags)) {}

  const ParamValue& operator[](std::string_view name) const;
  const ParamValue* find(std::string_view name) const noexcept { return tags_.find(name); }
  bool contains(std::string_view name) const noexcept { return tags_.contains(name); }
  std::vector<std::string> keys() const { return tags_.keys(); }
  std::size_t size() const noexcept { return tags_.size(); }
  ParamMap::const_iterator begin() const noexcept { return tags_.begin(); }
  ParamMap::const_iterator end() const noexcept { return tags_.end(); }
  const ParamMap& entries() const noexcept { return tags_; }

  /// Copy with some entries replaced or added.
  TagMap with(const ParamMap& overrides) const;

  friend bool operator==(const TagMap& a, const TagMap& b) = default;

 private:
  ParamMap tags_;
};

/// Executable membership predicate with a textual rendering.
class Domain {
 public:
  Domain(std::string description, std::function<bool(const ParamValue&)> contains)
      : description_(std::move(description)), contains_(std::move(contains)) {}

  const std::string& description() const noexcept { return description_; }
  bool contains(const ParamValue& value) const { return contains_(value); }

  static Domain any();
  static Domain reals();
  static Domain positive_reals();
  static Domain non_negative_reals();
  /// (0, 1]
  static Domain unit_interval_left_open();
  /// (0, 1)
  static Domain open_unit_interval();
  static Domain integers_at_least(std::int64_t lower);
  static Domain booleans();
  static Domain text();
  static Domain text_one_of(std::vector<std::string> choices);
  static Domain text_list();
  static Domain real_list();
  static Domain estimators();

 private:
  std::string description_;
  std::function<bool(const ParamValue&)> contains_;
};

struct ParamSpec {
  std::string name;
  ParamType type;
  Domain domain;
};

/// Converts `value` to `type` where the conversion is lossless and
/// unambiguous (integer -> real, empty real-list -> text-list).
std::optional<ParamValue> coerce(const ParamValue& value, ParamType type);

}  // namespace scitype
