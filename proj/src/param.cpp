#include "scitype/param.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "scitype/estimator.hpp"

namespace scitype {

std::string_view to_string(ParamType type) noexcept {
  switch (type) {
    case ParamType::Integer: return "integer";
    case ParamType::Real: return "real";
    case ParamType::Text: return "text";
    case ParamType::Boolean: return "boolean";
    case ParamType::RealList: return "real-list";
    case ParamType::TextList: return "text-list";
    case ParamType::Estimator: return "estimator";
  }
  return "unknown";
}

namespace {

std::string render_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

bool all_finite(const std::vector<double>& xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

double ParamValue::as_real() const {
  if (const auto* i = std::get_if<std::int64_t>(&v_)) return static_cast<double>(*i);
  return as<double>();
}

std::string ParamValue::render() const {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return render_real(v); }
    std::string operator()(const std::string& v) const { return quote(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::vector<double>& v) const {
      std::string out = "[";
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + render_real(v[i]);
      return out + "]";
    }
    std::string operator()(const std::vector<std::string>& v) const {
      std::string out = "[";
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + quote(v[i]);
      return out + "]";
    }
    std::string operator()(const EstimatorRef& v) const {
      if (!v.estimator) return "null";
      std::string out = v->kind() + "(";
      bool first = true;
      for (const auto& [k, p] : v->get_params(false)) {
        out += (first ? "" : ", ") + k + "=" + p.render();
        first = false;
      }
      return out + ")";
    }
  };
  return std::visit(Visitor{}, v_);
}

bool operator==(const ParamValue& a, const ParamValue& b) {
  if (a.v_.index() != b.v_.index()) return false;
  if (const auto* ra = std::get_if<EstimatorRef>(&a.v_)) {
    const auto& rb = std::get<EstimatorRef>(b.v_);
    if (!ra->estimator || !rb.estimator) return ra->estimator == rb.estimator;
    return (*ra)->kind() == rb->kind() && (*ra)->get_params(false) == rb->get_params(false);
  }
  return a.v_ == b.v_;
}

bool is_valid_param_name(std::string_view name) noexcept {
  if (name.empty() || name.front() < 'a' || name.front() > 'z') return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  // Every nesting segment must itself be a valid name.
  std::string_view rest = name;
  while (true) {
    auto [head, tail] = split_nested(rest);
    if (head.empty() || head.front() < 'a' || head.front() > 'z') return false;
    if (tail.empty()) return rest.size() == head.size();
    rest = tail;
  }
}

std::pair<std::string_view, std::string_view> split_nested(std::string_view key) noexcept {
  const auto pos = key.find("__");
  if (pos == std::string_view::npos) return {key, {}};
  return {key.substr(0, pos), key.substr(pos + 2)};
}

ParamMap::ParamMap(std::initializer_list<Entry> entries) {
  for (const auto& [k, v] : entries) set(k, v);
}

void ParamMap::set(std::string name, ParamValue value) {
  if (!is_valid_param_name(name)) {
    throw Error(ErrorCode::InvalidArgument, "invalid parameter name '" + name + "'");
  }
  for (auto& [k, v] : entries_) {
    if (k == name) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(name), std::move(value));
}

bool ParamMap::erase(std::string_view name) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const Entry& e) { return e.first == name; });
  if (it == entries_.end()) return false;
  entries_.erase(it);
  return true;
}

const ParamValue* ParamMap::find(std::string_view name) const noexcept {
  for (const auto& [k, v] : entries_) {
    if (k == name) return &v;
  }
  return nullptr;
}

const ParamValue& ParamMap::at(std::string_view name) const {
  if (const auto* v = find(name)) return *v;
  throw Error(ErrorCode::UnknownParameter, std::string(name));
}

std::vector<std::string> ParamMap::keys() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.first);
  return out;
}

ParamMap ParamMap::nested(std::string_view component) const {
  ParamMap out;
  for (const auto& [k, v] : entries_) {
    auto [head, tail] = split_nested(k);
    if (head == component && !tail.empty()) out.set(std::string(tail), v);
  }
  return out;
}

ParamMap ParamMap::prefixed(std::string_view prefix) const {
  ParamMap out;
  for (const auto& [k, v] : entries_) out.set(std::string(prefix) + "__" + k, v);
  return out;
}

void ParamMap::merge(const ParamMap& other) {
  for (const auto& [k, v] : other) set(k, v);
}

const ParamValue& TagMap::operator[](std::string_view name) const {
  if (const auto* v = tags_.find(name)) return *v;
  throw Error(ErrorCode::UnknownParameter, "no tag '" + std::string(name) + "'");
}

TagMap TagMap::with(const ParamMap& overrides) const {
  ParamMap copy = tags_;
  copy.merge(overrides);
  return TagMap(std::move(copy));
}

Domain Domain::any() {
  return {"any value", [](const ParamValue&) { return true; }};
}

Domain Domain::reals() {
  return {"ℝ", [](const ParamValue& v) { return v.is<double>() && std::isfinite(v.as<double>()); }};
}

Domain Domain::positive_reals() {
  return {"ℝ⁺ (x > 0)", [](const ParamValue& v) {
            return v.is<double>() && std::isfinite(v.as<double>()) && v.as<double>() > 0.0;
          }};
}

Domain Domain::non_negative_reals() {
  return {"[0, ∞)", [](const ParamValue& v) {
            return v.is<double>() && std::isfinite(v.as<double>()) && v.as<double>() >= 0.0;
          }};
}

Domain Domain::unit_interval_left_open() {
  return {"(0, 1]", [](const ParamValue& v) {
            return v.is<double>() && v.as<double>() > 0.0 && v.as<double>() <= 1.0;
          }};
}

Domain Domain::open_unit_interval() {
  return {"(0, 1)", [](const ParamValue& v) {
            return v.is<double>() && v.as<double>() > 0.0 && v.as<double>() < 1.0;
          }};
}

Domain Domain::integers_at_least(std::int64_t lower) {
  return {"integers ≥ " + std::to_string(lower), [lower](const ParamValue& v) {
            return v.is<std::int64_t>() && v.as<std::int64_t>() >= lower;
          }};
}

Domain Domain::booleans() {
  return {"{true, false}", [](const ParamValue& v) { return v.is<bool>(); }};
}

Domain Domain::text() {
  return {"text", [](const ParamValue& v) { return v.is<std::string>(); }};
}

Domain Domain::text_one_of(std::vector<std::string> choices) {
  std::string desc = "{";
  for (std::size_t i = 0; i < choices.size(); ++i) desc += (i ? ", " : "") + choices[i];
  desc += "}";
  return {desc, [choices = std::move(choices)](const ParamValue& v) {
            return v.is<std::string>() &&
                   std::find(choices.begin(), choices.end(), v.as<std::string>()) != choices.end();
          }};
}

Domain Domain::text_list() {
  return {"list of text", [](const ParamValue& v) { return v.is<std::vector<std::string>>(); }};
}

Domain Domain::real_list() {
  return {"list of finite reals", [](const ParamValue& v) {
            return v.is<std::vector<double>>() && all_finite(v.as<std::vector<double>>());
          }};
}

Domain Domain::estimators() {
  return {"estimator", [](const ParamValue& v) {
            return v.is<EstimatorRef>() && v.as<EstimatorRef>().estimator != nullptr;
          }};
}

std::optional<ParamValue> coerce(const ParamValue& value, ParamType type) {
  if (value.type() == type) return value;
  if (type == ParamType::Real && value.is<std::int64_t>()) {
    return ParamValue(static_cast<double>(value.as<std::int64_t>()));
  }
  if (type == ParamType::TextList && value.is<std::vector<double>>() &&
      value.as<std::vector<double>>().empty()) {
    return ParamValue(std::vector<std::string>{});
  }
  if (type == ParamType::RealList && value.is<std::vector<std::string>>() &&
      value.as<std::vector<std::string>>().empty()) {
    return ParamValue(std::vector<double>{});
  }
  return std::nullopt;
}

}  // namespace scitype
