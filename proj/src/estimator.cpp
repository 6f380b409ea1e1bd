#include "scitype/estimator.hpp"

#include <algorithm>
#include <map>

namespace scitype {

// ---------------------------------------------------------------- Object

ParamMap Object::get_params(bool /*deep*/) const { return values_; }

std::optional<ParamSpec> Object::find_param_spec(std::string_view key) const {
  for (const auto& s : specs_) {
    if (s.name == key) return s;
  }
  return std::nullopt;
}

std::string Object::scitype() const { return get_tags()["scitype"].as<std::string>(); }

void Object::declare_param(std::string name, ParamType type, Domain domain, ParamValue initial) {
  if (values_.contains(name)) {
    throw Error(ErrorCode::NameCollision, "parameter '" + name + "' declared twice");
  }
  specs_.push_back(ParamSpec{name, type, std::move(domain)});
  values_.set(name, validated_own(name, initial));
}

ParamValue Object::validated_own(const std::string& name, const ParamValue& value) const {
  const ParamSpec* spec = nullptr;
  for (const auto& s : specs_) {
    if (s.name == name) spec = &s;
  }
  if (spec == nullptr) throw Error(ErrorCode::UnknownParameter, name);
  auto coerced = coerce(value, spec->type);
  if (!coerced || !spec->domain.contains(*coerced)) {
    throw Error(ErrorCode::DomainViolation,
                name + " = " + value.render() + " is not in " + spec->domain.description());
  }
  return *coerced;
}

void Object::store_own(const std::string& name, ParamValue value) {
  values_.set(name, std::move(value));
}

void Object::assign_own_params(const ParamMap& updates) {
  ParamMap checked;
  for (const auto& [k, v] : updates) checked.set(k, validated_own(k, v));
  for (const auto& [k, v] : checked) store_own(k, v);
}

// ---------------------------------------------------------------- Estimator

std::string_view to_string(FitStatus s) noexcept {
  return s == FitStatus::Fitted ? "fitted" : "unfitted";
}

Estimator::Estimator(const Estimator& other) : Object(other), status_(other.status_) {
  components_.reserve(other.components_.size());
  for (const auto& c : other.components_) {
    components_.push_back({c.name, c.estimator->clone()});
  }
}

ParamMap Estimator::get_params(bool deep) const {
  ParamMap out = Object::get_params(false);
  for (const auto& c : components_) out.set(c.name, make_ref(*c.estimator));
  if (deep) {
    for (const auto& c : components_) out.merge(c.estimator->get_params(true).prefixed(c.name));
  }
  return out;
}

std::optional<ParamSpec> Estimator::find_param_spec(std::string_view key) const {
  auto [head, tail] = split_nested(key);
  if (tail.empty()) {
    if (find_component(head) != nullptr) {
      return ParamSpec{std::string(head), ParamType::Estimator, Domain::estimators()};
    }
    return Object::find_param_spec(key);
  }
  if (const auto* c = find_component(head)) return c->estimator->find_param_spec(tail);
  return std::nullopt;
}

Estimator& Estimator::set_params(const ParamMap& updates) {
  validate_params(updates);
  apply_params(updates);
  reset();
  return *this;
}

void Estimator::validate_params(const ParamMap& updates) const {
  std::map<std::string, const Estimator*, std::less<>> replaced;
  for (const auto& [k, v] : updates) {
    auto [head, tail] = split_nested(k);
    if (!tail.empty()) continue;
    if (const auto* c = find_component(head)) {
      if (!v.is<EstimatorRef>() || !v.as<EstimatorRef>().estimator) {
        throw Error(ErrorCode::DomainViolation, k + " must be an estimator");
      }
      check_component(c->name, *v.as<EstimatorRef>());
      replaced[c->name] = v.as<EstimatorRef>().estimator.get();
    } else {
      validated_own(k, v);
    }
  }
  std::map<std::string, ParamMap, std::less<>> nested;
  for (const auto& [k, v] : updates) {
    auto [head, tail] = split_nested(k);
    if (tail.empty()) continue;
    if (find_component(head) == nullptr) throw Error(ErrorCode::UnknownParameter, k);
    nested[std::string(head)].set(std::string(tail), v);
  }
  for (const auto& [name, sub] : nested) {
    const Estimator* target = find_component(name)->estimator.get();
    if (auto it = replaced.find(name); it != replaced.end()) target = it->second;
    try {
      target->validate_params(sub);
    } catch (const Error& e) {
      throw e.within(name);
    }
  }
}

void Estimator::apply_params(const ParamMap& updates) {
  for (const auto& [k, v] : updates) {
    auto [head, tail] = split_nested(k);
    if (!tail.empty()) continue;
    auto it = std::find_if(components_.begin(), components_.end(),
                           [&](const Component& c) { return c.name == head; });
    if (it != components_.end()) {
      it->estimator = v.as<EstimatorRef>()->clone_unfitted();
    } else {
      store_own(k, validated_own(k, v));
    }
  }
  std::map<std::string, ParamMap, std::less<>> nested;
  for (const auto& [k, v] : updates) {
    auto [head, tail] = split_nested(k);
    if (!tail.empty()) nested[std::string(head)].set(std::string(tail), v);
  }
  for (const auto& [name, sub] : nested) {
    auto& target = mutable_component(name);
    target.apply_params(sub);
    target.reset();
  }
}

void Estimator::check_component(const std::string&, const Estimator&) const {}

ParamMap Estimator::get_fitted_params() const {
  require_fitted();
  return fitted_state();
}

std::unique_ptr<Estimator> Estimator::clone_unfitted() const {
  auto c = clone();
  c->reset();
  return c;
}

void Estimator::restore_fitted(const ParamMap& fitted) {
  reset();
  try {
    load_fitted_state(fitted);
  } catch (...) {
    reset();
    throw;
  }
  mark_fitted();
}

std::vector<std::string> Estimator::component_names() const {
  std::vector<std::string> out;
  for (const auto& c : components_) out.push_back(c.name);
  return out;
}

const Estimator::Component* Estimator::find_component(std::string_view name) const noexcept {
  for (const auto& c : components_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const Estimator& Estimator::component(std::string_view name) const {
  if (const auto* c = find_component(name)) return *c->estimator;
  throw Error(ErrorCode::UnknownParameter, "no component '" + std::string(name) + "'");
}

Estimator& Estimator::mutable_component(std::string_view name) {
  return const_cast<Estimator&>(component(name));
}

void Estimator::add_component(std::string name, std::unique_ptr<Estimator> estimator) {
  if (!is_valid_param_name(name) || name.find("__") != std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "invalid component name '" + name + "'");
  }
  if (estimator == nullptr) {
    throw Error(ErrorCode::InvalidArgument, "component '" + name + "' is null");
  }
  if (find_component(name) != nullptr || has_own_param(name)) {
    throw Error(ErrorCode::NameCollision, "component name '" + name + "' is already in use");
  }
  check_component(name, *estimator);
  components_.push_back({std::move(name), std::move(estimator)});
  reset();
}

void Estimator::require_fitted() const {
  if (status_ != FitStatus::Fitted) {
    throw Error(ErrorCode::NotFitted, kind() + " has not been fitted");
  }
}

void Estimator::reset() {
  status_ = FitStatus::Unfitted;
  clear_fitted_state();
  for (auto& c : components_) c.estimator->reset();
}

ParamMap Estimator::components_fitted_state() const {
  ParamMap out;
  for (const auto& c : components_) out.merge(c.estimator->get_fitted_params().prefixed(c.name));
  return out;
}

void Estimator::load_components_fitted_state(const ParamMap& fitted) {
  for (auto& c : components_) {
    try {
      c.estimator->restore_fitted(fitted.nested(c.name));
    } catch (const Error& e) {
      throw e.within(c.name);
    }
  }
}

EstimatorRef make_ref(const Estimator& e) {
  return EstimatorRef{std::shared_ptr<const Estimator>(e.clone_unfitted())};
}

}  // namespace scitype
