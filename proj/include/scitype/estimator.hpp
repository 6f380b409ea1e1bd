#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scitype/param.hpp"

namespace scitype {

/// Domain of an object: an executable membership test, plus the finite
/// label set when the object is a fitted classifier.
struct DomainDescriptor {
  Domain domain;
  std::optional<std::vector<ParamValue>> label_set;

  bool contains(const ParamValue& v) const { return domain.contains(v); }
  const std::string& description() const noexcept { return domain.description(); }
};

/// Any formal object: kind name, scitype, domain, hyper-parameters, tags.
///
/// Hyper-parameters are declared once, at construction, with a type and a
/// domain. Writes are validated against both before anything is changed.
class Object {
 public:
  virtual ~Object() = default;

  virtual std::string kind() const = 0;
  virtual TagMap get_tags() const = 0;
  virtual DomainDescriptor domain() const = 0;

  /// Own hyper-parameters; `deep` additionally lists component parameters
  /// as `component__name`.
  virtual ParamMap get_params(bool deep = true) const;
  /// Declared own parameters, in declaration order.
  virtual std::vector<ParamSpec> param_specs() const { return specs_; }
  /// Spec of a possibly nested parameter key.
  virtual std::optional<ParamSpec> find_param_spec(std::string_view key) const;

  virtual bool is_entity() const noexcept { return false; }

  /// Value of the "scitype" tag.
  std::string scitype() const;

 protected:
  Object() = default;
  Object(const Object&) = default;
  Object(Object&&) = default;
  Object& operator=(const Object&) = default;
  Object& operator=(Object&&) = default;

  void declare_param(std::string name, ParamType type, Domain domain, ParamValue initial);
  const ParamValue& param(std::string_view name) const { return values_.at(name); }
  template <class T>
  const T& param_as(std::string_view name) const {
    return param(name).as<T>();
  }
  double real_param(std::string_view name) const { return param(name).as_real(); }

  /// Coerced value for an own parameter; UnknownParameter or DomainViolation.
  ParamValue validated_own(const std::string& name, const ParamValue& value) const;
  bool has_own_param(std::string_view name) const noexcept { return values_.contains(name); }
  void store_own(const std::string& name, ParamValue value);

  /// Validates every update, then applies them. Value objects use this on a
  /// fresh copy; entity objects go through Estimator::set_params.
  void assign_own_params(const ParamMap& updates);

 private:
  std::vector<ParamSpec> specs_;
  ParamMap values_;
};

enum class FitStatus { Unfitted, Fitted };

std::string_view to_string(FitStatus s) noexcept;

/// Entity object with an Unfitted -> Fitted lifecycle.
///
/// Components (named sub-estimators) are part of the composite's state; their
/// hyper-parameters are addressable as `component__param` and their fitted
/// parameters appear in the composite's fitted parameters with the same
/// prefix. Any parameter change returns the estimator to Unfitted.
///
/// Instances are single-writer: fit and set_params need exclusive access.
class Estimator : public Object {
 public:
  ~Estimator() override = default;

  bool is_entity() const noexcept override { return true; }

  ParamMap get_params(bool deep = true) const override;
  std::optional<ParamSpec> find_param_spec(std::string_view key) const override;

  /// Same entity, updated; resets to Unfitted. UnknownParameter or
  /// DomainViolation leave the estimator untouched.
  Estimator& set_params(const ParamMap& updates);

  FitStatus status() const noexcept { return status_; }
  bool is_fitted() const noexcept { return status_ == FitStatus::Fitted; }

  /// State-defining variables of a fitted estimator. NotFitted otherwise.
  ParamMap get_fitted_params() const;

  /// Full copy including fitted state.
  virtual std::unique_ptr<Estimator> clone() const = 0;
  /// Same kind and hyper-parameters, Unfitted.
  std::unique_ptr<Estimator> clone_unfitted() const;

  /// Rebuilds fitted state from get_fitted_params() output (persistence).
  void restore_fitted(const ParamMap& fitted);

  std::vector<std::string> component_names() const;
  const Estimator& component(std::string_view name) const;
  virtual bool is_composite() const noexcept { return !components_.empty(); }

 protected:
  Estimator() = default;
  Estimator(const Estimator& other);
  Estimator& operator=(const Estimator&) = delete;

  void add_component(std::string name, std::unique_ptr<Estimator> estimator);
  Estimator& mutable_component(std::string_view name);
  template <class T>
  const T& component_as(std::string_view name) const {
    return dynamic_cast<const T&>(component(name));
  }
  template <class T>
  T& mutable_component_as(std::string_view name) {
    return dynamic_cast<T&>(mutable_component(name));
  }

  void mark_fitted() noexcept { status_ = FitStatus::Fitted; }
  /// Throws NotFitted.
  void require_fitted() const;
  /// Back to Unfitted, recursively through components.
  void reset();

  virtual void validate_params(const ParamMap& updates) const;
  virtual void apply_params(const ParamMap& updates);
  /// Veto hook for replacing a component through set_params.
  virtual void check_component(const std::string& name, const Estimator& candidate) const;

  virtual void clear_fitted_state() {}
  virtual ParamMap fitted_state() const = 0;
  virtual void load_fitted_state(const ParamMap& fitted) = 0;

  ParamMap components_fitted_state() const;
  void load_components_fitted_state(const ParamMap& fitted);

 private:
  struct Component {
    std::string name;
    std::unique_ptr<Estimator> estimator;
  };
  const Component* find_component(std::string_view name) const noexcept;

  std::vector<Component> components_;
  FitStatus status_ = FitStatus::Unfitted;
};

/// Supplies clone() for a concrete kind.
template <class Derived, class Base>
class Cloneable : public Base {
 public:
  using Base::Base;

  std::unique_ptr<Estimator> clone() const override {
    return std::make_unique<Derived>(static_cast<const Derived&>(*this));
  }
};

/// Unfitted copy of `e` as a parameter value.
EstimatorRef make_ref(const Estimator& e);

/// Unfitted copy of `e` with its concrete type.
template <class T>
std::unique_ptr<T> clone_as(const Estimator& e) {
  auto c = e.clone_unfitted();
  if (auto* p = dynamic_cast<T*>(c.get())) {
    c.release();
    return std::unique_ptr<T>(p);
  }
  throw Error(ErrorCode::ScitypeMismatch, e.kind() + " does not implement the required interface");
}

}  // namespace scitype
