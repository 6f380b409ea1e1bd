#include "scitype/distribution.hpp"

#include <cmath>
#include <numbers>

namespace scitype {

std::unique_ptr<Distribution> Distribution::with_params(const ParamMap& updates) const {
  auto copy = clone();
  copy->assign_own_params(updates);
  return copy;
}

Normal::Normal(double mu, double sigma) {
  declare_param("mu", ParamType::Real, Domain::reals(), mu);
  declare_param("sigma", ParamType::Real, Domain::positive_reals(), sigma);
}

TagMap Normal::get_tags() const {
  return {{"scitype", "distribution"},
          {"deterministic", true},
          {"handles_missing", false},
          {"symmetric", true},
          {"support", "reals"}};
}

DomainDescriptor Normal::domain() const { return {Domain::reals(), std::nullopt}; }

double Normal::pdf(double x) const {
  const double z = (x - mu()) / sigma();
  return std::exp(-0.5 * z * z) / (sigma() * std::sqrt(2.0 * std::numbers::pi));
}

double Normal::cdf(double x) const {
  const double z = (x - mu()) / sigma();
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

}  // namespace scitype
