#pragma once

#include <memory>
#include <string>

#include "scitype/estimator.hpp"

namespace scitype {

/// Value-object scitype of univariate probability distributions.
///
/// Distributions are immutable: with_params() returns a new object and
/// leaves the receiver unchanged.
class Distribution : public Object {
 public:
  virtual double pdf(double x) const = 0;
  virtual double cdf(double x) const = 0;

  virtual std::unique_ptr<Distribution> clone() const = 0;
  /// Copy with some parameters replaced; UnknownParameter or DomainViolation.
  std::unique_ptr<Distribution> with_params(const ParamMap& updates) const;
};

/// Gaussian with mean mu and standard deviation sigma > 0.
///
/// cdf(x) = Φ((x − μ)/σ) with Φ(z) = erfc(−z/√2)/2, evaluated through the
/// C library's complementary error function (accurate to a few ulp, well
/// inside 1e-9 absolute, and without cancellation in the lower tail).
class Normal final : public Distribution {
 public:
  explicit Normal(double mu = 0.0, double sigma = 1.0);

  std::string kind() const override { return "Normal"; }
  TagMap get_tags() const override;
  DomainDescriptor domain() const override;

  double mu() const { return real_param("mu"); }
  double sigma() const { return real_param("sigma"); }

  double pdf(double x) const override;
  double cdf(double x) const override;

  std::unique_ptr<Distribution> clone() const override { return std::make_unique<Normal>(*this); }
};

}  // namespace scitype
