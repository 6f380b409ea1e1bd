#pragma once

#include <string>
#include <vector>

#include "scitype/data.hpp"

namespace scitype {

enum class LossTask { Regression, Classification };

std::string_view to_string(LossTask t) noexcept;

/// Pointwise loss L(prediction, truth) >= 0 together with the task flavor it
/// belongs to.
class LossFunction {
 public:
  /// "squared" or "misclassification"; InvalidArgument otherwise.
  static LossFunction by_id(const std::string& id);
  static LossFunction squared();
  static LossFunction misclassification();
  static std::vector<std::string> ids();

  const std::string& id() const noexcept { return id_; }
  LossTask task() const noexcept { return task_; }

  /// DomainViolation when prediction and truth come from different label
  /// domains (or squared loss meets a text label).
  double operator()(const ParamValue& prediction, const ParamValue& truth) const;
  /// Arithmetic mean of pointwise losses; LengthMismatch on unequal sizes.
  double mean(const LabelVector& prediction, const LabelVector& truth) const;
  double mean(const std::vector<double>& prediction, const std::vector<double>& truth) const;

  friend bool operator==(const LossFunction& a, const LossFunction& b) { return a.id_ == b.id_; }

 private:
  LossFunction(std::string id, LossTask task) : id_(std::move(id)), task_(task) {}

  std::string id_;
  LossTask task_;
};

}  // namespace scitype
