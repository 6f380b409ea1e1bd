#include "scitype/loss.hpp"

#include <cmath>

namespace scitype {

std::string_view to_string(LossTask t) noexcept {
  return t == LossTask::Regression ? "regression" : "classification";
}

LossFunction LossFunction::squared() { return {"squared", LossTask::Regression}; }

LossFunction LossFunction::misclassification() {
  return {"misclassification", LossTask::Classification};
}

std::vector<std::string> LossFunction::ids() { return {"squared", "misclassification"}; }

LossFunction LossFunction::by_id(const std::string& id) {
  if (id == "squared") return squared();
  if (id == "misclassification") return misclassification();
  throw Error(ErrorCode::InvalidArgument,
              "unknown loss '" + id + "' (expected squared or misclassification)");
}

namespace {

bool is_number(const ParamValue& v) { return v.is<double>() || v.is<std::int64_t>(); }

}  // namespace

double LossFunction::operator()(const ParamValue& prediction, const ParamValue& truth) const {
  if (task_ == LossTask::Regression) {
    if (!is_number(prediction) || !is_number(truth)) {
      throw Error(ErrorCode::DomainViolation, "squared loss needs real values, got " +
                                                  prediction.render() + " and " + truth.render());
    }
    const double d = prediction.as_real() - truth.as_real();
    return d * d;
  }
  if (is_number(prediction) && is_number(truth)) {
    return prediction.as_real() == truth.as_real() ? 0.0 : 1.0;
  }
  if (prediction.is<std::string>() && truth.is<std::string>()) {
    return prediction == truth ? 0.0 : 1.0;
  }
  throw Error(ErrorCode::DomainViolation, "labels " + prediction.render() + " and " +
                                              truth.render() + " come from different domains");
}

double LossFunction::mean(const LabelVector& prediction, const LabelVector& truth) const {
  if (prediction.size() != truth.size()) {
    throw Error(ErrorCode::LengthMismatch, "prediction and truth differ in length");
  }
  if (truth.size() == 0) throw Error(ErrorCode::InvalidArgument, "loss of an empty sample");
  double total = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) total += (*this)(prediction.at(i), truth.at(i));
  return total / static_cast<double>(truth.size());
}

double LossFunction::mean(const std::vector<double>& prediction,
                          const std::vector<double>& truth) const {
  if (prediction.size() != truth.size()) {
    throw Error(ErrorCode::LengthMismatch, "prediction and truth differ in length");
  }
  if (truth.empty()) throw Error(ErrorCode::InvalidArgument, "loss of an empty sample");
  double total = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) total += (*this)(prediction[i], truth[i]);
  return total / static_cast<double>(truth.size());
}

}  // namespace scitype
