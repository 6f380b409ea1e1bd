#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scitype {

/// Contract violations raised anywhere in the toolbox.
enum class ErrorCode {
  UnknownParameter,
  DomainViolation,
  Unregistered,
  NotFitted,
  SerializationError,
  UnknownKindOnLoad,
  EmptyTrainingSet,
  ScitypeMismatch,
  LengthMismatch,
  SchemaMismatch,
  TooShort,
  EmptyHorizon,
  AggregatorMismatch,
  EmptyGrid,
  NameCollision,
  AmbiguousParamFlattening,
  TooFewSamples,
  MissingTarget,
  HorizonBeyondData,
  InvalidArgument,
  DataError,
  SpecParseError,
  BadFilterSyntax,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying an ErrorCode plus the chain of component names it
/// propagated through (outermost first), e.g. ["scaler"] for a pipeline step.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::vector<std::string>& context() const noexcept { return context_; }

  /// Same error, attributed to the named component.
  Error within(const std::string& component) const;

 private:
  Error(ErrorCode code, std::string detail, std::vector<std::string> context);
  static std::string render(ErrorCode code, const std::string& detail,
                            const std::vector<std::string>& context);

  ErrorCode code_;
  std::string detail_;
  std::vector<std::string> context_;
};

}  // namespace scitype
