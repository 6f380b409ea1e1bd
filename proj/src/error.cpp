#include "scitype/error.hpp"

namespace scitype {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownParameter: return "UnknownParameter";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::Unregistered: return "Unregistered";
    case ErrorCode::NotFitted: return "NotFitted";
    case ErrorCode::SerializationError: return "SerializationError";
    case ErrorCode::UnknownKindOnLoad: return "UnknownKindOnLoad";
    case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::ScitypeMismatch: return "ScitypeMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::EmptyHorizon: return "EmptyHorizon";
    case ErrorCode::AggregatorMismatch: return "AggregatorMismatch";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::NameCollision: return "NameCollision";
    case ErrorCode::AmbiguousParamFlattening: return "AmbiguousParamFlattening";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::MissingTarget: return "MissingTarget";
    case ErrorCode::HorizonBeyondData: return "HorizonBeyondData";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DataError: return "DataError";
    case ErrorCode::SpecParseError: return "SpecParseError";
    case ErrorCode::BadFilterSyntax: return "BadFilterSyntax";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string detail)
    : Error(code, std::move(detail), {}) {}

Error::Error(ErrorCode code, std::string detail, std::vector<std::string> context)
    : std::runtime_error(render(code, detail, context)),
      code_(code),
      detail_(std::move(detail)),
      context_(std::move(context)) {}

Error Error::within(const std::string& component) const {
  std::vector<std::string> ctx;
  ctx.reserve(context_.size() + 1);
  ctx.push_back(component);
  ctx.insert(ctx.end(), context_.begin(), context_.end());
  return Error(code_, detail_, std::move(ctx));
}

std::string Error::render(ErrorCode code, const std::string& detail,
                          const std::vector<std::string>& context) {
  std::string out(to_string(code));
  if (!context.empty()) {
    out += " in '";
    for (std::size_t i = 0; i < context.size(); ++i) {
      if (i > 0) out += "__";
      out += context[i];
    }
    out += "'";
  }
  out += ": ";
  out += detail;
  return out;
}

}  // namespace scitype
