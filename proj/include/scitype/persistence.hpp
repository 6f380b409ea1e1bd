#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "scitype/estimator.hpp"
#include "scitype/registry.hpp"

namespace scitype {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Natural JSON encoding: numbers, strings, booleans, arrays; a component
/// reference becomes {"kind": ..., "params": {...}}.
Json param_to_json(const ParamValue& value);
Json params_to_json(const ParamMap& params);
/// Inverse of param_to_json. An empty array decodes as an empty real-list.
/// SerializationError; UnknownKindOnLoad for an unknown component kind.
ParamValue param_from_json(const Json& json, const Registry& registry);
ParamMap params_from_json(const Json& json, const Registry& registry);

/// {format_version, kind, params, status, fitted_params}; status is
/// "unfitted", "fitted" or "value" (value objects have no fit state).
Json to_document(const Object& obj);
std::string save(const Object& obj);
void save_file(const Object& obj, const std::filesystem::path& path);

/// SerializationError; UnknownKindOnLoad.
std::unique_ptr<Object> load_document(const Json& document, const Registry& registry);
std::unique_ptr<Object> load(std::string_view text, const Registry& registry);
std::unique_ptr<Object> load_file(const std::filesystem::path& path, const Registry& registry);

/// load() narrowed to a concrete interface; SerializationError on mismatch.
template <class T>
std::unique_ptr<T> load_as(std::string_view text, const Registry& registry) {
  auto obj = load(text, registry);
  if (auto* p = dynamic_cast<T*>(obj.get())) {
    obj.release();
    return std::unique_ptr<T>(p);
  }
  throw Error(ErrorCode::SerializationError, "stored object does not have the requested type");
}

}  // namespace scitype
