#include "scitype/persistence.hpp"

#include <fstream>
#include <sstream>

namespace scitype {

Json param_to_json(const ParamValue& value) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, EstimatorRef>) {
          Json ref = Json::object();
          ref["kind"] = v->kind();
          ref["params"] = params_to_json(v->get_params(false));
          return ref;
        } else {
          return Json(v);
        }
      },
      value.storage());
}

Json params_to_json(const ParamMap& params) {
  Json out = Json::object();
  for (const auto& [k, v] : params) out[k] = param_to_json(v);
  return out;
}

ParamValue param_from_json(const Json& json, const Registry& registry) {
  switch (json.type()) {
    case Json::value_t::boolean:
      return json.get<bool>();
    case Json::value_t::number_integer:
      return json.get<std::int64_t>();
    case Json::value_t::number_unsigned: {
      const auto u = json.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(INT64_MAX)) {
        throw Error(ErrorCode::SerializationError, "integer out of range: " + json.dump());
      }
      return static_cast<std::int64_t>(u);
    }
    case Json::value_t::number_float:
      return json.get<double>();
    case Json::value_t::string:
      return json.get<std::string>();
    case Json::value_t::array: {
      if (json.empty()) return std::vector<double>{};
      if (json.front().is_string()) {
        std::vector<std::string> out;
        for (const auto& e : json) {
          if (!e.is_string()) throw Error(ErrorCode::SerializationError, "mixed list: " + json.dump());
          out.push_back(e.get<std::string>());
        }
        return out;
      }
      std::vector<double> out;
      for (const auto& e : json) {
        if (!e.is_number()) throw Error(ErrorCode::SerializationError, "mixed list: " + json.dump());
        out.push_back(e.get<double>());
      }
      return out;
    }
    case Json::value_t::object: {
      if (!json.contains("kind") || !json["kind"].is_string()) {
        throw Error(ErrorCode::SerializationError, "component reference without a kind");
      }
      const auto kind = json["kind"].get<std::string>();
      if (!registry.has_kind(kind)) {
        throw Error(ErrorCode::UnknownKindOnLoad, "unknown kind '" + kind + "'");
      }
      const ParamMap params =
          json.contains("params") ? params_from_json(json["params"], registry) : ParamMap{};
      std::shared_ptr<const Estimator> e = registry.create_estimator(kind, params);
      return EstimatorRef{std::move(e)};
    }
    default:
      throw Error(ErrorCode::SerializationError, "unsupported parameter value: " + json.dump());
  }
}

ParamMap params_from_json(const Json& json, const Registry& registry) {
  if (!json.is_object()) throw Error(ErrorCode::SerializationError, "parameters must be an object");
  ParamMap out;
  for (const auto& [k, v] : json.items()) {
    try {
      out.set(k, param_from_json(v, registry));
    } catch (const Error& e) {
      throw e.within(k);
    }
  }
  return out;
}

Json to_document(const Object& obj) {
  Json doc = Json::object();
  doc["format_version"] = kFormatVersion;
  doc["kind"] = obj.kind();
  doc["params"] = params_to_json(obj.get_params(false));
  if (const auto* e = dynamic_cast<const Estimator*>(&obj)) {
    doc["status"] = std::string(to_string(e->status()));
    doc["fitted_params"] =
        e->is_fitted() ? params_to_json(e->get_fitted_params()) : Json::object();
  } else {
    doc["status"] = "value";
    doc["fitted_params"] = Json::object();
  }
  return doc;
}

std::string save(const Object& obj) { return to_document(obj).dump(2); }

void save_file(const Object& obj, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::SerializationError, "cannot write " + path.string());
  out << save(obj) << '\n';
  if (!out) throw Error(ErrorCode::SerializationError, "failed writing " + path.string());
}

namespace {

const Json& field(const Json& doc, const char* name) {
  if (!doc.contains(name)) {
    throw Error(ErrorCode::SerializationError, std::string("document lacks '") + name + "'");
  }
  return doc[name];
}

}  // namespace

std::unique_ptr<Object> load_document(const Json& doc, const Registry& registry) {
  if (!doc.is_object()) throw Error(ErrorCode::SerializationError, "document must be an object");
  const Json& version = field(doc, "format_version");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
    throw Error(ErrorCode::SerializationError, "unsupported format_version " + version.dump());
  }
  const Json& kind = field(doc, "kind");
  if (!kind.is_string()) throw Error(ErrorCode::SerializationError, "kind must be a string");
  if (!registry.has_kind(kind.get<std::string>())) {
    throw Error(ErrorCode::UnknownKindOnLoad, "unknown kind '" + kind.get<std::string>() + "'");
  }
  const Json& status = field(doc, "status");
  if (!status.is_string()) throw Error(ErrorCode::SerializationError, "status must be a string");

  try {
    auto obj = registry.create(kind.get<std::string>(), params_from_json(field(doc, "params"), registry));
    auto* est = dynamic_cast<Estimator*>(obj.get());
    const auto s = status.get<std::string>();
    if (est == nullptr) {
      if (s != "value") throw Error(ErrorCode::SerializationError, "value object with status " + s);
      return obj;
    }
    if (s == "fitted") {
      est->restore_fitted(params_from_json(field(doc, "fitted_params"), registry));
    } else if (s != "unfitted") {
      throw Error(ErrorCode::SerializationError, "unknown status '" + s + "'");
    }
    return obj;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SerializationError || e.code() == ErrorCode::UnknownKindOnLoad) throw;
    throw Error(ErrorCode::SerializationError, e.what());
  }
}

std::unique_ptr<Object> load(std::string_view text, const Registry& registry) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::SerializationError, e.what());
  }
  return load_document(doc, registry);
}

std::unique_ptr<Object> load_file(const std::filesystem::path& path, const Registry& registry) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::SerializationError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load(buf.str(), registry);
}

}  // namespace scitype
