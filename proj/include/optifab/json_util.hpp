#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace optifab {

using Json = nlohmann::json;  // std::map-backed: keys serialize sorted

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// Canonical form: sorted keys, no whitespace, shortest round-trip floats.
inline std::string canonical_dump(const Json& j) { return j.dump(); }

// FNV-1a over the canonical serialization; used as the config fingerprint.
uint64_t canonical_hash(const Json& j);

std::string hash_hex(uint64_t h);

// Required-field accessors with diagnostics that name the field.
const Json& require_field(const Json& j, const std::string& key, const std::string& context);

template <typename T>
T require_as(const Json& j, const std::string& key, const std::string& context) {
  const Json& field = require_field(j, key, context);
  try {
    return field.get<T>();
  } catch (const Json::exception&) {
    throw ConfigError("field '" + key + "' in " + context + " has the wrong type");
  }
}

template <typename T>
T field_or(const Json& j, const std::string& key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return j.at(key).get<T>();
}

}  // namespace optifab
