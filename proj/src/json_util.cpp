#include "optifab/json_util.hpp"

#include <cstdio>

namespace optifab {

uint64_t canonical_hash(const Json& j) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : canonical_dump(j)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const Json& require_field(const Json& j, const std::string& key, const std::string& context) {
  if (!j.is_object() || !j.contains(key))
    throw ConfigError("missing field '" + key + "' in " + context);
  return j.at(key);
}

}  // namespace optifab
