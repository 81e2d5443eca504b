#ifndef KGCERT_JSON_HPP
#define KGCERT_JSON_HPP

#include <nlohmann/json.hpp>

namespace kgcert {

// Insertion-ordered so serialized artifacts keep their documented key order.
using Json = nlohmann::ordered_json;

}  // namespace kgcert

#endif
