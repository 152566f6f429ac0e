#pragma once

#include <nlohmann/json.hpp>

namespace vlab {

/// Insertion-ordered, so reports serialise with a fixed key order.
using Json = nlohmann::ordered_json;

}  // namespace vlab
