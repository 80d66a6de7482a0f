#pragma once

namespace selsym {

// Bumped whenever a computed value may change; part of every cache key.
inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace selsym
