#pragma once

// Resource guards.  Enumeration-backed computations refuse to start when the
// element count exceeds PCGROUP_MAX_ENUM, and quotient computations refuse to
// grow past PCGROUP_MAX_GENS generators; both knobs are environment variables.

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace pcg {

struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::size_t env_limit(const char* name, std::size_t fallback) {
  const char* s = std::getenv(name);
  if (s == nullptr || *s == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (end == nullptr || *end != '\0' || v == 0) return fallback;
  return static_cast<std::size_t>(v);
}

inline std::size_t max_generators() {
  static const std::size_t v = env_limit("PCGROUP_MAX_GENS", 40);
  return v;
}

inline std::size_t max_enumeration() {
  static const std::size_t v = env_limit("PCGROUP_MAX_ENUM", std::size_t{1} << 22);
  return v;
}

}  // namespace pcg
