#include "minkowski/resource.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>
#include <string>

#include "minkowski/errors.hpp"

namespace minkowski {

std::uint64_t resource_cap() {
  const char* raw = std::getenv(std::string(kResourceCapEnv).c_str());
  if (raw == nullptr || *raw == '\0') return kDefaultResourceCap;
  std::string_view text(raw);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    return kDefaultResourceCap;
  }
  return value;
}

void require_within_cap(std::uint64_t count, std::string_view what) {
  const std::uint64_t cap = resource_cap();
  if (count > cap) {
    throw ResourceLimitError(std::string(what) + ": " + std::to_string(count) +
                             " exceeds resource cap " + std::to_string(cap) + " (set " +
                             std::string(kResourceCapEnv) + " to raise it)");
  }
}

std::uint64_t pow2_saturating(unsigned k) {
  if (k >= 64) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{1} << k;
}

std::uint64_t pow_saturating(std::uint64_t base, unsigned k) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result *= base;
  }
  return result;
}

}  // namespace minkowski
