#pragma once

#include <cstdint>
#include <string_view>

namespace minkowski {

/// Name of the environment variable that overrides the default cap.
inline constexpr std::string_view kResourceCapEnv = "MINKOWSKI_RESOURCE_CAP";

/// Default cap on enumerated tree nodes and piecewise branch counts.
inline constexpr std::uint64_t kDefaultResourceCap = std::uint64_t{1} << 24;

/// Current cap: the environment override if set and valid, otherwise the default.
std::uint64_t resource_cap();

/// Throws ResourceLimitError when `count` exceeds resource_cap().
void require_within_cap(std::uint64_t count, std::string_view what);

/// 2^k, saturating at UINT64_MAX.
std::uint64_t pow2_saturating(unsigned k);

/// base^k, saturating at UINT64_MAX.
std::uint64_t pow_saturating(std::uint64_t base, unsigned k);

}  // namespace minkowski
