#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace minkowski {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitComputation = 2;
inline constexpr int kExitResource = 3;

/// Command-line entry point. `args` excludes the program name. Results go
/// to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SelfcheckResult {
  std::size_t passed = 0;
  std::size_t failed = 0;
};

/// Exact identity suite on the question mark: fixed values, inverse round
/// trips, symmetry, self-similarity and the shift identity on `cases` seeded
/// random rationals. Failures are described on `log`.
SelfcheckResult selfcheck(std::size_t cases, std::ostream& log);

}  // namespace minkowski
