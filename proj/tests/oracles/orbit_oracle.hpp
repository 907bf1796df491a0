#pragma once

// Periodic-orbit product of the Farey shift in extended precision. The cycle
// is found by approximate return of the floating orbit, independently of any
// exact arithmetic.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracle {

struct FloatOrbitProduct {
  std::size_t preperiod = 0;
  std::size_t period = 0;
  long double product = 1;
};

inline long double farey_shift(long double y) { return y < 0.5L ? y / (1 - y) : (2 * y - 1) / y; }
inline long double farey_half_derivative(long double y) {
  return y < 0.5L ? 1 / (2 * (1 - y) * (1 - y)) : 1 / (2 * y * y);
}

inline FloatOrbitProduct farey_orbit_product(long double y0, std::size_t max_steps = 64) {
  std::vector<long double> orbit{y0};
  for (std::size_t n = 1; n <= max_steps; ++n) {
    const long double next = farey_shift(orbit.back());
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      if (std::fabs(next - orbit[i]) < 1e-12L) {
        FloatOrbitProduct r;
        r.preperiod = i;
        r.period = orbit.size() - i;
        for (std::size_t j = i; j < orbit.size(); ++j) r.product *= farey_half_derivative(orbit[j]);
        return r;
      }
    }
    orbit.push_back(next);
  }
  throw std::runtime_error("farey_orbit_product: no return");
}

}  // namespace oracle
