#ifndef DELOC_COMMON_HPP
#define DELOC_COMMON_HPP

#include <cmath>
#include <complex>

namespace deloc {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Reduce an angle to the half-open interval (-pi, pi].
inline double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * kPi);
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

}  // namespace deloc

#endif
