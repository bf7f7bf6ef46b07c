#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace hinv {

using cplx = std::complex<double>;
using vec3 = std::array<double, 3>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx iu{0.0, 1.0};

/// (2pi)^{3/2}, the constant relating convolution and pointwise product
/// under the symmetric Fourier normalization used throughout.
inline const double two_pi_pow_3_2 = std::pow(2.0 * pi, 1.5);

/// Thrown when a numerical procedure cannot meet its accuracy or stability
/// contract (quadrature non-convergence, solver abort, range overflow).
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Compensated (Kahan) accumulator; summation order is the caller's and
/// stays fixed, so results are bit-reproducible run to run.
struct KahanSum {
  cplx sum{0.0, 0.0};
  cplx comp{0.0, 0.0};

  void add(cplx v) {
    const cplx y = v - comp;
    const cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  [[nodiscard]] cplx value() const { return sum; }
};

struct KahanSumReal {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  [[nodiscard]] double value() const { return sum; }
};

inline double sqr(double x) { return x * x; }

inline double norm3(const vec3& x) {
  return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
}

}  // namespace hinv
