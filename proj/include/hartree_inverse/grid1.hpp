#pragma once

#include <stdexcept>
#include <vector>

#include "hartree_inverse/common.hpp"
#include "hartree_inverse/fft.hpp"

namespace hinv {

/// 1D analogue of Grid3 for the separable Psi oracle.
struct Grid1 {
  int n = 0;
  double box_length = 0.0;

  Grid1() = default;
  Grid1(int n_, double box_length_) : n(n_), box_length(box_length_) {
    if (n < 4 || (n & (n - 1)) != 0)
      throw std::invalid_argument("Grid1: n must be a power of two >= 4");
    if (box_length <= 0.0) throw std::invalid_argument("Grid1: box_length must be positive");
  }

  [[nodiscard]] double dx() const { return box_length / n; }
  [[nodiscard]] double dxi() const { return 2.0 * pi / box_length; }
  [[nodiscard]] double x(int j) const { return (j - n / 2) * dx(); }
  [[nodiscard]] double xi(int k) const { return (k - n / 2) * dxi(); }
  friend bool operator==(const Grid1& a, const Grid1& b) {
    return a.n == b.n && a.box_length == b.box_length;
  }
};

/// F_1 f(zeta) = (2pi)^{-1/2} int e^{-ix zeta} f(x) dx, centered grid.
inline std::vector<cplx> fourier1(const Grid1& g, std::vector<cplx> v) {
  if (g.n % 4 != 0) throw std::invalid_argument("fourier1: n must be divisible by 4");
  for (int j = 1; j < g.n; j += 2) v[j] = -v[j];
  FftPlan::get(1, g.n).forward(v.data());
  const double scale = std::pow(2.0 * pi, -0.5) * g.dx();
  for (int k = 0; k < g.n; ++k) v[k] *= (k % 2 == 0) ? scale : -scale;
  return v;
}

inline std::vector<cplx> fourier1_inverse(const Grid1& g, std::vector<cplx> v) {
  if (g.n % 4 != 0) throw std::invalid_argument("fourier1_inverse: n must be divisible by 4");
  for (int k = 1; k < g.n; k += 2) v[k] = -v[k];
  FftPlan::get(1, g.n).backward(v.data());
  const double scale = std::pow(2.0 * pi, -0.5) * g.dxi();
  for (int j = 0; j < g.n; ++j) v[j] *= (j % 2 == 0) ? scale : -scale;
  return v;
}

/// U_1(t) = F_1^{-1} e^{-i t zeta^2} F_1 applied in frequency space;
/// the Nyquist entry is zeroed as in the 3D multipliers.
inline void apply_free_multiplier1(const Grid1& g, std::vector<cplx>& vhat, double t) {
  vhat[0] = cplx{0.0, 0.0};
  for (int k = 1; k < g.n; ++k) vhat[k] *= std::polar(1.0, -t * sqr(g.xi(k)));
}

}  // namespace hinv
