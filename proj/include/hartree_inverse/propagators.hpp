#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "hartree_inverse/grid.hpp"
#include "hartree_inverse/multiindex.hpp"

namespace hinv {

/// D^{lambda,mu}_{N,eps} = lambda I(eps) diag(1, mu, mu^{N+1}) I(eps); a
/// diagonal matrix whose entries are the permuted scales.
struct ScalingMatrix {
  double lambda = 1.0;
  double mu = 1.0;
  int N = 0;
  EpsilonMask eps;

  ScalingMatrix() = default;
  ScalingMatrix(double lambda_, double mu_, int N_, const EpsilonMask& eps_)
      : lambda(lambda_), mu(mu_), N(N_), eps(eps_) {
    if (lambda <= 0.0 || mu <= 0.0) throw std::invalid_argument("ScalingMatrix: lambda, mu must be positive");
    if (N < 0) throw std::invalid_argument("ScalingMatrix: N must be >= 0");
  }

  [[nodiscard]] vec3 diagonal() const {
    const vec3 base{1.0, mu, std::pow(mu, N + 1)};
    const vec3 permuted = AxisInvolution::for_mask(eps).apply(base);
    return {lambda * permuted[0], lambda * permuted[1], lambda * permuted[2]};
  }
  [[nodiscard]] double det() const { return lambda * lambda * lambda * std::pow(mu, N + 2); }
  [[nodiscard]] vec3 apply(const vec3& x) const {
    const vec3 d = diagonal();
    return {d[0] * x[0], d[1] * x[1], d[2] * x[2]};
  }
};

namespace detail {

/// Multiplies a frequency-space field by exp(-i t (a1 xi1^2 + a2 xi2^2 +
/// a3 xi3^2)), built as a product of per-axis phase factors. The unpaired
/// Nyquist row (index 0 per axis) is zeroed so the multiplier keeps
/// Hermitian symmetry for real inputs.
inline void apply_quadratic_multiplier(Field3& fhat, double t, const vec3& a) {
  const Grid3& g = fhat.grid;
  std::array<std::vector<cplx>, 3> phase;
  for (int axis = 0; axis < 3; ++axis) {
    phase[axis].resize(g.n);
    for (int k = 0; k < g.n; ++k) phase[axis][k] = std::polar(1.0, -t * a[axis] * sqr(g.xi(k)));
    phase[axis][0] = cplx{0.0, 0.0};  // Nyquist
  }
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const cplx pij = phase[0][i] * phase[1][j];
      cplx* row = fhat.v.data() + g.index(i, j, 0);
      for (int k = 0; k < g.n; ++k) row[k] *= pij * phase[2][k];
    }
}

inline Field3 propagate_with_coeffs(const Field3& f, double t, const vec3& a) {
  if (f.space != Space::position)
    throw std::invalid_argument("propagate: field must be in position space");
  Field3 fhat = fourier(f);
  apply_quadratic_multiplier(fhat, t, a);
  return fourier_inverse(fhat);
}

}  // namespace detail

/// Squared symbol coefficients of U^mu_{N,eps}: permuted (1, mu^2, mu^{2N+2}).
inline vec3 aniso_symbol_coeffs(double mu, int N, const EpsilonMask& eps) {
  const vec3 base{1.0, mu * mu, std::pow(mu, 2 * N + 2)};
  return AxisInvolution::for_mask(eps).apply(base);
}

/// U(t) = e^{it Delta}: multiplier exp(-i t |xi|^2).
inline Field3 free_propagate(const Field3& f, double t) {
  return detail::propagate_with_coeffs(f, t, vec3{1.0, 1.0, 1.0});
}

/// U^mu_{N,eps}(t): multiplier exp(-i t |D^{1,mu}_{N,eps} xi|^2).
inline Field3 aniso_propagate(const Field3& f, double t, double mu, int N, const EpsilonMask& eps) {
  if (mu <= 0.0) throw std::invalid_argument("aniso_propagate: mu must be positive");
  return detail::propagate_with_coeffs(f, t, aniso_symbol_coeffs(mu, N, eps));
}

/// U_eps(t): one-dimensional free evolution along axis m(eps).
inline Field3 axis_propagate(const Field3& f, double t, const EpsilonMask& eps) {
  vec3 a{0.0, 0.0, 0.0};
  a[eps.m() - 1] = 1.0;
  return detail::propagate_with_coeffs(f, t, a);
}

using AnalyticFn = std::function<cplx(const vec3&)>;

/// Samples phi(D x) on the grid from the analytic form (no interpolation).
inline Field3 scale_compose(const AnalyticFn& phi, const ScalingMatrix& D, const Grid3& grid) {
  Field3 out(grid, Space::position);
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j)
      for (int k = 0; k < grid.n; ++k)
        out.v[grid.index(i, j, k)] = phi(D.apply(vec3{grid.x(i), grid.x(j), grid.x(k)}));
  return out;
}

/// Fraction of the discrete mass sitting in the outermost cell shell; a
/// proxy for mass leaking outside the periodic box.
inline double boundary_mass_fraction(const Field3& f) {
  const Grid3& g = f.grid;
  KahanSumReal total, shell;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k) {
        const double m = std::norm(f.v[g.index(i, j, k)]);
        total.add(m);
        const bool edge = i == 0 || j == 0 || k == 0 || i == g.n - 1 || j == g.n - 1 || k == g.n - 1;
        if (edge) shell.add(m);
      }
  const double tot = total.value();
  return tot > 0.0 ? shell.value() / tot : 0.0;
}

}  // namespace hinv
