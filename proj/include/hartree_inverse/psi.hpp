#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hartree_inverse/grid1.hpp"
#include "hartree_inverse/multiindex.hpp"
#include "hartree_inverse/phi.hpp"
#include "hartree_inverse/propagators.hpp"
#include "hartree_inverse/quadrature.hpp"

namespace hinv {

/// Psi(rho, rho~; t, zeta) on a 1D grid: the separable factor of Phi from
/// the appendix factorization. Data transforms cached, each t costs four
/// 1D transforms.
class PsiEvaluator {
 public:
  PsiEvaluator(const Grid1& g, const std::vector<cplx>& rho, const std::vector<cplx>& rhot)
      : grid_(g), rho_hat_(fourier1(g, rho)), rhot_hat_(fourier1(g, rhot)) {
    if (static_cast<int>(rho.size()) != g.n || static_cast<int>(rhot.size()) != g.n)
      throw std::invalid_argument("PsiEvaluator: sample size mismatch");
  }

  static PsiEvaluator from_profile(const Grid1& g, const Profile1D& p, bool differentiate) {
    std::vector<cplx> rho(g.n), rhot(g.n);
    for (int j = 0; j < g.n; ++j) {
      rho[j] = p.value(g.x(j));
      rhot[j] = differentiate ? p.deriv(g.x(j)) : p.value(g.x(j));
    }
    return PsiEvaluator(g, rho, rhot);
  }

  [[nodiscard]] const Grid1& grid() const { return grid_; }

  /// Psi(t, .) over the whole zeta grid.
  [[nodiscard]] std::vector<cplx> psi(double t) const {
    std::vector<cplx> u_hat = rho_hat_, ut_hat = rhot_hat_;
    apply_free_multiplier1(grid_, u_hat, t);
    apply_free_multiplier1(grid_, ut_hat, t);
    const std::vector<cplx> u = fourier1_inverse(grid_, u_hat);
    const std::vector<cplx> ut = fourier1_inverse(grid_, ut_hat);
    std::vector<cplx> density(grid_.n), cross(grid_.n);
    for (int j = 0; j < grid_.n; ++j) {
      density[j] = cplx{std::norm(u[j]), 0.0};
      cross[j] = std::conj(u[j]) * ut[j];
    }
    const std::vector<cplx> A = fourier1(grid_, density);
    const std::vector<cplx> B = fourier1(grid_, cross);
    std::vector<cplx> out(grid_.n);
    for (int j = 0; j < grid_.n; ++j) out[j] = A[j] * std::conj(B[j]);
    return out;
  }

  /// int zeta^k Psi(t, zeta) d zeta (Nyquist-masked, deterministic order).
  [[nodiscard]] cplx zeta_moment(double t, int k) const {
    const std::vector<cplx> row = psi(t);
    KahanSum s;
    for (int j = 1; j < grid_.n; ++j) s.add(std::pow(grid_.xi(j), k) * row[j]);
    return s.value() * grid_.dxi();
  }

 private:
  Grid1 grid_;
  std::vector<cplx> rho_hat_;
  std::vector<cplx> rhot_hat_;
};

/// Psi at a single (t, zeta) with zeta snapped to the nearest grid node.
inline cplx psi_1d(const Grid1& g, const Profile1D& rho, bool rhot_is_derivative, double t, double zeta) {
  const PsiEvaluator ev = PsiEvaluator::from_profile(g, rho, rhot_is_derivative);
  const std::vector<cplx> row = ev.psi(t);
  const int k = std::clamp(static_cast<int>(std::lround(zeta / g.dxi())) + g.n / 2, 0, g.n - 1);
  return row[k];
}

/// Independent 1D route to the 3D moment integrals on product data:
/// Phi(phi, phi~, mu; t, xi) = prod_a Psi(rho_a, rho~_a; d_a^2 t, xi_a), so
/// the (t, xi) moment reduces to a t-quadrature of products of 1D moments.
/// `mu < 0` selects the Phi_eps limit, where only axis m(eps) evolves and
/// the other factors are frozen at t = 0.
inline cplx separable_moment(const MultiIndex& alpha, const ExampleData& ex, double mu, int N,
                             const TimeQuadrature& quad, const Grid1& g1) {
  const EpsilonMask& eps = ex.eps;
  std::array<int, 3> exponent{2 * alpha.a1 + eps.e1, 2 * alpha.a2 + eps.e2, 2 * alpha.a3 + eps.e3};
  std::array<PsiEvaluator, 3> ev{PsiEvaluator::from_profile(g1, ex.profiles[0], eps.e1 != 0),
                                 PsiEvaluator::from_profile(g1, ex.profiles[1], eps.e2 != 0),
                                 PsiEvaluator::from_profile(g1, ex.profiles[2], eps.e3 != 0)};

  vec3 coeffs;
  if (mu > 0.0) {
    coeffs = aniso_symbol_coeffs(mu, N, eps);
  } else {
    coeffs = vec3{0.0, 0.0, 0.0};
    coeffs[eps.m() - 1] = 1.0;
  }

  if (mu <= 0.0) {
    // pure product: frozen axes integrate in zeta only
    cplx prod{1.0, 0.0};
    for (int a = 0; a < 3; ++a) {
      if (coeffs[a] == 0.0) prod *= ev[a].zeta_moment(0.0, exponent[a]);
    }
    KahanSum tsum;
    const int m = eps.m() - 1;
    for (const auto& nd : quad.symmetric_nodes()) tsum.add(nd.w * ev[m].zeta_moment(nd.t, exponent[m]));
    return prod * tsum.value();
  }

  KahanSum tsum;
  for (const auto& nd : quad.symmetric_nodes()) {
    cplx prod{1.0, 0.0};
    for (int a = 0; a < 3; ++a) prod *= ev[a].zeta_moment(coeffs[a] * nd.t, exponent[a]);
    tsum.add(nd.w * prod);
  }
  return tsum.value();
}

}  // namespace hinv
