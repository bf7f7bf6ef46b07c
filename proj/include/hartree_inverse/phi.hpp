#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hartree_inverse/grid.hpp"
#include "hartree_inverse/multiindex.hpp"
#include "hartree_inverse/propagators.hpp"
#include "hartree_inverse/quadrature.hpp"

namespace hinv {

/// Even analytic 1D profile with a closed-form derivative; the building
/// block of the Remark-1.4 example data.
struct Profile1D {
  enum class Kind { gaussian, hermite };
  Kind kind = Kind::gaussian;
  double width = 1.0;
  double herm = 0.5;  // hermite: (1 + herm x^2) e^{-x^2/(2 w^2)}

  [[nodiscard]] double value(double x) const {
    const double g = std::exp(-0.5 * sqr(x / width));
    return kind == Kind::gaussian ? g : (1.0 + herm * x * x) * g;
  }
  [[nodiscard]] double deriv(double x) const {
    const double g = std::exp(-0.5 * sqr(x / width));
    if (kind == Kind::gaussian) return -x / sqr(width) * g;
    return (2.0 * herm * x - (1.0 + herm * x * x) * x / sqr(width)) * g;
  }
};

/// phi = rho1 x rho2 x rho3 (all even, so (C1) holds) and phi~ = d^eps phi
/// (so (C2) holds with the right parities).
struct ExampleData {
  std::array<Profile1D, 3> profiles{};
  EpsilonMask eps;

  static ExampleData gaussians(const EpsilonMask& eps, double width = 1.0) {
    ExampleData d;
    d.eps = eps;
    for (auto& p : d.profiles) p = Profile1D{Profile1D::Kind::gaussian, width, 0.0};
    return d;
  }
  static ExampleData hermites(const EpsilonMask& eps, double width = 1.0, double herm = 0.5) {
    ExampleData d;
    d.eps = eps;
    for (auto& p : d.profiles) p = Profile1D{Profile1D::Kind::hermite, width, herm};
    return d;
  }

  [[nodiscard]] double phi(const vec3& x) const {
    return profiles[0].value(x[0]) * profiles[1].value(x[1]) * profiles[2].value(x[2]);
  }
  [[nodiscard]] double phi_tilde(const vec3& x) const {
    double prod = 1.0;
    for (int a = 0; a < 3; ++a) prod *= eps[a] ? profiles[a].deriv(x[a]) : profiles[a].value(x[a]);
    return prod;
  }
  [[nodiscard]] AnalyticFn phi_fn() const {
    return [*this](const vec3& x) { return cplx{phi(x), 0.0}; };
  }
  [[nodiscard]] AnalyticFn phi_tilde_fn() const {
    return [*this](const vec3& x) { return cplx{phi_tilde(x), 0.0}; };
  }
  [[nodiscard]] Field3 sample_phi(const Grid3& g) const {
    return scale_compose(phi_fn(), ScalingMatrix{}, g);
  }
  [[nodiscard]] Field3 sample_phi_tilde(const Grid3& g) const {
    return scale_compose(phi_tilde_fn(), ScalingMatrix{}, g);
  }
};

/// Evaluates Phi(phi, phi~, . ; t, xi) on a fixed grid; the data transforms
/// are done once, each t costs four transforms.
class PhiEvaluator {
 public:
  PhiEvaluator(const Field3& phi_pos, const Field3& phit_pos)
      : grid_(phi_pos.grid), phi_hat_(fourier(phi_pos)), phit_hat_(fourier(phit_pos)) {
    if (!(phi_pos.grid == phit_pos.grid)) throw std::invalid_argument("PhiEvaluator: grid mismatch");
  }

  [[nodiscard]] const Grid3& grid() const { return grid_; }

  /// Phi for the anisotropic propagator U^mu_{N,eps}, frequency space.
  [[nodiscard]] Field3 phi_mu(double t, double mu, int N, const EpsilonMask& eps) const {
    return correlate(t, aniso_symbol_coeffs(mu, N, eps));
  }

  /// Phi_eps for the axis propagator U_eps (the mu -> 0 limit).
  [[nodiscard]] Field3 phi_limit(double t, const EpsilonMask& eps) const {
    vec3 a{0.0, 0.0, 0.0};
    a[eps.m() - 1] = 1.0;
    return correlate(t, a);
  }

  /// Phi with explicit per-axis symbol coefficients.
  [[nodiscard]] Field3 correlate(double t, const vec3& coeffs) const {
    Field3 u_hat = phi_hat_;
    detail::apply_quadratic_multiplier(u_hat, t, coeffs);
    const Field3 u = fourier_inverse(u_hat);
    Field3 ut_hat = phit_hat_;
    detail::apply_quadratic_multiplier(ut_hat, t, coeffs);
    const Field3 ut = fourier_inverse(ut_hat);

    Field3 density(grid_, Space::position), cross(grid_, Space::position);
    for (std::size_t i = 0; i < u.v.size(); ++i) {
      density.v[i] = cplx{std::norm(u.v[i]), 0.0};
      cross.v[i] = std::conj(u.v[i]) * ut.v[i];
    }
    const Field3 A = fourier(density);
    const Field3 B = fourier(cross);
    Field3 out(grid_, Space::frequency);
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = A.v[i] * std::conj(B.v[i]);
    return out;
  }

 private:
  Grid3 grid_;
  Field3 phi_hat_;
  Field3 phit_hat_;
};

/// One-shot versions matching the spec operation signatures.
inline Field3 phi_mu(const Field3& phi, const Field3& phit, double mu, int N, const EpsilonMask& eps, double t) {
  return PhiEvaluator(phi, phit).phi_mu(t, mu, N, eps);
}
inline Field3 phi_limit(const Field3& phi, const Field3& phit, const EpsilonMask& eps, double t) {
  return PhiEvaluator(phi, phit).phi_limit(t, eps);
}

/// xi^beta on the dual grid with the Nyquist rows zeroed (keeps the exact
/// parity cancellations of the symmetric lattice).
inline std::vector<double> moment_weight(const Grid3& g, const MultiIndex& beta) {
  std::array<std::vector<double>, 3> axis;
  for (int a = 0; a < 3; ++a) {
    axis[a].resize(g.n);
    for (int k = 0; k < g.n; ++k) axis[a][k] = std::pow(g.xi(k), beta[a]);
    axis[a][0] = 0.0;
  }
  std::vector<double> w(g.size());
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const double wij = axis[0][i] * axis[1][j];
      double* row = w.data() + g.index(i, j, 0);
      for (int k = 0; k < g.n; ++k) row[k] = wij * axis[2][k];
    }
  return w;
}

struct MomentResult {
  cplx value{0.0, 0.0};
  double tail_estimate = 0.0;  // |t-integrand at the outermost node| * T
  double abs_mass = 0.0;       // integral of |weight| |Phi|, for error floors
};

/// Error scale against which "vanishing" and significance are judged:
/// quadrature tail plus a roundoff floor proportional to the absolute mass.
inline double moment_error_scale(const MomentResult& m) {
  return m.tail_estimate + 1e-14 * m.abs_mass;
}

namespace detail {

struct MomentAccumulator {
  KahanSum value;
  KahanSumReal abs_mass;
  double outer_integrand = 0.0;
};

}  // namespace detail

/// Moments int xi^beta Phi(t, xi) d(t, xi) for several exponents in one
/// t-sweep; `mu < 0` selects the Phi_eps limit. Deterministic node order.
inline std::vector<MomentResult> moment_sweep(const PhiEvaluator& ev, const std::vector<MultiIndex>& exponents,
                                              double mu, int N, const EpsilonMask& eps,
                                              const TimeQuadrature& quad) {
  const Grid3& g = ev.grid();
  std::vector<std::vector<double>> weights;
  weights.reserve(exponents.size());
  for (const auto& beta : exponents) weights.push_back(moment_weight(g, beta));

  std::vector<detail::MomentAccumulator> acc(exponents.size());
  const double dvol = std::pow(g.dxi(), 3);
  const auto nodes = quad.symmetric_nodes();
  const double t_outer = quad.half.empty() ? 0.0 : quad.half.back().t;

  for (const auto& nd : nodes) {
    const Field3 phi_t = (mu > 0.0) ? ev.phi_mu(nd.t, mu, N, eps) : ev.phi_limit(nd.t, eps);
    for (std::size_t e = 0; e < exponents.size(); ++e) {
      KahanSum xi_int;
      KahanSumReal xi_abs;
      const auto& w = weights[e];
      for (std::size_t i = 0; i < w.size(); ++i) {
        xi_int.add(w[i] * phi_t.v[i]);
        xi_abs.add(std::abs(w[i]) * std::abs(phi_t.v[i]));
      }
      acc[e].value.add(nd.w * xi_int.value() * dvol);
      acc[e].abs_mass.add(nd.w * xi_abs.value() * dvol);
      if (std::abs(nd.t) >= t_outer * (1.0 - 1e-12))
        acc[e].outer_integrand = std::max(acc[e].outer_integrand, std::abs(xi_int.value()) * dvol);
    }
  }

  std::vector<MomentResult> out(exponents.size());
  for (std::size_t e = 0; e < exponents.size(); ++e) {
    out[e].value = acc[e].value.value();
    out[e].abs_mass = acc[e].abs_mass.value();
    out[e].tail_estimate = acc[e].outer_integrand * quad.T;
  }
  return out;
}

/// int xi^{2 alpha + eps} Phi(phi, phi~, mu; t, xi) d(t, xi); throws when the
/// estimated t-tail exceeds `tail_tol` relative to the value.
inline MomentResult moment_integral(const MultiIndex& alpha, const EpsilonMask& eps, const Field3& phi,
                                    const Field3& phit, double mu, int N, const TimeQuadrature& quad,
                                    double tail_tol = 0.5) {
  const PhiEvaluator ev(phi, phit);
  const MultiIndex beta = 2 * alpha + eps.as_multiindex();
  const MomentResult r = moment_sweep(ev, {beta}, mu, N, eps, quad)[0];
  if (std::abs(r.value) > 0.0 && r.tail_estimate > tail_tol * std::abs(r.value))
    throw numerical_error("moment_integral: t-tail estimate above tolerance; increase quadrature T");
  return r;
}

/// (C1)-(C3) report for example data at a given N.
struct ConditionReport {
  double c1_residual = 0.0;
  double c2_residual = 0.0;
  std::vector<cplx> c3_moments;
  std::vector<double> c3_floors;  // significance floor per moment
  bool c1 = false, c2 = false, c3 = false;
};

inline ConditionReport check_conditions(const ExampleData& ex, int N, const Grid3& g,
                                        const TimeQuadrature& quad) {
  ConditionReport rep;
  const Field3 phi = ex.sample_phi(g);
  const Field3 phit = ex.sample_phi_tilde(g);

  double scale_phi = 0.0, scale_phit = 0.0;
  for (const cplx& z : phi.v) scale_phi = std::max(scale_phi, std::abs(z));
  for (const cplx& z : phit.v) scale_phit = std::max(scale_phit, std::abs(z));

  // reflected index of x_j is x_{n-j} (mod n) on the centered lattice
  const auto refl = [&](int j) { return (g.n - j) % g.n; };
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k) {
        const std::size_t idx = g.index(i, j, k);
        rep.c1_residual = std::max({rep.c1_residual,
                                    std::abs(phi.v[g.index(refl(i), j, k)] - phi.v[idx]),
                                    std::abs(phi.v[g.index(i, refl(j), k)] - phi.v[idx]),
                                    std::abs(phi.v[g.index(i, j, refl(k))] - phi.v[idx])});
        const double s1 = ex.eps.e1 ? -1.0 : 1.0;
        const double s2 = ex.eps.e2 ? -1.0 : 1.0;
        const double s3 = ex.eps.e3 ? -1.0 : 1.0;
        rep.c2_residual = std::max({rep.c2_residual,
                                    std::abs(phit.v[g.index(refl(i), j, k)] - s1 * phit.v[idx]),
                                    std::abs(phit.v[g.index(i, refl(j), k)] - s2 * phit.v[idx]),
                                    std::abs(phit.v[g.index(i, j, refl(k))] - s3 * phit.v[idx])});
      }
  rep.c1 = rep.c1_residual <= 1e-12 * scale_phi;
  rep.c2 = rep.c2_residual <= 1e-12 * scale_phit;

  const OrderedBasis basis = ordered_basis(N, ex.eps);
  std::vector<MultiIndex> exponents;
  for (const auto& alpha : basis.seq) exponents.push_back(2 * alpha + ex.eps.as_multiindex());
  const PhiEvaluator ev(phi, phit);
  const auto moments = moment_sweep(ev, exponents, -1.0, N, ex.eps, quad);

  rep.c3 = true;
  for (const auto& m : moments) {
    rep.c3_moments.push_back(m.value);
    const double floor = 100.0 * moment_error_scale(m);
    rep.c3_floors.push_back(floor);
    if (std::abs(m.value) <= floor) rep.c3 = false;
  }
  return rep;
}

}  // namespace hinv
