#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hartree_inverse/common.hpp"
#include "hartree_inverse/grid.hpp"
#include "hartree_inverse/multiindex.hpp"
#include "hartree_inverse/quadrature.hpp"
#include "hartree_inverse/rational.hpp"

namespace hinv {

enum class PotentialFamily { gaussian, shifted_gaussian, gaussian_mixture, exp_decay_smooth };

inline PotentialFamily potential_family_from_string(const std::string& s) {
  if (s == "gaussian") return PotentialFamily::gaussian;
  if (s == "shifted_gaussian") return PotentialFamily::shifted_gaussian;
  if (s == "gaussian_mixture") return PotentialFamily::gaussian_mixture;
  if (s == "exp_decay_smooth") return PotentialFamily::exp_decay_smooth;
  throw std::invalid_argument("unknown potential family: " + s);
}

/// One Gaussian bump a exp(-|x - c|^2 / w^2).
struct GaussianTerm {
  double amplitude = 1.0;
  vec3 center{0.0, 0.0, 0.0};
  double width = 1.0;
};

/// Interaction potential satisfying (V1): e^{A|x|} V in L^1 for the declared
/// decay constant A. Gaussian families carry closed-form transforms and
/// moments; the smooth exponential family a e^{-rate sqrt(1+|x|^2)} goes
/// through rapidly converging radial quadrature.
struct PotentialSpec {
  PotentialFamily family = PotentialFamily::gaussian;
  std::vector<GaussianTerm> terms{GaussianTerm{}};
  double amplitude = 1.0;  // exp_decay_smooth
  double rate = 1.0;       // exp_decay_smooth
  double decay_A = 2.0;

  static PotentialSpec unit_gaussian() { return PotentialSpec{}; }

  static PotentialSpec shifted_gaussian(const vec3& center, double amplitude = 1.0, double width = 1.0) {
    PotentialSpec s;
    s.family = PotentialFamily::shifted_gaussian;
    s.terms = {GaussianTerm{amplitude, center, width}};
    return s;
  }

  [[nodiscard]] bool is_gaussian_family() const { return family != PotentialFamily::exp_decay_smooth; }

  [[nodiscard]] double value(const vec3& x) const {
    if (is_gaussian_family()) {
      double s = 0.0;
      for (const auto& t : terms) {
        const double r2 = sqr(x[0] - t.center[0]) + sqr(x[1] - t.center[1]) + sqr(x[2] - t.center[2]);
        s += t.amplitude * std::exp(-r2 / sqr(t.width));
      }
      return s;
    }
    return amplitude * std::exp(-rate * std::sqrt(1.0 + sqr(norm3(x))));
  }

  /// F V(xi), closed form for Gaussian families:
  /// a (w^2/2)^{3/2} e^{-w^2 |xi|^2 / 4} e^{-i c . xi} per term.
  [[nodiscard]] cplx fourier(const vec3& xi) const {
    if (is_gaussian_family()) {
      cplx s{0.0, 0.0};
      for (const auto& t : terms) {
        const double xi2 = sqr(xi[0]) + sqr(xi[1]) + sqr(xi[2]);
        const double mag = t.amplitude * std::pow(0.5 * sqr(t.width), 1.5) * std::exp(-0.25 * sqr(t.width) * xi2);
        const double phase = -(t.center[0] * xi[0] + t.center[1] * xi[1] + t.center[2] * xi[2]);
        s += mag * cplx{std::cos(phase), std::sin(phase)};
      }
      return s;
    }
    // Radial: F V(xi) = (2pi)^{-3/2} 4 pi / |xi| int r sin(r|xi|) V(r) dr.
    const double rho = std::sqrt(sqr(xi[0]) + sqr(xi[1]) + sqr(xi[2]));
    const auto integrand = [&](double r) {
      const double vr = amplitude * std::exp(-rate * std::sqrt(1.0 + r * r));
      if (rho < 1e-12) return r * r * vr;
      return r * std::sin(r * rho) * vr / rho;
    };
    return cplx{std::pow(2.0 * pi, -1.5) * 4.0 * pi * radial_integral(integrand), 0.0};
  }

  /// Samples V on a grid (position space, real-valued).
  [[nodiscard]] Field3 sample(const Grid3& g) const {
    Field3 f(g, Space::position);
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k)
          f.v[g.index(i, j, k)] = value(vec3{g.x(i), g.x(j), g.x(k)});
    return f;
  }

  /// Samples F V on the dual grid directly from the closed form.
  [[nodiscard]] Field3 sample_fourier(const Grid3& g) const {
    Field3 f(g, Space::frequency);
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k)
          f.v[g.index(i, j, k)] = fourier(vec3{g.xi(i), g.xi(j), g.xi(k)});
    return f;
  }

  /// Ground-truth oracle: d^beta F V(0) = (2pi)^{-3/2} int (-ix)^beta V dx.
  [[nodiscard]] cplx fourier_derivative(const MultiIndex& beta) const {
    const cplx ipow = std::pow(-iu, beta.order());
    if (is_gaussian_family()) {
      double s = 0.0;
      for (const auto& t : terms) {
        double prod = t.amplitude;
        const int b[3] = {beta.a1, beta.a2, beta.a3};
        for (int axis = 0; axis < 3; ++axis) prod *= gaussian_axis_moment(b[axis], t.center[axis], t.width);
        s += prod;
      }
      return std::pow(2.0 * pi, -1.5) * ipow * s;
    }
    if (beta.a1 % 2 || beta.a2 % 2 || beta.a3 % 2) return cplx{0.0, 0.0};
    // int x^beta f(|x|) dx = S(beta) int r^{|beta|+2} f(r) dr with the
    // angular moment S(beta) = 2 Gamma((b1+1)/2) Gamma((b2+1)/2)
    // Gamma((b3+1)/2) / Gamma((|beta|+3)/2).
    const double S = 2.0 * std::tgamma(0.5 * (beta.a1 + 1)) * std::tgamma(0.5 * (beta.a2 + 1)) *
                     std::tgamma(0.5 * (beta.a3 + 1)) / std::tgamma(0.5 * (beta.order() + 3));
    const auto integrand = [&](double r) {
      return std::pow(r, beta.order() + 2) * amplitude * std::exp(-rate * std::sqrt(1.0 + r * r));
    };
    return std::pow(2.0 * pi, -1.5) * ipow * S * radial_integral(integrand);
  }

 private:
  /// int_{-inf}^{inf} x^b e^{-(x-c)^2/w^2} dx, exact via central moments.
  static double gaussian_axis_moment(int b, double c, double w) {
    double s = 0.0;
    for (int m = 0; m <= b; m += 1) {
      if (m % 2 == 1) continue;  // odd central moments vanish
      const double central = std::pow(w, m + 1) * std::tgamma(0.5 * (m + 1));
      s += static_cast<double>(binomial_exact(b, m)) * std::pow(c, b - m) * central;
    }
    return s;
  }

  /// Adaptive semi-infinite radial quadrature: panel Gauss with doubling
  /// range until the tail is negligible.
  template <typename F>
  static double radial_integral(const F& f) {
    const auto base = gauss_legendre(24);
    double total = 0.0;
    double a = 0.0, len = 2.0;
    for (int panel = 0; panel < 200; ++panel) {
      double part = 0.0;
      for (const auto& nd : base) part += nd.w * f(a + 0.5 * len * (nd.t + 1.0));
      part *= 0.5 * len;
      total += part;
      a += len;
      if (panel > 2 && std::abs(part) < 1e-16 * (std::abs(total) + 1e-300)) return total;
      if (panel > 4) len *= 1.5;
    }
    throw numerical_error("radial_integral: no convergence within range doubling");
  }
};

/// Entries d^{2 alpha(N,eps;k)+eps} F V(0), k = 1..N*.
struct DerivativeVector {
  int N = 0;
  EpsilonMask eps;
  std::vector<cplx> entries;
};

inline DerivativeVector derivative_vector_oracle(const PotentialSpec& spec, int N, const EpsilonMask& eps) {
  const OrderedBasis basis = ordered_basis(N, eps);
  DerivativeVector out;
  out.N = N;
  out.eps = eps;
  out.entries.reserve(basis.nstar());
  for (const auto& alpha : basis.seq)
    out.entries.push_back(spec.fourier_derivative(2 * alpha + eps.as_multiindex()));
  return out;
}

/// Partial Taylor sum of F V about 0 from a table of derivatives, plus the
/// guaranteed-radius flag |xi| < A/3.
struct TaylorResult {
  cplx value{0.0, 0.0};
  bool inside_radius = false;
};

inline TaylorResult taylor_eval(const std::map<std::array<int, 3>, cplx>& derivs, const vec3& xi, double A) {
  int K = 0;
  for (const auto& [beta, _] : derivs) K = std::max(K, beta[0] + beta[1] + beta[2]);
  for (int total = 0; total <= K; ++total)
    for (int b1 = 0; b1 <= total; ++b1)
      for (int b2 = 0; b2 <= total - b1; ++b2) {
        const std::array<int, 3> beta{b1, b2, total - b1 - b2};
        if (derivs.find(beta) == derivs.end())
          throw std::invalid_argument("taylor_eval: derivative table incomplete through order K");
      }

  TaylorResult out;
  KahanSum acc;
  for (const auto& [beta, d] : derivs) {
    const MultiIndex b{beta[0], beta[1], beta[2]};
    const double mono = std::pow(xi[0], beta[0]) * std::pow(xi[1], beta[1]) * std::pow(xi[2], beta[2]);
    acc.add(d * mono / static_cast<double>(b.factorial()));
  }
  out.value = acc.value();
  out.inside_radius = norm3(xi) < A / 3.0;
  return out;
}

/// (V1) check: e^{A|x|} |V| integrated over expanding balls must have
/// geometrically decaying shell contributions.
struct V1Report {
  double A = 0.0;
  double integral = 0.0;
  bool pass = false;
  std::vector<double> shell_contributions;
};

inline V1Report check_v1(const PotentialSpec& spec, double A_override = -1.0) {
  V1Report rep;
  rep.A = A_override > 0.0 ? A_override : spec.decay_A;

  const auto sphere_mean = [&](double r) {
    // product-angle quadrature of |V| over the sphere of radius r
    const auto nodes_theta = gauss_legendre(12);
    double s = 0.0;
    const int nphi = 24;
    for (const auto& nt : nodes_theta) {
      const double ct = nt.t;  // cos(theta) on [-1, 1]
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int ip = 0; ip < nphi; ++ip) {
        const double phi = 2.0 * pi * ip / nphi;
        const vec3 x{r * st * std::cos(phi), r * st * std::sin(phi), r * ct};
        s += nt.w * std::abs(spec.value(x));
      }
    }
    return s * (2.0 * pi / nphi) / (4.0 * pi);
  };

  const auto nodes = gauss_legendre(16);
  double total = 0.0;
  double prev_shell = -1.0;
  bool decaying = true;
  const double dr = 1.0;
  for (int shell = 0; shell < 60; ++shell) {
    const double r0 = shell * dr;
    double part = 0.0;
    for (const auto& nd : nodes) {
      const double r = r0 + 0.5 * dr * (nd.t + 1.0);
      part += nd.w * 4.0 * pi * r * r * std::exp(rep.A * r) * sphere_mean(r);
    }
    part *= 0.5 * dr;
    total += part;
    rep.shell_contributions.push_back(part);
    if (shell >= 8) {
      if (prev_shell > 0.0 && part > prev_shell) {
        decaying = false;
        break;
      }
      prev_shell = part;
    }
    if (shell >= 12 && part < 1e-14 * total) break;
  }
  rep.integral = total;
  rep.pass = decaying && std::isfinite(total);
  return rep;
}

}  // namespace hinv
