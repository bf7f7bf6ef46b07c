#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hartree_inverse/combinatorics.hpp"
#include "hartree_inverse/multiindex.hpp"
#include "hartree_inverse/phi.hpp"
#include "hartree_inverse/quadrature.hpp"

namespace hinv {

namespace linalg {

/// Dense complex LU with partial pivoting; sizes here are N* <= 15.
struct Lu {
  int n = 0;
  std::vector<cplx> a;      // factored matrix, row-major
  std::vector<int> piv;
  int sign = 1;
  bool singular = false;

  static Lu factor(int n, std::vector<cplx> m) {
    Lu lu;
    lu.n = n;
    lu.a = std::move(m);
    lu.piv.resize(n);
    for (int c = 0; c < n; ++c) {
      int best = c;
      double mag = std::abs(lu.a[c * n + c]);
      for (int r = c + 1; r < n; ++r)
        if (std::abs(lu.a[r * n + c]) > mag) {
          mag = std::abs(lu.a[r * n + c]);
          best = r;
        }
      lu.piv[c] = best;
      if (best != c) {
        for (int k = 0; k < n; ++k) std::swap(lu.a[c * n + k], lu.a[best * n + k]);
        lu.sign = -lu.sign;
      }
      const cplx d = lu.a[c * n + c];
      if (d == cplx{0.0, 0.0}) {
        lu.singular = true;
        continue;
      }
      for (int r = c + 1; r < n; ++r) {
        const cplx f = lu.a[r * n + c] / d;
        lu.a[r * n + c] = f;
        for (int k = c + 1; k < n; ++k) lu.a[r * n + k] -= f * lu.a[c * n + k];
      }
    }
    return lu;
  }

  [[nodiscard]] cplx det() const {
    cplx d{static_cast<double>(sign), 0.0};
    for (int c = 0; c < n; ++c) d *= a[c * n + c];
    return d;
  }

  [[nodiscard]] std::vector<cplx> solve(std::vector<cplx> b) const {
    if (singular) throw numerical_error("Lu::solve: singular matrix");
    for (int c = 0; c < n; ++c) {
      if (piv[c] != c) std::swap(b[c], b[piv[c]]);
      for (int r = c + 1; r < n; ++r) b[r] -= a[r * n + c] * b[c];
    }
    for (int r = n - 1; r >= 0; --r) {
      for (int k = r + 1; k < n; ++k) b[r] -= a[r * n + k] * b[k];
      b[r] /= a[r * n + r];
    }
    return b;
  }
};

/// kappa_2 estimate via power iteration on B^H B and inverse iteration
/// through the LU of B. Deterministic start, fixed iteration count.
inline double condition_number(int n, const std::vector<cplx>& b) {
  const Lu lu = Lu::factor(n, b);
  if (lu.singular) return std::numeric_limits<double>::infinity();

  const auto matvec = [&](const std::vector<cplx>& x) {
    std::vector<cplx> y(n, cplx{0.0, 0.0}), z(n, cplx{0.0, 0.0});
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) y[r] += b[r * n + c] * x[c];
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r) z[c] += std::conj(b[r * n + c]) * y[r];
    return z;
  };
  const auto inv_matvec = [&](const std::vector<cplx>& x) {
    // (B^H B)^{-1} x = B^{-1} B^{-H} x; B^{-H} via solving with the
    // adjoint: solve conj-transposed system through a second LU.
    static thread_local std::vector<cplx> bh;
    bh.assign(static_cast<std::size_t>(n) * n, cplx{0.0, 0.0});
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) bh[r * n + c] = std::conj(b[c * n + r]);
    const Lu luh = Lu::factor(n, bh);
    return lu.solve(luh.solve(x));
  };

  const auto norm = [&](const std::vector<cplx>& x) {
    double s = 0.0;
    for (const cplx& z : x) s += std::norm(z);
    return std::sqrt(s);
  };

  std::vector<cplx> x(n, cplx{1.0, 0.0});
  double lam_max = 0.0;
  for (int it = 0; it < 120; ++it) {
    x = matvec(x);
    lam_max = norm(x);
    if (lam_max == 0.0) return std::numeric_limits<double>::infinity();
    for (cplx& z : x) z /= lam_max;
  }
  std::vector<cplx> y(n, cplx{1.0, 0.0});
  double inv_lam_min = 0.0;
  for (int it = 0; it < 120; ++it) {
    y = inv_matvec(y);
    inv_lam_min = norm(y);
    if (!std::isfinite(inv_lam_min) || inv_lam_min == 0.0)
      return std::numeric_limits<double>::infinity();
    for (cplx& z : y) z /= inv_lam_min;
  }
  return std::sqrt(lam_max * inv_lam_min);
}

}  // namespace linalg

/// The N* x N* moment matrix in factored form: entry (j,k) equals
///   mantissa(j,k) * mu^{E(j,k)},   E(j,k) = P(2a_k + eps) (N+1)^{2(j-1)},
/// with the integer exponents kept exactly. Row j uses mu_j = mu^{(N+1)^{2(j-1)}}.
struct MomentMatrix {
  int N = 0;
  EpsilonMask eps;
  double mu = 0.0;
  int nstar = 0;
  OrderedBasis basis;
  std::vector<std::int64_t> p;  // p_k = P(2 alpha_k + eps)
  std::vector<std::int64_t> q;  // q_j = (N+1)^{2(j-1)}
  std::vector<cplx> mantissa;   // c_k C(j,k; mu_j), row-major
  std::vector<double> tails;    // per-entry quadrature tail estimate

  // Assignment potentials: u_j + v_k <= E(j,k), tight on the anti-diagonal
  // (the optimal assignment by Step II minimality). B = scaled matrix with
  // entries mantissa * mu^{E - u - v}, bounded and invertible as mu -> 0.
  std::vector<std::int64_t> u, v;
  std::vector<cplx> scaled;  // B

  cplx scaled_det{0.0, 0.0};
  std::int64_t det_exponent = 0;  // det M = scaled_det * mu^{det_exponent}
  double log10_abs_det = 0.0;
  double condition_number = 0.0;
  bool invertible = false;

  [[nodiscard]] std::int64_t exponent(int j, int k) const { return p[k] * q[j]; }
  [[nodiscard]] double mu_j(int j) const { return std::pow(mu, static_cast<double>(q[j])); }

  /// Full entry value in doubles; under/overflows for deep rows by design.
  [[nodiscard]] cplx entry(int j, int k) const {
    return mantissa[j * nstar + k] * std::pow(mu, static_cast<double>(exponent(j, k)));
  }
};

namespace detail {

/// Dual potentials for the assignment problem on costs E(j,k) = p_k q_j with
/// p, q strictly increasing (an inverse-Monge matrix, optimal assignment =
/// anti-diagonal): u_{j+1} - u_j = (q_{j+1} - q_j) p_{n-j}, tightness on the
/// anti-diagonal defines v. Feasibility is asserted exhaustively.
inline void assignment_potentials(const std::vector<std::int64_t>& p, const std::vector<std::int64_t>& q,
                                  std::vector<std::int64_t>& u, std::vector<std::int64_t>& v) {
  const int n = static_cast<int>(p.size());
  u.assign(n, 0);
  v.assign(n, 0);
  for (int j = 0; j + 1 < n; ++j) u[j + 1] = u[j] + (q[j + 1] - q[j]) * p[n - 1 - j];
  for (int j = 0; j < n; ++j) v[n - 1 - j] = q[j] * p[n - 1 - j] - u[j];
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (u[j] + v[k] > p[k] * q[j])
        throw std::logic_error("assignment_potentials: infeasible duals (P not strictly increasing?)");
}

}  // namespace detail

/// Builds M_{N,eps}[phi, phi~, mu] on the given grid/quadrature, reporting
/// the factored determinant and the condition number of the scaled matrix.
inline MomentMatrix assemble_M(int N, const EpsilonMask& eps, const ExampleData& example, double mu,
                               const TimeQuadrature& quad, const Grid3& grid, double cond_threshold = 1e8) {
  if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("assemble_M: mu must lie in (0,1)");
  if (!(example.eps == eps)) throw std::invalid_argument("assemble_M: example data mask mismatch");

  MomentMatrix M;
  M.N = N;
  M.eps = eps;
  M.mu = mu;
  M.basis = ordered_basis(N, eps);
  M.nstar = M.basis.nstar();
  const int n = M.nstar;

  M.p.resize(n);
  M.q.resize(n);
  std::vector<double> c(n);
  std::vector<MultiIndex> exponents(n);
  const std::int64_t num = factorial_exact(2 * N + eps.order());
  for (int k = 0; k < n; ++k) {
    const MultiIndex beta = 2 * M.basis.seq[k] + eps.as_multiindex();
    exponents[k] = beta;
    M.p[k] = p_weight(N, eps, beta);
    c[k] = static_cast<double>(num / beta.factorial());  // exact integer ratio
  }
  for (int j = 0; j < n; ++j) M.q[j] = ipow_exact(N + 1, 2 * j);

  const Field3 phi = example.sample_phi(grid);
  const Field3 phit = example.sample_phi_tilde(grid);
  const PhiEvaluator ev(phi, phit);

  M.mantissa.assign(static_cast<std::size_t>(n) * n, cplx{0.0, 0.0});
  M.tails.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    const double mu_j = M.mu_j(j);  // underflow to 0 gives the axis limit
    const auto sweep = moment_sweep(ev, exponents, mu_j, N, eps, quad);
    for (int k = 0; k < n; ++k) {
      M.mantissa[j * static_cast<std::size_t>(n) + k] = c[k] * sweep[k].value;
      M.tails[j * static_cast<std::size_t>(n) + k] = c[k] * sweep[k].tail_estimate;
    }
  }

  detail::assignment_potentials(M.p, M.q, M.u, M.v);
  M.scaled.assign(static_cast<std::size_t>(n) * n, cplx{0.0, 0.0});
  std::int64_t pot_sum = 0;
  for (int j = 0; j < n; ++j) pot_sum += M.u[j] + M.v[j];
  M.det_exponent = pot_sum;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const std::int64_t red = M.exponent(j, k) - M.u[j] - M.v[k];
      M.scaled[j * static_cast<std::size_t>(n) + k] =
          M.mantissa[j * static_cast<std::size_t>(n) + k] * std::pow(mu, static_cast<double>(red));
    }

  const linalg::Lu lu = linalg::Lu::factor(n, M.scaled);
  M.scaled_det = lu.det();
  M.log10_abs_det = std::log10(std::abs(M.scaled_det)) + static_cast<double>(M.det_exponent) * std::log10(mu);
  M.condition_number = linalg::condition_number(n, M.scaled);
  double scale = 0.0;
  for (const cplx& z : M.scaled) scale = std::max(scale, std::abs(z));
  M.invertible = std::abs(M.scaled_det) > 1e-10 * std::pow(scale, n) && M.condition_number < cond_threshold;
  return M;
}

/// Solves M a = J through the factored form: a = C^{-1} B^{-1} R^{-1} J with
/// R = diag(mu^{u_j}), C = diag(mu^{v_k}). Throws when the mu-ladder exceeds
/// double range (N >= 2 reconstructions need extended precision).
inline std::vector<cplx> solve_moment_system(const MomentMatrix& M, const std::vector<cplx>& J) {
  if (static_cast<int>(J.size()) != M.nstar) throw std::invalid_argument("solve_moment_system: size mismatch");
  if (!M.invertible) throw numerical_error("solve_moment_system: moment matrix flagged non-invertible");
  const double l10 = std::abs(std::log10(M.mu));
  for (int j = 0; j < M.nstar; ++j)
    if (std::abs(static_cast<double>(M.u[j])) * l10 > 250.0)
      throw numerical_error("solve_moment_system: row scaling mu^u exceeds double range");
  for (int k = 0; k < M.nstar; ++k)
    if (std::abs(static_cast<double>(M.v[k])) * l10 > 250.0)
      throw numerical_error("solve_moment_system: column scaling mu^v exceeds double range");

  std::vector<cplx> y(M.nstar);
  for (int j = 0; j < M.nstar; ++j) y[j] = J[j] * std::pow(M.mu, -static_cast<double>(M.u[j]));
  const linalg::Lu lu = linalg::Lu::factor(M.nstar, M.scaled);
  std::vector<cplx> z = lu.solve(std::move(y));
  for (int k = 0; k < M.nstar; ++k) z[k] *= std::pow(M.mu, -static_cast<double>(M.v[k]));
  return z;
}

}  // namespace hinv
