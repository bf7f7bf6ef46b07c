#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hartree_inverse/common.hpp"
#include "hartree_inverse/fft.hpp"

namespace hinv {

/// Periodic sampling lattice, symmetric about the origin: x_j = (j - n/2) dx,
/// dual grid xi_k = (k - n/2) dxi with dxi = 2 pi / box_length. The index
/// k = 0 row is the unpaired Nyquist frequency.
struct Grid3 {
  int n = 0;
  double box_length = 0.0;

  Grid3() = default;
  Grid3(int n_, double box_length_) : n(n_), box_length(box_length_) {
    if (n < 4 || (n & (n - 1)) != 0)
      throw std::invalid_argument("Grid3: n must be a power of two >= 4");
    if (box_length <= 0.0) throw std::invalid_argument("Grid3: box_length must be positive");
  }

  [[nodiscard]] double dx() const { return box_length / n; }
  [[nodiscard]] double dxi() const { return 2.0 * pi / box_length; }
  [[nodiscard]] double x(int j) const { return (j - n / 2) * dx(); }
  [[nodiscard]] double xi(int k) const { return (k - n / 2) * dxi(); }
  [[nodiscard]] std::size_t size() const {
    return static_cast<std::size_t>(n) * n * n;
  }
  [[nodiscard]] std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n + j) * n + k;
  }
  friend bool operator==(const Grid3& a, const Grid3& b) {
    return a.n == b.n && a.box_length == b.box_length;
  }
};

enum class Space { position, frequency };

/// Complex scalar field sampled on a Grid3, in position or frequency space.
struct Field3 {
  Grid3 grid;
  Space space = Space::position;
  std::vector<cplx> v;

  Field3() = default;
  Field3(const Grid3& g, Space s) : grid(g), space(s), v(g.size(), cplx{0.0, 0.0}) {}

  [[nodiscard]] double cell_volume() const {
    const double d = (space == Space::position) ? grid.dx() : grid.dxi();
    return d * d * d;
  }

  /// Discrete L2 norm, (sum |v|^2 dvol)^{1/2}.
  [[nodiscard]] double norm() const {
    KahanSumReal s;
    for (const cplx& z : v) s.add(std::norm(z));
    return std::sqrt(s.value() * cell_volume());
  }
};

/// Discrete pairing <f, g> = sum f conj(g) dvol, conjugate-linear in g.
inline cplx l2_inner(const Field3& f, const Field3& g) {
  if (!(f.grid == g.grid) || f.space != g.space)
    throw std::invalid_argument("l2_inner: grid or space mismatch");
  KahanSum s;
  for (std::size_t i = 0; i < f.v.size(); ++i) s.add(f.v[i] * std::conj(g.v[i]));
  return s.value() * f.cell_volume();
}

inline double l2_distance(const Field3& f, const Field3& g) {
  if (!(f.grid == g.grid) || f.space != g.space)
    throw std::invalid_argument("l2_distance: grid or space mismatch");
  KahanSumReal s;
  for (std::size_t i = 0; i < f.v.size(); ++i) s.add(std::norm(f.v[i] - g.v[i]));
  return std::sqrt(s.value() * f.cell_volume());
}

/// Discrete H1 surrogate: ((1+|xi|^2) weighted frequency-space norm)^{1/2}.
inline double h1_norm(const Field3& f);

namespace detail {

/// Applies the centered-origin phase convention: with m = n/2 and n a
/// multiple of 4, exp(-i x_j xi_k) factors into (-1)^j, (-1)^k and the plain
/// DFT kernel. sign_flip premultiplies by (-1)^{j1+j2+j3}.
inline void sign_flip(std::vector<cplx>& v, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const bool odd_ij = ((i + j) & 1) != 0;
      cplx* row = v.data() + (static_cast<std::size_t>(i) * n + j) * n;
      for (int k = 0; k < n; ++k)
        if (((k & 1) != 0) != odd_ij) row[k] = -row[k];
    }
}

}  // namespace detail

/// F f(xi) = (2 pi)^{-3/2} integral e^{-i x xi} f(x) dx, discretized on the
/// centered grid; unitary on the lattice (Parseval exact up to roundoff).
inline Field3 fourier(const Field3& f) {
  if (f.space != Space::position) throw std::invalid_argument("fourier: field not in position space");
  if (f.grid.n % 4 != 0) throw std::invalid_argument("fourier: n must be divisible by 4");
  Field3 out = f;
  detail::sign_flip(out.v, f.grid.n);
  FftPlan::get(3, f.grid.n).forward(out.v.data());
  detail::sign_flip(out.v, f.grid.n);
  const double dx = f.grid.dx();
  const double scale = std::pow(2.0 * pi, -1.5) * dx * dx * dx;
  for (cplx& z : out.v) z *= scale;
  out.space = Space::frequency;
  return out;
}

inline Field3 fourier_inverse(const Field3& f) {
  if (f.space != Space::frequency) throw std::invalid_argument("fourier_inverse: field not in frequency space");
  if (f.grid.n % 4 != 0) throw std::invalid_argument("fourier_inverse: n must be divisible by 4");
  Field3 out = f;
  detail::sign_flip(out.v, f.grid.n);
  FftPlan::get(3, f.grid.n).backward(out.v.data());
  detail::sign_flip(out.v, f.grid.n);
  const double dxi = f.grid.dxi();
  const double scale = std::pow(2.0 * pi, -1.5) * dxi * dxi * dxi;
  for (cplx& z : out.v) z *= scale;
  out.space = Space::position;
  return out;
}

inline double h1_norm(const Field3& f) {
  const Field3 fhat = (f.space == Space::frequency) ? f : fourier(f);
  const Grid3& g = fhat.grid;
  KahanSumReal s;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k) {
        const double w = 1.0 + sqr(g.xi(i)) + sqr(g.xi(j)) + sqr(g.xi(k));
        s.add(w * std::norm(fhat.v[g.index(i, j, k)]));
      }
  return std::sqrt(s.value() * fhat.cell_volume());
}

}  // namespace hinv
