#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hartree_inverse/common.hpp"
#include "hartree_inverse/rational.hpp"

namespace hinv {

/// Multi-index in N_0^3.
struct MultiIndex {
  int a1 = 0, a2 = 0, a3 = 0;

  [[nodiscard]] int order() const { return a1 + a2 + a3; }
  [[nodiscard]] int operator[](int axis) const {
    return axis == 0 ? a1 : (axis == 1 ? a2 : a3);
  }
  /// a1! a2! a3!, exact.
  [[nodiscard]] std::int64_t factorial() const {
    return factorial_exact(a1) * factorial_exact(a2) * factorial_exact(a3);
  }
  friend bool operator==(const MultiIndex& x, const MultiIndex& y) {
    return x.a1 == y.a1 && x.a2 == y.a2 && x.a3 == y.a3;
  }
  friend MultiIndex operator+(const MultiIndex& x, const MultiIndex& y) {
    return {x.a1 + y.a1, x.a2 + y.a2, x.a3 + y.a3};
  }
  friend MultiIndex operator*(int c, const MultiIndex& x) {
    return {c * x.a1, c * x.a2, c * x.a3};
  }
};

/// Parity mask in {0,1}^3 selecting which derivative components are odd.
struct EpsilonMask {
  int e1 = 0, e2 = 0, e3 = 0;

  EpsilonMask() = default;
  EpsilonMask(int a, int b, int c) : e1(a), e2(b), e3(c) {
    if ((e1 | e2 | e3) > 1 || (e1 & e2 & e3) < 0 || e1 < 0 || e2 < 0 || e3 < 0)
      throw std::invalid_argument("EpsilonMask: entries must be 0 or 1");
  }

  [[nodiscard]] int order() const { return e1 + e2 + e3; }
  [[nodiscard]] int operator[](int axis) const {
    return axis == 0 ? e1 : (axis == 1 ? e2 : e3);
  }
  [[nodiscard]] MultiIndex as_multiindex() const { return {e1, e2, e3}; }
  friend bool operator==(const EpsilonMask& x, const EpsilonMask& y) {
    return x.e1 == y.e1 && x.e2 == y.e2 && x.e3 == y.e3;
  }

  /// Index m(eps) with the paper's 1-based convention: 1 when the mask is
  /// empty, otherwise the first axis carrying a 1.
  [[nodiscard]] int m() const {
    if (order() == 0) return 1;
    if (e1) return 1;
    if (e2) return 2;
    return 3;
  }

  static std::array<EpsilonMask, 8> all() {
    std::array<EpsilonMask, 8> out{};
    for (int b = 0; b < 8; ++b) out[b] = EpsilonMask{(b >> 2) & 1, (b >> 1) & 1, b & 1};
    return out;
  }
};

/// The involution I_m: I_1 = id, I_2 swaps axes 1,2, I_3 swaps axes 1,3.
/// Stored as a permutation of {0,1,2} (self-inverse by construction).
struct AxisInvolution {
  std::array<int, 3> perm{0, 1, 2};

  static AxisInvolution for_mask(const EpsilonMask& eps) {
    AxisInvolution inv;
    const int m = eps.m();
    if (m == 2) inv.perm = {1, 0, 2};
    if (m == 3) inv.perm = {2, 1, 0};
    return inv;
  }

  [[nodiscard]] MultiIndex apply(const MultiIndex& a) const {
    return {a[perm[0]], a[perm[1]], a[perm[2]]};
  }
  [[nodiscard]] vec3 apply(const vec3& x) const {
    return {x[perm[0]], x[perm[1]], x[perm[2]]};
  }
  [[nodiscard]] EpsilonMask apply(const EpsilonMask& e) const {
    return EpsilonMask{e[perm[0]], e[perm[1]], e[perm[2]]};
  }
};

/// P_{N,eps}(alpha) = (0, 1, N+1) . I(eps) alpha, an exact non-negative
/// integer. Injective on {|alpha| = N} through the base-(N+1) encoding.
inline std::int64_t p_weight(int N, const EpsilonMask& eps, const MultiIndex& alpha) {
  if (N < 0) throw std::invalid_argument("p_weight: N must be >= 0");
  if (alpha.a1 < 0 || alpha.a2 < 0 || alpha.a3 < 0)
    throw std::invalid_argument("p_weight: negative multi-index");
  const MultiIndex b = AxisInvolution::for_mask(eps).apply(alpha);
  return static_cast<std::int64_t>(b.a2) + static_cast<std::int64_t>(N + 1) * b.a3;
}

/// The sequence alpha(N,eps;k), k = 1..N*, strictly increasing in P_{N,eps}.
struct OrderedBasis {
  int N = 0;
  EpsilonMask eps;
  std::vector<MultiIndex> seq;  // seq[k-1] is the paper's alpha(N,eps;k)

  [[nodiscard]] int nstar() const { return static_cast<int>(seq.size()); }
};

inline int nstar_count(int N) { return (N + 1) * (N + 2) / 2; }

inline OrderedBasis ordered_basis(int N, const EpsilonMask& eps) {
  if (N < 0) throw std::invalid_argument("ordered_basis: N must be >= 0");
  OrderedBasis basis;
  basis.N = N;
  basis.eps = eps;
  basis.seq.reserve(nstar_count(N));
  for (int a1 = N; a1 >= 0; --a1)
    for (int a2 = N - a1; a2 >= 0; --a2) basis.seq.push_back({a1, a2, N - a1 - a2});
  std::sort(basis.seq.begin(), basis.seq.end(), [&](const MultiIndex& x, const MultiIndex& y) {
    return p_weight(N, eps, x) < p_weight(N, eps, y);
  });
  for (std::size_t i = 1; i < basis.seq.size(); ++i) {
    if (p_weight(N, eps, basis.seq[i - 1]) == p_weight(N, eps, basis.seq[i]))
      throw std::logic_error("ordered_basis: P weight collision on |alpha| = N");
  }
  return basis;
}

/// Decomposition beta = 2 alpha + eps with eps = beta mod 2; unique.
struct BetaDecomposition {
  int N = 0;
  EpsilonMask eps;
  MultiIndex alpha;
  int k = 0;  // 1-based position of alpha in ordered_basis(N, eps)
};

inline BetaDecomposition decompose_beta(const MultiIndex& beta) {
  if (beta.a1 < 0 || beta.a2 < 0 || beta.a3 < 0)
    throw std::invalid_argument("decompose_beta: negative multi-index");
  BetaDecomposition d;
  d.eps = EpsilonMask{beta.a1 & 1, beta.a2 & 1, beta.a3 & 1};
  d.alpha = {(beta.a1 - d.eps.e1) / 2, (beta.a2 - d.eps.e2) / 2, (beta.a3 - d.eps.e3) / 2};
  d.N = d.alpha.order();
  const OrderedBasis basis = ordered_basis(d.N, d.eps);
  for (int k = 1; k <= basis.nstar(); ++k) {
    if (basis.seq[k - 1] == d.alpha) {
      d.k = k;
      return d;
    }
  }
  throw std::logic_error("decompose_beta: alpha not found in ordered basis");
}

/// Reflection E_j (sign flip on axis j, 1-based).
inline vec3 reflect(const vec3& x, int axis) {
  vec3 y = x;
  y[axis - 1] = -y[axis - 1];
  return y;
}

}  // namespace hinv
