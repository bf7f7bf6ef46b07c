#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hartree_inverse/common.hpp"
#include "hartree_inverse/multiindex.hpp"
#include "hartree_inverse/rational.hpp"

namespace hinv {

/// Coefficients (-1)^{L-l} binom(L,l), l = 0..L, of the forward difference.
inline std::vector<std::int64_t> forward_difference_coefficients(int L) {
  if (L < 0) throw std::invalid_argument("forward_difference_coefficients: L < 0");
  std::vector<std::int64_t> c(L + 1);
  for (int l = 0; l <= L; ++l) {
    const std::int64_t b = binomial_exact(L, l);
    c[l] = ((L - l) % 2 == 0) ? b : -b;
  }
  return c;
}

/// nabla_lambda^L h(lambda) = sum_l (-1)^{L-l} binom(L,l) h((l+1) lambda),
/// given the samples h((l+1) lambda) in order l = 0..L. Coefficients are
/// exact integers; only the final combination is floating point.
template <typename Scalar>
Scalar forward_difference(const std::vector<Scalar>& samples, int L) {
  if (static_cast<int>(samples.size()) != L + 1)
    throw std::invalid_argument("forward_difference: need exactly L+1 samples");
  const auto coeff = forward_difference_coefficients(L);
  Scalar acc{};
  for (int l = 0; l <= L; ++l) acc += static_cast<double>(coeff[l]) * samples[l];
  return acc;
}

/// sum_{l=0}^{L} (-1)^{L-l} l^k / (l! (L-l)!) as an exact rational.
/// Equals 0 for k < L and 1 for k = L; the l = 0 term uses 0^0 = 1.
inline Rational magic_sum(int L, int k) {
  if (L < 0 || k < 0) throw std::invalid_argument("magic_sum: negative argument");
  if (k > L) throw std::invalid_argument("magic_sum: requires k <= L");
  __int128 numerator = 0;  // common denominator L!
  for (int l = 0; l <= L; ++l) {
    const std::int64_t pw = (k == 0) ? 1 : ipow_exact(l, k);
    const __int128 term = static_cast<__int128>(binomial_exact(L, l)) * pw;
    numerator += ((L - l) % 2 == 0) ? term : -term;
  }
  return Rational(detail::checked_cast128(numerator, "magic_sum"), factorial_exact(L));
}

struct QMinimalityReport {
  std::int64_t Q = 0;        // cost of sigma_0(j) = N*+1-j
  std::int64_t Q_tilde = 0;  // minimum over every other permutation
  bool holds = false;        // strict Q < Q_tilde
  std::int64_t permutations_checked = 0;
};

/// Exhaustive check of Lemma-2.1 Step II minimality:
/// Q_{N,eps}(j,k) = 2 (N+1)^{2(j-1)} P_{N,eps}(alpha(k)), the anti-diagonal
/// assignment must be the strict minimum over all N*! permutations.
inline QMinimalityReport q_minimality_check(int N, const EpsilonMask& eps) {
  if (N < 1) throw std::invalid_argument("q_minimality_check: N must be >= 1");
  const int n = nstar_count(N);
  if (n > 10) throw std::invalid_argument("q_minimality_check: N* > 10 refused (combinatorial blowup)");

  const OrderedBasis basis = ordered_basis(N, eps);
  std::vector<std::int64_t> p(n), scale(n);
  for (int k = 0; k < n; ++k) p[k] = p_weight(N, eps, basis.seq[k]);
  for (int j = 0; j < n; ++j) scale[j] = 2 * ipow_exact(N + 1, 2 * j);

  const auto cost_of = [&](const std::vector<int>& sigma) {
    std::int64_t c = 0;
    for (int j = 0; j < n; ++j) c += scale[j] * p[sigma[j]];
    return c;
  };

  std::vector<int> sigma0(n);
  for (int j = 0; j < n; ++j) sigma0[j] = n - 1 - j;

  QMinimalityReport rep;
  rep.Q = cost_of(sigma0);

  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::int64_t best_other = INT64_MAX;
  do {
    ++rep.permutations_checked;
    if (sigma == sigma0) continue;
    best_other = std::min(best_other, cost_of(sigma));
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  rep.Q_tilde = best_other;
  rep.holds = rep.Q < rep.Q_tilde;
  return rep;
}

}  // namespace hinv
