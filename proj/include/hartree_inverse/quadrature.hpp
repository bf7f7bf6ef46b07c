#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hartree_inverse/common.hpp"

namespace hinv {

struct QuadNode {
  double t = 0.0;
  double w = 0.0;
  // Node of the next-coarser nested rule (tanh-sinh level - 1); used for
  // the built-in quadrature error estimate.
  bool coarse = false;
};

/// Gauss-Legendre nodes/weights on [-1, 1] (Newton on the recurrence).
inline std::vector<QuadNode> gauss_legendre(int npts) {
  if (npts < 1) throw std::invalid_argument("gauss_legendre: npts < 1");
  std::vector<QuadNode> out(npts);
  for (int i = 0; i < (npts + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (npts + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < npts; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = npts * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    out[i] = {-x, w};
    out[npts - 1 - i] = {x, w};
  }
  return out;
}

enum class QuadScheme { tanh_sinh, composite_gauss };

inline QuadScheme quad_scheme_from_string(const std::string& s) {
  if (s == "tanh-sinh" || s == "tanh_sinh") return QuadScheme::tanh_sinh;
  if (s == "composite-gauss" || s == "composite_gauss") return QuadScheme::composite_gauss;
  throw std::invalid_argument("unknown quadrature scheme: " + s);
}

/// Quadrature over [-T, T], built on [0, T] and doubled by symmetry.
/// Nodes are strictly positive; callers attach the +/-t evaluations.
struct TimeQuadrature {
  double T = 0.0;
  QuadScheme scheme = QuadScheme::tanh_sinh;
  int level = 2;
  std::vector<QuadNode> half;  // nodes on (0, T), weights for one side

  static TimeQuadrature make(QuadScheme scheme, double T, int level) {
    if (T <= 0.0) throw std::invalid_argument("TimeQuadrature: T must be positive");
    if (level < 0 || level > 8) throw std::invalid_argument("TimeQuadrature: level out of range");
    TimeQuadrature q;
    q.T = T;
    q.scheme = scheme;
    q.level = level;
    if (scheme == QuadScheme::tanh_sinh) {
      // t = T/2 (1 + tanh((pi/2) sinh(u))), u on a uniform lattice of
      // spacing h = 2^-level; truncated where the weight is negligible.
      const double h = std::pow(0.5, level);
      for (int sgn : {-1, 1}) {
        for (int i = (sgn == 1 ? 0 : 1);; ++i) {
          const double u = sgn * i * h;
          const double s = std::sinh(u);
          const double c = std::cosh(u);
          const double sech = 1.0 / std::cosh(0.5 * pi * s);
          const double t = 0.5 * T * (1.0 + std::tanh(0.5 * pi * s));
          const double w = 0.5 * T * 0.5 * pi * c * sech * sech * h;
          if (w < 1e-17 * T) break;
          if (t > 0.0 && t < T) q.half.push_back({t, w, i % 2 == 0});
        }
      }
      std::sort(q.half.begin(), q.half.end(), [](const QuadNode& a, const QuadNode& b) { return a.t < b.t; });
    } else {
      const int panels = 1 << level;
      const auto base = gauss_legendre(8);
      const double hp = T / panels;
      for (int p = 0; p < panels; ++p) {
        const double a = p * hp;
        for (const auto& nd : base) q.half.push_back({a + 0.5 * hp * (nd.t + 1.0), 0.5 * hp * nd.w});
      }
    }
    return q;
  }

  /// Full symmetric node list on (-T, T).
  [[nodiscard]] std::vector<QuadNode> symmetric_nodes() const {
    std::vector<QuadNode> out;
    out.reserve(2 * half.size());
    for (auto it = half.rbegin(); it != half.rend(); ++it) out.push_back({-it->t, it->w});
    for (const auto& nd : half) out.push_back(nd);
    return out;
  }

  [[nodiscard]] std::size_t node_count() const { return 2 * half.size(); }
};

}  // namespace hinv
