#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "hartree_inverse/potentials.hpp"

using namespace hinv;

TEST_CASE("unit Gaussian: closed-form transform and derivative oracle") {
  const PotentialSpec V = PotentialSpec::unit_gaussian();
  // F V(0) = (2pi)^{-3/2} pi^{3/2} = 2^{-3/2}
  const double want0 = std::pow(2.0, -1.5);
  CHECK(std::abs(V.fourier(vec3{0, 0, 0}) - want0) < 1e-14);
  CHECK(std::abs(V.fourier_derivative(MultiIndex{0, 0, 0}) - want0) < 1e-14);

  // odd moments of an even potential vanish
  CHECK(std::abs(V.fourier_derivative(MultiIndex{1, 0, 0})) == 0.0);
  CHECK(std::abs(V.fourier_derivative(MultiIndex{0, 3, 0})) == 0.0);
  CHECK(std::abs(V.fourier_derivative(MultiIndex{1, 1, 0})) == 0.0);

  // d^2/dxi1^2 of 2^{-3/2} e^{-|xi|^2/4} at 0 is -2^{-3/2}/2
  CHECK(std::abs(V.fourier_derivative(MultiIndex{2, 0, 0}) - (-0.5 * want0)) < 1e-13);

  // derivative oracle vs finite differences of the closed-form transform
  const double h = 1e-3;
  const auto fd2 = (V.fourier(vec3{2 * h, 0, 0}) - 2.0 * V.fourier(vec3{h, 0, 0}) + V.fourier(vec3{0, 0, 0})) / (h * h);
  CHECK(std::abs(V.fourier_derivative(MultiIndex{2, 0, 0}) - fd2) < 1e-5);
}

TEST_CASE("shifted Gaussian picks up the phase and imaginary first moment") {
  const PotentialSpec V = PotentialSpec::shifted_gaussian(vec3{0.5, 0.0, 0.0});
  const cplx d1 = V.fourier_derivative(MultiIndex{1, 0, 0});
  // d/dxi1 [2^{-3/2} e^{-|xi|^2/4} e^{-i 0.5 xi1}] at 0 = -i 0.5 2^{-3/2}
  CHECK(std::abs(d1 - cplx{0.0, -0.5 * std::pow(2.0, -1.5)}) < 1e-13);
  CHECK(std::abs(d1.real()) < 1e-15);

  // mixture: sum of two bumps doubles the transform at 0
  PotentialSpec mix;
  mix.family = PotentialFamily::gaussian_mixture;
  mix.terms = {GaussianTerm{1.0, vec3{0.5, 0, 0}, 1.0}, GaussianTerm{1.0, vec3{-0.5, 0, 0}, 1.0}};
  CHECK(std::abs(mix.fourier(vec3{0, 0, 0}) - 2.0 * std::pow(2.0, -1.5)) < 1e-14);
  // symmetric mixture is even again: first moments cancel
  CHECK(std::abs(mix.fourier_derivative(MultiIndex{1, 0, 0})) < 1e-15);
}

TEST_CASE("exp_decay_smooth: radial quadrature agrees with the transform") {
  PotentialSpec V;
  V.family = PotentialFamily::exp_decay_smooth;
  V.amplitude = 1.0;
  V.rate = 2.0;
  V.decay_A = 1.0;

  // F V(0) equals the plain integral (2pi)^{-3/2} int V
  const cplx f0 = V.fourier(vec3{0, 0, 0});
  CHECK(std::abs(f0 - V.fourier_derivative(MultiIndex{0, 0, 0})) < 1e-10);

  // second derivative vs central differences of the radial transform
  const double h = 2e-2;
  const cplx fd2 = (V.fourier(vec3{h, 0, 0}) - 2.0 * V.fourier(vec3{0, 0, 0}) + V.fourier(vec3{-h, 0, 0})) / (h * h);
  CHECK(std::abs(V.fourier_derivative(MultiIndex{2, 0, 0}) - fd2) < 2e-4 * std::abs(f0));

  CHECK(std::abs(V.fourier_derivative(MultiIndex{1, 0, 0})) == 0.0);
}

TEST_CASE("gaussian closed forms vs independent quadrature up to order 8") {
  const PotentialSpec V = PotentialSpec::shifted_gaussian(vec3{0.3, -0.2, 0.1}, 0.7, 1.2);
  // independent 1D Gauss-Hermite style check per axis via wide panel quadrature
  const auto base = gauss_legendre(64);
  const auto axis_moment = [&](int b, double c, double w) {
    double s = 0.0;
    const double R = 12.0;
    for (const auto& nd : base) {
      const double x = R * nd.t;
      s += R * nd.w * std::pow(x, b) * std::exp(-sqr((x - c) / w));
    }
    return s;
  };
  for (int b1 = 0; b1 <= 4; ++b1)
    for (int b2 = 0; b2 <= 2; ++b2) {
      const MultiIndex beta{b1, b2, 2};
      cplx want = std::pow(2.0 * pi, -1.5) * std::pow(-iu, beta.order()) * 0.7 * axis_moment(b1, 0.3, 1.2) *
                  axis_moment(b2, -0.2, 1.2) * axis_moment(2, 0.1, 1.2);
      const cplx got = V.fourier_derivative(beta);
      CHECK(std::abs(got - want) < 1e-10 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("taylor_eval: partial sums and the A/3 radius flag") {
  const PotentialSpec V = PotentialSpec::unit_gaussian();
  std::map<std::array<int, 3>, cplx> derivs;
  const int K = 8;
  for (int t = 0; t <= K; ++t)
    for (int b1 = 0; b1 <= t; ++b1)
      for (int b2 = 0; b2 <= t - b1; ++b2)
        derivs[{b1, b2, t - b1 - b2}] = V.fourier_derivative(MultiIndex{b1, b2, t - b1 - b2});

  // xi = 0 returns the zeroth derivative exactly
  const TaylorResult at0 = taylor_eval(derivs, vec3{0, 0, 0}, 3.0);
  CHECK(at0.value == derivs[{0, 0, 0}]);
  CHECK(at0.inside_radius);

  // |xi| = 0.2: matches 2^{-3/2} e^{-|xi|^2/4}
  const vec3 xi{0.12, -0.1, 0.1};
  const TaylorResult r = taylor_eval(derivs, xi, 3.0);
  const double want = std::pow(2.0, -1.5) * std::exp(-0.25 * (sqr(xi[0]) + sqr(xi[1]) + sqr(xi[2])));
  CHECK(std::abs(r.value - want) < 1e-4 * want);
  CHECK(r.inside_radius);

  // outside the guaranteed radius the flag flips
  CHECK_FALSE(taylor_eval(derivs, vec3{1.2, 0, 0}, 3.0).inside_radius);

  std::map<std::array<int, 3>, cplx> incomplete = derivs;
  incomplete.erase({0, 0, 8});
  CHECK_THROWS_AS(taylor_eval(incomplete, xi, 3.0), std::invalid_argument);
}

TEST_CASE("check_v1: pass and fail regimes") {
  PotentialSpec gauss = PotentialSpec::unit_gaussian();
  gauss.decay_A = 5.0;
  CHECK(check_v1(gauss).pass);

  PotentialSpec decay;
  decay.family = PotentialFamily::exp_decay_smooth;
  decay.rate = 2.0;
  decay.decay_A = 1.0;  // A = rate/2: integrable
  CHECK(check_v1(decay).pass);

  CHECK_FALSE(check_v1(decay, 4.0).pass);  // A = 2 rate: diverges
}

TEST_CASE("derivative vector parity: real for even mask, imaginary for odd") {
  const PotentialSpec V = PotentialSpec::shifted_gaussian(vec3{0.4, 0.2, 0.0});
  for (const auto& eps : EpsilonMask::all()) {
    const DerivativeVector dv = derivative_vector_oracle(V, 1, eps);
    for (const cplx& z : dv.entries) {
      if (eps.order() % 2 == 0)
        CHECK(std::abs(z.imag()) < 1e-12 * std::max(1.0, std::abs(z)));
      else
        CHECK(std::abs(z.real()) < 1e-12 * std::max(1.0, std::abs(z)));
    }
  }
}
