#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hilltongue/errors.hpp"
#include "hilltongue/floquet.hpp"
#include "hilltongue/lindstedt.hpp"

using namespace hilltongue;

namespace {

CosPoly poly(std::initializer_list<Rational> c) { return CosPoly(std::vector<Rational>(c)); }

OscillatorSpec random_spec(std::mt19937_64& rng, unsigned order, bool odd_only = false) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
  OscillatorSpec s;
  s.order = order;
  for (unsigned k = 2; k <= 5; ++k) {
    if (odd_only && k % 2 == 0) continue;
    s.alpha[k] = ratio(num(rng), den(rng));
  }
  return s;
}

}  // namespace

TEST_CASE("linear oscillator") {
  const auto lin = expand({{}, 5});
  REQUIRE(lin.u.size() == 6);
  CHECK(lin.u[1] == CosPoly::harmonic(1));
  for (unsigned n = 2; n <= 5; ++n) CHECK(lin.u[n].is_zero());
  CHECK(lin.omega2 == RationalSeries{1, 0, 0, 0, 0, 0});
}

TEST_CASE("quadratic oscillator, second order") {
  const auto lin = expand({{{2, 1}}, 2});
  CHECK(lin.omega2[1] == 0);
  CHECK(lin.u[2] == poly({ratio(-1, 8), ratio(1, 12), ratio(1, 24)}));
  CHECK(project(lin.u[2], 2) == ratio(1, 24));
}

TEST_CASE("Omega_2 as a function of alpha_2 and alpha_3") {
  for (auto [a, b] : {std::pair{ratio(1, 1), ratio(0, 1)}, {ratio(3, 2), ratio(-2, 5)},
                      {ratio(-7, 3), ratio(4, 1)}}) {
    const auto lin = expand({{{2, a}, {3, b}}, 3});
    CHECK(lin.omega2[2] == ratio(-5, 96) * a * a + ratio(3, 16) * b);
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(expand({{{1, 1}}, 3}), ValidationError);
  CHECK_THROWS_AS(expand({{}, 0}), ValidationError);
}

TEST_CASE("diagonal_A") {
  const auto A0 = diagonal_A({{}, 4});
  CHECK(A0[1] == ratio(1, 2));
  for (unsigned n = 2; n <= 4; ++n) CHECK(A0[n] == 0);
  const OscillatorSpec quad{{{2, 1}}, 6};
  const auto A = diagonal_A(quad);
  CHECK(A[2] == ratio(1, 48));
  const auto lin = expand(quad);
  CHECK(A[3] == project(lin.u[3], 3) / 2);
}

TEST_CASE("secular_integral") {
  const CosPoly c = CosPoly::harmonic(1);
  CHECK(secular_integral(c * c * c, 1) == ratio(3, 4));
  CHECK(secular_integral(c * c * c, 0) == 0);
  CHECK(secular_integral(c * c, 0) == ratio(1, 2));
}

TEST_CASE("property: recursion invariants on random oscillators") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 12; ++trial) {
    const OscillatorSpec spec = random_spec(rng, 6);
    const auto lin = expand(spec);
    CAPTURE(trial);
    for (unsigned n = 1; n <= spec.order; ++n) {
      // Residual re-substitution.
      CHECK((second_derivative(lin.u[n]) + Rational(4) * lin.u[n] - source_term(lin, n)).is_zero());
      CHECK(lin.u[n].degree() <= 2 * n);
      CHECK(lin.u[n].at_zero() == (n == 1 ? 1 : 0));
    }
    const RationalSeries unit = series_mul(lin.omega2, lin.kappa, spec.order);
    CHECK(unit[0] == 1);
    for (unsigned n = 1; n <= spec.order; ++n) CHECK(unit[n] == 0);

    const auto A = diagonal_A(spec);
    for (unsigned n = 1; n <= spec.order; ++n) CHECK(A[n] == project(lin.u[n], n) / 2);
  }
}

TEST_CASE("property: odd restoring force keeps only odd orders") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    const auto lin = expand(random_spec(rng, 7, true));
    for (unsigned n = 2; n <= 7; n += 2) CHECK(lin.u[n].is_zero());
    for (unsigned n = 1; n <= 7; n += 2) CHECK(lin.omega2[n] == 0);
  }
}

TEST_CASE("frequency corrections vanish below an odd first nonlinearity") {
  for (unsigned K : {1u, 3u, 5u}) {
    const auto lin = expand({{{K + 1, ratio(3, 7)}, {K + 2, ratio(-2, 3)}}, K + 2});
    for (unsigned j = 1; j <= K; ++j) CHECK(lin.omega2[j] == 0);
  }
  // K = 2 is even and the first correction survives.
  const auto lin = expand({{{3, 1}}, 3});
  CHECK(lin.omega2[2] != 0);
}

TEST_CASE("series frequency matches the quadrature period") {
  const double q = 0.05;
  const OscillatorSpec spec{{{2, 1}, {3, ratio(1, 2)}}, 8};
  const auto lin = expand(spec);
  double Omega = 0;
  for (unsigned n = 0; n <= spec.order; ++n) Omega += lin.omega2[n].get_d() * std::pow(q, n);
  const NumericProblem p(spec.alpha, {{1, 1}}, q);
  const double T = std::numbers::pi / std::sqrt(Omega);
  CHECK(std::abs(p.period() - T) / T < 1e-6);
}
