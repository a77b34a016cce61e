#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hilltongue/errors.hpp"
#include "hilltongue/trigpoly.hpp"

using namespace hilltongue;

namespace {

CosPoly poly(std::initializer_list<Rational> c) { return CosPoly(std::vector<Rational>(c)); }

CosPoly random_poly(std::mt19937_64& rng, std::size_t max_degree) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
  std::uniform_int_distribution<std::size_t> deg(0, max_degree);
  std::vector<Rational> c(deg(rng) + 1);
  for (auto& x : c) x = ratio(num(rng), den(rng));
  if (c.back() == 0) c.back() = 1;
  return CosPoly(c);
}

// Direct evaluation of sum c_k cos(2 k tau), independent of CosPoly::evaluate.
double direct(const CosPoly& p, double tau) {
  double s = 0;
  const auto c = p.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) s += c[k].get_d() * std::cos(2.0 * k * tau);
  return s;
}

}  // namespace

TEST_CASE("add") {
  CHECK((CosPoly::harmonic(1) + CosPoly::harmonic(1, -1)).is_zero());
  CHECK(add(CosPoly::constant(1), CosPoly::harmonic(2)) == poly({1, 0, 1}));
  CHECK(add(poly({ratio(1, 2), ratio(1, 3)}), poly({ratio(1, 2), ratio(2, 3)})) == poly({1, 1}));
}

TEST_CASE("mul follows the product-to-sum rule") {
  const CosPoly c2 = CosPoly::harmonic(1);
  CHECK(mul(c2, c2) == poly({ratio(1, 2), 0, ratio(1, 2)}));
  CHECK(mul(c2, CosPoly::harmonic(2)) == poly({0, ratio(1, 2), 0, ratio(1, 2)}));
  const CosPoly cube = mul(mul(c2, c2), c2);
  CHECK(cube == poly({0, ratio(3, 4), 0, ratio(1, 4)}));
  // cos^3(2 tau) sampled at 8 points.
  for (int i = 0; i < 8; ++i) {
    const double tau = 0.37 * i;
    CHECK(cube.evaluate(tau) == doctest::Approx(std::pow(std::cos(2 * tau), 3)).epsilon(1e-14));
  }
}

TEST_CASE("second derivative and projection") {
  CHECK(second_derivative(CosPoly::harmonic(1)) == CosPoly::harmonic(1, -4));
  CHECK(second_derivative(CosPoly::constant(1)).is_zero());
  CHECK(second_derivative(CosPoly::harmonic(2)) == CosPoly::harmonic(2, -16));
  CHECK(project(poly({0, ratio(3, 4), 0, ratio(1, 4)}), 1) == ratio(3, 4));
  CHECK(project(CosPoly::harmonic(1), 3) == 0);
}

TEST_CASE("solve_harmonic") {
  CHECK(solve_harmonic(CosPoly{}).is_zero());
  // -1/2 - 1/2 cos 4tau, the quadratic-oscillator source at second order.
  const CosPoly u2 = solve_harmonic(poly({ratio(-1, 2), 0, ratio(-1, 2)}));
  CHECK(u2 == poly({ratio(-1, 8), ratio(1, 12), ratio(1, 24)}));
  const CosPoly w = solve_harmonic(CosPoly::harmonic(3));
  CHECK(w == poly({0, ratio(1, 32), 0, ratio(-1, 32)}));
  CHECK(second_derivative(w) + Rational(4) * w == CosPoly::harmonic(3));
  CHECK(w.at_zero() == 0);
  CHECK_THROWS_AS(solve_harmonic(poly({1, 1})), ResonantRHS);
}

TEST_CASE("zero polynomial conventions") {
  const CosPoly z = poly({0, 0, 0});
  CHECK(z.is_zero());
  CHECK(z.degree() == 0);
  CHECK(z.coeffs().empty());
  CHECK(poly({1, 2, 0}).degree() == 1);
  CHECK(poly({1, 2, 3}).at_zero() == 6);
}

TEST_CASE("property: ring laws, degree and harmonic solve on random polynomials") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const CosPoly a = random_poly(rng, 5), b = random_poly(rng, 5), c = random_poly(rng, 4);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b).degree() == a.degree() + b.degree());

    CosPoly rhs = a;
    rhs -= CosPoly::harmonic(1, rhs[1]);
    const CosPoly w = solve_harmonic(rhs);
    CHECK(second_derivative(w) + Rational(4) * w == rhs);
    CHECK(w.at_zero() == 0);
  }
}

TEST_CASE("property: product coefficients agree with pointwise multiplication") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const CosPoly a = random_poly(rng, 4), b = random_poly(rng, 4);
    const CosPoly p = a * b;
    // Convolution formula: c_n = sum over |i +- j| = n of a_i b_j / 2.
    for (std::size_t n = 0; n <= p.degree(); ++n) {
      Rational conv = 0;
      for (std::size_t i = 0; i <= a.degree(); ++i) {
        for (std::size_t j = 0; j <= b.degree(); ++j) {
          const Rational h = a[i] * b[j] / 2;
          if (i + j == n) conv += h;
          if ((i > j ? i - j : j - i) == n) conv += h;
        }
      }
      CHECK(project(p, n) == conv);
    }
    const std::size_t samples = 2 * (a.degree() + b.degree()) + 1;
    for (std::size_t s = 0; s < samples; ++s) {
      const double tau = std::numbers::pi * s / samples;
      CHECK(std::abs(direct(p, tau) - direct(a, tau) * direct(b, tau)) < 1e-12 * 1000);
    }
  }
}

TEST_CASE("series product of cosine series") {
  const CosSeries a = {CosPoly{}, CosPoly::harmonic(1)};
  const CosSeries sq = series_mul(a, a, 3);
  REQUIRE(sq.size() == 4);
  CHECK(sq[1].is_zero());
  CHECK(sq[2] == poly({ratio(1, 2), 0, ratio(1, 2)}));
  CHECK(sq[3].is_zero());
}
