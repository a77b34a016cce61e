#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hilltongue/errors.hpp"
#include "hilltongue/floquet.hpp"
#include "hilltongue/tongues.hpp"

using namespace hilltongue;

namespace {

constexpr double pi = std::numbers::pi;

Polynomial poly(std::vector<double> c) { return Polynomial{std::move(c)}; }

double series_value(const EigenBranch& b, double q) { return evaluate_branch(b, q); }

}  // namespace

TEST_CASE("period") {
  for (double q : {0.01, 0.3, 2.0}) {
    CHECK(period(NumericProblem(poly({}), poly({0, 1}), q)) == doctest::Approx(pi).epsilon(1e-14));
  }
  const NumericProblem duff(poly({0, 0, 0, 1}), poly({0, 1}), 0.3);
  CHECK(std::abs(duff.period() - period_return_map(duff)) < 1e-9);
  const NumericProblem quad(poly({0, 0, 1}), poly({0, 1}), -0.4);
  CHECK(std::abs(quad.period() - period_return_map(quad)) < 1e-9);
  // Omega_1 = 0 and Omega_2 = -5/96 for f = x^2.
  const double q = 0.05;
  const NumericProblem small(poly({0, 0, 1}), poly({0, 1}), q);
  const double T = pi / std::sqrt(1 - 5.0 / 96 * q * q);
  CHECK(std::abs(small.period() - T) / T < 1e-6);
}

TEST_CASE("free Hill equation discriminant") {
  const NumericProblem p(poly({}), poly({}), 0.1);
  for (double beta : {0.3, 1.0, 2.5, 4.0, 7.7, 16.0}) {
    CHECK(std::abs(discriminant(p, beta) - 2 * std::cos(std::sqrt(beta) * pi)) < 1e-9);
  }
  for (int N = 1; N <= 4; ++N) {
    const NumericProblem tiny(poly({}), poly({0, 1}), 1e-7);
    CHECK(std::abs(discriminant(tiny, N * N) - 2 * (N % 2 ? -1 : 1)) < 1e-5);
  }
}

TEST_CASE("Mathieu monodromy is unimodular and step-stable") {
  const NumericProblem p(poly({}), poly({0, 1}), 0.2);
  for (double beta = -0.5; beta <= 10.0; beta += 0.75) {
    CAPTURE(beta);
    const unsigned s = select_steps(p, beta);
    const Mat2 m = monodromy(p, beta, s);
    const Mat2 fine = monodromy(p, beta, 2 * s);
    CHECK(std::abs(m.det() - 1) < 1e-9);
    CHECK(std::abs(m.trace() - fine.trace()) < 1e-8);
  }
}

TEST_CASE("energy is conserved along the oscillator") {
  const NumericProblem p(poly({0, 0, 1, 0.5}), poly({0, 1}), 0.3);
  const Propagation prop = propagate(p, 1.0, p.period(), 512);
  CHECK(prop.energy_drift < 1e-10);
  CHECK(std::abs(prop.u - 0.3) < 1e-10);
  CHECK(std::abs(prop.up) < 1e-9);
}

TEST_CASE("tongue boundaries") {
  SUBCASE("no forcing leaves only double roots") {
    const NumericProblem p(poly({0, 0, 1}), poly({}), 0.2);
    const double Om = p.omega2();
    for (unsigned N = 1; N <= 3; ++N) {
      const auto r = tongue_boundaries(p, N);
      CHECK(r.length < kNumericallyZero);
      CHECK(std::abs(std::sqrt(r.beta_minus) * p.period() - N * pi) < 1e-8);
      CHECK(std::abs(r.beta_plus - N * N * Om) < 1e-8);
    }
  }
  SUBCASE("Mathieu first tongue") {
    const NumericProblem p(poly({}), poly({0, 1}), 0.1);
    const auto r = tongue_boundaries(p, 1);
    CHECK(std::abs(r.length - 0.1) <= 0.01);
    CHECK(r.beta_minus <= r.beta_plus);
    CHECK(r.signed_length == doctest::Approx(r.beta_even - r.beta_odd));
    CHECK(r.residual_even < 1e-9);
    CHECK(r.residual_odd < 1e-9);
    CHECK(r.det_error < 1e-9);
  }
  SUBCASE("coexistence closes the second tongue") {
    const auto spec = example1_spec(1, ratio(1, 6), 4);
    const auto r = tongue_boundaries(numeric_problem(spec, 0.1), 2);
    CHECK(r.length < 1e-8);
  }
}

TEST_CASE("endpoints move little under step doubling") {
  const auto spec = example1_spec(1, 1, 4);
  const NumericProblem p = numeric_problem(spec, 0.12);
  for (unsigned N = 1; N <= 3; ++N) {
    const auto r = tongue_boundaries(p, N);
    IntegratorSettings s = p.settings();
    s.forced_steps = 2 * r.half_steps;
    const auto fine = tongue_boundaries(p.with_settings(s), N);
    const double tol = 10 * s.root_tolerance * std::max(1.0, std::abs(r.beta_plus));
    CHECK(std::abs(fine.beta_plus - r.beta_plus) < tol);
    CHECK(std::abs(fine.beta_minus - r.beta_minus) < tol);
  }
}

TEST_CASE("boundary0") {
  CHECK(std::abs(boundary0(NumericProblem(poly({}), poly({}), 0.1))) < 1e-12);

  const NumericProblem m(poly({}), poly({0, 1}), 0.2);
  const double b = boundary0(m);
  IntegratorSettings s = m.settings();
  s.forced_steps = 2 * select_steps(m, b);
  CHECK(std::abs(boundary0(m.with_settings(s)) - b) < 1e-8);

  // beta_0^+ = [gamma1 (alpha2 - gamma1) / 8 - gamma2 / 2] q^2 + O(q^3).
  const double a2 = 1.5, g1 = 0.7, g2 = -0.4;
  const double lead = g1 * (a2 - g1) / 8 - g2 / 2;
  double prev = 0;
  for (double q : {0.04, 0.02}) {
    const NumericProblem p(poly({0, 0, a2}), poly({0, g1, g2}), q);
    const double err = std::abs(boundary0(p) - lead * q * q);
    CHECK(err < 5 * q * q * q);
    if (prev > 0) CHECK(err < prev / 4);
    prev = err;
  }
}

TEST_CASE("discriminant tends to the free value as the coupling vanishes") {
  const double eps = 1e-6;
  const NumericProblem p(poly({0, 0, 1}), poly({0, eps, eps}), 0.3);
  for (double beta : {0.5, 1.3, 3.9, 6.2}) {
    CHECK(std::abs(discriminant(p, beta) - 2 * std::cos(std::sqrt(beta) * p.period())) < 1e-4);
  }
}

TEST_CASE("oracle endpoints track the series") {
  const auto spec = example1_spec(1, 1, 8);
  const auto t = compute_series(spec, 2);
  for (double q : {0.02, 0.04}) {
    const auto r = tongue_boundaries(numeric_problem(spec, q), 2);
    CHECK(std::abs(r.beta_even - series_value(t.plus[2], q)) < 1e-9);
    CHECK(std::abs(r.beta_odd - series_value(t.minus[2], q)) < 1e-9);
  }
}

TEST_CASE("errors") {
  // 4x + f(x) vanishes at x = -1/2, inside the starting range.
  CHECK_THROWS_AS(NumericProblem(poly({0, 0, 8}), poly({0, 1}), -0.6), ValidationError);
  CHECK_THROWS_AS(NumericProblem(poly({}), poly({0, 1}), 0.0), ValidationError);
  IntegratorSettings s;
  s.window_scale = 1e-6;
  const NumericProblem p(poly({}), poly({0, 1}), 0.3, s);
  CHECK_THROWS_AS(tongue_boundaries(p, 1), BracketNotFound);
  try {
    tongue_boundaries(p, 1);
  } catch (const BracketNotFound& e) {
    CHECK(std::string(e.what()).find("N = 1") != std::string::npos);
  }
}
