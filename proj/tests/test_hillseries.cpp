#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "hilltongue/errors.hpp"
#include "hilltongue/hillseries.hpp"
#include "hilltongue/tongues.hpp"

using namespace hilltongue;

namespace {

HillCoefficientSeries mathieu_G(unsigned order) {
  std::vector<CosPoly> G(order + 1);
  G[1] = CosPoly::harmonic(1);
  return HillCoefficientSeries::from_coefficients(G);
}

HillCoefficientSeries series_for(const TaylorCoeffs& alpha, const TaylorCoeffs& gamma,
                                 unsigned order) {
  return compose_G({gamma, order}, expand({alpha, order}));
}

void check_branch_structure(const EigenBranch& b) {
  const int N = static_cast<int>(b.N());
  const int sgn = b.parity() == Parity::Plus ? 1 : -1;
  CHECK(b.z(N, 0) == 1);
  if (N > 0) CHECK(b.z(-N, 0) == sgn);
  for (unsigned n = 0; n <= b.order(); ++n) {
    if (n > 0 && N > 0) {
      CHECK(b.z(N, n) == 0);
      CHECK(b.z(-N, n) == 0);
    }
    for (int k = -b.kmax(); k <= b.kmax(); ++k) {
      if (b.z(k, n) == 0) continue;
      CHECK(in_support_cone(k, n, b.N()));
      CHECK(b.z(-k, n) == sgn * b.z(k, n));
      if (N > 0) CHECK((k - N) % 2 == 0);
    }
  }
}

}  // namespace

TEST_CASE("compose_G") {
  const auto M = series_for({}, {{1, 1}}, 4);
  CHECK(M.G[1] == CosPoly::harmonic(1));
  for (unsigned n = 2; n <= 4; ++n) CHECK(M.G[n].is_zero());

  const Rational a = ratio(3, 5), c1 = ratio(-2, 7), c2 = ratio(5, 3);
  const auto G = series_for({{2, a}}, {{1, c1}, {2, c2}}, 3);
  CHECK(G.G[2][0] == -a * c1 / 8 + c2 / 2);
  CHECK(G.G[2][1] == a * c1 / 12);
  CHECK(G.G[2][2] == a * c1 / 24 + c2 / 2);
}

TEST_CASE("Lame diagonal") {
  for (Rational alpha : {ratio(1, 1), ratio(-3, 4), ratio(6, 1)}) {
    const unsigned M = 7;
    const auto G = series_for({{2, alpha}}, {{1, 1}}, M);
    const auto fast = diagonal_G({{{2, alpha}}, M}, {{{1, 1}}, M});
    for (unsigned n = 1; n <= M; ++n) {
      const Rational expected = Rational(n) / pow(Rational(8), n - 1) * pow(alpha / 6, n - 1);
      CHECK(project(G.G[n], n) == expected);
      CHECK(fast[n] == expected);
    }
  }
  for (const auto& d : diagonal_G({{{2, 1}}, 5}, {{}, 5})) CHECK(d == 0);
  const auto lin = diagonal_G({{}, 5}, {{{1, 1}}, 5});
  CHECK(lin[1] == 1);
  for (unsigned n = 2; n <= 5; ++n) CHECK(lin[n] == 0);
}

TEST_CASE("Mathieu eigenvalue coefficients") {
  const auto G = mathieu_G(4);
  const auto p1 = eigen_series(G, 1, Parity::Plus), m1 = eigen_series(G, 1, Parity::Minus);
  CHECK(p1.Lambda[1] == ratio(-1, 2));
  CHECK(m1.Lambda[1] == ratio(1, 2));
  const auto p2 = eigen_series(G, 2, Parity::Plus), m2 = eigen_series(G, 2, Parity::Minus);
  CHECK(p2.Lambda[2] == ratio(1, 24) + ratio(1, 16));
  CHECK(m2.Lambda[2] == ratio(1, 24) - ratio(1, 16));
  for (unsigned N = 3; N <= 6; ++N) {
    const auto p = eigen_series(G, N, Parity::Plus), m = eigen_series(G, N, Parity::Minus);
    CHECK(p.Lambda[2] == Rational(1) / (8 * (N * N - 1)));
    CHECK(m.Lambda[2] == p.Lambda[2]);
  }
  CHECK_THROWS_AS(eigen_series(G, 0, Parity::Minus), UnsupportedParity);
}

TEST_CASE("leading_coefficient_fast") {
  RationalSeries diag(7, 0);
  diag[1] = 1;
  CHECK(leading_coefficient_fast(diag, 2) == ratio(1, 8));
  for (unsigned N = 1; N <= 6; ++N) {
    CHECK(leading_coefficient_fast(diag, N) == mathieu_closed_form(N));
    CHECK(leading_coefficient_fast(RationalSeries(7, 0), N) == 0);
  }
  for (Rational gt : {ratio(1, 1), ratio(1, 6), ratio(-2, 3)}) {
    const auto spec = example1_spec(1, gt, 6);
    const auto d = diagonal_G(spec.osc, spec.coupling);
    for (unsigned N = 1; N <= 6; ++N) CHECK(leading_coefficient_fast(d, N) == example1_closed_form(1, gt, N));
  }
}

TEST_CASE("check_generalized_mathieu") {
  std::vector<CosPoly> bad(3);
  bad[1] = CosPoly::harmonic(2);
  auto r = check_generalized_mathieu(HillCoefficientSeries::from_coefficients(bad));
  CHECK_FALSE(r.generalized_mathieu);
  CHECK(r.n == 1);
  CHECK(r.k == 2);
  REQUIRE(r.predicted_order);
  CHECK(*r.predicted_order == 1);

  std::vector<CosPoly> bad2(3);
  bad2[1] = CosPoly::harmonic(1);
  bad2[2] = CosPoly::harmonic(3);
  r = check_generalized_mathieu(HillCoefficientSeries::from_coefficients(bad2));
  CHECK_FALSE(r.generalized_mathieu);
  CHECK(r.n == 2);
  CHECK(r.k == 3);

  CHECK(check_generalized_mathieu(series_for({{2, 1}, {3, 2}}, {{1, 1}, {2, -1}}, 6)).generalized_mathieu);
}

TEST_CASE("property: branch structure, region R and two-route C_N on random specs") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
  auto r = [&] { return ratio(num(rng), den(rng)); };
  for (int trial = 0; trial < 6; ++trial) {
    const unsigned M = 5;
    const OscillatorSpec osc{{{2, r()}, {3, r()}}, M};
    const CouplingSpec cpl{{{1, r()}, {2, r()}, {3, r()}}, M};
    const auto G = compose_G(cpl, expand(osc));
    for (const auto& g : G.G) CHECK(g.degree() <= 2 * M);
    const auto diag = diagonal_G(osc, cpl);
    CHECK(diag == diagonal_of(G));
    for (unsigned N = 1; N <= M; ++N) {
      const auto p = eigen_series(G, N, Parity::Plus), m = eigen_series(G, N, Parity::Minus);
      check_branch_structure(p);
      check_branch_structure(m);
      for (unsigned n = 0; n < N; ++n) CHECK(p.Lambda[n] == m.Lambda[n]);
      for (unsigned n = 0; n <= M; ++n) {
        for (int k = 0; k <= p.kmax(); ++k) {
          if (k > 2 * static_cast<int>(n) - static_cast<int>(N)) CHECK(p.z(k, n) == m.z(k, n));
        }
      }
      CHECK(leading_coefficient_fast(diag, N) == p.Lambda[N] - m.Lambda[N]);
      CHECK(p.B[N] - m.B[N] == p.Lambda[N] - m.Lambda[N]);
    }
    const auto b0 = eigen_series(G, 0, Parity::Plus);
    check_branch_structure(b0);
    const Rational a2 = osc.alpha.at(2), g1 = cpl.gamma.at(1), g2 = cpl.gamma.at(2);
    CHECK(b0.B[2] == g1 * (a2 - g1) / 8 - g2 / 2);
  }
}

TEST_CASE("first nonzero order K gives the binomial leading splitting") {
  for (unsigned K : {1u, 2u, 3u}) {
    const Rational gK = ratio(-5, 3);
    const unsigned M = K + 2;
    const auto G = series_for({{K + 1, ratio(2, 7)}}, {{K, gK}}, M);
    for (unsigned N = 1; N <= K; ++N) {
      const auto p = eigen_series(G, N, Parity::Plus), m = eigen_series(G, N, Parity::Minus);
      for (unsigned n = 1; n < K; ++n) {
        CHECK(p.Lambda[n] == 0);
        CHECK(m.Lambda[n] == 0);
      }
      CHECK(p.Lambda[K] == -G.G[K][0] - G.G[K][N] / 2);
      CHECK(m.Lambda[K] == -G.G[K][0] + G.G[K][N] / 2);
      CHECK(p.Lambda[K] - m.Lambda[K] == first_order_coefficient(gK, K, N));
    }
  }
  CHECK(first_order_coefficient(1, 3, 1) == ratio(-3, 4));
  CHECK(first_order_coefficient(1, 3, 2) == 0);
}

TEST_CASE("odd f with even g splits no odd tongue") {
  const auto G = series_for({{3, ratio(2, 3)}, {5, ratio(-1, 4)}}, {{2, 1}, {4, ratio(1, 3)}}, 7);
  for (unsigned N = 1; N <= 7; N += 2) {
    CHECK(eigen_series(G, N, Parity::Plus).B == eigen_series(G, N, Parity::Minus).B);
  }
}
