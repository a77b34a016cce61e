#include "hilltongue/lindstedt.hpp"

#include <algorithm>
#include <string>

#include "hilltongue/errors.hpp"

namespace hilltongue {

Rational coefficient(const TaylorCoeffs& c, unsigned k) {
  const auto it = c.find(k);
  return it == c.end() ? Rational(0) : it->second;
}

unsigned top_degree(const TaylorCoeffs& c) {
  unsigned d = 0;
  for (const auto& [k, v] : c) {
    if (v != 0) d = std::max(d, k);
  }
  return d;
}

void OscillatorSpec::validate() const {
  if (order < 1) throw ValidationError("truncation order must be >= 1");
  for (const auto& [k, v] : alpha) {
    if (k < 2) {
      throw ValidationError("f coefficient index " + std::to_string(k) +
                            " < 2; f must be O(x^2)");
    }
  }
}

LindstedtExpansion expand(const OscillatorSpec& spec) {
  spec.validate();
  const unsigned M = spec.order;
  const unsigned D = std::min(top_degree(spec.alpha), M + 1);

  LindstedtExpansion out;
  out.order = M;
  out.alpha = spec.alpha;
  out.u.assign(M + 2, CosPoly{});
  out.u[1] = CosPoly::harmonic(1);
  out.omega2.assign(M + 1, Rational(0));
  out.omega2[0] = 1;

  // pw[k][m] = q^m coefficient of (sum_i q^i u_i)^k, filled level by level.
  // For k >= 2 it only involves u_i with i < m, so it is known before u_m.
  std::vector<std::vector<CosPoly>> pw(std::max(D, 1u) + 1,
                                       std::vector<CosPoly>(M + 2));
  pw[1][1] = out.u[1];

  for (unsigned n = 2; n <= M + 1; ++n) {
    CosPoly F;
    for (unsigned k = 1; k + 2 <= n; ++k) {
      if (out.omega2[k] == 0) continue;
      F -= out.omega2[k] * second_derivative(out.u[n - k]);
    }
    for (unsigned k = 2; k <= D && k <= n; ++k) {
      CosPoly acc;
      for (unsigned i = 1; i + k - 1 <= n; ++i) {
        const CosPoly& lower = pw[k - 1][n - i];
        if (out.u[i].is_zero() || lower.is_zero()) continue;
        acc += out.u[i] * lower;
      }
      pw[k][n] = acc;
      const Rational a = coefficient(spec.alpha, k);
      if (a != 0) F -= a * acc;
    }
    // -Omega_{n-1} u_1'' = 4 Omega_{n-1} cos(2 tau) must cancel the resonance.
    out.omega2[n - 1] = -F[1] / 4;
    F += CosPoly::harmonic(1, 4 * out.omega2[n - 1]);
    if (n <= M) {
      out.u[n] = solve_harmonic(F);
      pw[1][n] = out.u[n];
    }
  }
  out.u.resize(M + 1);
  out.kappa = series_reciprocal(out.omega2, M);
  return out;
}

CosPoly source_term(const LindstedtExpansion& lin, unsigned n) {
  if (n < 1 || n > lin.order) {
    throw ValidationError("source_term level out of range");
  }
  CosPoly F;
  for (unsigned k = 1; k + 1 <= n; ++k) {
    F -= lin.omega2[k] * second_derivative(lin.u[n - k]);
  }
  // Powers of the full u-series by repeated truncated products.
  const CosSeries useries(lin.u.begin(), lin.u.end());
  CosSeries power = useries;
  const unsigned D = top_degree(lin.alpha);
  for (unsigned k = 2; k <= D && k <= n; ++k) {
    power = series_mul(power, useries, n);
    const Rational a = coefficient(lin.alpha, k);
    if (a != 0 && power.size() > n) F -= a * power[n];
  }
  return F;
}

RationalSeries diagonal_A(const OscillatorSpec& spec) {
  spec.validate();
  const unsigned M = spec.order;
  const unsigned D = std::min(top_degree(spec.alpha), M);
  RationalSeries A(M + 1);
  A[1] = ratio(1, 2);
  std::vector<RationalSeries> pw(std::max(D, 1u) + 1, RationalSeries(M + 1));
  pw[1][1] = A[1];
  for (unsigned n = 2; n <= M; ++n) {
    Rational rhs = 0;
    for (unsigned m = 2; m <= D && m <= n; ++m) {
      Rational acc = 0;
      for (unsigned i = 1; i + m - 1 <= n; ++i) acc += A[i] * pw[m - 1][n - i];
      pw[m][n] = acc;
      rhs += coefficient(spec.alpha, m) * acc;
    }
    A[n] = rhs / (4 * (static_cast<long>(n) * n - 1));
    check_coefficient(A[n]);
    pw[1][n] = A[n];
  }
  return A;
}

Rational secular_integral(const CosPoly& p, unsigned K) { return project(p, K); }

}  // namespace hilltongue
