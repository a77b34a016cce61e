#include "hilltongue/hillseries.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "hilltongue/errors.hpp"

namespace hilltongue {

void CouplingSpec::validate() const {
  if (order < 1) throw ValidationError("truncation order must be >= 1");
  for (const auto& [k, v] : gamma) {
    if (k < 1) throw ValidationError("g coefficient index 0 given; g(0) must vanish");
  }
}

HillCoefficientSeries HillCoefficientSeries::from_coefficients(std::vector<CosPoly> G) {
  HillCoefficientSeries s;
  if (G.empty()) G.resize(1);
  s.order = static_cast<unsigned>(G.size() - 1);
  G[0] = CosPoly{};
  s.G = std::move(G);
  s.omega2.assign(s.order + 1, Rational(0));
  s.omega2[0] = 1;
  return s;
}

EigenBranch::EigenBranch(unsigned N, Parity parity, unsigned order, unsigned kmax)
    : Lambda(order + 1),
      B(order + 1),
      N_(N),
      parity_(parity),
      order_(order),
      kmax_(static_cast<int>(kmax)),
      table_((2 * kmax + 1) * (order + 1)) {}

const Rational& EigenBranch::z(int k, unsigned n) const {
  static const Rational zero = 0;
  if (k < -kmax_ || k > kmax_ || n > order_) return zero;
  return table_[n * (2 * kmax_ + 1) + (k + kmax_)];
}

Rational& EigenBranch::z_mut(int k, unsigned n) {
  return table_[n * (2 * kmax_ + 1) + (k + kmax_)];
}

std::vector<CosPoly> compose_g(const CouplingSpec& coupling,
                               const LindstedtExpansion& lin) {
  coupling.validate();
  if (coupling.order != lin.order) {
    throw OrderMismatch("coupling order " + std::to_string(coupling.order) +
                        " != oscillator order " + std::to_string(lin.order));
  }
  const unsigned M = lin.order;
  const CosSeries useries(lin.u.begin(), lin.u.end());
  std::vector<CosPoly> g(M + 1);
  CosSeries power = useries;
  const unsigned D = std::min(top_degree(coupling.gamma), M);
  for (unsigned k = 1; k <= D; ++k) {
    if (k > 1) power = series_mul(power, useries, M);
    const Rational c = coefficient(coupling.gamma, k);
    if (c == 0) continue;
    for (unsigned n = k; n <= M; ++n) g[n] += c * power[n];
  }
  return g;
}

HillCoefficientSeries compose_G(const CouplingSpec& coupling,
                                const LindstedtExpansion& lin) {
  const auto g = compose_g(coupling, lin);
  const unsigned M = lin.order;
  HillCoefficientSeries out;
  out.order = M;
  out.G.assign(M + 1, CosPoly{});
  for (unsigned n = 1; n <= M; ++n) {
    for (unsigned j = 1; j <= n; ++j) {
      if (g[j].is_zero() || lin.kappa[n - j] == 0) continue;
      out.G[n] += lin.kappa[n - j] * g[j];
    }
  }
  out.omega2 = lin.omega2;
  return out;
}

namespace {

// Widest frequency shift per level: level s moves k by at most 2 deg(G_s),
// so d = max_s ceil(deg G_s / s) bounds the support by N + 2 d n.
unsigned support_slope(const HillCoefficientSeries& G) {
  unsigned d = 1;
  for (unsigned s = 1; s <= G.order; ++s) {
    d = std::max(d, static_cast<unsigned>((G.G[s].degree() + s - 1) / s));
  }
  return d;
}

// -1/2 sum_{s=1}^{n} sum_i G_{i,s} (z_{k-2i,n-s} + z_{k+2i,n-s})
Rational coupling_sum(const HillCoefficientSeries& G, const EigenBranch& br, int k,
                      unsigned n) {
  Rational acc = 0;
  for (unsigned s = 1; s <= n; ++s) {
    const CosPoly& Gs = G.G[s];
    const int deg = static_cast<int>(Gs.degree());
    for (int i = 0; i <= deg && !Gs.is_zero(); ++i) {
      const Rational& c = Gs[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      const Rational& lo = br.z(k - 2 * i, n - s);
      const Rational& hi = br.z(k + 2 * i, n - s);
      if (lo != 0) acc += c * lo;
      if (hi != 0) acc += c * hi;
    }
  }
  acc /= -2;
  return acc;
}

}  // namespace

EigenBranch eigen_series(const HillCoefficientSeries& G, unsigned N, Parity parity) {
  if (N == 0 && parity == Parity::Minus) {
    throw UnsupportedParity("N = 0 has no odd branch");
  }
  const unsigned M = G.order;
  const unsigned kmax = N + 2 * M * support_slope(G);
  EigenBranch br(N, parity, M, kmax);
  const int n0 = static_cast<int>(N);
  const Rational sgn = parity == Parity::Plus ? 1 : -1;

  // Normalization: z_{k,0} = delta_{k,N} +/- delta_{k,-N}; delta_{k,0} for N = 0.
  if (N == 0) {
    br.z_mut(0, 0) = 1;
  } else {
    br.z_mut(n0, 0) = 1;
    br.z_mut(-n0, 0) = sgn;
  }
  br.Lambda[0] = static_cast<long>(N) * N;

  const long NN = static_cast<long>(N) * N;
  for (unsigned n = 1; n <= M; ++n) {
    br.Lambda[n] = coupling_sum(G, br, n0, n);
    check_coefficient(br.Lambda[n]);
    for (int k = -br.kmax(); k <= br.kmax(); ++k) {
      if (k == n0 || k == -n0) continue;  // z_{+/-N,n} = 0 for n >= 1
      Rational rhs = coupling_sum(G, br, k, n);
      for (unsigned s = 1; s <= n; ++s) {
        const Rational& zk = br.z(k, n - s);
        if (zk != 0 && br.Lambda[s] != 0) rhs -= br.Lambda[s] * zk;
      }
      if (rhs == 0) continue;
      rhs /= Rational(NN - static_cast<long>(k) * k);
      check_coefficient(rhs);
      br.z_mut(k, n) = rhs;
    }
  }

  for (unsigned n = 0; n <= M; ++n) {
    Rational b = 0;
    for (unsigned j = 0; j <= n; ++j) b += br.Lambda[j] * G.omega2[n - j];
    br.B[n] = b;
  }
  return br;
}

Rational leading_coefficient_fast(const RationalSeries& diagonal, unsigned N) {
  if (N == 0) throw ValidationError("leading coefficient needs N >= 1");
  if (diagonal.size() <= N) {
    throw ValidationError("diagonal shorter than N = " + std::to_string(N));
  }
  // r_p = Delta z on the line k = 2n - N, r_0 = 2.
  RationalSeries r(N);
  r[0] = 2;
  for (unsigned p = 1; p < N; ++p) {
    Rational acc = 0;
    for (unsigned s = 1; s <= p; ++s) acc += diagonal[s] * r[p - s];
    r[p] = -acc / (8 * static_cast<long>(p) * static_cast<long>(N - p));
  }
  Rational c = 0;
  for (unsigned p = 0; p < N; ++p) c += diagonal[N - p] * r[p];
  c /= -2;
  return c;
}

RationalSeries diagonal_G(const OscillatorSpec& osc, const CouplingSpec& coupling) {
  coupling.validate();
  if (osc.order != coupling.order) {
    throw OrderMismatch("oscillator and coupling orders differ");
  }
  const unsigned M = osc.order;
  const RationalSeries A = diagonal_A(osc);
  RationalSeries half(M + 1);
  RationalSeries power = A;
  const unsigned D = std::min(top_degree(coupling.gamma), M);
  for (unsigned m = 1; m <= D; ++m) {
    if (m > 1) power = series_mul(power, A, M);
    const Rational c = coefficient(coupling.gamma, m);
    if (c == 0) continue;
    for (unsigned n = m; n <= M; ++n) half[n] += c * power[n];
  }
  RationalSeries diag(M + 1);
  for (unsigned n = 1; n <= M; ++n) diag[n] = 2 * half[n];
  return diag;
}

RationalSeries diagonal_of(const HillCoefficientSeries& G) {
  RationalSeries d(G.order + 1);
  for (unsigned n = 1; n <= G.order; ++n) d[n] = project(G.G[n], n);
  return d;
}

MathieuCheck check_generalized_mathieu(const HillCoefficientSeries& G) {
  MathieuCheck out;
  for (unsigned n = 1; n <= G.order; ++n) {
    const CosPoly& Gn = G.G[n];
    for (std::size_t k = n + 1; k <= Gn.degree(); ++k) {
      if (Gn[k] == 0) continue;
      out.generalized_mathieu = false;
      out.n = n;
      out.k = static_cast<unsigned>(k);
      out.predicted_order = n;
      return out;
    }
  }
  return out;
}

bool in_support_cone(int k, unsigned n, unsigned N) {
  const int reach = 2 * static_cast<int>(n);
  const int N_ = static_cast<int>(N);
  return std::abs(k - N_) <= reach || std::abs(k + N_) <= reach;
}

}  // namespace hilltongue
