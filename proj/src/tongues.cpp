#include "hilltongue/tongues.hpp"

#include <cmath>
#include <exception>

#include "hilltongue/errors.hpp"

namespace hilltongue {

void ProblemSpec::validate() const {
  osc.validate();
  coupling.validate();
  if (osc.order != coupling.order) {
    throw OrderMismatch("oscillator order " + std::to_string(osc.order) +
                        " != coupling order " + std::to_string(coupling.order));
  }
}

ProblemSpec mathieu_spec(unsigned order) {
  return {{{}, order}, {{{1, Rational(1)}}, order}};
}

ProblemSpec example1_spec(const Rational& alpha, const Rational& gt, unsigned order) {
  return {{{{2, alpha}}, order}, {{{1, 2 * gt * alpha}}, order}};
}

ProblemSpec example2_spec(const Rational& alpha, const Rational& gt, unsigned order) {
  return {{{{3, alpha}}, order}, {{{2, 3 * gt * alpha}}, order}};
}

ProblemSpec example4_spec(const Rational& alpha, unsigned n, unsigned order) {
  const Rational c = ratio(static_cast<long>(n) * (n + 1), 6);
  const Rational a3 = alpha * alpha / 18;
  return {{{{2, alpha}, {3, a3}}, order},
          {{{1, c * 2 * alpha}, {2, c * 3 * a3}}, order}};
}

SeriesTables compute_series(const ProblemSpec& spec, unsigned n_max) {
  spec.validate();
  SeriesTables t;
  t.spec = spec;
  t.lin = expand(spec.osc);
  t.G = compose_G(spec.coupling, t.lin);

  const long count = static_cast<long>(n_max) + 1;
  std::vector<std::optional<EigenBranch>> plus(count), minus(count);
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
  for (long N = 0; N < count; ++N) {
    try {
      plus[N].emplace(eigen_series(t.G, N, Parity::Plus));
      minus[N].emplace(N == 0 ? *plus[N] : eigen_series(t.G, N, Parity::Minus));
    } catch (...) {
      errors[N] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  t.C.assign(count, Rational(0));
  for (long N = 0; N < count; ++N) {
    t.plus.push_back(std::move(*plus[N]));
    t.minus.push_back(std::move(*minus[N]));
    if (N >= 1 && static_cast<unsigned>(N) <= spec.order()) {
      t.C[N] = t.plus[N].Lambda[N] - t.minus[N].Lambda[N];
    }
  }
  return t;
}

double evaluate_branch(const EigenBranch& branch, double q) {
  double s = 0.0;
  for (std::size_t n = branch.B.size(); n-- > 0;) s = s * q + to_double(branch.B[n]);
  return s;
}

NumericProblem numeric_problem(const ProblemSpec& spec, double q,
                               const IntegratorSettings& settings) {
  return NumericProblem(spec.osc.alpha, spec.coupling.gamma, q, settings);
}

std::string to_string(Shape s) {
  switch (s) {
    case Shape::Trumpet:
      return "trumpet";
    case Shape::Horn:
      return "horn";
    case Shape::Collapsed:
      return "collapsed";
    case Shape::Undetermined:
      break;
  }
  return "undetermined";
}

ShapeVerdict classify_shape(const EigenBranch& plus, const EigenBranch& minus) {
  if (plus.N() != minus.N() || plus.order() != minus.order()) {
    throw OrderMismatch("branches differ in N or truncation order");
  }
  ShapeVerdict v;
  v.N = plus.N();
  auto leading = [](const EigenBranch& b, std::optional<unsigned>& order, int& sgn) {
    for (unsigned n = 1; n < b.B.size(); ++n) {
      if (b.B[n] != 0) {
        order = n;
        sgn = sign(b.B[n]);
        return;
      }
    }
  };
  leading(plus, v.order_plus, v.sign_plus);
  leading(minus, v.order_minus, v.sign_minus);
  if (plus.B == minus.B) {
    v.classification = Shape::Collapsed;
  } else if (v.order_plus && v.order_minus) {
    v.classification = v.sign_plus != v.sign_minus ? Shape::Trumpet : Shape::Horn;
  }
  return v;
}

Rational second_tongue_sign(const Rational& alpha2, const Rational& gamma1,
                            const Rational& gamma2) {
  return gamma1 * gamma1 / 8 - gamma1 * alpha2 / 24 - gamma2 / 2;
}

OrderFit asymptotic_order(const std::vector<TongueRecord>& records) {
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    if (std::abs(r.length) > kNumericallyZero && r.q > 0) {
      xs.push_back(std::log(r.q));
      ys.push_back(std::log(std::abs(r.length)));
    }
  }
  OrderFit fit;
  fit.points = xs.size();
  if (xs.empty()) {
    fit.collapsed = true;
    return fit;
  }
  if (xs.size() < 4) {
    throw InsufficientData("only " + std::to_string(xs.size()) +
                           " lengths above the numerically-zero floor");
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.coefficient = std::exp(fit.intercept);
  return fit;
}

namespace {

std::optional<unsigned> ince_index(const Rational& mu) {
  if (sign(mu) <= 0) return std::nullopt;
  const Rational m = Rational(6) / mu;
  if (m.get_den() != 1 || !m.get_num().fits_ulong_p()) return std::nullopt;
  const unsigned long target = m.get_num().get_ui();
  const auto n = static_cast<unsigned long>((std::sqrt(1.0 + 4.0 * target) - 1.0) / 2.0);
  for (unsigned long c = n > 0 ? n - 1 : 0; c <= n + 1; ++c) {
    if (c >= 1 && c * (c + 1) == target) return static_cast<unsigned>(c);
  }
  return std::nullopt;
}

}  // namespace

CoexistenceReport coexistence_check(const OscillatorSpec& osc, const CouplingSpec& coupling,
                                    const LindstedtExpansion& lin) {
  if (osc.order != lin.order) throw OrderMismatch("expansion order differs from spec");
  const auto g = compose_g(coupling, lin);
  const unsigned M = lin.order;
  CoexistenceReport rep;
  unsigned K = 0;
  for (unsigned n = 1; n <= M && K == 0; ++n) {
    if (!g[n].is_zero()) K = n;
  }
  if (K == 0) throw DegenerateFit("g(q U) vanishes through the truncation order");
  if (2 * K > M) {
    throw DegenerateFit("order " + std::to_string(M) +
                        " too low to fit the quadratic term (need " +
                        std::to_string(2 * K) + ")");
  }
  rep.first_order = K;
  const CosPoly& gK = g[K];
  const std::size_t top = gK.degree();
  if (top == 0) throw DegenerateFit("lowest-order g term carries no harmonic");
  rep.A = Rational(4 * static_cast<long>(top * top));

  const CosSeries square = series_mul(g, g, M);
  auto linear_part = [&](unsigned n) {
    CosPoly acc = rep.A * g[n];
    for (unsigned j = 0; j <= n; ++j) {
      if (lin.omega2[j] != 0 && !g[n - j].is_zero()) {
        acc += lin.omega2[j] * second_derivative(g[n - j]);
      }
    }
    return acc;
  };

  const CosPoly L2K = linear_part(2 * K);
  const CosPoly& S2K = square[2 * K];
  bool fitted = false;
  for (std::size_t h = S2K.degree(); h >= 1 && !S2K.is_zero(); --h) {
    if (S2K[h] != 0) {
      rep.mu = -L2K[h] / S2K[h];
      fitted = true;
      break;
    }
  }
  if (!fitted) throw DegenerateFit("quadratic term has no harmonic at order 2K");

  rep.B.assign(M + 1, Rational(0));
  rep.residual.assign(M + 1, CosPoly{});
  rep.detected = true;
  for (unsigned n = 1; n <= M; ++n) {
    CosPoly r = linear_part(n) + rep.mu * square[n];
    rep.B[n] = -r[0];
    r += CosPoly::constant(rep.B[n]);
    const Rational norm = r.max_abs();
    if (norm > rep.residual_norm) rep.residual_norm = norm;
    if (!r.is_zero()) rep.detected = false;
    rep.residual[n] = std::move(r);
  }
  if (rep.detected) rep.n_ince = ince_index(rep.mu);
  return rep;
}

Rational example1_closed_form(const Rational& alpha, const Rational& gt, unsigned N) {
  if (N == 0) throw ValidationError("closed form needs N >= 1");
  const Rational f = factorial(N - 1);
  Rational c = pow(alpha, N) / (pow(Rational(8), N - 1) * f * f);
  if (N % 2 == 1) c = -c;
  for (unsigned k = 0; k < N; ++k) {
    c *= 2 * gt - ratio(static_cast<long>(k) * (k + 1), 6);
  }
  return c;
}

Rational mathieu_closed_form(unsigned N) {
  if (N == 0) throw ValidationError("closed form needs N >= 1");
  const Rational f = factorial(N - 1);
  Rational c = Rational(1) / (f * f * pow(Rational(8), N - 1));
  return N % 2 == 1 ? Rational(-c) : c;
}

Rational first_order_coefficient(const Rational& gammaK, unsigned K, unsigned N) {
  if (N > K || (K - N) % 2 != 0) return 0;
  return -gammaK / pow(Rational(2), K - 1) * binomial(K, (K - N) / 2);
}

std::vector<ShapeVerdict> trumpet_count_scenario(unsigned K, const Rational& alphaK1,
                                                 const Rational& gammaK, unsigned order) {
  if (K == 0 || K % 2 == 0) throw ValidationError("K must be an odd positive integer");
  if (gammaK == 0) throw ValidationError("gamma_K must be nonzero");
  const unsigned M = order == 0 ? K + 3 : order;
  if (M < K) throw ValidationError("order must be at least K");
  ProblemSpec spec{{{{K + 1, alphaK1}}, M}, {{{K, gammaK}}, M}};
  const SeriesTables t = compute_series(spec, K);
  std::vector<ShapeVerdict> out;
  for (unsigned N = 1; N <= K; ++N) out.push_back(classify_shape(t.plus[N], t.minus[N]));
  return out;
}

}  // namespace hilltongue
