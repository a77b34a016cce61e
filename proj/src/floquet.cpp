#include "hilltongue/floquet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "hilltongue/errors.hpp"

namespace hilltongue {

namespace {

constexpr double kPi = std::numbers::pi;

// n-point Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(unsigned n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (unsigned i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (unsigned j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

// Quotient of p (ascending coefficients) by (x - r); the remainder is dropped.
std::vector<double> deflate(const std::vector<double>& p, double r) {
  const std::size_t d = p.size() - 1;
  std::vector<double> out(d);
  double carry = p[d];
  for (std::size_t k = d; k-- > 0;) {
    out[k] = carry;
    carry = p[k] + r * carry;
  }
  return out;
}

double horner(const std::vector<double>& c, double x) {
  double s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
  return s;
}

// Taylor-series integrator for the oscillator and up to two Hill solutions.
// f and g are polynomials, so all Taylor coefficients follow from Cauchy
// products of the u-series.
class TaylorStepper {
 public:
  TaylorStepper(const Polynomial& f, const Polynomial& g, unsigned order)
      : f_(f), g_(g), P_(std::max(order, 4u)) {
    D_ = std::max({f.degree(), g.degree(), 1u});
    a_.assign(P_ + 1, 0.0);
    gk_.assign(P_ + 1, 0.0);
    pw_.assign(D_ + 1, std::vector<double>(P_ + 1, 0.0));
    for (auto& b : b_) b.assign(P_ + 1, 0.0);
  }

  // Fills the coefficients at the current state (u, up) and Hill states.
  void expand(double u, double up, double beta, const std::array<double, 4>& z,
              unsigned n_solutions) {
    a_[0] = u;
    a_[1] = up;
    for (unsigned s = 0; s < n_solutions; ++s) {
      b_[s][0] = z[2 * s];
      b_[s][1] = z[2 * s + 1];
    }
    for (unsigned k = 0; k + 2 <= P_; ++k) {
      pw_[1][k] = a_[k];
      for (unsigned m = 2; m <= D_; ++m) {
        double acc = 0.0;
        for (unsigned j = 0; j <= k; ++j) acc += pw_[m - 1][j] * a_[k - j];
        pw_[m][k] = acc;
      }
      double fk = k == 0 && !f_.c.empty() ? f_.c[0] : 0.0;
      double gk = k == 0 && !g_.c.empty() ? g_.c[0] : 0.0;
      for (unsigned m = 1; m < f_.c.size(); ++m) fk += f_.c[m] * pw_[m][k];
      for (unsigned m = 1; m < g_.c.size(); ++m) gk += g_.c[m] * pw_[m][k];
      gk_[k] = gk;
      const double denom = (k + 1.0) * (k + 2.0);
      a_[k + 2] = -(4.0 * a_[k] + fk) / denom;
      for (unsigned s = 0; s < n_solutions; ++s) {
        const auto& b = b_[s];
        double acc = beta * b[k];
        for (unsigned j = 0; j <= k; ++j) acc += gk_[j] * b[k - j];
        b_[s][k + 2] = -acc / denom;
      }
    }
  }

  static void eval(const std::vector<double>& c, unsigned P, double h, double& value,
                   double& deriv) {
    double v = 0.0;
    double d = 0.0;
    for (unsigned k = P + 1; k-- > 0;) {
      v = v * h + c[k];
      if (k >= 1) d = d * h + k * c[k];
    }
    value = v;
    deriv = d;
  }

  const std::vector<double>& u_coeffs() const { return a_; }
  const std::vector<double>& z_coeffs(unsigned s) const { return b_[s]; }
  unsigned order() const { return P_; }

 private:
  const Polynomial& f_;
  const Polynomial& g_;
  unsigned P_;
  unsigned D_;
  std::vector<double> a_;
  std::vector<double> gk_;
  std::vector<std::vector<double>> pw_;
  std::array<std::vector<double>, 2> b_;
};

double max_abs_diff(const Mat2& a, const Mat2& b) {
  return std::max({std::abs(a.a11 - b.a11), std::abs(a.a12 - b.a12),
                   std::abs(a.a21 - b.a21), std::abs(a.a22 - b.a22)});
}

double max_abs(const Mat2& a) {
  return std::max({std::abs(a.a11), std::abs(a.a12), std::abs(a.a21), std::abs(a.a22)});
}

}  // namespace

Polynomial Polynomial::from_taylor(const TaylorCoeffs& coeffs) {
  Polynomial p;
  const unsigned d = top_degree(coeffs);
  p.c.assign(d + 1, 0.0);
  for (const auto& [k, v] : coeffs) {
    if (k <= d) p.c[k] = to_double(v);
  }
  while (!p.c.empty() && p.c.back() == 0.0) p.c.pop_back();
  return p;
}

double Polynomial::operator()(double x) const { return horner(c, x); }

unsigned Polynomial::degree() const {
  return c.empty() ? 0u : static_cast<unsigned>(c.size() - 1);
}

NumericProblem::NumericProblem(Polynomial f, Polynomial g, double q,
                               IntegratorSettings settings)
    : f_(std::move(f)), g_(std::move(g)), q_(q), settings_(settings) {
  if (!(q_ != 0.0) || !std::isfinite(q_)) {
    throw ValidationError("amplitude q must be finite and nonzero");
  }
  // The restoring force 4x + f(x) must keep the sign of x between 0 and q.
  const int samples = 1024;
  for (int i = 1; i <= samples; ++i) {
    const double x = q_ * i / samples;
    const double force = 4.0 * x + f_(x);
    if (!(force * q_ > 0.0)) {
      throw ValidationError("4x + f(x) vanishes on (0, q]; q is beyond the first "
                            "equilibrium");
    }
  }
  energy_ = potential(q_);
  // Walk away from 0 on the other side until V reaches E.
  const double dir = q_ > 0 ? -1.0 : 1.0;
  const double dx = std::abs(q_) / 256.0;
  double prev_x = 0.0;
  double prev_v = potential(0.0);
  double far = 0.0;
  bool found = false;
  for (int i = 1; i <= 256 * 64; ++i) {
    const double x = dir * dx * i;
    const double v = potential(x);
    if (v >= energy_) {
      far = x;
      found = true;
      break;
    }
    if (v < prev_v) {
      throw NoTurningPoint("potential turns over before reaching the orbit energy");
    }
    prev_x = x;
    prev_v = v;
  }
  if (!found) throw NoTurningPoint("no turning point within 64 |q|");
  double inner = prev_x;
  double outer = far;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (inner + outer);
    if (mid == inner || mid == outer) break;
    (potential(mid) >= energy_ ? outer : inner) = mid;
  }
  const double other = std::abs(potential(inner) - energy_) <
                               std::abs(potential(outer) - energy_)
                           ? inner
                           : outer;
  x_low_ = std::min(q_, other);
  x_high_ = std::max(q_, other);
  period_ = hilltongue::period(*this);
}

NumericProblem::NumericProblem(const TaylorCoeffs& alpha, const TaylorCoeffs& gamma,
                               double q, IntegratorSettings settings)
    : NumericProblem(Polynomial::from_taylor(alpha), Polynomial::from_taylor(gamma), q,
                     settings) {}

double NumericProblem::potential(double x) const {
  double v = 2.0 * x * x;
  double p = x;
  for (std::size_t k = 0; k < f_.c.size(); ++k) {
    v += f_.c[k] * p / (k + 1.0);
    p *= x;
  }
  return v;
}

double NumericProblem::omega2() const {
  const double w = kPi / period_;
  return w * w;
}

double NumericProblem::coupling_bound() const {
  double m = 0.0;
  const int samples = 512;
  for (int i = 0; i <= samples; ++i) {
    const double x = x_low_ + (x_high_ - x_low_) * i / samples;
    m = std::max(m, std::abs(g_(x)));
  }
  return m;
}

NumericProblem NumericProblem::with_settings(IntegratorSettings settings) const {
  NumericProblem copy = *this;
  copy.settings_ = settings;
  return copy;
}

double period(const NumericProblem& problem) {
  // E - V(x) as an ascending polynomial, then divide out both turning points:
  // E - V = (x - x_hi)(x - x_lo) Q(x), and the integrand becomes 1/sqrt(-2Q).
  const auto& f = problem.f().c;
  std::vector<double> p(std::max<std::size_t>(3, f.size() + 1), 0.0);
  p[0] = problem.energy();
  p[2] -= 2.0;
  for (std::size_t k = 0; k < f.size(); ++k) p[k + 1] -= f[k] / (k + 1.0);
  const double lo = problem.turning_point_low();
  const double hi = problem.turning_point_high();
  const std::vector<double> quotient = deflate(deflate(p, hi), lo);
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);

  auto rule = [&](unsigned n) {
    std::vector<double> xs, ws;
    gauss_legendre(n, xs, ws);
    double sum = 0.0;
    for (unsigned i = 0; i < n; ++i) {
      const double theta = 0.5 * kPi * xs[i];
      const double h = -horner(quotient, mid + half * std::sin(theta));
      if (!(h > 0.0)) {
        throw NoTurningPoint("potential has an interior barrier inside the orbit");
      }
      sum += ws[i] / std::sqrt(2.0 * h);
    }
    return kPi * sum;
  };

  const double tol = problem.settings().quadrature_tolerance;
  double previous = rule(8);
  for (unsigned n = 16; n <= 2048; n *= 2) {
    const double current = rule(n);
    if (std::abs(current - previous) <= tol * current) return current;
    previous = current;
  }
  throw QuadratureNonConvergent("period quadrature did not settle by 2048 nodes");
}

double period_return_map(const NumericProblem& problem) {
  TaylorStepper stepper(problem.f(), problem.g(), problem.settings().taylor_order);
  const unsigned P = stepper.order();
  const double h = 0.01;
  const double dir = problem.q() > 0 ? -1.0 : 1.0;  // initial sign of u'
  double u = problem.q();
  double up = 0.0;
  double t = 0.0;
  bool left_start = false;
  while (t < 1000.0) {
    stepper.expand(u, up, 0.0, {}, 0);
    double u1 = 0.0, up1 = 0.0;
    TaylorStepper::eval(stepper.u_coeffs(), P, h, u1, up1);
    // u'(s) = sum k a_k s^{k-1}; its derivative is u''.
    auto velocity = [&](double s) {
      double v = 0.0, dv = 0.0;
      TaylorStepper::eval(stepper.u_coeffs(), P, s, v, dv);
      return dv;
    };
    if (left_start && velocity(h) * dir <= 0.0) {
      double a = 0.0;
      double b = h;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if (m == a || m == b) break;
        (velocity(m) * dir > 0.0 ? a : b) = m;
      }
      return 2.0 * (t + 0.5 * (a + b));
    }
    left_start = true;
    u = u1;
    up = up1;
    t += h;
  }
  throw IntegratorFailure("return map did not reach the far turning point");
}

Propagation propagate(const NumericProblem& problem, double beta, double t_end,
                      unsigned steps) {
  if (steps == 0) throw IntegratorFailure("zero step count");
  TaylorStepper stepper(problem.f(), problem.g(), problem.settings().taylor_order);
  const unsigned P = stepper.order();
  const double h = t_end / steps;
  const double E = problem.energy();
  Propagation out;
  double u = problem.q();
  double up = 0.0;
  std::array<double, 4> z = {1.0, 0.0, 0.0, 1.0};
  for (unsigned i = 0; i < steps; ++i) {
    stepper.expand(u, up, beta, z, 2);
    TaylorStepper::eval(stepper.u_coeffs(), P, h, u, up);
    TaylorStepper::eval(stepper.z_coeffs(0), P, h, z[0], z[1]);
    TaylorStepper::eval(stepper.z_coeffs(1), P, h, z[2], z[3]);
    const double drift = std::abs(problem.potential(u) + 0.5 * up * up - E) / E;
    out.energy_drift = std::max(out.energy_drift, drift);
    if (!std::isfinite(z[0] + z[1] + z[2] + z[3] + u + up)) {
      throw IntegratorFailure("non-finite state at beta = " + std::to_string(beta));
    }
  }
  out.u = u;
  out.up = up;
  out.fundamental = Mat2{z[0], z[2], z[1], z[3]};
  return out;
}

unsigned select_steps(const NumericProblem& problem, double beta) {
  const auto& s = problem.settings();
  if (s.forced_steps != 0) return s.forced_steps;
  const double half = 0.5 * problem.period();
  unsigned n = s.min_steps;
  Mat2 coarse = propagate(problem, beta, half, n).fundamental;
  while (2 * n <= s.max_steps) {
    const Mat2 fine = propagate(problem, beta, half, 2 * n).fundamental;
    if (max_abs_diff(coarse, fine) <= s.step_tolerance * (1.0 + max_abs(fine))) return n;
    coarse = fine;
    n *= 2;
  }
  throw IntegratorFailure("step doubling did not converge by " +
                          std::to_string(s.max_steps) + " steps");
}

Mat2 monodromy(const NumericProblem& problem, double beta, unsigned half_steps) {
  return propagate(problem, beta, problem.period(), 2 * half_steps).fundamental;
}

Mat2 monodromy(const NumericProblem& problem, double beta) {
  return monodromy(problem, beta, select_steps(problem, beta));
}

double discriminant(const NumericProblem& problem, double beta) {
  return monodromy(problem, beta).trace();
}

FloquetResult floquet(const NumericProblem& problem, double beta) {
  const double d = discriminant(problem, beta);
  return {beta, d, std::abs(d) < 2.0};
}

BetaWindow default_window(const NumericProblem& problem, unsigned N) {
  const double om = problem.omega2();
  const double center = static_cast<double>(N) * N * om;
  const double half =
      problem.settings().window_scale * (2.0 * N - 1.0) * std::min(1.0, om);
  return {center - half, center + half};
}

namespace {

// Half-period discriminant identity for an even coefficient:
// Delta = 2 (y1 y2' + y1' y2) at T/2.
double half_discriminant(const Mat2& m) { return 2.0 * (m.a11 * m.a22 + m.a21 * m.a12); }

struct Root {
  double beta = 0.0;
  double width = 0.0;
};

// Locates the single sign change of fn over the sampled window and bisects it.
template <typename Fn>
Root isolate_root(Fn&& fn, const std::vector<double>& betas,
                  const std::vector<double>& values, double tol, unsigned N, double q,
                  const char* label) {
  std::vector<std::pair<double, double>> brackets;
  for (std::size_t i = 0; i + 1 < betas.size(); ++i) {
    if (values[i] == 0.0) {
      brackets.emplace_back(betas[i], betas[i]);
    } else if (values[i] * values[i + 1] < 0.0) {
      brackets.emplace_back(betas[i], betas[i + 1]);
    }
  }
  if (values.back() == 0.0) brackets.emplace_back(betas.back(), betas.back());
  const std::string where = std::string(label) + " endpoint of tongue N = " +
                            std::to_string(N) + " at q = " + to_decimal(q) + " in [" +
                            to_decimal(betas.front()) + ", " + to_decimal(betas.back()) +
                            "]";
  if (brackets.empty()) throw BracketNotFound("no " + where);
  if (brackets.size() > 1) throw AmbiguousBracket("several roots for the " + where);
  double a = brackets[0].first;
  double b = brackets[0].second;
  if (a == b) return {a, 0.0};
  double fa = fn(a);
  for (int it = 0; it < 300; ++it) {
    if (b - a <= tol * std::max(1.0, std::abs(a))) break;
    const double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    const double fm = fn(m);
    if (fm == 0.0) {
      a = b = m;
      break;
    }
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return {0.5 * (a + b), b - a};
}

}  // namespace

TongueRecord tongue_boundaries(const NumericProblem& problem, unsigned N) {
  return tongue_boundaries(problem, N, default_window(problem, N));
}

TongueRecord tongue_boundaries(const NumericProblem& problem, unsigned N,
                               BetaWindow window) {
  if (N == 0) throw ValidationError("tongue index must be >= 1; use boundary0 for N = 0");
  const auto& s = problem.settings();
  const double half = 0.5 * problem.period();
  const unsigned steps = select_steps(problem, 0.5 * (window.lo + window.hi));
  auto half_matrix = [&](double beta) {
    return propagate(problem, beta, half, steps).fundamental;
  };
  // Even/odd eigenfunctions: periodic (N even) need y1'(T/2) = 0 or y2(T/2) = 0,
  // antiperiodic (N odd) need y1(T/2) = 0 or y2'(T/2) = 0. Each is a simple root.
  const bool periodic = N % 2 == 0;
  auto even_fn = [&](double beta) {
    const Mat2 m = half_matrix(beta);
    return periodic ? m.a21 : m.a11;
  };
  auto odd_fn = [&](double beta) {
    const Mat2 m = half_matrix(beta);
    return periodic ? m.a12 : m.a22;
  };

  const unsigned P = std::max(4u, s.scan_points);
  std::vector<double> betas(P + 1), ev(P + 1), od(P + 1);
  for (unsigned i = 0; i <= P; ++i) {
    betas[i] = window.lo + (window.hi - window.lo) * i / P;
    const Mat2 m = half_matrix(betas[i]);
    ev[i] = periodic ? m.a21 : m.a11;
    od[i] = periodic ? m.a12 : m.a22;
  }
  const Root re =
      isolate_root(even_fn, betas, ev, s.root_tolerance, N, problem.q(), "even");
  const Root ro = isolate_root(odd_fn, betas, od, s.root_tolerance, N, problem.q(), "odd");

  TongueRecord rec;
  rec.N = N;
  rec.q = problem.q();
  rec.beta_even = re.beta;
  rec.beta_odd = ro.beta;
  rec.signed_length = re.beta - ro.beta;
  rec.beta_minus = std::min(re.beta, ro.beta);
  rec.beta_plus = std::max(re.beta, ro.beta);
  rec.length = rec.beta_plus - rec.beta_minus;
  rec.bracket_width = std::max(re.width, ro.width);
  rec.half_steps = steps;
  const double sigma = periodic ? 2.0 : -2.0;
  const Mat2 me = half_matrix(re.beta);
  const Mat2 mo = half_matrix(ro.beta);
  rec.residual_even = std::abs(half_discriminant(me) - sigma);
  rec.residual_odd = std::abs(half_discriminant(mo) - sigma);
  rec.det_error = std::max(std::abs(me.det() - 1.0), std::abs(mo.det() - 1.0));
  return rec;
}

double boundary0(const NumericProblem& problem) {
  const auto& s = problem.settings();
  const double om = problem.omega2();
  const double lo = -problem.coupling_bound() - 1.0;
  const double hi = problem.coupling_bound() + 4.0 * om;
  const double half = 0.5 * problem.period();
  const unsigned steps = select_steps(problem, 0.0);
  auto fn = [&](double beta) {
    return propagate(problem, beta, half, steps).fundamental.a21;
  };
  const double dx = 0.02 * std::min(1.0, om);
  double a = lo;
  double fa = fn(a);
  for (double b = lo + dx; b <= hi; b += dx) {
    const double fb = fn(b);
    if (fb == 0.0) return b;
    if ((fa < 0.0) != (fb < 0.0)) {
      for (int it = 0; it < 300; ++it) {
        if (b - a <= s.root_tolerance * std::max(1.0, std::abs(a))) break;
        const double m = 0.5 * (a + b);
        if (m == a || m == b) break;
        const double fm = fn(m);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      return 0.5 * (a + b);
    }
    a = b;
    fa = fb;
  }
  throw BracketNotFound("no periodic eigenvalue below " + std::to_string(hi));
}

}  // namespace hilltongue
