#pragma once

#include <vector>

#include "hilltongue/lindstedt.hpp"

namespace hilltongue {

/// Dense double-precision polynomial, c[k] multiplying x^k.
struct Polynomial {
  std::vector<double> c;

  static Polynomial from_taylor(const TaylorCoeffs& coeffs);
  double operator()(double x) const;
  unsigned degree() const;
};

struct IntegratorSettings {
  unsigned taylor_order = 24;
  /// Fixed-step counts per half period are powers of two in [min, max].
  unsigned min_steps = 16;
  unsigned max_steps = 4096;
  /// Step doubling stops once the half-period matrix moves less than this.
  double step_tolerance = 1e-12;
  double quadrature_tolerance = 1e-14;
  /// Bisection stops when the bracket is narrower than this (times max(1,|beta|)).
  double root_tolerance = 1e-13;
  unsigned scan_points = 64;
  /// Window half-width factor around N^2 Omega.
  double window_scale = 0.75;
  /// Forces a fixed step count instead of Richardson selection when nonzero.
  unsigned forced_steps = 0;
};

/// One instance of the coupled pair z'' + (beta + g(u)) z = 0,
/// u'' + 4u + f(u) = 0, u(0) = q, u'(0) = 0, at a fixed amplitude q.
/// The period is computed once at construction; the object is immutable.
class NumericProblem {
 public:
  NumericProblem(Polynomial f, Polynomial g, double q, IntegratorSettings settings = {});
  NumericProblem(const TaylorCoeffs& alpha, const TaylorCoeffs& gamma, double q,
                 IntegratorSettings settings = {});

  const Polynomial& f() const { return f_; }
  const Polynomial& g() const { return g_; }
  double q() const { return q_; }
  const IntegratorSettings& settings() const { return settings_; }

  /// V(x) = 2x^2 + int_0^x f.
  double potential(double x) const;
  double energy() const { return energy_; }
  double turning_point_low() const { return x_low_; }
  double turning_point_high() const { return x_high_; }
  double period() const { return period_; }
  /// (pi / T)^2, the squared rescaled frequency.
  double omega2() const;
  /// max |g(x)| over the orbit's range.
  double coupling_bound() const;

  NumericProblem with_settings(IntegratorSettings settings) const;

 private:
  friend double period(const NumericProblem& problem);

  Polynomial f_;
  Polynomial g_;
  double q_;
  IntegratorSettings settings_;
  double energy_ = 0.0;
  double x_low_ = 0.0;
  double x_high_ = 0.0;
  double period_ = 0.0;
};

/// Energy quadrature T = 2 int dx / sqrt(2(E - V)) between the turning points,
/// with x = mid + half-width sin(theta) and Gauss-Legendre in theta.
double period(const NumericProblem& problem);

/// Independent period: integrate the oscillator until u' returns to zero at
/// the far turning point and double the elapsed time.
double period_return_map(const NumericProblem& problem);

struct Mat2 {
  double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;
  double det() const { return a11 * a22 - a12 * a21; }
  double trace() const { return a11 + a22; }
};

/// Fundamental matrix [[z1, z2], [z1', z2']] of the Hill equation at t_end,
/// started from the identity, with the oscillator state carried along.
struct Propagation {
  Mat2 fundamental;
  double u = 0.0;
  double up = 0.0;
  /// max |V(u) + u'^2/2 - E| / E over the step endpoints.
  double energy_drift = 0.0;
};

Propagation propagate(const NumericProblem& problem, double beta, double t_end,
                      unsigned steps);

/// Smallest power-of-two step count per half period whose half-period matrix
/// agrees with the doubled count to settings.step_tolerance.
unsigned select_steps(const NumericProblem& problem, double beta);

/// Monodromy over a full period T(q).
Mat2 monodromy(const NumericProblem& problem, double beta);
Mat2 monodromy(const NumericProblem& problem, double beta, unsigned half_steps);

/// Trace of the monodromy matrix.
double discriminant(const NumericProblem& problem, double beta);

struct FloquetResult {
  double beta = 0.0;
  double discriminant = 0.0;
  bool stable = false;
};

FloquetResult floquet(const NumericProblem& problem, double beta);

struct BetaWindow {
  double lo = 0.0;
  double hi = 0.0;
};

/// Default scan window for tongue N: centered at N^2 Omega with half-width
/// window_scale (2N - 1) min(1, Omega).
BetaWindow default_window(const NumericProblem& problem, unsigned N);

/// Endpoints of the N-th tongue. beta_minus <= beta_plus are the sorted
/// endpoints; beta_even / beta_odd carry the eigenfunction parity, matching
/// the +/- branches of the series, and signed_length = beta_even - beta_odd.
struct TongueRecord {
  unsigned N = 0;
  double q = 0.0;
  double beta_minus = 0.0;
  double beta_plus = 0.0;
  double length = 0.0;
  double beta_even = 0.0;
  double beta_odd = 0.0;
  double signed_length = 0.0;
  /// |Delta(beta) - sigma| at the two endpoints, sigma = 2 (-1)^N.
  double residual_even = 0.0;
  double residual_odd = 0.0;
  double bracket_width = 0.0;
  /// Largest |det - 1| seen at the refined endpoints.
  double det_error = 0.0;
  unsigned half_steps = 0;
};

/// Lengths below this are reported as numerically zero.
inline constexpr double kNumericallyZero = 1e-10;

TongueRecord tongue_boundaries(const NumericProblem& problem, unsigned N);
TongueRecord tongue_boundaries(const NumericProblem& problem, unsigned N,
                               BetaWindow window);

/// beta_0^+(q): the lowest periodic eigenvalue, scanned upward from below
/// -max|g| until the even-periodic condition changes sign.
double boundary0(const NumericProblem& problem);

}  // namespace hilltongue
