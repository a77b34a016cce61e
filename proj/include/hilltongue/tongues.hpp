#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hilltongue/floquet.hpp"
#include "hilltongue/hillseries.hpp"
#include "hilltongue/lindstedt.hpp"

namespace hilltongue {

/// f and g together, at a common truncation order.
struct ProblemSpec {
  OscillatorSpec osc;
  CouplingSpec coupling;

  unsigned order() const { return osc.order; }
  void validate() const;
};

ProblemSpec mathieu_spec(unsigned order);
/// f = alpha x^2, g = 2 gt alpha x.
ProblemSpec example1_spec(const Rational& alpha, const Rational& gt, unsigned order);
/// f = alpha x^3, g = 3 gt alpha x^2.
ProblemSpec example2_spec(const Rational& alpha, const Rational& gt, unsigned order);
/// f = alpha x^2 + alpha^2/18 x^3, g = n(n+1)/6 f'(x).
ProblemSpec example4_spec(const Rational& alpha, unsigned n, unsigned order);

/// Every exact series the analyses need, for N = 0..n_max.
struct SeriesTables {
  ProblemSpec spec;
  LindstedtExpansion lin;
  HillCoefficientSeries G;
  /// plus[N], minus[N]; minus[0] is a placeholder copy of plus[0].
  std::vector<EigenBranch> plus;
  std::vector<EigenBranch> minus;
  /// C[N] = Lambda_N^+(N) - Lambda_N^-(N) for N = 1..n_max (C[0] = 0).
  RationalSeries C;
};

/// Branches for distinct N are independent and computed in parallel.
SeriesTables compute_series(const ProblemSpec& spec, unsigned n_max);

/// sum_n B_n q^n in double precision.
double evaluate_branch(const EigenBranch& branch, double q);

NumericProblem numeric_problem(const ProblemSpec& spec, double q,
                               const IntegratorSettings& settings = {});

enum class Shape { Trumpet, Horn, Collapsed, Undetermined };

std::string to_string(Shape s);

struct ShapeVerdict {
  unsigned N = 0;
  Shape classification = Shape::Undetermined;
  /// First n >= 1 with B_n != 0 on each branch.
  std::optional<unsigned> order_plus;
  std::optional<unsigned> order_minus;
  int sign_plus = 0;
  int sign_minus = 0;
};

ShapeVerdict classify_shape(const EigenBranch& plus, const EigenBranch& minus);

/// Leading L_2 coefficient gamma1^2/8 - gamma1 alpha2/24 - gamma2/2.
Rational second_tongue_sign(const Rational& alpha2, const Rational& gamma1,
                            const Rational& gamma2);

struct OrderFit {
  bool collapsed = false;
  double slope = 0.0;
  double intercept = 0.0;
  /// exp(intercept), the |C_N| estimate.
  double coefficient = 0.0;
  std::size_t points = 0;
};

/// Least-squares line through (log q, log |L_N|) over records whose length
/// exceeds the numerically-zero floor. Needs at least four such points;
/// all-below-floor input returns collapsed = true.
OrderFit asymptotic_order(const std::vector<TongueRecord>& records);

struct CoexistenceReport {
  bool detected = false;
  std::optional<unsigned> n_ince;
  /// First nonzero order of g(q U).
  unsigned first_order = 0;
  Rational A;
  /// Coefficient of the quadratic term once Q = g(q U).
  Rational mu;
  /// b_n for n = 0..M.
  RationalSeries B;
  /// Harmonics k >= 1 left over at each order (index-aligned).
  std::vector<CosPoly> residual;
  Rational residual_norm;
};

/// Fits Omega Q'' + A Q + b(q) + mu Q^2 = 0 to Q = g(q U) order by order and
/// reports whether every remaining harmonic vanishes through the order.
CoexistenceReport coexistence_check(const OscillatorSpec& osc, const CouplingSpec& coupling,
                                    const LindstedtExpansion& lin);

/// (-1)^N alpha^N / (8^{N-1} ((N-1)!)^2) prod_{k<N} (2 gt - k(k+1)/6).
Rational example1_closed_form(const Rational& alpha, const Rational& gt, unsigned N);

/// (-1)^N / (((N-1)!)^2 8^{N-1}), the Mathieu leading coefficient.
Rational mathieu_closed_form(unsigned N);

/// -gamma_K 2^{1-K} binom(K, (K-N)/2) for K - N even, 0 otherwise.
Rational first_order_coefficient(const Rational& gammaK, unsigned K, unsigned N);

/// Verdicts for N = 1..K on f = alpha_{K+1} x^{K+1}, g = gamma_K x^K.
/// order = 0 picks K + 3.
std::vector<ShapeVerdict> trumpet_count_scenario(unsigned K, const Rational& alphaK1,
                                                 const Rational& gammaK,
                                                 unsigned order = 0);

}  // namespace hilltongue
