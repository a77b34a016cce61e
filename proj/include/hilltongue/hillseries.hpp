#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hilltongue/lindstedt.hpp"
#include "hilltongue/rational.hpp"
#include "hilltongue/trigpoly.hpp"

namespace hilltongue {

/// Parametric coupling g(x) = sum_{k>=1} gamma_k x^k of the Hill equation
/// z'' + (beta + g(u)) z = 0.
struct CouplingSpec {
  TaylorCoeffs gamma;
  unsigned order = 1;

  /// Throws ValidationError for a gamma_0 entry or order < 1.
  void validate() const;
};

/// Rescaled Hill coefficient G(tau, q) = g(q U) / Omega = sum_n q^n G_n(tau).
///
/// G[n] is G_n for n = 1..order (G[0] is zero). omega2 carries the Omega_n of
/// the oscillator that produced the series; a handcrafted series uses the
/// unit series so that B_n reduces to Lambda_n plus the N^2 term.
struct HillCoefficientSeries {
  unsigned order = 0;
  std::vector<CosPoly> G;
  RationalSeries omega2;

  /// Wraps raw coefficients G_1..G_M (index-aligned, G[0] ignored) with a
  /// unit Omega series.
  static HillCoefficientSeries from_coefficients(std::vector<CosPoly> G);
};

enum class Parity { Plus, Minus };

/// Perturbation data of one eigenvalue branch lambda_N^{+/-}(q).
///
/// Lambda[n], B[n] for n = 0..order with Lambda[0] = B[0] = N^2. The Fourier
/// table z(k, n) is stored densely for |k| <= kmax, 0 <= n <= order.
class EigenBranch {
 public:
  EigenBranch(unsigned N, Parity parity, unsigned order, unsigned kmax);

  unsigned N() const { return N_; }
  Parity parity() const { return parity_; }
  unsigned order() const { return order_; }
  int kmax() const { return kmax_; }

  /// z_{k,n}; zero outside the stored window.
  const Rational& z(int k, unsigned n) const;
  Rational& z_mut(int k, unsigned n);

  RationalSeries Lambda;
  RationalSeries B;

 private:
  unsigned N_;
  Parity parity_;
  unsigned order_;
  int kmax_;
  std::vector<Rational> table_;
};

/// g_n from the truncated composition g(q U) and G_n = sum_j g_j kappa_{n-j}.
HillCoefficientSeries compose_G(const CouplingSpec& coupling,
                                const LindstedtExpansion& lin);

/// Composed but un-normalized coefficients g_n of g(q U(tau, q)),
/// index-aligned, n = 0..order.
std::vector<CosPoly> compose_g(const CouplingSpec& coupling,
                               const LindstedtExpansion& lin);

/// Level-by-level recursion for z_{k,n} and Lambda_n, then
/// B_n = sum_j Lambda_j Omega_{n-j}. N = 0 is only defined for Parity::Plus.
EigenBranch eigen_series(const HillCoefficientSeries& G, unsigned N, Parity parity);

/// C_N from the diagonal G_{s,s} alone (index-aligned, diagonal[s] = G_{s,s}).
Rational leading_coefficient_fast(const RationalSeries& diagonal, unsigned N);

/// G_{n,n} for n = 1..order via Psi(q) = g(psi(q)) and the A_n recursion.
RationalSeries diagonal_G(const OscillatorSpec& osc, const CouplingSpec& coupling);

/// Diagonal G_{n,n} read off an existing series.
RationalSeries diagonal_of(const HillCoefficientSeries& G);

struct MathieuCheck {
  bool generalized_mathieu = true;
  /// First offending (n, k): G_n carries cos(2k tau) with k > n.
  unsigned n = 0;
  unsigned k = 0;
  /// Tongue k is then predicted to open at order exactly n.
  std::optional<unsigned> predicted_order;
};

MathieuCheck check_generalized_mathieu(const HillCoefficientSeries& G);

/// Support predicate: (k, n) lies in one of the two forward cones
/// |k - N| <= 2n or |k + N| <= 2n.
bool in_support_cone(int k, unsigned n, unsigned N);

}  // namespace hilltongue
