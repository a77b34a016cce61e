#pragma once

#include <map>
#include <vector>

#include "hilltongue/rational.hpp"
#include "hilltongue/trigpoly.hpp"

namespace hilltongue {

/// Sparse Taylor coefficients {k -> c_k} of a polynomial nonlinearity.
using TaylorCoeffs = std::map<unsigned, Rational>;

/// Coefficient k of `c`, zero when absent.
Rational coefficient(const TaylorCoeffs& c, unsigned k);

/// Highest k with a nonzero coefficient (0 when all vanish).
unsigned top_degree(const TaylorCoeffs& c);

/// Restoring-force nonlinearity f(x) = sum_{k>=2} alpha_k x^k of
/// u'' + 4u + f(u) = 0, truncated for series work at order M.
struct OscillatorSpec {
  TaylorCoeffs alpha;
  unsigned order = 1;

  /// Throws ValidationError for alpha entries with k < 2 or order < 1.
  void validate() const;
};

/// Poincare-Lindstedt data of the rescaled oscillator
///   Omega(q) U'' + 4 U + sum_n alpha_{n+1} q^n U^{n+1} = 0,  U(0) = 1,
/// with q U = sum_n q^n u_n(tau) and Omega = omega^2 = sum_n Omega_n q^n.
///
/// All sequences are index-aligned: u[n] is u_n (u[0] is the zero
/// polynomial), omega2[n] is Omega_n and kappa[n] the q^n coefficient of
/// 1/Omega, for n = 0..order.
struct LindstedtExpansion {
  unsigned order = 0;
  TaylorCoeffs alpha;
  std::vector<CosPoly> u;
  RationalSeries omega2;
  RationalSeries kappa;
};

/// Runs the secular-term elimination to spec.order. Omega_n is fixed by
/// the solvability condition at level n + 1, so the recursion internally
/// reaches level order + 1 without storing u_{order+1}.
LindstedtExpansion expand(const OscillatorSpec& spec);

/// The source F_n of u_n'' + 4 u_n = F_n rebuilt from the stored expansion
/// (1 <= n <= order), including the Omega_{n-1} term.
CosPoly source_term(const LindstedtExpansion& lin, unsigned n);

/// Leading harmonics A_n = P_{2n}[u_n] / 2 from their own convolution
/// recursion 4(n^2 - 1) A_n = sum_m alpha_m [psi^m]_n, A_1 = 1/2.
/// Index-aligned (result[0] = 0), n = 1..order.
RationalSeries diagonal_A(const OscillatorSpec& spec);

/// The cos(2K tau) Fourier coefficient of p: (2/pi) int p cos(2K tau) over
/// one period for K >= 1 and the mean for K = 0.
Rational secular_integral(const CosPoly& p, unsigned K);

}  // namespace hilltongue
