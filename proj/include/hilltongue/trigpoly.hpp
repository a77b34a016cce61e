#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hilltongue/rational.hpp"

namespace hilltongue {

/// Even pi-periodic cosine polynomial  sum_k c_k cos(2 k tau)  with exact
/// coefficients.
///
/// The stored coefficient vector never ends in a zero, so the zero polynomial
/// has an empty support and degree() == 0. Values are immutable once built
/// apart from the compound-assignment operators.
class CosPoly {
 public:
  CosPoly() = default;
  explicit CosPoly(std::vector<Rational> coeffs);

  static CosPoly constant(const Rational& c);
  /// c * cos(2 k tau)
  static CosPoly harmonic(std::size_t k, const Rational& c = 1);

  bool is_zero() const { return coeffs_.empty(); }
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

  /// Coefficient of cos(2 k tau); zero beyond the degree.
  const Rational& operator[](std::size_t k) const;
  std::span<const Rational> coeffs() const { return coeffs_; }

  /// Value at tau = 0, i.e. the coefficient sum.
  Rational at_zero() const;
  double evaluate(double tau) const;
  /// Largest |c_k|; zero for the zero polynomial.
  Rational max_abs() const;

  CosPoly& operator+=(const CosPoly& other);
  CosPoly& operator-=(const CosPoly& other);
  CosPoly& operator*=(const Rational& scale);

  friend CosPoly operator+(CosPoly a, const CosPoly& b) { return a += b; }
  friend CosPoly operator-(CosPoly a, const CosPoly& b) { return a -= b; }
  friend CosPoly operator*(CosPoly a, const Rational& s) { return a *= s; }
  friend CosPoly operator*(const Rational& s, CosPoly a) { return a *= s; }
  friend CosPoly operator-(CosPoly a) { return a *= Rational(-1); }
  friend CosPoly operator*(const CosPoly& a, const CosPoly& b);
  friend bool operator==(const CosPoly& a, const CosPoly& b) = default;

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

CosPoly add(const CosPoly& a, const CosPoly& b);

/// Product-to-sum: cos(2i)cos(2j) = (cos(2(i+j)) + cos(2|i-j|)) / 2.
CosPoly mul(const CosPoly& a, const CosPoly& b);

/// d^2/dtau^2: the k-th coefficient picks up -4 k^2.
CosPoly second_derivative(const CosPoly& a);

/// P_{2n}[a], the cos(2 n tau) coefficient (the constant term for n = 0).
Rational project(const CosPoly& a, std::size_t n);

/// Unique w with w'' + 4 w = rhs, w(0) = 0, w'(0) = 0.
/// Throws ResonantRHS when rhs carries a cos(2 tau) term.
CosPoly solve_harmonic(const CosPoly& rhs);

/// Truncated power series in q whose coefficients are cosine polynomials;
/// index n holds the q^n coefficient.
using CosSeries = std::vector<CosPoly>;

CosSeries series_mul(const CosSeries& a, const CosSeries& b, std::size_t order);

}  // namespace hilltongue
