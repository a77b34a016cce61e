#include "hilltongue/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "hilltongue/errors.hpp"

namespace hilltongue {

namespace {

const Rational& zero_rational() {
  static const Rational z = 0;
  return z;
}

}  // namespace

CosPoly::CosPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

CosPoly CosPoly::constant(const Rational& c) { return CosPoly({c}); }

CosPoly CosPoly::harmonic(std::size_t k, const Rational& c) {
  std::vector<Rational> v(k + 1);
  v[k] = c;
  return CosPoly(std::move(v));
}

void CosPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Rational& CosPoly::operator[](std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : zero_rational();
}

Rational CosPoly::at_zero() const {
  Rational s = 0;
  for (const auto& c : coeffs_) s += c;
  return s;
}

double CosPoly::evaluate(double tau) const {
  double s = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    s += coeffs_[k].get_d() * std::cos(2.0 * static_cast<double>(k) * tau);
  }
  return s;
}

Rational CosPoly::max_abs() const {
  Rational m = 0;
  for (const auto& c : coeffs_) {
    const Rational a = abs(c);
    if (a > m) m = a;
  }
  return m;
}

CosPoly& CosPoly::operator+=(const CosPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) {
    coeffs_[k] += other.coeffs_[k];
    check_coefficient(coeffs_[k]);
  }
  trim();
  return *this;
}

CosPoly& CosPoly::operator-=(const CosPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) {
    coeffs_[k] -= other.coeffs_[k];
    check_coefficient(coeffs_[k]);
  }
  trim();
  return *this;
}

CosPoly& CosPoly::operator*=(const Rational& scale) {
  if (scale == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) {
    c *= scale;
    check_coefficient(c);
  }
  return *this;
}

CosPoly operator*(const CosPoly& a, const CosPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const std::size_t da = a.degree();
  const std::size_t db = b.degree();
  std::vector<Rational> out(da + db + 1);
  for (std::size_t i = 0; i <= da; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      if (b.coeffs_[j] == 0) continue;
      Rational half = a.coeffs_[i] * b.coeffs_[j];
      half /= 2;
      out[i + j] += half;
      out[i > j ? i - j : j - i] += half;
    }
  }
  for (const auto& c : out) check_coefficient(c);
  return CosPoly(std::move(out));
}

CosPoly add(const CosPoly& a, const CosPoly& b) { return a + b; }

CosPoly mul(const CosPoly& a, const CosPoly& b) { return a * b; }

CosPoly second_derivative(const CosPoly& a) {
  std::vector<Rational> out(a.coeffs().begin(), a.coeffs().end());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] *= -4 * static_cast<long>(k * k);
  }
  return CosPoly(std::move(out));
}

Rational project(const CosPoly& a, std::size_t n) { return a[n]; }

CosPoly solve_harmonic(const CosPoly& rhs) {
  if (rhs[1] != 0) {
    throw ResonantRHS("right-hand side has a resonant cos(2 tau) term " +
                      to_string(rhs[1]));
  }
  std::vector<Rational> w(std::max<std::size_t>(rhs.degree() + 1, 2));
  Rational sum = 0;
  for (std::size_t k = 0; k <= rhs.degree(); ++k) {
    if (k == 1 || rhs[k] == 0) continue;
    const long kk = static_cast<long>(k * k);
    w[k] = rhs[k] / Rational(4 - 4 * kk);
    sum += w[k];
  }
  // Homogeneous cos(2 tau) term enforces w(0) = 0; w'(0) = 0 holds for any
  // cosine sum.
  w[1] = -sum;
  return CosPoly(std::move(w));
}

CosSeries series_mul(const CosSeries& a, const CosSeries& b, std::size_t order) {
  CosSeries out(order + 1);
  for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

}  // namespace hilltongue
