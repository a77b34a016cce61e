#include "hilltongue/rational.hpp"

#include <atomic>
#include <cctype>
#include <cstdio>
#include <limits>

#include "hilltongue/errors.hpp"

namespace hilltongue {

namespace {

std::atomic<std::size_t> g_bit_limit{1'000'000};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational ratio(long p, long q) {
  if (q == 0) throw ValidationError("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  const std::string_view num = trim(s.substr(0, slash));
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : trim(s.substr(slash + 1));
  if (!is_integer_literal(num) || !is_integer_literal(den)) {
    throw ValidationError("malformed rational '" + std::string(text) + "'");
  }
  auto strip_plus = [](std::string_view v) {
    return std::string(v.front() == '+' ? v.substr(1) : v);
  };
  mpz_class p(strip_plus(num), 10);
  mpz_class q(strip_plus(den), 10);
  if (q == 0) {
    throw ValidationError("zero denominator in '" + std::string(text) + "'");
  }
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

double to_double(const Rational& r) { return r.get_d(); }

std::string to_decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_decimal(const Rational& r) { return to_decimal(r.get_d()); }

std::size_t bit_size(const Rational& r) {
  const std::size_t n = mpz_sizeinbase(r.get_num_mpz_t(), 2);
  const std::size_t d = mpz_sizeinbase(r.get_den_mpz_t(), 2);
  return n > d ? n : d;
}

std::size_t coefficient_bit_limit() { return g_bit_limit.load(); }

void set_coefficient_bit_limit(std::size_t bits) { g_bit_limit.store(bits); }

void check_coefficient(const Rational& r) {
  const std::size_t limit = g_bit_limit.load(std::memory_order_relaxed);
  if (bit_size(r) > limit) {
    throw CoefficientOverflow("rational coefficient exceeds " +
                              std::to_string(limit) + " bits");
  }
}

int sign(const Rational& r) { return sgn(r); }

Rational binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational out = 1;
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

RationalSeries series_mul(const RationalSeries& a, const RationalSeries& b,
                          std::size_t order) {
  RationalSeries out(order + 1);
  for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  for (const auto& c : out) check_coefficient(c);
  return out;
}

RationalSeries series_reciprocal(const RationalSeries& a, std::size_t order) {
  if (a.empty() || a[0] == 0) {
    throw ValidationError("series reciprocal needs a nonzero constant term");
  }
  RationalSeries out(order + 1);
  out[0] = 1 / a[0];
  for (std::size_t n = 1; n <= order; ++n) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= n && j < a.size(); ++j) acc += a[j] * out[n - j];
    out[n] = -acc / a[0];
    check_coefficient(out[n]);
  }
  return out;
}

}  // namespace hilltongue
