#ifndef NOK_RATIONAL_HPP
#define NOK_RATIONAL_HPP

/*
 * Exact rational scalar.  Thin value wrapper around GMP's mpq_class; every
 * instance is kept in canonical form (reduced fraction, denominator > 0).
 * Arbitrary precision is required: coefficient growth under repeated products
 * of section spaces overflows fixed-width integers almost immediately.
 */

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "nok/errors.hpp"

namespace nok {

class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long long n) : v_(static_cast<long>(n)) {}  // NOLINT: implicit by design
  Rational(long long n, long long d);
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Accepts "p", "p/q", and decimal literals like "-0.125".
  static Rational from_string(std::string_view s);

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);  // throws domain_error on zero divisor

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational abs() const;
  Rational reciprocal() const;  // throws domain_error on zero

  // Largest integer <= value, as a machine integer; throws domain_error if it
  // does not fit.  Used only for desk-scale bounding boxes.
  long long floor_ll() const;
  long long ceil_ll() const;

  // Exact only when the value is an integer fitting in long long.
  bool is_integer() const;
  long long to_ll() const;

  double to_double() const { return v_.get_d(); }

  // Canonical text form "p/q", q >= 1 always present, e.g. "3/1", "-3/2".
  std::string str() const;
  // Same but "/1" omitted: "3", "-3/2".
  std::string str_compact() const;

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace nok

#endif
