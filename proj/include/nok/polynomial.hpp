#ifndef NOK_POLYNOMIAL_HPP
#define NOK_POLYNOMIAL_HPP

/*
 * Laurent polynomials over the exact rationals in variables u1..un.
 *
 * Terms live in a map keyed by exponent vector (plain lexicographic key
 * order); the map never holds a zero coefficient, so structural equality of
 * the containers is equality in the ring.  The text format is
 *
 *     3/2*u1^2*u2^-1 - u1 + 4
 *
 * with variables u1..un (aliases u, v, w for u1, u2, u3 accepted on input).
 * parse() and str() round-trip bit-exactly: parse(p.str()) == p.
 */

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nok/order.hpp"
#include "nok/rational.hpp"

namespace nok {

class Polynomial {
 public:
  using TermMap = std::map<Exponent, Rational>;

  explicit Polynomial(int nvars);

  static Polynomial zero(int nvars) { return Polynomial(nvars); }
  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial monomial(int nvars, const Exponent& e, const Rational& c);

  // Throws input_error with a column position on malformed text, and when a
  // variable index exceeds nvars.
  static Polynomial parse(std::string_view text, int nvars);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  // Adds c * u^e, merging and pruning so the zero-free invariant holds.
  void add_term(const Exponent& e, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(unsigned long long k) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  // Exact evaluation; throws dimension_error on a wrong-length point and
  // domain_error when a negative exponent meets a zero coordinate.
  Rational evaluate(const std::vector<Rational>& x) const;

  // Partial derivative with respect to u_{var+1} (0-based index).
  Polynomial derivative(int var) const;

  // Canonical form: terms in descending lexicographic exponent order,
  // coefficients compact ("/1" omitted), unit coefficients elided.
  std::string str() const;

 private:
  int nvars_;
  TermMap terms_;
};

}  // namespace nok

#endif
