#include "nok/rational.hpp"

#include <cctype>
#include <ostream>

namespace nok {

Rational::Rational(long long n, long long d) {
  if (d == 0) throw domain_error("rational with zero denominator");
  v_ = mpq_class(static_cast<long>(n), static_cast<long>(d));
  v_.canonicalize();
}

Rational Rational::from_string(std::string_view s) {
  // Strip surrounding whitespace.
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  s = s.substr(b, e - b);
  if (s.empty()) throw input_error("empty rational literal");

  const std::string text(s);
  const auto valid = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    size_t i = 0;
    if (allow_sign && (t[0] == '+' || t[0] == '-')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };

  const size_t slash = text.find('/');
  const size_t dot = text.find('.');
  if (slash != std::string::npos && dot != std::string::npos)
    throw input_error("rational literal mixes '/' and '.': " + text);

  if (slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!valid(num, true) || !valid(den, false))
      throw input_error("malformed rational literal: " + text);
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw input_error("malformed rational literal: " + text);
    if (q.get_den() == 0) throw input_error("rational with zero denominator: " + text);
    q.canonicalize();
    Rational r;
    r.v_ = q;
    return r;
  }

  if (dot != std::string::npos) {
    // Decimal literal: digits '.' digits, exact base-10 conversion.
    std::string intpart = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    bool neg = false;
    if (!intpart.empty() && (intpart[0] == '+' || intpart[0] == '-')) {
      neg = intpart[0] == '-';
      intpart = intpart.substr(1);
    }
    if (intpart.empty() && frac.empty())
      throw input_error("malformed rational literal: " + text);
    if ((!intpart.empty() && !valid(intpart, false)) || (!frac.empty() && !valid(frac, false)))
      throw input_error("malformed rational literal: " + text);
    mpz_class digits(intpart.empty() ? std::string("0") : intpart);
    mpz_class den = 1;
    for (char c : frac) {
      digits = digits * 10 + (c - '0');
      den *= 10;
    }
    mpq_class q(digits, den);
    q.canonicalize();
    if (neg) q = -q;
    Rational r;
    r.v_ = q;
    return r;
  }

  if (!valid(text, true)) throw input_error("malformed rational literal: " + text);
  Rational r;
  r.v_ = mpq_class(mpz_class(text));
  return r;
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw domain_error("division by zero rational");
  v_ /= o.v_;
  return *this;
}

Rational Rational::abs() const {
  Rational r;
  r.v_ = ::abs(v_);
  return r;
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw domain_error("reciprocal of zero");
  Rational r;
  r.v_ = 1 / v_;
  return r;
}

long long Rational::floor_ll() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw domain_error("floor does not fit machine integer");
  return q.get_si();
}

long long Rational::ceil_ll() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw domain_error("ceil does not fit machine integer");
  return q.get_si();
}

bool Rational::is_integer() const { return v_.get_den() == 1; }

long long Rational::to_ll() const {
  if (!is_integer()) throw domain_error("not an integer: " + str());
  if (!v_.get_num().fits_slong_p()) throw domain_error("integer does not fit machine word");
  return v_.get_num().get_si();
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::str_compact() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace nok
