#include "nok/polynomial.hpp"

#include <cctype>
#include <sstream>

namespace nok {

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
  if (nvars < 1) throw config_error("polynomial needs at least one variable");
}

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::monomial(int nvars, const Exponent& e, const Rational& c) {
  Polynomial p(nvars);
  if (static_cast<int>(e.size()) != nvars)
    throw dimension_error("monomial exponent has wrong length");
  p.add_term(e, c);
  return p;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars_)
    throw dimension_error("term exponent has wrong length");
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Polynomial Polynomial::operator-() const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (nvars_ != o.nvars_) throw dimension_error("polynomial variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (nvars_ != o.nvars_) throw dimension_error("polynomial variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw dimension_error("polynomial variable count mismatch");
  Polynomial r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(exp_add(ea, eb), ca * cb);
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

Polynomial Polynomial::pow(unsigned long long k) const {
  Polynomial r = constant(nvars_, 1);
  Polynomial base = *this;
  while (k) {
    if (k & 1ULL) r = r * base;
    base = base * base;
    k >>= 1ULL;
  }
  return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != nvars_)
    throw dimension_error("evaluation point has wrong length");
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < nvars_; ++i) {
      long long k = e[i];
      if (k == 0) continue;
      if (x[i].is_zero()) {
        if (k < 0) throw domain_error("negative exponent at zero coordinate u" +
                                      std::to_string(i + 1));
        term = 0;
        break;
      }
      Rational base = k > 0 ? x[i] : x[i].reciprocal();
      unsigned long long n = static_cast<unsigned long long>(k > 0 ? k : -k);
      Rational powv = 1;
      while (n) {
        if (n & 1ULL) powv *= base;
        base *= base;
        n >>= 1ULL;
      }
      term *= powv;
    }
    acc += term;
  }
  return acc;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= nvars_) throw dimension_error("derivative variable out of range");
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    r.add_term(d, c * Rational(e[var]));
  }
  return r;
}

// ---------------------------------------------------------------- printing

static void print_monomial(std::ostream& os, const Exponent& e) {
  bool first = true;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!first) os << "*";
    first = false;
    os << "u" << (i + 1);
    if (e[i] != 1) os << "^" << e[i];
  }
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Descending key order puts the highest powers first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Exponent& e = it->first;
    const Rational& c = it->second;
    const bool neg = c.sign() < 0;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    const Rational mag = c.abs();
    bool constant_term = true;
    for (long long k : e)
      if (k != 0) constant_term = false;
    if (constant_term) {
      os << mag.str_compact();
    } else {
      if (mag != Rational(1)) os << mag.str_compact() << "*";
      print_monomial(os, e);
    }
  }
  return os.str();
}

// ----------------------------------------------------------------- parsing

namespace {

struct Cursor {
  std::string_view s;
  size_t i = 0;

  bool done() const { return i >= s.size(); }
  char peek() const { return s[i]; }
  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw input_error("polynomial parse error at column " + std::to_string(i + 1) + ": " +
                      what);
  }
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string read_digits(Cursor& c) {
  size_t b = c.i;
  while (!c.done() && is_digit(c.peek())) ++c.i;
  if (c.i == b) c.fail("expected digits");
  return std::string(c.s.substr(b, c.i - b));
}

// number := digits ['/' digits] | digits '.' digits
Rational read_number(Cursor& c) {
  std::string intpart = read_digits(c);
  if (!c.done() && c.peek() == '/') {
    ++c.i;
    std::string den = read_digits(c);
    if (den == "0") c.fail("zero denominator");
    return Rational::from_string(intpart + "/" + den);
  }
  if (!c.done() && c.peek() == '.') {
    ++c.i;
    std::string frac = read_digits(c);
    return Rational::from_string(intpart + "." + frac);
  }
  return Rational::from_string(intpart);
}

long long read_signed_int(Cursor& c) {
  bool neg = false;
  if (!c.done() && (c.peek() == '-' || c.peek() == '+')) {
    neg = c.peek() == '-';
    ++c.i;
  }
  std::string digits = read_digits(c);
  if (digits.size() > 12) c.fail("exponent too large");
  long long v = std::stoll(digits);
  return neg ? -v : v;
}

// var := 'u' digits | 'u' | 'v' | 'w'   (bare letters alias u1, u2, u3)
int read_var_index(Cursor& c, int nvars) {
  char v = c.peek();
  ++c.i;
  int idx;
  if (v == 'u') {
    if (!c.done() && is_digit(c.peek())) {
      std::string digits = read_digits(c);
      if (digits.size() > 6) c.fail("variable index too large");
      idx = std::stoi(digits);
      if (idx < 1) c.fail("variable index must be >= 1");
    } else {
      idx = 1;
    }
  } else if (v == 'v') {
    idx = 2;
  } else if (v == 'w') {
    idx = 3;
  } else {
    --c.i;
    c.fail("expected variable");
  }
  if (idx > nvars)
    c.fail("variable u" + std::to_string(idx) + " exceeds declared count " +
           std::to_string(nvars));
  return idx - 1;
}

// term := factor ('*' factor)*, factor := number | var ['^' int]
void read_term(Cursor& c, int nvars, bool negate, Polynomial& out) {
  Rational coeff = negate ? Rational(-1) : Rational(1);
  Exponent e(nvars, 0);
  bool any = false;
  for (;;) {
    c.skip_ws();
    if (c.done()) break;
    char ch = c.peek();
    if (is_digit(ch)) {
      coeff *= read_number(c);
      any = true;
    } else if (ch == 'u' || ch == 'v' || ch == 'w') {
      int idx = read_var_index(c, nvars);
      long long k = 1;
      if (!c.done() && c.peek() == '^') {
        ++c.i;
        k = read_signed_int(c);
      }
      e[idx] += k;
      any = true;
    } else {
      c.fail("expected a number or variable");
    }
    c.skip_ws();
    if (!c.done() && c.peek() == '*') {
      ++c.i;
      c.skip_ws();
      if (c.done()) c.fail("dangling '*'");
      continue;
    }
    break;
  }
  if (!any) c.fail("empty term");
  out.add_term(e, coeff);
}

}  // namespace

Polynomial Polynomial::parse(std::string_view text, int nvars) {
  Polynomial p(nvars);
  Cursor c{text};
  c.skip_ws();
  if (c.done()) c.fail("empty polynomial");
  bool neg = false;
  if (c.peek() == '+' || c.peek() == '-') {
    neg = c.peek() == '-';
    ++c.i;
  }
  read_term(c, nvars, neg, p);
  for (;;) {
    c.skip_ws();
    if (c.done()) break;
    char ch = c.peek();
    if (ch != '+' && ch != '-') c.fail("expected '+' or '-'");
    ++c.i;
    c.skip_ws();
    read_term(c, nvars, ch == '-', p);
  }
  return p;
}

}  // namespace nok
