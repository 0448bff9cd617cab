#include "nok/order.hpp"

#include <numeric>
#include <sstream>

namespace nok {

std::string exponent_str(const Exponent& a) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) os << ", ";
    os << a[i];
  }
  os << ")";
  return os.str();
}

static void require_same_dim(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size())
    throw dimension_error("exponent dimension mismatch: " + exponent_str(a) + " vs " +
                          exponent_str(b));
}

Exponent exp_add(const Exponent& a, const Exponent& b) {
  require_same_dim(a, b);
  Exponent r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exponent exp_sub(const Exponent& a, const Exponent& b) {
  require_same_dim(a, b);
  Exponent r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Exponent exp_scale(const Exponent& a, long long k) {
  Exponent r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * k;
  return r;
}

GroupOrder GroupOrder::lex(int n) {
  if (n < 1) throw config_error("order dimension must be >= 1");
  return GroupOrder(Kind::lex, n, {});
}

GroupOrder GroupOrder::grlex(int n) {
  if (n < 1) throw config_error("order dimension must be >= 1");
  return GroupOrder(Kind::grlex, n, {});
}

GroupOrder GroupOrder::weighted(std::vector<long long> w) {
  if (w.empty()) throw config_error("weighted order needs a nonempty covector");
  const int n = static_cast<int>(w.size());  // before the move below
  return GroupOrder(Kind::weighted, n, std::move(w));
}

static Cmp lex_cmp(const Exponent& a, const Exponent& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return Cmp::less;
    if (a[i] > b[i]) return Cmp::greater;
  }
  return Cmp::equal;
}

Cmp GroupOrder::compare(const Exponent& a, const Exponent& b) const {
  require_same_dim(a, b);
  if (static_cast<int>(a.size()) != n_)
    throw dimension_error("exponent dimension " + std::to_string(a.size()) +
                          " does not match order dimension " + std::to_string(n_));
  switch (kind_) {
    case Kind::lex:
      return lex_cmp(a, b);
    case Kind::grlex: {
      long long ta = std::accumulate(a.begin(), a.end(), 0LL);
      long long tb = std::accumulate(b.begin(), b.end(), 0LL);
      if (ta < tb) return Cmp::less;
      if (ta > tb) return Cmp::greater;
      return lex_cmp(a, b);
    }
    case Kind::weighted: {
      // Desk-scale exponents; 128-bit accumulation guards the dot product.
      __int128 wa = 0, wb = 0;
      for (size_t i = 0; i < a.size(); ++i) {
        wa += static_cast<__int128>(w_[i]) * a[i];
        wb += static_cast<__int128>(w_[i]) * b[i];
      }
      if (wa < wb) return Cmp::less;
      if (wa > wb) return Cmp::greater;
      return lex_cmp(a, b);
    }
  }
  throw error("unreachable order kind");
}

std::string GroupOrder::describe() const {
  switch (kind_) {
    case Kind::lex:
      return "lex";
    case Kind::grlex:
      return "grlex";
    case Kind::weighted: {
      std::ostringstream os;
      os << "weighted:";
      for (size_t i = 0; i < w_.size(); ++i) {
        if (i) os << ",";
        os << w_[i];
      }
      return os.str();
    }
  }
  return "?";
}

}  // namespace nok
