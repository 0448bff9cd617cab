#ifndef NOK_ORDER_HPP
#define NOK_ORDER_HPP

/*
 * Integer exponent vectors and total group orders on them.
 *
 * An Exponent is a point of Z^n with n fixed per problem instance; entries
 * may be negative (Laurent exponents).  A GroupOrder is a total order on Z^n
 * compatible with addition: a < b implies a + c < b + c for all c.  Three
 * kinds are provided: lexicographic, graded lexicographic, and weighted
 * (integer weight covector with lexicographic tie-break).
 */

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "nok/errors.hpp"

namespace nok {

using Exponent = std::vector<long long>;

std::string exponent_str(const Exponent& a);  // "(a1, a2, ...)"

Exponent exp_add(const Exponent& a, const Exponent& b);
Exponent exp_sub(const Exponent& a, const Exponent& b);
Exponent exp_scale(const Exponent& a, long long k);

enum class Cmp { less = -1, equal = 0, greater = 1 };

class GroupOrder {
 public:
  enum class Kind { lex, grlex, weighted };

  static GroupOrder lex(int n);
  static GroupOrder grlex(int n);
  // Weight covector w, ties broken lexicographically; dim(w) = n.
  static GroupOrder weighted(std::vector<long long> w);

  int dim() const { return n_; }
  Kind kind() const { return kind_; }
  const std::vector<long long>& weights() const { return w_; }

  // Total order; throws dimension_error when operand lengths differ from n.
  Cmp compare(const Exponent& a, const Exponent& b) const;

  bool less(const Exponent& a, const Exponent& b) const {
    return compare(a, b) == Cmp::less;
  }

  std::string describe() const;

 private:
  GroupOrder(Kind k, int n, std::vector<long long> w)
      : kind_(k), n_(n), w_(std::move(w)) {}

  Kind kind_;
  int n_;
  std::vector<long long> w_;
};

}  // namespace nok

#endif
