#ifndef NOK_VALUATION_HPP
#define NOK_VALUATION_HPP

/*
 * Discrete valuations on Laurent polynomials with values in Z^n.
 *
 * The valuation of f is the exponent of its minimal term under a fixed total
 * group order.  This satisfies
 *
 *     value(c*f)  = value(f)            for scalars c != 0,
 *     value(f+g) >= min(value f, value g)   when f+g != 0,
 *     value(f*g)  = value(f) + value(g),
 *
 * and has one-dimensional leaves: if value(f) = value(g) there is a scalar c
 * with g - c*f = 0 or value(g - c*f) > value(g).  Consequently the number of
 * distinct values attained on a finite-dimensional subspace equals its
 * dimension, which value_image computes by exact triangularization pivoting
 * on minimal terms.
 *
 * The graded variant tracks a homogeneity level k and measures f against the
 * k-th power of a fixed reference element h: graded value (k, value(f) -
 * k*value(h)).
 */

#include <string>
#include <vector>

#include "nok/linalg.hpp"
#include "nok/order.hpp"
#include "nok/polynomial.hpp"

namespace nok {

struct GradedValue {
  long long level = 0;
  Exponent value;

  friend bool operator==(const GradedValue& a, const GradedValue& b) {
    return a.level == b.level && a.value == b.value;
  }
  friend bool operator<(const GradedValue& a, const GradedValue& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.value < b.value;  // storage order only
  }
};

std::string graded_value_str(const GradedValue& g);  // "(k; a1, a2, ...)"

class Valuation {
 public:
  // h is the reference element for the graded variant; must be nonzero.
  Valuation(GroupOrder order, Polynomial h);

  int dim() const { return order_.dim(); }
  int nvars() const { return h_.nvars(); }
  const GroupOrder& order() const { return order_; }
  const Polynomial& reference() const { return h_; }
  const Exponent& reference_value() const { return vh_; }

  // Minimal exponent of f under the order; throws undefined_value_error on 0.
  Exponent value(const Polynomial& f) const;

  // Coefficient of the minimal term.
  Rational leading_coeff(const Polynomial& f) const;

  GradedValue graded_value(const Polynomial& f, long long k) const;

  // Distinct values attained on span(V), sorted ascending by the order.
  // |result| = dim span(V); members may be dependent, but a zero member is
  // rejected with undefined_value_error.  Empty list gives the empty set.
  std::vector<Exponent> value_image(const std::vector<Polynomial>& V) const;

  // Triangular basis of span(V): nonzero elements with pairwise distinct
  // values, sorted ascending by value.  Deterministic for fixed input order.
  struct Triangular {
    std::vector<Polynomial> basis;
    std::vector<Exponent> values;  // parallel to basis
  };
  Triangular triangularize(const std::vector<Polynomial>& V) const;

  // Reduce f against the triangular set; returns the remainder (zero iff f
  // lies in the span).
  Polynomial reduce(Polynomial f, const Triangular& tri) const;

  // Certifies the one-dimensional-leaves property pairwise on V.  On failure
  // the witness holds the offending pair of input indices.  Zero members are
  // rejected with input_error.
  struct LeafCheck {
    bool ok = true;
    size_t first = 0, second = 0;  // witness pair when !ok
    explicit operator bool() const { return ok; }
  };
  LeafCheck check_one_dim_leaves(const std::vector<Polynomial>& V) const;

  // Sublattice of Z^n generated by the observed values; surjectivity onto
  // Z^n is not enforced, only reported.
  linalg::LatticeInfo observed_sublattice(const std::vector<Exponent>& values) const;

 private:
  GroupOrder order_;
  Polynomial h_;
  Exponent vh_;
};

}  // namespace nok

#endif
