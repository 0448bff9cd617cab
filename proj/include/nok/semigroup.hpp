#ifndef NOK_SEMIGROUP_HPP
#define NOK_SEMIGROUP_HPP

/*
 * Graded section spaces and their value semigroups.
 *
 * E is a finite-dimensional space of Laurent polynomials (degree-one
 * sections in a fixed trivialization); E^d is spanned by d-fold products.
 * The level-d value set is
 *
 *     S_d = { value(f) - d*value(h) : f in E^d, f != 0 }  subset of Z^n,
 *
 * with |S_d| = dim E^d.  The full semigroup lives in N x Z^n as the union of
 * the graded pieces {d} x S_d and is closed under addition.
 */

#include <map>
#include <string>
#include <vector>

#include "nok/valuation.hpp"

namespace nok {

struct SectionSpace {
  long long level = 1;
  std::vector<Polynomial> basis;
};

// Validates: level >= 1, basis nonempty, elements nonzero with equal variable
// counts, linear independence certified by exact rank.
SectionSpace make_section_space(long long level, std::vector<Polynomial> basis);

// All d-fold products of the basis elements, one per multiset, enumerated in
// nondecreasing index order.  d = 0 gives the empty product {1}.
std::vector<Polynomial> level_products(const std::vector<Polynomial>& E, long long d);

// Triangular basis of E^d = span of d-fold products of the level-one basis.
// Deterministic: products are enumerated in nondecreasing index order and
// reduced with pivots kept sorted by the group order.  d = 0 gives the
// constants space.
SectionSpace level_space(const std::vector<Polynomial>& E, long long d, const Valuation& val);

// Values attained on the space, shifted to level coordinates; sorted
// ascending by the group order.
std::vector<Exponent> level_values(const Valuation& val, const SectionSpace& space);

class ValueSemigroup {
 public:
  explicit ValueSemigroup(int n) : n_(n) {}

  int dim() const { return n_; }
  void set_level(long long d, std::vector<Exponent> values);
  bool has_level(long long d) const { return levels_.count(d) != 0; }
  const std::vector<Exponent>& level(long long d) const;
  const std::map<long long, std::vector<Exponent>>& levels() const { return levels_; }

  // Graded generators (d, v) for every stored level d <= dmax.
  std::vector<GradedValue> graded_through(long long dmax) const;

  // Checks S_d + S_e subset of S_{d+e} for all stored triples; returns a
  // violating triple description or the empty string.
  std::string additivity_violation() const;

 private:
  int n_;
  std::map<long long, std::vector<Exponent>> levels_;
};

// Levels 1..dmax of the semigroup of E under val.
ValueSemigroup semigroup_of_sections(const std::vector<Polynomial>& E, const Valuation& val,
                                     long long dmax);

// All level-d sums of the graded generators (levelwise dynamic programming;
// every generator has level >= 1, so the table is finite).  Lex-sorted.
std::vector<Exponent> semigroup_generated(const std::vector<GradedValue>& gens, long long d);

class KhovanskiiBasis {
 public:
  // Elements (degree, f); degrees >= 1, per-degree sublists independent.
  KhovanskiiBasis(std::vector<std::pair<long long, Polynomial>> elems, const Valuation& val);

  size_t size() const { return elems_.size(); }
  long long degree(size_t i) const { return elems_[i].first; }
  const Polynomial& poly(size_t i) const { return elems_[i].second; }
  const std::vector<std::pair<long long, Polynomial>>& elements() const { return elems_; }

  std::vector<GradedValue> graded_values(const Valuation& val) const;

 private:
  std::vector<std::pair<long long, Polynomial>> elems_;
};

struct KhovanskiiReport {
  bool pass = true;
  long long fail_level = 0;     // first level with uncovered values, when !pass
  long long through_level = 0;  // largest level verified, when pass
  std::vector<Exponent> missing;  // level values not generated, lex-sorted
  std::string str() const;
};

// Does the semigroup generated by the graded values of B cover every stored
// level of S?
KhovanskiiReport khovanskii_check(const KhovanskiiBasis& B, const Valuation& val,
                                  const ValueSemigroup& S);

struct FiniteGenerationProbe {
  bool stabilized = false;
  long long dstar = 0;   // smallest prefix level whose values regenerate the rest
  long long dmax = 0;
  std::string note;      // always flags the heuristic, bounded nature
};

FiniteGenerationProbe finite_generation_probe(const Valuation& val,
                                              const std::vector<Polynomial>& E, long long dmax);

// One row per value: "d,v1,...,vn" with a header line.
std::string levels_csv(const ValueSemigroup& S);

}  // namespace nok

#endif
