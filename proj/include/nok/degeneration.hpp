#ifndef NOK_DEGENERATION_HPP
#define NOK_DEGENERATION_HPP

/*
 * Explicit one-parameter toric degeneration data at a fixed degree d.
 *
 * Given a basis B = {f_j} with declared degrees and a valuation whose level-d
 * value set is S_d, each s in S_d receives a monomial lift: an exponent
 * vector alpha with sum_j alpha_j * deg(f_j) = d whose product prod f_j^alpha
 * has graded value (d, s).  The family embeds (x, t) through the coordinates
 *
 *     t^{c_s} * prod_j f_j(x)^{alpha_j},   c_s = sum_j alpha_j * w_j,
 *
 * where w_j = <e, value(f_j) - deg(f_j) * value(h)> for an integer covector
 * e.  At t = 0 only the coordinates of minimal total weight survive the
 * projective normalization; the special fiber is the torus-orbit closure of
 * the all-ones point with weight set S_d and moment polytope hull(S_d).
 */

#include <optional>
#include <string>
#include <vector>

#include "nok/polytope.hpp"
#include "nok/semigroup.hpp"
#include "nok/valuation.hpp"

namespace nok {

struct MonomialLift {
  Exponent target;                        // s in S_d
  std::vector<unsigned long long> alpha;  // parallel to the basis elements
};

struct DegenerationSpec {
  long long d = 1;
  KhovanskiiBasis basis;
  std::vector<long long> covector;       // e
  std::vector<long long> weights;        // w_j, parallel to basis
  std::vector<MonomialLift> lifts;       // one per value of S_d, in S_d order
  std::vector<long long> coord_weights;  // c_s, parallel to lifts
};

// Base-M covector (1, M, M^2, ...) with M exceeding the coordinate spread of
// the basis values, so distinct basis values get distinct weights.
std::vector<long long> default_covector(const KhovanskiiBasis& B, const Valuation& val);

std::vector<long long> assign_weights(const KhovanskiiBasis& B, const Valuation& val,
                                      const std::vector<long long>& covector);

// Lexicographically smallest alpha for each s; throws
// khovanskii_violation_error naming the first unreachable s.
std::vector<MonomialLift> choose_monomial_lifts(const KhovanskiiBasis& B, const Valuation& val,
                                                long long d,
                                                const std::vector<Exponent>& S_d);

// Assembles lifts, weights and coordinate weights; re-derives the graded
// value of every lifted product through the valuation and refuses mismatches.
DegenerationSpec make_degeneration(const KhovanskiiBasis& B, const Valuation& val, long long d,
                                   const std::vector<Exponent>& S_d,
                                   const std::optional<std::vector<long long>>& covector);

// Symbolic coordinate formulas "t^c*(f)^a*...", one per lift.
std::vector<std::string> family_coordinate_strings(const DegenerationSpec& spec);

// Exact projective coordinates of the family at (x, t).  t = 0 keeps only
// the coordinates of minimal total weight among those not vanishing at x.
// Throws base_locus_error when every coordinate vanishes.
std::vector<Rational> family_evaluate(const DegenerationSpec& spec, const Valuation& val,
                                      const std::vector<Rational>& x, const Rational& t);

struct BohrSommerfeldSet {
  std::vector<Exponent> W0;      // = S_d, in lift order
  std::vector<bool> interior;    // relative to delta0, ambient sense
  RationalPolytope delta0;       // hull(S_d)
  std::vector<Exponent> lattice_gap;  // (delta0 cap Z^n) minus W0, lex sorted
};

BohrSommerfeldSet special_fiber(const DegenerationSpec& spec);

enum class HypStatus { pass, fail, assumed };

const char* hyp_status_str(HypStatus s);

struct HypothesisEntry {
  HypStatus status = HypStatus::assumed;
  std::string witness;
};

struct HypothesisReport {
  HypothesisEntry orbit_closure;       // special fiber is an orbit closure
  HypothesisEntry ambient_surjective;  // ambient sections restrict onto E^d
  HypothesisEntry lattice_surjective;  // differences of S_d generate Z^n
  HypothesisEntry dimension_match;     // dim E^d = |W0|
  bool any_fail() const;
};

HypothesisReport verify_hypotheses(const DegenerationSpec& spec, const Valuation& val,
                                   const std::vector<Polynomial>& E,
                                   std::optional<long long> dim_H0);

// Full JSON report: degree, values, lifts, weights, coordinates, weight
// collisions within the level, fiber data, hypothesis table.
std::string degeneration_report_json(const DegenerationSpec& spec,
                                     const BohrSommerfeldSet& fiber,
                                     const HypothesisReport& hyp);

std::string hypothesis_table_text(const HypothesisReport& hyp);

}  // namespace nok

#endif
