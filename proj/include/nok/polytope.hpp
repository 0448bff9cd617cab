#ifndef NOK_POLYTOPE_HPP
#define NOK_POLYTOPE_HPP

/*
 * Exact rational convex geometry in ambient dimension <= 3.
 *
 * A polytope carries both representations: the vertex list (extreme points,
 * lexicographically sorted) and the facet list of inequalities
 * <normal, x> <= offset with outward primitive integer normals, sorted by
 * (normal, offset).  Degenerate polytopes (affine dimension below the
 * ambient one) pin the missing directions with opposite inequality pairs, so
 * "interior" always means interior in the ambient space.
 *
 * The cone type stores primitive integer generators (level, value) with
 * positive level; its level-one slice is the Okounkov body of the semigroup
 * that produced it.
 */

#include <string>
#include <vector>

#include "nok/rational.hpp"
#include "nok/semigroup.hpp"

namespace nok {

using QPoint = std::vector<Rational>;

struct Facet {
  std::vector<long long> normal;  // outward, primitive (content 1)
  Rational offset;                // <normal, x> <= offset
};

Rational facet_eval(const Facet& f, const QPoint& x);

class RationalPolytope {
 public:
  // Convex hull; throws unsupported_dimension_error for ambient > 3 and
  // domain_error for empty input.  Handles every degenerate configuration.
  static RationalPolytope hull(const std::vector<QPoint>& pts);

  int ambient_dim() const { return ambient_; }
  int affine_dim() const { return affine_; }
  const std::vector<QPoint>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  bool contains(const QPoint& x) const;
  bool strictly_contains(const QPoint& x) const;

  // Segment length or polygon area (shoelace); 0 when the affine dimension
  // is below the ambient one; full 3-dimensional volume is not provided.
  Rational volume() const;

  // Vertices in counterclockwise order; ambient dimension 2, affine 2 only.
  std::vector<QPoint> ccw_vertices() const;

  RationalPolytope scaled(long long k) const;

  // Cross-checks the two representations; throws on any inconsistency.
  void validate() const;

  std::string json_block() const;

 private:
  RationalPolytope() = default;

  int ambient_ = 0;
  int affine_ = 0;
  std::vector<QPoint> vertices_;
  std::vector<Facet> facets_;
};

class RationalCone {
 public:
  // Rays (d, v) from every stored semigroup level; primitive, deduplicated.
  // Throws empty_slice_error when no level is present and
  // degenerate_cone_error when every generator sits at level zero.
  static RationalCone from_semigroup(const ValueSemigroup& S);

  static RationalCone from_rays(std::vector<Exponent> rays);

  int ambient_dim() const { return ambient_; }
  const std::vector<Exponent>& rays() const { return rays_; }

  // Generators spanning the extreme rays, recovered from the level-one
  // slice; primitive, lexicographically sorted.
  std::vector<Exponent> extreme_rays() const;

 private:
  RationalCone() = default;
  int ambient_ = 0;
  std::vector<Exponent> rays_;
};

// Level-one slice conv{ v/d : (d, v) a ray }; exact.
RationalPolytope okounkov_body(const RationalCone& cone);

struct LatticePointSet {
  std::vector<Exponent> points;  // lex sorted
  std::vector<bool> interior;    // parallel to points
};

// Integer points of scale * P with interior/boundary classification;
// scale >= 1.
LatticePointSet lattice_points(const RationalPolytope& P, long long scale);

// Classification of given integer points relative to P (exact).
LatticePointSet classify_points(const RationalPolytope& P, const std::vector<Exponent>& pts);

}  // namespace nok

#endif
