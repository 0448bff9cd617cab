#include "nok/polytope.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace nok {

namespace {

Rational dot_iq(const std::vector<long long>& n, const QPoint& x) {
  if (n.size() != x.size()) throw dimension_error("dot product length mismatch");
  Rational acc = 0;
  for (size_t i = 0; i < n.size(); ++i) acc += x[i] * Rational(n[i]);
  return acc;
}

QPoint q_sub(const QPoint& a, const QPoint& b) {
  QPoint r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QPoint cross3q(const QPoint& a, const QPoint& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::vector<long long> cross3i(const std::vector<long long>& a, const std::vector<long long>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool all_zero(const std::vector<long long>& v) {
  for (long long x : v)
    if (x != 0) return false;
  return true;
}

// Clears denominators and divides by the content; preserves direction.
std::vector<long long> primitive_from_rational(const QPoint& v) {
  mpz_class lcm_den = 1;
  for (const Rational& r : v) {
    mpz_class den = r.raw().get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
    lcm_den = lcm_den / g * den;
  }
  std::vector<mpz_class> ints;
  ints.reserve(v.size());
  mpz_class content = 0;
  for (const Rational& r : v) {
    mpz_class x = r.raw().get_num() * (lcm_den / r.raw().get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
    ints.push_back(x);
  }
  std::vector<long long> out(v.size(), 0);
  if (content == 0) return out;  // zero vector stays zero
  for (size_t i = 0; i < ints.size(); ++i) {
    mpz_class q = ints[i] / content;
    if (!q.fits_slong_p()) throw domain_error("primitive vector entry overflows machine word");
    out[i] = q.get_si();
  }
  return out;
}

std::vector<long long> primitive_from_ll(std::vector<long long> v) {
  long long g = 0;
  for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
  if (g > 1)
    for (long long& x : v) x /= g;
  return v;
}

QPoint centroid_of(const std::vector<QPoint>& pts) {
  QPoint c(pts[0].size(), Rational(0));
  for (const QPoint& p : pts)
    for (size_t i = 0; i < c.size(); ++i) c[i] += p[i];
  const Rational inv = Rational(1, static_cast<long long>(pts.size()));
  for (Rational& x : c) x *= inv;
  return c;
}

bool facet_less(const Facet& a, const Facet& b) {
  if (a.normal != b.normal) return a.normal < b.normal;
  return a.offset < b.offset;
}

// <n, x> <= <n, anchor>, oriented so that the reference point satisfies it;
// strict = the reference is known to lie strictly inside this halfspace.
Facet oriented_facet(std::vector<long long> n, const QPoint& anchor, const QPoint& reference) {
  Rational b = dot_iq(n, anchor);
  const Rational side = dot_iq(n, reference);
  if (side > b) {
    for (long long& x : n) x = -x;
    b = -b;
  }
  return Facet{std::move(n), std::move(b)};
}

void add_pin_pair(std::vector<Facet>& facets, std::vector<long long> n, const QPoint& anchor) {
  const Rational b = dot_iq(n, anchor);
  std::vector<long long> neg(n.size());
  for (size_t i = 0; i < n.size(); ++i) neg[i] = -n[i];
  facets.push_back(Facet{std::move(n), b});
  facets.push_back(Facet{std::move(neg), -b});
}

Rational cross2(const QPoint& o, const QPoint& a, const QPoint& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain on lexicographically sorted distinct points;
// returns the counterclockwise vertex cycle, collinear middles dropped.
std::vector<QPoint> chain_hull_2d(std::vector<QPoint> pts) {
  std::sort(pts.begin(), pts.end());
  std::vector<QPoint> lower, upper;
  for (const QPoint& p : pts) {
    while (lower.size() >= 2 &&
           cross2(lower[lower.size() - 2], lower[lower.size() - 1], p).sign() <= 0)
      lower.pop_back();
    lower.push_back(p);
  }
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (upper.size() >= 2 &&
           cross2(upper[upper.size() - 2], upper[upper.size() - 1], *it).sign() <= 0)
      upper.pop_back();
    upper.push_back(*it);
  }
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;
}

}  // namespace

Rational facet_eval(const Facet& f, const QPoint& x) { return dot_iq(f.normal, x); }

RationalPolytope RationalPolytope::hull(const std::vector<QPoint>& pts_in) {
  if (pts_in.empty()) throw domain_error("hull of an empty point set");
  const int n = static_cast<int>(pts_in[0].size());
  if (n < 1) throw domain_error("hull needs an ambient dimension >= 1");
  if (n > 3)
    throw unsupported_dimension_error("exact hull supports ambient dimension <= 3, got " +
                                      std::to_string(n));
  for (const QPoint& p : pts_in)
    if (static_cast<int>(p.size()) != n) throw dimension_error("hull points of mixed dimension");

  const std::set<QPoint> dedup(pts_in.begin(), pts_in.end());
  const std::vector<QPoint> pts(dedup.begin(), dedup.end());
  const QPoint& p0 = pts[0];

  // Greedy affine basis.
  std::vector<QPoint> dirs;
  for (size_t i = 1; i < pts.size(); ++i) {
    QPoint d = q_sub(pts[i], p0);
    linalg::Matrix m;
    for (const QPoint& e : dirs) m.push_back(e);
    m.push_back(d);
    if (linalg::rank(m) == static_cast<int>(m.size())) dirs.push_back(std::move(d));
    if (static_cast<int>(dirs.size()) == n) break;
  }
  const int affine = static_cast<int>(dirs.size());
  const QPoint centroid = centroid_of(pts);

  RationalPolytope P;
  P.ambient_ = n;
  P.affine_ = affine;

  if (affine == 0) {
    P.vertices_ = {p0};
    for (int k = 0; k < n; ++k) {
      std::vector<long long> axis(n, 0);
      axis[k] = 1;
      add_pin_pair(P.facets_, std::move(axis), p0);
    }
  } else if (affine == 1) {
    const std::vector<long long> dvec = primitive_from_rational(dirs[0]);
    size_t imin = 0, imax = 0;
    Rational smin = dot_iq(dvec, pts[0]), smax = smin;
    for (size_t i = 1; i < pts.size(); ++i) {
      const Rational s = dot_iq(dvec, pts[i]);
      if (s < smin) { smin = s; imin = i; }
      if (s > smax) { smax = s; imax = i; }
    }
    P.vertices_ = {pts[imin], pts[imax]};
    std::vector<long long> neg(dvec.size());
    for (size_t i = 0; i < dvec.size(); ++i) neg[i] = -dvec[i];
    P.facets_.push_back(Facet{dvec, smax});
    P.facets_.push_back(Facet{std::move(neg), -smin});
    if (n == 2) {
      add_pin_pair(P.facets_, primitive_from_ll({-dvec[1], dvec[0]}), p0);
    } else if (n == 3) {
      std::vector<long long> c1;
      for (int k = 0; k < 3; ++k) {
        std::vector<long long> axis(3, 0);
        axis[k] = 1;
        c1 = cross3i(dvec, axis);
        if (!all_zero(c1)) break;
      }
      c1 = primitive_from_ll(c1);
      const std::vector<long long> c2 = primitive_from_ll(cross3i(dvec, c1));
      add_pin_pair(P.facets_, c1, p0);
      add_pin_pair(P.facets_, c2, p0);
    }
  } else if (affine == 2 && n == 2) {
    const std::vector<QPoint> cycle = chain_hull_2d(pts);
    P.vertices_ = cycle;
    for (size_t i = 0; i < cycle.size(); ++i) {
      const QPoint& a = cycle[i];
      const QPoint& b = cycle[(i + 1) % cycle.size()];
      const QPoint e = q_sub(b, a);
      std::vector<long long> nf = primitive_from_rational({e[1], -e[0]});
      P.facets_.push_back(oriented_facet(std::move(nf), a, centroid));
    }
  } else if (affine == 2 && n == 3) {
    const std::vector<long long> plane = primitive_from_rational(cross3q(dirs[0], dirs[1]));
    // Project along the largest normal coordinate; injective on the plane.
    int drop = 0;
    for (int k = 1; k < 3; ++k)
      if (std::abs(plane[k]) > std::abs(plane[drop])) drop = k;
    const int ax = drop == 0 ? 1 : 0;
    const int ay = drop == 2 ? 1 : 2;
    std::map<QPoint, QPoint> back;  // projected -> original
    std::vector<QPoint> flat;
    for (const QPoint& p : pts) {
      QPoint q{p[ax], p[ay]};
      back.emplace(q, p);
      flat.push_back(std::move(q));
    }
    const std::vector<QPoint> cycle2 = chain_hull_2d(flat);
    std::vector<QPoint> cycle;
    cycle.reserve(cycle2.size());
    for (const QPoint& q : cycle2) cycle.push_back(back.at(q));
    P.vertices_ = cycle;
    QPoint planeq(plane.begin(), plane.end());
    for (size_t i = 0; i < cycle.size(); ++i) {
      const QPoint& a = cycle[i];
      const QPoint& b = cycle[(i + 1) % cycle.size()];
      std::vector<long long> nf = primitive_from_rational(cross3q(q_sub(b, a), planeq));
      P.facets_.push_back(oriented_facet(std::move(nf), a, centroid));
    }
    add_pin_pair(P.facets_, plane, p0);
  } else {
    // Full-dimensional in ambient 3: supporting planes from point triples.
    std::set<std::pair<std::vector<long long>, Rational>> seen;
    std::set<QPoint> vertex_set;
    std::vector<Facet> facets;
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j)
        for (size_t k = j + 1; k < pts.size(); ++k) {
          QPoint nq = cross3q(q_sub(pts[j], pts[i]), q_sub(pts[k], pts[i]));
          std::vector<long long> nv = primitive_from_rational(nq);
          if (all_zero(nv)) continue;
          Rational b = dot_iq(nv, pts[i]);
          {  // canonical key: first nonzero positive
            std::vector<long long> key = nv;
            Rational kb = b;
            for (long long x : key) {
              if (x > 0) break;
              if (x < 0) {
                for (long long& y : key) y = -y;
                kb = -kb;
                break;
              }
            }
            if (!seen.emplace(std::move(key), std::move(kb)).second) continue;
          }
          bool le = true, ge = true;
          for (const QPoint& p : pts) {
            const int s = (dot_iq(nv, p) - b).sign();
            if (s > 0) le = false;
            if (s < 0) ge = false;
            if (!le && !ge) break;
          }
          if (le) {
            facets.push_back(Facet{nv, b});
          } else if (ge) {
            for (long long& x : nv) x = -x;
            facets.push_back(Facet{std::move(nv), -b});
          }
        }
    for (const QPoint& p : pts) {
      linalg::Matrix active;
      for (const Facet& f : facets)
        if (facet_eval(f, p) == f.offset)
          active.push_back(QPoint(f.normal.begin(), f.normal.end()));
      if (active.size() >= 3 && linalg::rank(active) == 3) vertex_set.insert(p);
    }
    P.vertices_.assign(vertex_set.begin(), vertex_set.end());
    P.facets_ = std::move(facets);
  }

  std::sort(P.vertices_.begin(), P.vertices_.end());
  P.vertices_.erase(std::unique(P.vertices_.begin(), P.vertices_.end()), P.vertices_.end());
  std::sort(P.facets_.begin(), P.facets_.end(), facet_less);
  P.facets_.erase(std::unique(P.facets_.begin(), P.facets_.end(),
                              [](const Facet& a, const Facet& b) {
                                return a.normal == b.normal && a.offset == b.offset;
                              }),
                  P.facets_.end());
  P.validate();
  return P;
}

bool RationalPolytope::contains(const QPoint& x) const {
  for (const Facet& f : facets_)
    if (facet_eval(f, x) > f.offset) return false;
  return true;
}

bool RationalPolytope::strictly_contains(const QPoint& x) const {
  for (const Facet& f : facets_)
    if (facet_eval(f, x) >= f.offset) return false;
  return true;
}

std::vector<QPoint> RationalPolytope::ccw_vertices() const {
  if (ambient_ != 2 || affine_ != 2)
    throw domain_error("counterclockwise cycle needs a full-dimensional planar polytope");
  const QPoint c = centroid_of(vertices_);
  std::vector<QPoint> order = vertices_;
  auto half = [&](const QPoint& p) {
    const Rational dy = p[1] - c[1];
    const Rational dx = p[0] - c[0];
    return (dy > Rational(0) || (dy == Rational(0) && dx > Rational(0))) ? 0 : 1;
  };
  std::sort(order.begin(), order.end(), [&](const QPoint& a, const QPoint& b) {
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    const Rational cr = cross2(c, a, b);
    if (!cr.is_zero()) return cr.sign() > 0;
    return a < b;
  });
  // Deterministic starting point: rotate the cycle to the lex-smallest vertex.
  const auto it = std::min_element(order.begin(), order.end());
  std::rotate(order.begin(), it, order.end());
  return order;
}

Rational RationalPolytope::volume() const {
  if (affine_ < ambient_) return Rational(0);
  if (ambient_ == 1) return vertices_.back()[0] - vertices_.front()[0];
  if (ambient_ == 2) {
    const std::vector<QPoint> cyc = ccw_vertices();
    Rational twice = 0;
    for (size_t i = 0; i < cyc.size(); ++i) {
      const QPoint& a = cyc[i];
      const QPoint& b = cyc[(i + 1) % cyc.size()];
      twice += a[0] * b[1] - b[0] * a[1];
    }
    return twice.abs() * Rational(1, 2);
  }
  throw unsupported_dimension_error("3-dimensional volume is not provided");
}

RationalPolytope RationalPolytope::scaled(long long k) const {
  if (k < 1) throw domain_error("polytope scale must be >= 1");
  RationalPolytope P = *this;
  for (QPoint& v : P.vertices_)
    for (Rational& x : v) x *= Rational(k);
  for (Facet& f : P.facets_) f.offset *= Rational(k);
  return P;
}

void RationalPolytope::validate() const {
  if (vertices_.empty()) throw error("polytope without vertices");
  if (facets_.empty()) throw error("polytope without facets");
  for (const Facet& f : facets_) {
    if (static_cast<int>(f.normal.size()) != ambient_)
      throw error("facet normal with wrong dimension");
    if (all_zero(f.normal)) throw error("zero facet normal");
    long long g = 0;
    for (long long x : f.normal) g = std::gcd(g, x < 0 ? -x : x);
    if (g != 1) throw error("facet normal is not primitive");
  }
  for (const QPoint& v : vertices_) {
    linalg::Matrix active;
    for (const Facet& f : facets_) {
      const Rational s = facet_eval(f, v);
      if (s > f.offset) throw error("vertex violates a facet inequality");
      if (s == f.offset) active.push_back(QPoint(f.normal.begin(), f.normal.end()));
    }
    if (static_cast<int>(active.size()) < ambient_)
      throw error("vertex active on too few facets");
    if (linalg::rank(active) != ambient_)
      throw error("active facet normals do not pin the vertex");
  }
  for (const Facet& f : facets_) {
    bool touched = false;
    for (const QPoint& v : vertices_)
      if (facet_eval(f, v) == f.offset) {
        touched = true;
        break;
      }
    if (!touched) throw error("facet not supported by any vertex");
  }
}

std::string RationalPolytope::json_block() const {
  std::ostringstream os;
  os << "{\n  \"vertices\": [";
  for (size_t i = 0; i < vertices_.size(); ++i) {
    os << (i ? ", [" : "[");
    for (size_t j = 0; j < vertices_[i].size(); ++j)
      os << (j ? ", \"" : "\"") << vertices_[i][j].str() << "\"";
    os << "]";
  }
  os << "],\n  \"facets\": [\n";
  for (size_t i = 0; i < facets_.size(); ++i) {
    os << "    {\"normal\": [";
    for (size_t j = 0; j < facets_[i].normal.size(); ++j)
      os << (j ? ", " : "") << facets_[i].normal[j];
    os << "], \"offset\": \"" << facets_[i].offset.str() << "\"}";
    os << (i + 1 < facets_.size() ? ",\n" : "\n");
  }
  os << "  ]\n}";
  return os.str();
}

RationalCone RationalCone::from_semigroup(const ValueSemigroup& S) {
  if (S.levels().empty()) throw empty_slice_error("semigroup has no stored levels");
  std::vector<Exponent> rays;
  for (const auto& [d, vals] : S.levels())
    for (const Exponent& v : vals) {
      Exponent ray;
      ray.reserve(v.size() + 1);
      ray.push_back(d);
      ray.insert(ray.end(), v.begin(), v.end());
      rays.push_back(std::move(ray));
    }
  return from_rays(std::move(rays));
}

RationalCone RationalCone::from_rays(std::vector<Exponent> rays) {
  if (rays.empty()) throw empty_slice_error("cone without generators");
  const size_t len = rays.front().size();
  if (len < 2) throw dimension_error("cone rays need a level and at least one coordinate");
  std::set<Exponent> dedup;
  bool positive_level = false;
  for (Exponent& r : rays) {
    if (r.size() != len) throw dimension_error("cone rays of mixed dimension");
    if (all_zero(r)) throw domain_error("zero cone generator");
    std::vector<long long> p = primitive_from_ll(r);
    if (p[0] > 0) positive_level = true;
    dedup.insert(Exponent(p.begin(), p.end()));
  }
  if (!positive_level)
    throw degenerate_cone_error("all cone generators sit at level zero");
  RationalCone C;
  C.ambient_ = static_cast<int>(len);
  C.rays_.assign(dedup.begin(), dedup.end());
  return C;
}

std::vector<Exponent> RationalCone::extreme_rays() const {
  const RationalPolytope body = okounkov_body(*this);
  std::vector<Exponent> out;
  for (const QPoint& v : body.vertices()) {
    QPoint ray;
    ray.reserve(v.size() + 1);
    ray.push_back(Rational(1));
    ray.insert(ray.end(), v.begin(), v.end());
    const std::vector<long long> p = primitive_from_rational(ray);
    out.emplace_back(p.begin(), p.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

RationalPolytope okounkov_body(const RationalCone& cone) {
  const int n = cone.ambient_dim() - 1;
  if (n > 3)
    throw unsupported_dimension_error("okounkov body supports value dimension <= 3, got " +
                                      std::to_string(n));
  std::vector<QPoint> slice;
  for (const Exponent& r : cone.rays()) {
    if (r[0] <= 0)
      throw unbounded_error("cone generator at level <= 0; level-one slice is unbounded");
    QPoint pt;
    pt.reserve(n);
    for (int i = 1; i <= n; ++i) pt.emplace_back(r[i], r[0]);
    slice.push_back(std::move(pt));
  }
  return RationalPolytope::hull(slice);
}

LatticePointSet lattice_points(const RationalPolytope& P, long long scale) {
  if (scale < 1) throw domain_error("lattice scale must be >= 1");
  const RationalPolytope Q = P.scaled(scale);
  const int n = Q.ambient_dim();
  std::vector<long long> lo(n), hi(n);
  for (int k = 0; k < n; ++k) {
    Rational mn = Q.vertices()[0][k], mx = mn;
    for (const QPoint& v : Q.vertices()) {
      if (v[k] < mn) mn = v[k];
      if (v[k] > mx) mx = v[k];
    }
    lo[k] = mn.floor_ll();
    hi[k] = mx.ceil_ll();
  }
  LatticePointSet out;
  Exponent x(n, 0);
  // Nested lexicographic scan over the bounding box.
  std::vector<long long> cur = lo;
  for (;;) {
    QPoint q;
    q.reserve(n);
    for (int k = 0; k < n; ++k) q.emplace_back(Rational(cur[k]));
    bool in = true, boundary = false;
    for (const Facet& f : Q.facets()) {
      const int s = (facet_eval(f, q) - f.offset).sign();
      if (s > 0) {
        in = false;
        break;
      }
      if (s == 0) boundary = true;
    }
    if (in) {
      out.points.push_back(Exponent(cur.begin(), cur.end()));
      out.interior.push_back(!boundary);
    }
    int k = n - 1;
    while (k >= 0 && cur[k] == hi[k]) {
      cur[k] = lo[k];
      --k;
    }
    if (k < 0) break;
    ++cur[k];
  }
  return out;
}

LatticePointSet classify_points(const RationalPolytope& P, const std::vector<Exponent>& pts) {
  LatticePointSet out;
  for (const Exponent& p : pts) {
    QPoint q;
    q.reserve(p.size());
    for (long long x : p) q.emplace_back(Rational(x));
    bool boundary = false;
    for (const Facet& f : P.facets()) {
      const int s = (facet_eval(f, q) - f.offset).sign();
      if (s > 0)
        throw domain_error("point " + exponent_str(p) + " lies outside the polytope");
      if (s == 0) boundary = true;
    }
    out.points.push_back(p);
    out.interior.push_back(!boundary);
  }
  return out;
}

}  // namespace nok
