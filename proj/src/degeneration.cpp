#include "nok/degeneration.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace nok {

namespace {

// Basis values shifted to level coordinates: value(f_j) - deg_j * value(h).
std::vector<Exponent> shifted_basis_values(const KhovanskiiBasis& B, const Valuation& val) {
  std::vector<Exponent> out;
  out.reserve(B.size());
  for (size_t j = 0; j < B.size(); ++j)
    out.push_back(val.graded_value(B.poly(j), B.degree(j)).value);
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

void emit_exponent_array(std::ostringstream& os, const Exponent& v) {
  os << "[";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << "]";
}

}  // namespace

std::vector<long long> default_covector(const KhovanskiiBasis& B, const Valuation& val) {
  const std::vector<Exponent> vals = shifted_basis_values(B, val);
  const int n = val.dim();
  long long spread = 0;
  for (int k = 0; k < n; ++k) {
    long long mn = vals[0][k], mx = vals[0][k];
    for (const Exponent& v : vals) {
      mn = std::min(mn, v[k]);
      mx = std::max(mx, v[k]);
    }
    spread = std::max(spread, mx - mn);
  }
  const long long M = std::max<long long>(2, spread + 1);
  std::vector<long long> e(n);
  long long p = 1;
  for (int k = 0; k < n; ++k) {
    e[k] = p;
    p *= M;
  }
  return e;
}

std::vector<long long> assign_weights(const KhovanskiiBasis& B, const Valuation& val,
                                      const std::vector<long long>& covector) {
  if (static_cast<int>(covector.size()) != val.dim())
    throw dimension_error("covector length does not match value dimension");
  const std::vector<Exponent> vals = shifted_basis_values(B, val);
  std::vector<long long> w;
  w.reserve(vals.size());
  for (const Exponent& v : vals) {
    long long acc = 0;
    for (size_t k = 0; k < v.size(); ++k) acc += covector[k] * v[k];
    w.push_back(acc);
  }
  return w;
}

namespace {

// First solution in lexicographic alpha order; alpha[p] is tried ascending.
bool lift_dfs(const std::vector<long long>& degs, const std::vector<Exponent>& vals,
              long long d, const Exponent& target, size_t p, long long used,
              std::vector<unsigned long long>& alpha) {
  if (p == degs.size()) {
    if (used != d) return false;
    Exponent sum(target.size(), 0);
    for (size_t j = 0; j < alpha.size(); ++j)
      for (size_t k = 0; k < sum.size(); ++k)
        sum[k] += static_cast<long long>(alpha[j]) * vals[j][k];
    return sum == target;
  }
  const long long room = (d - used) / degs[p];
  for (long long a = 0; a <= room; ++a) {
    alpha[p] = static_cast<unsigned long long>(a);
    if (lift_dfs(degs, vals, d, target, p + 1, used + a * degs[p], alpha)) return true;
  }
  alpha[p] = 0;
  return false;
}

}  // namespace

std::vector<MonomialLift> choose_monomial_lifts(const KhovanskiiBasis& B, const Valuation& val,
                                                long long d,
                                                const std::vector<Exponent>& S_d) {
  if (d < 1) throw domain_error("lift degree must be >= 1");
  std::vector<long long> degs;
  for (size_t j = 0; j < B.size(); ++j) degs.push_back(B.degree(j));
  const std::vector<Exponent> vals = shifted_basis_values(B, val);
  std::vector<MonomialLift> lifts;
  lifts.reserve(S_d.size());
  for (const Exponent& s : S_d) {
    std::vector<unsigned long long> alpha(B.size(), 0);
    if (!lift_dfs(degs, vals, d, s, 0, 0, alpha))
      throw khovanskii_violation_error("level-" + std::to_string(d) + " value " +
                                       exponent_str(s) +
                                       " is not reachable from the declared basis");
    lifts.push_back(MonomialLift{s, std::move(alpha)});
  }
  return lifts;
}

DegenerationSpec make_degeneration(const KhovanskiiBasis& B, const Valuation& val, long long d,
                                   const std::vector<Exponent>& S_d,
                                   const std::optional<std::vector<long long>>& covector) {
  DegenerationSpec spec{d, B, {}, {}, {}, {}};
  spec.covector = covector ? *covector : default_covector(B, val);
  spec.weights = assign_weights(B, val, spec.covector);
  spec.lifts = choose_monomial_lifts(B, val, d, S_d);
  spec.coord_weights.reserve(spec.lifts.size());
  for (const MonomialLift& lift : spec.lifts) {
    long long c = 0;
    Polynomial prod = Polynomial::constant(val.nvars(), 1);
    for (size_t j = 0; j < lift.alpha.size(); ++j) {
      c += static_cast<long long>(lift.alpha[j]) * spec.weights[j];
      if (lift.alpha[j]) prod *= B.poly(j).pow(lift.alpha[j]);
    }
    // Value coherence: the lifted product must land exactly on (d, s).
    const GradedValue gv = val.graded_value(prod, d);
    if (gv.level != d || gv.value != lift.target)
      throw error("lift for " + exponent_str(lift.target) +
                  " has incoherent graded value " + graded_value_str(gv));
    spec.coord_weights.push_back(c);
  }
  return spec;
}

std::vector<std::string> family_coordinate_strings(const DegenerationSpec& spec) {
  std::vector<std::string> out;
  out.reserve(spec.lifts.size());
  for (size_t i = 0; i < spec.lifts.size(); ++i) {
    std::ostringstream os;
    os << "t^" << spec.coord_weights[i];
    for (size_t j = 0; j < spec.lifts[i].alpha.size(); ++j) {
      const unsigned long long a = spec.lifts[i].alpha[j];
      if (!a) continue;
      os << "*(" << spec.basis.poly(j).str() << ")";
      if (a != 1) os << "^" << a;
    }
    out.push_back(os.str());
  }
  return out;
}

std::vector<Rational> family_evaluate(const DegenerationSpec& spec, const Valuation& val,
                                      const std::vector<Rational>& x, const Rational& t) {
  std::vector<Rational> raw;
  raw.reserve(spec.lifts.size());
  for (const MonomialLift& lift : spec.lifts) {
    Polynomial prod = Polynomial::constant(val.nvars(), 1);
    for (size_t j = 0; j < lift.alpha.size(); ++j)
      if (lift.alpha[j]) prod *= spec.basis.poly(j).pow(lift.alpha[j]);
    raw.push_back(prod.evaluate(x));
  }
  std::vector<Rational> out(raw.size(), Rational(0));
  if (t.is_zero()) {
    // Projective normalization: subtract the minimal weight among coordinates
    // that survive at x; only those at the minimum persist at t = 0.
    bool any = false;
    long long cmin = 0;
    for (size_t i = 0; i < raw.size(); ++i) {
      if (raw[i].is_zero()) continue;
      if (!any || spec.coord_weights[i] < cmin) cmin = spec.coord_weights[i];
      any = true;
    }
    if (!any) throw base_locus_error("every family coordinate vanishes at the given point");
    for (size_t i = 0; i < raw.size(); ++i)
      if (!raw[i].is_zero() && spec.coord_weights[i] == cmin) out[i] = raw[i];
    return out;
  }
  bool any = false;
  for (size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].is_zero()) continue;
    any = true;
    const long long c = spec.coord_weights[i];
    Rational tp = 1;
    Rational base = c >= 0 ? t : t.reciprocal();
    unsigned long long n = static_cast<unsigned long long>(c >= 0 ? c : -c);
    while (n) {
      if (n & 1ULL) tp *= base;
      base *= base;
      n >>= 1ULL;
    }
    out[i] = raw[i] * tp;
  }
  if (!any) throw base_locus_error("every family coordinate vanishes at the given point");
  return out;
}

BohrSommerfeldSet special_fiber(const DegenerationSpec& spec) {
  std::vector<Exponent> W0;
  W0.reserve(spec.lifts.size());
  std::vector<QPoint> pts;
  for (const MonomialLift& lift : spec.lifts) {
    W0.push_back(lift.target);
    QPoint q;
    q.reserve(lift.target.size());
    for (long long v : lift.target) q.emplace_back(Rational(v));
    pts.push_back(std::move(q));
  }
  RationalPolytope delta0 = RationalPolytope::hull(pts);
  const LatticePointSet cls = classify_points(delta0, W0);
  const LatticePointSet all = lattice_points(delta0, 1);
  std::set<Exponent> have(W0.begin(), W0.end());
  std::vector<Exponent> gap;
  for (const Exponent& p : all.points)
    if (!have.count(p)) gap.push_back(p);
  return BohrSommerfeldSet{std::move(W0), cls.interior, std::move(delta0), std::move(gap)};
}

const char* hyp_status_str(HypStatus s) {
  switch (s) {
    case HypStatus::pass:
      return "pass";
    case HypStatus::fail:
      return "fail";
    case HypStatus::assumed:
      return "assumed";
  }
  return "?";
}

bool HypothesisReport::any_fail() const {
  return orbit_closure.status == HypStatus::fail ||
         ambient_surjective.status == HypStatus::fail ||
         lattice_surjective.status == HypStatus::fail ||
         dimension_match.status == HypStatus::fail;
}

HypothesisReport verify_hypotheses(const DegenerationSpec& spec, const Valuation& val,
                                   const std::vector<Polynomial>& E,
                                   std::optional<long long> dim_H0) {
  HypothesisReport rep;
  const size_t N = spec.lifts.size();

  // Orbit closure: the weight table equals the level value set by design;
  // certify that the embedded image meets the dense torus orbit by finding a
  // rational point where every coordinate is nonzero.
  {
    static const long long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    const int n = val.nvars();
    bool found = false;
    std::string where;
    for (int start = 0; start + n <= static_cast<int>(std::size(primes)) && !found; ++start) {
      std::vector<Rational> x;
      for (int k = 0; k < n; ++k) x.emplace_back(primes[start + k]);
      try {
        const std::vector<Rational> coords = family_evaluate(spec, val, x, Rational(1));
        bool all_nonzero = true;
        for (const Rational& c : coords)
          if (c.is_zero()) {
            all_nonzero = false;
            break;
          }
        if (all_nonzero) {
          found = true;
          std::ostringstream os;
          os << "(";
          for (int k = 0; k < n; ++k) os << (k ? ", " : "") << x[k].str_compact();
          os << ")";
          where = os.str();
        }
      } catch (const base_locus_error&) {
      }
    }
    if (found) {
      rep.orbit_closure.status = HypStatus::pass;
      rep.orbit_closure.witness =
          "coordinate torus weights equal the level value set by construction; all " +
          std::to_string(N) + " coordinates are nonzero at u = " + where +
          ", so the embedded image meets the dense torus orbit of the all-ones point";
    } else {
      rep.orbit_closure.status = HypStatus::fail;
      rep.orbit_closure.witness =
          "no sampled rational point keeps every coordinate nonzero; the image may miss "
          "the dense torus orbit";
    }
  }

  // Ambient surjectivity: only decidable against a declared section count.
  if (dim_H0) {
    if (*dim_H0 == static_cast<long long>(N)) {
      rep.ambient_surjective.status = HypStatus::pass;
      rep.ambient_surjective.witness = "declared section count " + std::to_string(*dim_H0) +
                                       " equals the embedded coordinate count";
    } else {
      rep.ambient_surjective.status = HypStatus::fail;
      rep.ambient_surjective.witness = "declared section count " + std::to_string(*dim_H0) +
                                       " differs from the embedded coordinate count " +
                                       std::to_string(N);
    }
  } else {
    rep.ambient_surjective.status = HypStatus::assumed;
    rep.ambient_surjective.witness =
        "no ambient section count supplied; restriction surjectivity is taken as an input "
        "assumption";
  }

  // Lattice surjectivity: differences of the level value set must generate
  // the full integer lattice.
  {
    const int n = val.dim();
    std::vector<Exponent> diffs;
    for (size_t i = 1; i < N; ++i)
      diffs.push_back(exp_sub(spec.lifts[i].target, spec.lifts[0].target));
    const linalg::LatticeInfo info = linalg::row_lattice_ll(diffs, n);
    if (info.rank == n && info.index == 1) {
      rep.lattice_surjective.status = HypStatus::pass;
      rep.lattice_surjective.witness =
          "value differences span a rank-" + std::to_string(n) + " lattice of index 1";
    } else {
      rep.lattice_surjective.status = HypStatus::fail;
      std::ostringstream os;
      os << "value differences span a rank-" << info.rank << " lattice";
      if (info.rank == n) os << " of index " << info.index.get_str();
      os << " inside Z^" << n;
      rep.lattice_surjective.witness = os.str();
    }
  }

  // Dimension match: independent rank of the degree-d product span.
  {
    const std::vector<Polynomial> products = level_products(E, spec.d);
    const int r = linalg::rank(linalg::coefficient_matrix(products));
    if (r == static_cast<int>(N)) {
      rep.dimension_match.status = HypStatus::pass;
      rep.dimension_match.witness = "independent coefficient rank of the degree-" +
                                    std::to_string(spec.d) + " product span is " +
                                    std::to_string(r) + " = |W0|";
    } else {
      rep.dimension_match.status = HypStatus::fail;
      rep.dimension_match.witness = "independent coefficient rank " + std::to_string(r) +
                                    " differs from |W0| = " + std::to_string(N);
    }
  }

  return rep;
}

std::string degeneration_report_json(const DegenerationSpec& spec,
                                     const BohrSommerfeldSet& fiber,
                                     const HypothesisReport& hyp) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"degree\": " << spec.d << ",\n";

  os << "  \"values\": [";
  for (size_t i = 0; i < spec.lifts.size(); ++i) {
    os << (i ? ", " : "");
    emit_exponent_array(os, spec.lifts[i].target);
  }
  os << "],\n";

  os << "  \"basis\": [\n";
  for (size_t j = 0; j < spec.basis.size(); ++j) {
    os << "    {\"degree\": " << spec.basis.degree(j) << ", \"poly\": \""
       << json_escape(spec.basis.poly(j).str()) << "\", \"weight\": " << spec.weights[j]
       << "}" << (j + 1 < spec.basis.size() ? ",\n" : "\n");
  }
  os << "  ],\n";

  os << "  \"covector\": [";
  for (size_t k = 0; k < spec.covector.size(); ++k)
    os << (k ? ", " : "") << spec.covector[k];
  os << "],\n";

  os << "  \"lifts\": [\n";
  for (size_t i = 0; i < spec.lifts.size(); ++i) {
    os << "    {\"value\": ";
    emit_exponent_array(os, spec.lifts[i].target);
    os << ", \"alpha\": [";
    for (size_t j = 0; j < spec.lifts[i].alpha.size(); ++j)
      os << (j ? ", " : "") << spec.lifts[i].alpha[j];
    os << "], \"coordinate_weight\": " << spec.coord_weights[i] << "}"
       << (i + 1 < spec.lifts.size() ? ",\n" : "\n");
  }
  os << "  ],\n";

  const std::vector<std::string> coords = family_coordinate_strings(spec);
  os << "  \"coordinates\": [";
  for (size_t i = 0; i < coords.size(); ++i)
    os << (i ? ", \"" : "\"") << json_escape(coords[i]) << "\"";
  os << "],\n";

  // Coordinate weights must separate values within the level; report any
  // collision groups so the caller can supply a stronger covector.
  {
    std::map<long long, std::vector<size_t>> groups;
    for (size_t i = 0; i < spec.coord_weights.size(); ++i)
      groups[spec.coord_weights[i]].push_back(i);
    os << "  \"weight_collisions\": [";
    bool first = true;
    for (const auto& [w, members] : groups) {
      if (members.size() < 2) continue;
      os << (first ? "" : ", ") << "{\"weight\": " << w << ", \"values\": [";
      for (size_t k = 0; k < members.size(); ++k) {
        os << (k ? ", " : "");
        emit_exponent_array(os, spec.lifts[members[k]].target);
      }
      os << "]}";
      first = false;
    }
    os << "],\n";
  }

  os << "  \"fiber\": {\n";
  os << "    \"W0\": [";
  for (size_t i = 0; i < fiber.W0.size(); ++i) {
    os << (i ? ", " : "");
    emit_exponent_array(os, fiber.W0[i]);
  }
  os << "],\n";
  os << "    \"interior\": [";
  for (size_t i = 0; i < fiber.interior.size(); ++i)
    os << (i ? ", " : "") << (fiber.interior[i] ? "true" : "false");
  os << "],\n";
  os << "    \"lattice_gap\": [";
  for (size_t i = 0; i < fiber.lattice_gap.size(); ++i) {
    os << (i ? ", " : "");
    emit_exponent_array(os, fiber.lattice_gap[i]);
  }
  os << "],\n";
  {
    std::istringstream block(fiber.delta0.json_block());
    os << "    \"moment_polytope\": ";
    std::string line;
    bool first = true;
    while (std::getline(block, line)) {
      if (!first) os << "\n    " << line;
      else os << line;
      first = false;
    }
    os << "\n  },\n";
  }

  auto emit_hyp = [&os](const char* name, const HypothesisEntry& e, bool last) {
    os << "    \"" << name << "\": {\"status\": \"" << hyp_status_str(e.status)
       << "\", \"witness\": \"" << json_escape(e.witness) << "\"}" << (last ? "\n" : ",\n");
  };
  os << "  \"hypotheses\": {\n";
  emit_hyp("orbit_closure", hyp.orbit_closure, false);
  emit_hyp("ambient_surjective", hyp.ambient_surjective, false);
  emit_hyp("lattice_surjective", hyp.lattice_surjective, false);
  emit_hyp("dimension_match", hyp.dimension_match, true);
  os << "  }\n}";
  return os.str();
}

std::string hypothesis_table_text(const HypothesisReport& hyp) {
  std::ostringstream os;
  auto line = [&os](const char* label, const HypothesisEntry& e) {
    os << label << ": " << hyp_status_str(e.status) << "\n  witness: " << e.witness << "\n";
  };
  line("orbit closure (special fiber = torus-orbit closure of the all-ones point)",
       hyp.orbit_closure);
  line("ambient surjectivity (ambient sections restrict onto the embedding space)",
       hyp.ambient_surjective);
  line("lattice surjectivity (value differences generate the full lattice)",
       hyp.lattice_surjective);
  line("dimension match (coordinate count equals the section space dimension)",
       hyp.dimension_match);
  return os.str();
}

}  // namespace nok
