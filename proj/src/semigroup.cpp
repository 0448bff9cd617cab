#include "nok/semigroup.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace nok {

namespace {

using linalg::coefficient_matrix;

void require_uniform_nonzero(const std::vector<Polynomial>& V, const char* what) {
  if (V.empty()) throw input_error(std::string(what) + ": empty basis");
  const int n = V.front().nvars();
  for (const Polynomial& f : V) {
    if (f.is_zero()) throw input_error(std::string(what) + ": zero element");
    if (f.nvars() != n) throw dimension_error(std::string(what) + ": mixed variable counts");
  }
}

}  // namespace

SectionSpace make_section_space(long long level, std::vector<Polynomial> basis) {
  if (level < 1) throw input_error("section space level must be >= 1");
  require_uniform_nonzero(basis, "section space");
  if (linalg::rank(coefficient_matrix(basis)) != static_cast<int>(basis.size()))
    throw input_error("section space basis is linearly dependent");
  return SectionSpace{level, std::move(basis)};
}

std::vector<Polynomial> level_products(const std::vector<Polynomial>& E, long long d) {
  if (d < 0) throw domain_error("level must be >= 0");
  require_uniform_nonzero(E, "level space");
  if (d == 0)  // empty product: the constants space
    return {Polynomial::constant(E.front().nvars(), Rational(1))};
  std::vector<Polynomial> products;
  std::vector<size_t> pick(static_cast<size_t>(d), 0);
  for (;;) {
    Polynomial prod = E[pick[0]];
    for (size_t i = 1; i < pick.size(); ++i) prod *= E[pick[i]];
    products.push_back(std::move(prod));
    // next nondecreasing tuple
    size_t pos = pick.size();
    while (pos > 0 && pick[pos - 1] == E.size() - 1) --pos;
    if (pos == 0) break;
    const size_t next = pick[pos - 1] + 1;
    for (size_t i = pos - 1; i < pick.size(); ++i) pick[i] = next;
  }
  return products;
}

SectionSpace level_space(const std::vector<Polynomial>& E, long long d, const Valuation& val) {
  const std::vector<Polynomial> products = level_products(E, d);
  Valuation::Triangular tri = val.triangularize(products);
  // Independence re-certified by a rank computation on the raw coefficients.
  if (linalg::rank(coefficient_matrix(tri.basis)) != static_cast<int>(tri.basis.size()))
    throw error("triangular basis failed the rank cross-check");
  return SectionSpace{d, std::move(tri.basis)};
}

std::vector<Exponent> level_values(const Valuation& val, const SectionSpace& space) {
  if (space.basis.empty()) throw domain_error("level values of an empty space");
  const Exponent shift = exp_scale(val.reference_value(), space.level);
  std::vector<Exponent> out;
  out.reserve(space.basis.size());
  for (const Polynomial& f : space.basis) out.push_back(exp_sub(val.value(f), shift));
  // Triangular bases arrive sorted by value; sort anyway for foreign input.
  std::sort(out.begin(), out.end(),
            [&](const Exponent& a, const Exponent& b) { return val.order().less(a, b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() != space.basis.size())
    throw error("value multiplicity inside one level; one-dimensional leaves violated");
  return out;
}

void ValueSemigroup::set_level(long long d, std::vector<Exponent> values) {
  if (d < 1) throw domain_error("semigroup levels start at 1");
  for (const Exponent& v : values)
    if (static_cast<int>(v.size()) != n_) throw dimension_error("level value length mismatch");
  levels_[d] = std::move(values);
}

const std::vector<Exponent>& ValueSemigroup::level(long long d) const {
  auto it = levels_.find(d);
  if (it == levels_.end())
    throw domain_error("level " + std::to_string(d) + " not computed");
  return it->second;
}

std::vector<GradedValue> ValueSemigroup::graded_through(long long dmax) const {
  std::vector<GradedValue> out;
  for (const auto& [d, vals] : levels_) {
    if (d > dmax) break;
    for (const Exponent& v : vals) out.push_back(GradedValue{d, v});
  }
  return out;
}

std::string ValueSemigroup::additivity_violation() const {
  for (const auto& [d, vd] : levels_) {
    for (const auto& [e, ve] : levels_) {
      auto it = levels_.find(d + e);
      if (it == levels_.end()) continue;
      std::set<Exponent> target(it->second.begin(), it->second.end());
      for (const Exponent& a : vd)
        for (const Exponent& b : ve)
          if (!target.count(exp_add(a, b)))
            return "S_" + std::to_string(d) + " + S_" + std::to_string(e) +
                   " escapes S_" + std::to_string(d + e) + " at " +
                   exponent_str(exp_add(a, b));
    }
  }
  return "";
}

ValueSemigroup semigroup_of_sections(const std::vector<Polynomial>& E, const Valuation& val,
                                     long long dmax) {
  if (dmax < 1) throw domain_error("dmax must be >= 1");
  ValueSemigroup S(val.dim());
  for (long long d = 1; d <= dmax; ++d)
    S.set_level(d, level_values(val, level_space(E, d, val)));
  return S;
}

std::vector<Exponent> semigroup_generated(const std::vector<GradedValue>& gens, long long d) {
  if (d < 1) throw domain_error("semigroup level must be >= 1");
  if (gens.empty()) return {};
  const size_t n = gens.front().value.size();
  for (const GradedValue& g : gens) {
    if (g.level < 1) throw domain_error("generator at level < 1");
    if (g.value.size() != n) throw dimension_error("generator value length mismatch");
  }
  std::vector<std::set<Exponent>> reach(static_cast<size_t>(d) + 1);
  reach[0].insert(Exponent(n, 0));
  for (long long l = 1; l <= d; ++l)
    for (const GradedValue& g : gens) {
      if (g.level > l) continue;
      for (const Exponent& w : reach[static_cast<size_t>(l - g.level)])
        reach[static_cast<size_t>(l)].insert(exp_add(w, g.value));
    }
  return {reach[static_cast<size_t>(d)].begin(), reach[static_cast<size_t>(d)].end()};
}

KhovanskiiBasis::KhovanskiiBasis(std::vector<std::pair<long long, Polynomial>> elems,
                                 const Valuation& val)
    : elems_(std::move(elems)) {
  if (elems_.empty()) throw input_error("empty khovanskii basis");
  std::map<long long, std::vector<Polynomial>> by_degree;
  for (const auto& [deg, f] : elems_) {
    if (deg < 1) throw input_error("khovanskii basis degrees start at 1");
    if (f.is_zero()) throw input_error("khovanskii basis contains zero");
    if (f.nvars() != val.nvars())
      throw dimension_error("khovanskii basis variable count mismatch");
    by_degree[deg].push_back(f);
  }
  for (const auto& [deg, fs] : by_degree) {
    if (linalg::rank(coefficient_matrix(fs)) != static_cast<int>(fs.size()))
      throw input_error("khovanskii basis degree-" + std::to_string(deg) +
                        " sublist is linearly dependent");
  }
}

std::vector<GradedValue> KhovanskiiBasis::graded_values(const Valuation& val) const {
  std::vector<GradedValue> out;
  out.reserve(elems_.size());
  for (const auto& [deg, f] : elems_) out.push_back(val.graded_value(f, deg));
  return out;
}

std::string KhovanskiiReport::str() const {
  if (pass)
    return "khovanskii check: PASS through level " + std::to_string(through_level);
  std::ostringstream os;
  os << "khovanskii check: FAIL at level " << fail_level << ", missing {";
  for (size_t i = 0; i < missing.size(); ++i) {
    if (i) os << ", ";
    os << exponent_str(missing[i]);
  }
  os << "}";
  return os.str();
}

KhovanskiiReport khovanskii_check(const KhovanskiiBasis& B, const Valuation& val,
                                  const ValueSemigroup& S) {
  const std::vector<GradedValue> gens = B.graded_values(val);
  for (const auto& [d, vals] : S.levels()) {
    const std::vector<Exponent> gen = semigroup_generated(gens, d);
    const std::set<Exponent> got(gen.begin(), gen.end());
    std::vector<Exponent> missing;
    for (const Exponent& v : vals)
      if (!got.count(v)) missing.push_back(v);
    if (!missing.empty()) {
      std::sort(missing.begin(), missing.end());
      return KhovanskiiReport{false, d, 0, std::move(missing)};
    }
  }
  KhovanskiiReport rep;
  rep.through_level = S.levels().empty() ? 0 : S.levels().rbegin()->first;
  return rep;
}

FiniteGenerationProbe finite_generation_probe(const Valuation& val,
                                              const std::vector<Polynomial>& E,
                                              long long dmax) {
  if (dmax < 2) throw input_error("finite generation probe needs dmax >= 2");
  const ValueSemigroup S = semigroup_of_sections(E, val, dmax);
  FiniteGenerationProbe probe;
  probe.dmax = dmax;
  // dstar = dmax would pass vacuously; cap below it so a pass means at least
  // one level was actually regenerated.
  for (long long dstar = 1; dstar < dmax; ++dstar) {
    const std::vector<GradedValue> gens = S.graded_through(dstar);
    bool ok = true;
    for (long long d = dstar + 1; d <= dmax && ok; ++d) {
      const std::vector<Exponent> gen = semigroup_generated(gens, d);
      const std::vector<Exponent>& want = S.level(d);
      std::set<Exponent> got(gen.begin(), gen.end());
      std::set<Exponent> target(want.begin(), want.end());
      ok = got == target;
    }
    if (ok) {
      probe.stabilized = true;
      probe.dstar = dstar;
      break;
    }
  }
  std::ostringstream os;
  if (probe.stabilized)
    os << "levels up to " << probe.dstar << " regenerate levels " << (probe.dstar + 1)
       << ".." << dmax;
  else
    os << "no proper prefix of levels regenerates the rest up to " << dmax;
  os << "; bounded probe, heuristic and non-conclusive beyond dmax";
  probe.note = os.str();
  return probe;
}

std::string levels_csv(const ValueSemigroup& S) {
  std::ostringstream os;
  os << "d";
  for (int i = 1; i <= S.dim(); ++i) os << ",v" << i;
  os << "\n";
  for (const auto& [d, vals] : S.levels())
    for (const Exponent& v : vals) {
      os << d;
      for (long long x : v) os << "," << x;
      os << "\n";
    }
  return os.str();
}

}  // namespace nok
