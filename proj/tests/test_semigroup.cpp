#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "nok/errors.hpp"
#include "nok/semigroup.hpp"

using namespace nok;

namespace {

Valuation lex_val(int n) {
  return Valuation(GroupOrder::lex(n), Polynomial::constant(n, Rational(1)));
}

std::vector<Polynomial> cusp_basis() {
  return {Polynomial::parse("1", 1), Polynomial::parse("u^2", 1),
          Polynomial::parse("u^3", 1)};
}

std::vector<Polynomial> veronese_basis() {
  return {Polynomial::parse("1", 1), Polynomial::parse("u", 1),
          Polynomial::parse("u^2", 1)};
}

std::vector<Polynomial> segre_basis() {
  return {Polynomial::parse("1", 2), Polynomial::parse("u", 2),
          Polynomial::parse("v", 2), Polynomial::parse("u*v", 2)};
}

// Test-side span-dimension oracle: Gaussian elimination over the union
// support with last-column pivoting, independent of the library's
// valuation-triangularization.
int oracle_dim(const std::vector<Polynomial>& V) {
  std::set<Exponent> support;
  for (const Polynomial& f : V)
    for (const auto& [e, c] : f.terms()) support.insert(e);
  std::vector<Exponent> cols(support.begin(), support.end());
  std::vector<std::vector<Rational>> m;
  for (const Polynomial& f : V) {
    std::vector<Rational> row(cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
      auto it = f.terms().find(cols[j]);
      if (it != f.terms().end()) row[j] = it->second;
    }
    m.push_back(std::move(row));
  }
  int rank = 0;
  for (size_t col = cols.size(); col-- > 0;) {
    size_t pivot = m.size();
    for (size_t r = static_cast<size_t>(rank); r < m.size(); ++r)
      if (!m[r][col].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[static_cast<size_t>(rank)]);
    for (size_t r = static_cast<size_t>(rank) + 1; r < m.size(); ++r) {
      if (m[r][col].is_zero()) continue;
      const Rational f = m[r][col] / m[static_cast<size_t>(rank)][col];
      for (size_t j = 0; j < cols.size(); ++j)
        m[r][j] -= f * m[static_cast<size_t>(rank)][j];
    }
    ++rank;
  }
  return rank;
}

// Brute-force semigroup sums: every multiset of generators with levels
// totalling exactly d.
std::set<Exponent> oracle_sums(const std::vector<GradedValue>& gens, long long d) {
  std::set<Exponent> out;
  // dp[k] = set of values reachable at level k
  std::map<long long, std::set<Exponent>> dp;
  dp[0] = {Exponent(gens.empty() ? 0 : gens[0].value.size(), 0)};
  for (long long k = 1; k <= d; ++k) {
    for (const GradedValue& g : gens) {
      if (g.level > k || !dp.count(k - g.level)) continue;
      for (const Exponent& prev : dp[k - g.level])
        dp[k].insert(exp_add(prev, g.value));
    }
  }
  if (dp.count(d)) out = dp[d];
  return out;
}

}  // namespace

TEST_CASE("section space construction validates its input") {
  CHECK_THROWS_AS(make_section_space(0, cusp_basis()), input_error);
  CHECK_THROWS_AS(make_section_space(1, {}), input_error);
  CHECK_THROWS_AS(make_section_space(1, {Polynomial::zero(1)}), input_error);
  // dependent basis rejected by exact rank
  CHECK_THROWS_AS(make_section_space(1, {Polynomial::parse("1 + u", 1),
                                         Polynomial::parse("2 + 2*u", 1)}),
                  input_error);
  const SectionSpace sp = make_section_space(1, cusp_basis());
  CHECK(sp.basis.size() == 3);
}

TEST_CASE("level space dimensions match the product-span oracle") {
  const Valuation v = lex_val(1);
  const SectionSpace cusp2 = level_space(cusp_basis(), 2, v);
  CHECK(cusp2.level == 2);
  CHECK(cusp2.basis.size() == 6);
  CHECK(oracle_dim(level_products(cusp_basis(), 2)) == 6);

  const SectionSpace ver2 = level_space(veronese_basis(), 2, v);
  CHECK(ver2.basis.size() == 5);
  CHECK(oracle_dim(level_products(veronese_basis(), 2)) == 5);

  // d = 1 reproduces E itself
  const SectionSpace e1 = level_space(cusp_basis(), 1, v);
  CHECK(e1.basis.size() == 3);
  CHECK(level_values(v, e1) == v.value_image(cusp_basis()));

  // d = 0 is the constants space
  const SectionSpace e0 = level_space(cusp_basis(), 0, v);
  CHECK(e0.basis.size() == 1);
  CHECK(e0.basis[0] == Polynomial::constant(1, Rational(1)));
}

TEST_CASE("level values are the pinned graded sets") {
  const Valuation v = lex_val(1);
  CHECK(level_values(v, level_space(cusp_basis(), 1, v)) ==
        std::vector<Exponent>{{0}, {2}, {3}});
  CHECK(level_values(v, level_space(cusp_basis(), 2, v)) ==
        std::vector<Exponent>{{0}, {2}, {3}, {4}, {5}, {6}});
  CHECK(level_values(v, level_space(veronese_basis(), 3, v)) ==
        std::vector<Exponent>{{0}, {1}, {2}, {3}, {4}, {5}, {6}});
  const Valuation v2 = lex_val(2);
  CHECK(level_values(v2, level_space(segre_basis(), 1, v2)).size() == 4);
}

TEST_CASE("level values shift by the reference value") {
  // with h = u^2 the level-d values are value(f) - d*value(h)
  const Valuation v(GroupOrder::lex(1), Polynomial::parse("u^2", 1));
  const std::vector<Exponent> s1 = level_values(v, level_space(cusp_basis(), 1, v));
  CHECK(s1 == std::vector<Exponent>{{-2}, {0}, {1}});
}

TEST_CASE("semigroup of sections stores every level with the right sizes") {
  const Valuation v = lex_val(1);
  const ValueSemigroup S = semigroup_of_sections(cusp_basis(), v, 4);
  CHECK(S.dim() == 1);
  for (long long d = 1; d <= 4; ++d) {
    CHECK(S.has_level(d));
    CHECK(static_cast<int>(S.level(d).size()) ==
          oracle_dim(level_products(cusp_basis(), d)));
  }
  CHECK(S.level(1) == std::vector<Exponent>{{0}, {2}, {3}});
  CHECK(S.level(2).size() == 6);
  CHECK(S.additivity_violation().empty());
  CHECK_THROWS_AS(S.level(9), domain_error);
}

TEST_CASE("additivity violations are reported with a triple") {
  ValueSemigroup S(1);
  S.set_level(1, {{0}});
  S.set_level(2, {{1}});
  const std::string msg = S.additivity_violation();
  CHECK(!msg.empty());
  CHECK(msg.find("(0)") != std::string::npos);
}

TEST_CASE("additivity holds on the fixtures for all stored splits") {
  const Valuation v1 = lex_val(1);
  const Valuation v2 = lex_val(2);
  CHECK(semigroup_of_sections(cusp_basis(), v1, 6).additivity_violation().empty());
  CHECK(semigroup_of_sections(veronese_basis(), v1, 5).additivity_violation().empty());
  CHECK(semigroup_of_sections(segre_basis(), v2, 4).additivity_violation().empty());
}

TEST_CASE("generated level sets match the pinned cusp values") {
  const std::vector<GradedValue> gens = {{1, {0}}, {1, {2}}, {1, {3}}};
  CHECK(semigroup_generated(gens, 2) ==
        std::vector<Exponent>{{0}, {2}, {3}, {4}, {5}, {6}});
  CHECK(semigroup_generated(gens, 1) == std::vector<Exponent>{{0}, {2}, {3}});
  CHECK(semigroup_generated({}, 3).empty());
}

TEST_CASE("generated level sets agree with multiset enumeration") {
  const std::vector<std::vector<GradedValue>> cases = {
      {{1, {0}}, {1, {2}}, {1, {3}}},
      {{1, {0}}, {2, {5}}, {1, {1}}},
      {{1, {0, 0}}, {1, {1, 0}}, {1, {0, 1}}, {2, {1, 1}}},
      {{2, {3}}, {3, {1}}}};
  for (const auto& gens : cases) {
    for (long long d = 1; d <= 4; ++d) {
      const std::set<Exponent> want = oracle_sums(gens, d);
      const std::vector<Exponent> got = semigroup_generated(gens, d);
      CHECK(std::set<Exponent>(got.begin(), got.end()) == want);
      CHECK(std::is_sorted(got.begin(), got.end()));
    }
  }
}

TEST_CASE("khovanskii check passes on the cusp generators") {
  const Valuation v = lex_val(1);
  const ValueSemigroup S = semigroup_of_sections(cusp_basis(), v, 6);
  std::vector<std::pair<long long, Polynomial>> elems;
  for (const Polynomial& f : cusp_basis()) elems.emplace_back(1, f);
  const KhovanskiiBasis B(elems, v);
  const KhovanskiiReport rep = khovanskii_check(B, v, S);
  CHECK(rep.pass);
  CHECK(rep.str() == "khovanskii check: PASS through level 6");
}

TEST_CASE("khovanskii check reports the first failing level and gap") {
  const Valuation v = lex_val(1);
  const ValueSemigroup S = semigroup_of_sections(cusp_basis(), v, 4);
  const KhovanskiiBasis B({{1, Polynomial::parse("1", 1)},
                           {1, Polynomial::parse("u^2", 1)}},
                          v);
  const KhovanskiiReport rep = khovanskii_check(B, v, S);
  CHECK(!rep.pass);
  CHECK(rep.fail_level == 1);
  CHECK(rep.missing == std::vector<Exponent>{{3}});
  CHECK(rep.str() == "khovanskii check: FAIL at level 1, missing {(3)}");
}

TEST_CASE("khovanskii basis rejects dependent same-degree sublists") {
  const Valuation v = lex_val(1);
  CHECK_THROWS_AS(KhovanskiiBasis({{1, Polynomial::parse("u", 1)},
                                   {1, Polynomial::parse("2*u", 1)}},
                                  v),
                  input_error);
  CHECK_THROWS_AS(KhovanskiiBasis({{0, Polynomial::parse("u", 1)}}, v),
                  input_error);
  CHECK_THROWS_AS(KhovanskiiBasis({{1, Polynomial::zero(1)}}, v), input_error);
}

TEST_CASE("finite generation probe stabilizes at degree one on the fixtures") {
  const Valuation v1 = lex_val(1);
  const Valuation v2 = lex_val(2);
  const FiniteGenerationProbe cusp = finite_generation_probe(v1, cusp_basis(), 6);
  CHECK(cusp.stabilized);
  CHECK(cusp.dstar == 1);
  CHECK(cusp.dmax == 6);
  CHECK(!cusp.note.empty());
  CHECK(finite_generation_probe(v1, veronese_basis(), 4).dstar == 1);
  CHECK(finite_generation_probe(v2, segre_basis(), 4).dstar == 1);
  CHECK_THROWS_AS(finite_generation_probe(v1, cusp_basis(), 1), input_error);
}

TEST_CASE("levels csv lists one row per value with a header") {
  ValueSemigroup S(2);
  S.set_level(1, {{0, 0}, {1, 2}});
  const std::string csv = levels_csv(S);
  CHECK(csv == "d,v1,v2\n1,0,0\n1,1,2\n");
}
