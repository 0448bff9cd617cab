#include <cmath>
#include <vector>

#include "doctest.h"
#include "nok/errors.hpp"
#include "nok/quantsim.hpp"

using namespace nok;

namespace {

QPoint qp(std::initializer_list<long long> xs) {
  QPoint out;
  for (long long x : xs) out.emplace_back(Rational(x));
  return out;
}

RationalPolytope segment(long long a, long long b) {
  return RationalPolytope::hull({qp({a}), qp({b})});
}

RationalPolytope unit_square() {
  return RationalPolytope::hull({qp({0, 0}), qp({1, 0}), qp({0, 1}), qp({1, 1})});
}

// Continuous outside-mass oracle for the quadratic potential on a segment:
// density exp(-s (u-m)^2 / 2) restricted to [m-a, m+b], mass outside the
// eta-ball, all through the error function.
double erf_mass_oracle(double s, double a, double b, double eta) {
  const double c = std::sqrt(s / 2.0);
  const double num = (std::erf(c * a) - std::erf(c * eta)) +
                     (std::erf(c * b) - std::erf(c * eta));
  const double den = std::erf(c * a) + std::erf(c * b);
  return num / den;
}

}  // namespace

TEST_CASE("quadratic potential has exact values, gradients and a definite hessian") {
  const ConvexPotential nu = ConvexPotential::quadratic(2);
  CHECK(nu.value(qp({1, 1})) == Rational(1));
  CHECK(nu.value({Rational(1, 2), Rational(0)}) == Rational(1, 8));
  CHECK(nu.gradient_at(qp({3, -2})) == std::vector<Rational>{3, -2});
  CHECK(nu.hessian_positive_definite(qp({0, 0})));
  CHECK(nu.str() == "1/2*u1^2 + 1/2*u2^2");
}

TEST_CASE("bregman divergence of the quadratic potential is half squared distance") {
  const ConvexPotential nu1 = ConvexPotential::quadratic(1);
  const RationalPolytope seg = segment(0, 3);
  CHECK(bregman(nu1, seg, qp({1}), qp({1})) == Rational(0));
  CHECK(bregman(nu1, seg, qp({1}), qp({0})) == Rational(1, 2));
  CHECK(bregman(nu1, seg, {Rational(5, 2)}, qp({1})) == Rational(9, 8));

  const ConvexPotential nu2 = ConvexPotential::quadratic(2);
  const RationalPolytope sq = unit_square();
  CHECK(bregman(nu2, sq, qp({1, 1}), qp({0, 0})) == Rational(1));
  CHECK_THROWS_AS(bregman(nu1, seg, qp({7}), qp({1})), domain_error);
  CHECK_THROWS_AS(bregman(nu1, seg, qp({1}), qp({-1})), domain_error);
}

TEST_CASE("a custom potential feeds exact derivatives into the divergence") {
  // nu = u^2 + u^4 is strictly convex on any segment
  const ConvexPotential nu =
      ConvexPotential::from_polynomial(Polynomial::parse("u^2 + u^4", 1));
  const RationalPolytope seg = segment(-1, 1);
  // B(u, 0) = nu(u) for this nu since grad nu(0) = 0 and nu(0) = 0
  CHECK(bregman(nu, seg, {Rational(1, 2)}, qp({0})) ==
        Rational(1, 4) + Rational(1, 16));
  const QuadratureGrid grid(seg, 4);
  certify_convexity(nu, grid);
}

TEST_CASE("non-convex potentials fail the certificate with a named node") {
  const ConvexPotential nu =
      ConvexPotential::from_polynomial(Polynomial::parse("-1/2*u^2", 1));
  const QuadratureGrid grid(segment(0, 3), 4);
  CHECK_THROWS_AS(certify_convexity(nu, grid), domain_error);
}

TEST_CASE("grid nodes are the midpoints kept by the exact membership test") {
  const QuadratureGrid g(segment(0, 3), 2);
  REQUIRE(g.size() == 6);
  CHECK(g.node(0) == QPoint{Rational(1, 4)});
  CHECK(g.node(5) == QPoint{Rational(11, 4)});
  CHECK(g.cell_measure() == Rational(1, 2));
  // discrete measure identity: |nodes| * cell = volume exactly
  CHECK(Rational(static_cast<long long>(g.size())) * g.cell_measure() == Rational(3));

  const RationalPolytope tri =
      RationalPolytope::hull({qp({0, 0}), qp({1, 0}), qp({0, 1})});
  const QuadratureGrid tg(tri, 2);
  REQUIRE(tg.size() == 3);  // (3/4,3/4) falls outside, the edge points stay
  CHECK(tg.cell_measure() == Rational(1, 6));
  for (const QPoint& u : tg.nodes()) CHECK(tri.contains(u));
}

TEST_CASE("grid construction rejects unusable domains") {
  CHECK_THROWS_AS(QuadratureGrid(segment(0, 3), 0), config_error);
  // a segment embedded in the plane has no area to integrate over
  const RationalPolytope flat = RationalPolytope::hull({qp({0, 0}), qp({2, 2})});
  CHECK_THROWS_AS(QuadratureGrid(flat, 4), domain_error);
  // a sliver that misses every midpoint at resolution 1
  const RationalPolytope sliver = RationalPolytope::hull(
      {qp({0, 0}), qp({1, 0}), {Rational(1), Rational(1, 10)}});
  CHECK_THROWS_AS(QuadratureGrid(sliver, 1), domain_error);
}

TEST_CASE("density at s = 0 is the exact uniform density") {
  const QuadratureGrid g(segment(0, 3), 100);
  const ConvexPotential nu = ConvexPotential::quadratic(1);
  const SectionDensity rho = density(g, nu, qp({1}), 0.0);
  for (double lv : rho.logv) CHECK(std::exp(lv) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("densities integrate to one and never overflow") {
  const QuadratureGrid g(segment(0, 3), 100);
  const ConvexPotential nu = ConvexPotential::quadratic(1);
  for (double s : {0.0, 1.0, 50.0, 1e4, 1e8}) {
    const SectionDensity rho = density(g, nu, qp({1}), s);
    double total = 0;
    for (double lv : rho.logv) total += std::exp(lv);
    total *= g.cell_measure().to_double();
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::isfinite(rho.logZ));
  }
  CHECK_THROWS_AS(density(g, nu, qp({1}), -1.0), domain_error);
  CHECK_THROWS_AS(density(g, nu, qp({9}), 1.0), domain_error);
}

TEST_CASE("the density ratio between base point and offset follows the rate") {
  const QuadratureGrid g(segment(0, 3), 100);
  const ConvexPotential nu = ConvexPotential::quadratic(1);
  const double s = 8.0;
  const SectionDensity rho = density(g, nu, qp({1}), s);
  const double at_m = log_density_at(rho, nu, qp({1}));
  const double at_u = log_density_at(rho, nu, {Rational(3, 2)});
  // log ratio = s * B(u, m) = s * (1/2)^2 / 2 = 1 exactly for s = 8
  CHECK(at_m - at_u == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grid refinement leaves the normalizer nearly unchanged") {
  const ConvexPotential nu = ConvexPotential::quadratic(1);
  const QuadratureGrid coarse(segment(0, 3), 100);
  const QuadratureGrid fine(segment(0, 3), 400);
  for (double s : {1.0, 50.0, 200.0}) {
    const SectionDensity a = density(coarse, nu, qp({1}), s);
    const SectionDensity b = density(fine, nu, qp({1}), s);
    // log-normalizers agree once the cell measure is factored out
    CHECK(a.logZ == doctest::Approx(b.logZ).epsilon(1e-5));
  }
}

TEST_CASE("outside mass at s = 0 is the exact volume fraction") {
  const QuadratureGrid g(segment(0, 3), 100);
  const ConvexPotential nu = ConvexPotential::quadratic(1);
  const SectionDensity rho = density(g, nu, qp({1}), 0.0);
  CHECK(mass_outside(rho, Rational(1, 2)) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // a ball covering the whole segment leaves nothing outside
  CHECK(mass_outside(rho, Rational(4)) == 0.0);
  CHECK_THROWS_AS(mass_outside(rho, Rational(0)), domain_error);
}

TEST_CASE("outside mass matches the error-function oracle and decays monotonically") {
  const QuadratureGrid g(segment(0, 3), 200);
  const ConvexPotential nu = ConvexPotential::quadratic(1);
  double prev = 1.0;
  for (double s : {1.0, 4.0, 16.0, 64.0, 200.0}) {
    const double mass = mass_outside(density(g, nu, qp({1}), s), Rational(1, 2));
    CHECK(mass < prev);
    prev = mass;
    const double oracle = erf_mass_oracle(s, 1.0, 2.0, 0.5);
    CHECK(mass == doctest::Approx(oracle).epsilon(0.1));
  }
  // the s = 200 tail is genuinely tiny
  const double tail = mass_outside(density(g, nu, qp({1}), 200.0), Rational(1, 2));
  CHECK(tail < 1e-9);
  CHECK(tail > 0.0);
}

TEST_CASE("weak pairings reproduce the uniform and concentrated limits") {
  const QuadratureGrid g(segment(0, 3), 100);
  const ConvexPotential nu = ConvexPotential::quadratic(1);
  const TestSection one{"one", Polynomial::parse("1", 1)};
  const TestSection u{"u", Polynomial::parse("u", 1)};

  const SectionDensity uniform = density(g, nu, qp({1}), 0.0);
  CHECK(weak_pairing(uniform, one) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(weak_pairing(uniform, u) == doctest::Approx(1.5).epsilon(1e-12));

  const SectionDensity sharp = density(g, nu, qp({1}), 400.0);
  CHECK(weak_pairing(sharp, one) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(weak_pairing(sharp, u) == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("pairing against a linear section is exact for a centered point") {
  const QuadratureGrid g(segment(0, 6), 100);
  const ConvexPotential nu = ConvexPotential::quadratic(1);
  const TestSection u{"u", Polynomial::parse("u", 1)};
  // node set and density are symmetric around m = 3
  for (double s : {1.0, 10.0, 100.0}) {
    const SectionDensity rho = density(g, nu, qp({3}), s);
    CHECK(weak_pairing(rho, u) == doctest::Approx(3.0).epsilon(1e-8));
  }
}

TEST_CASE("pairing error decays with a steep log-log slope") {
  const QuadratureGrid g(segment(0, 3), 100);
  const ConvexPotential nu = ConvexPotential::quadratic(1);
  const TestSection u{"u", Polynomial::parse("u", 1)};
  std::vector<double> ss = {1, 2, 4, 8, 16, 32};
  std::vector<double> errs;
  for (double s : ss)
    errs.push_back(std::fabs(weak_pairing(density(g, nu, qp({1}), s), u) - 1.0));
  for (double e : errs) CHECK(e > 0.0);
  // least-squares slope over the final decade (s >= 3.2)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 2; i < ss.size(); ++i) {
    const double x = std::log(ss[i]), y = std::log(errs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope <= -0.9);
}

TEST_CASE("affinities are one at s = 0 and decay at the bhattacharyya rate") {
  const QuadratureGrid g(segment(0, 6), 100);
  const ConvexPotential nu = ConvexPotential::quadratic(1);

  const SectionDensity a0 = density(g, nu, qp({2}), 0.0);
  const SectionDensity b0 = density(g, nu, qp({3}), 0.0);
  CHECK(affinity(a0, b0) == doctest::Approx(1.0).epsilon(1e-12));

  // unit-distance interior pair: affinity ~ exp(-s/8)
  const double s = 100.0;
  const SectionDensity a = density(g, nu, qp({2}), s);
  const SectionDensity b = density(g, nu, qp({3}), s);
  CHECK(affinity(a, b) ==
        doctest::Approx(std::exp(-s / 8.0)).epsilon(0.05));
  CHECK(affinity(a, a) == doctest::Approx(1.0).epsilon(1e-12));

  const SectionDensity ah = density(g, nu, qp({2}), 1000.0);
  const SectionDensity bh = density(g, nu, qp({3}), 1000.0);
  CHECK(affinity(ah, bh) < 1e-6);
}

TEST_CASE("the affinity log decays linearly in s over a decade") {
  const QuadratureGrid g(segment(0, 6), 100);
  const ConvexPotential nu = ConvexPotential::quadratic(1);
  const double l64 = std::log(
      affinity(density(g, nu, qp({2}), 64.0), density(g, nu, qp({3}), 64.0)));
  const double l128 = std::log(
      affinity(density(g, nu, qp({2}), 128.0), density(g, nu, qp({3}), 128.0)));
  // slope between the doublings matches -1/8 per unit s within 5%
  CHECK((l128 - l64) / 64.0 == doctest::Approx(-1.0 / 8.0).epsilon(0.05));
}

TEST_CASE("affinity matrices are symmetric with a unit diagonal") {
  const QuadratureGrid g(segment(0, 6), 50);
  const ConvexPotential nu = ConvexPotential::quadratic(1);
  std::vector<SectionDensity> ds;
  for (long long m = 1; m <= 5; ++m) ds.push_back(density(g, nu, qp({m}), 10.0));
  const auto A = affinity_matrix(ds);
  for (size_t i = 0; i < ds.size(); ++i) {
    CHECK(A[i][i] == doctest::Approx(1.0).epsilon(1e-12));
    for (size_t j = 0; j < ds.size(); ++j) {
      CHECK(A[i][j] == A[j][i]);
      if (i != j) CHECK(A[i][j] < 1.0);
    }
  }
}

TEST_CASE("affinity refuses mismatched grids or parameters") {
  const QuadratureGrid g1(segment(0, 3), 50);
  const QuadratureGrid g2(segment(0, 3), 60);
  const ConvexPotential nu = ConvexPotential::quadratic(1);
  const SectionDensity a = density(g1, nu, qp({1}), 4.0);
  const SectionDensity b = density(g2, nu, qp({1}), 4.0);
  const SectionDensity c = density(g1, nu, qp({1}), 8.0);
  CHECK_THROWS_AS(affinity(a, b), config_error);
  CHECK_THROWS_AS(affinity(a, c), config_error);
}

TEST_CASE("the deformation schedule ramps, decays and stays continuous") {
  const Schedule sch{0.5};
  CHECK(schedule_t(sch, 0.0) == 1.0);
  CHECK(schedule_t(sch, 1.0) == 0.5);
  CHECK(schedule_t(sch, 11.0) == doctest::Approx(1.0 / 22.0).epsilon(1e-12));
  CHECK(std::fabs(schedule_t(sch, 1.0 - 1e-9) - schedule_t(sch, 1.0 + 1e-9)) < 1e-6);
  // strictly decreasing past the ramp
  double prev = schedule_t(sch, 1.0);
  for (double s = 2.0; s <= 64.0; s *= 2.0) {
    const double t = schedule_t(sch, s);
    CHECK(t < prev);
    prev = t;
  }
  // t -> 0 while t * s^2 grows without bound (t * s^2 = t0 * s past the ramp)
  CHECK(schedule_t(sch, 1e6) < 1e-5);
  CHECK(schedule_t(sch, 1e6) * 1e6 * 1e6 > 1e5);
  CHECK(schedule_t(sch, 1e8) * 1e8 * 1e8 > 1e7);
  CHECK_THROWS_AS(schedule_t(Schedule{0.0}, 1.0), config_error);
  CHECK_THROWS_AS(schedule_t(Schedule{1.5}, 1.0), config_error);
  CHECK_THROWS_AS(schedule_t(sch, -1.0), domain_error);
}

TEST_CASE("the independence threshold lands within one sweep step of the oracle") {
  const QuadratureGrid g(segment(0, 3), 100);
  const ConvexPotential nu = ConvexPotential::quadratic(1);
  const std::vector<Exponent> W0 = {{0}, {1}, {2}, {3}};

  const S0Report easy = find_s0(g, nu, W0, 1.0, Rational(1, 2));
  CHECK(easy.found);
  CHECK(easy.s0 == 1.0);
  CHECK(easy.interior_ms.size() == 2);

  const S0Report rep = find_s0(g, nu, W0, 1e-3, Rational(1, 2));
  CHECK(rep.found);
  CHECK(rep.s0 == 64.0);
  CHECK(rep.str().find("s0 = 64") != std::string::npos);
  // continuous oracle: the threshold crossing sits inside (s0/2, s0]
  CHECK(erf_mass_oracle(rep.s0, 1.0, 2.0, 0.5) < 1e-3);
  CHECK(erf_mass_oracle(rep.s0 / 2.0, 1.0, 2.0, 0.5) >= 1e-3);
}

TEST_CASE("an unreachable threshold produces a not-found report, never silence") {
  const QuadratureGrid g(segment(0, 3), 100);
  const ConvexPotential nu = ConvexPotential::quadratic(1);
  const std::vector<Exponent> W0 = {{0}, {1}, {2}, {3}};
  const S0Report rep = find_s0(g, nu, W0, 1e-9, Rational(1, 2), 3);
  CHECK(!rep.found);
  CHECK(rep.steps == 4);
  CHECK(rep.masses.size() == 2);
  CHECK(rep.str().find("not found") != std::string::npos);
  CHECK_THROWS_AS(find_s0(g, nu, {{0}, {3}}, 1e-3, Rational(1, 2)), domain_error);
}

TEST_CASE("a convergence run reports monotone concentration on the cusp fiber") {
  const std::vector<Exponent> W0 = {{0}, {2}, {3}};
  const RationalPolytope delta0 = segment(0, 3);
  QuantConfig cfg;
  cfg.s_count = 7;
  cfg.resolution = 100;
  cfg.tests = {{"u", Polynomial::parse("u", 1)}};
  const ConvergenceReport rep = convergence_run(delta0, W0, cfg);

  CHECK(rep.rows.size() == 21);
  CHECK(rep.mass_nonincreasing);
  CHECK(rep.affinity_below_one);
  REQUIRE(rep.s0_per_eps.size() == 1);
  CHECK(rep.s0_per_eps[0].first == 1e-3);
  CHECK(rep.s0_per_eps[0].second.found);
  CHECK(rep.s0_per_eps[0].second.s0 == 64.0);

  // the interior point m = 2 concentrates: pairing approaches 2
  double last_pairing = 0;
  for (const ConvergenceRow& row : rep.rows)
    if (row.interior && row.m == QPoint{Rational(2)}) last_pairing = row.pairings[0];
  CHECK(last_pairing == doctest::Approx(2.0).epsilon(1e-2));

  const std::string csv = rep.csv();
  CHECK(csv.find("s,t_of_s,m1,mass_outside,pairing_u,max_affinity\n") == 0);
  CHECK(rep.summary.find("quantization summary") != std::string::npos);
}

TEST_CASE("convergence runs are byte-identical across worker counts") {
  const std::vector<Exponent> W0 = {{0}, {2}, {3}};
  const RationalPolytope delta0 = segment(0, 3);
  QuantConfig cfg;
  cfg.s_count = 5;
  cfg.resolution = 60;
  cfg.tests = {{"u", Polynomial::parse("u", 1)}};
  cfg.threads = 1;
  const ConvergenceReport one = convergence_run(delta0, W0, cfg);
  cfg.threads = 3;
  const ConvergenceReport three = convergence_run(delta0, W0, cfg);
  cfg.threads = 8;
  const ConvergenceReport eight = convergence_run(delta0, W0, cfg);
  CHECK(one.csv() == three.csv());
  CHECK(one.csv() == eight.csv());
  CHECK(one.summary == three.summary);
  CHECK(one.summary == eight.summary);
}

TEST_CASE("a fiber with no interior points downgrades the claims honestly") {
  const std::vector<Exponent> W0 = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  QuantConfig cfg;
  cfg.s_count = 3;
  cfg.resolution = 20;
  const ConvergenceReport rep = convergence_run(unit_square(), W0, cfg);
  CHECK(rep.rows.size() == 12);
  CHECK(rep.s0_per_eps.empty());
  CHECK(rep.summary.find("no interior fiber points") != std::string::npos);
}

TEST_CASE("convergence configuration is validated before any work") {
  const std::vector<Exponent> W0 = {{0}, {2}, {3}};
  const RationalPolytope delta0 = segment(0, 3);
  QuantConfig cfg;
  cfg.s_count = 0;
  CHECK_THROWS_AS(convergence_run(delta0, W0, cfg), config_error);
  cfg = QuantConfig{};
  cfg.s_factor = 1.0;
  CHECK_THROWS_AS(convergence_run(delta0, W0, cfg), config_error);
  cfg = QuantConfig{};
  cfg.epsilons = {};
  CHECK_THROWS_AS(convergence_run(delta0, W0, cfg), config_error);
  cfg = QuantConfig{};
  cfg.threads = 0;
  CHECK_THROWS_AS(convergence_run(delta0, W0, cfg), config_error);
  cfg = QuantConfig{};
  cfg.potential = Polynomial::parse("u1 + u2", 2);
  CHECK_THROWS_AS(convergence_run(delta0, W0, cfg), config_error);
  cfg = QuantConfig{};
  CHECK_THROWS_AS(convergence_run(delta0, {{9}}, cfg), domain_error);
}
