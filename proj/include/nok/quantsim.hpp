#ifndef NOK_QUANTSIM_HPP
#define NOK_QUANTSIM_HPP

/*
 * Numerical model of section concentration on the special fiber.
 *
 * The normalized section attached to a lattice point m of the moment polytope
 * is modeled as the density rho_s^m proportional to exp(-s * B(u, m)), where
 * B is the Bregman divergence of a strictly convex potential.  As s grows the
 * density concentrates at m: outside-mass of any fixed ball decays like a
 * Gaussian tail, pairings against polynomial test sections converge to
 * evaluation at interior m, and the pairwise Bhattacharyya affinities decay
 * exponentially, so the family becomes independent past a finite s0.
 *
 * All node coordinates, cell measures and ball memberships are exact
 * rationals; only the exponentials and their compensated sums run in floating
 * point, with log-sum-exp normalization so large s never underflows.  Every
 * reduction runs in a fixed node order, which keeps reports bit-identical
 * regardless of worker count.
 */

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nok/polynomial.hpp"
#include "nok/polytope.hpp"

namespace nok {

// Strictly convex smooth potential with exact rational values and gradient.
class ConvexPotential {
 public:
  // nu(u) = |u|^2 / 2.
  static ConvexPotential quadratic(int nvars);
  static ConvexPotential from_polynomial(const Polynomial& nu);

  int nvars() const { return nu_.nvars(); }
  const Polynomial& expression() const { return nu_; }
  Rational value(const QPoint& u) const;
  std::vector<Rational> gradient_at(const QPoint& u) const;
  // Leading principal minors of the Hessian at u are all positive.
  bool hessian_positive_definite(const QPoint& u) const;
  std::string str() const { return nu_.str(); }

 private:
  explicit ConvexPotential(Polynomial nu);
  Polynomial nu_;
  std::vector<Polynomial> grad_;
  std::vector<std::vector<Polynomial>> hess_;
};

// B(u, m) = nu(u) - nu(m) - <grad nu(m), u - m>, exact; nonnegative and zero
// only at u = m when nu is strictly convex.  Throws domain_error when u or m
// leaves the domain.
Rational bregman(const ConvexPotential& nu, const RationalPolytope& domain, const QPoint& u,
                 const QPoint& m);

// Midpoint nodes (2a+1)/(2*resolution) of the bounding box, kept when they
// satisfy the H-rep exactly; the cell measure is volume/|nodes| so the total
// discrete measure equals the volume as a rational identity.
class QuadratureGrid {
 public:
  QuadratureGrid(const RationalPolytope& P, long long resolution);

  const RationalPolytope& domain() const { return P_; }
  long long resolution() const { return res_; }
  int dim() const { return P_.ambient_dim(); }
  size_t size() const { return nodes_.size(); }
  const std::vector<QPoint>& nodes() const { return nodes_; }
  const QPoint& node(size_t i) const { return nodes_[i]; }
  double node_coord(size_t i, int k) const { return nodes_d_[i][k]; }
  const Rational& cell_measure() const { return cell_; }
  double log_cell_measure() const { return log_cell_; }

 private:
  RationalPolytope P_;
  long long res_;
  std::vector<QPoint> nodes_;          // lex order, exact
  std::vector<std::vector<double>> nodes_d_;
  Rational cell_;
  double log_cell_;
};

// Throws domain_error naming the first node where the Hessian fails to be
// positive-definite.
void certify_convexity(const ConvexPotential& nu, const QuadratureGrid& grid);

// Normalized density stored as per-node log-values:
// sum_i exp(logv[i]) * cell = 1 up to floating-point rounding.
struct SectionDensity {
  const QuadratureGrid* grid = nullptr;
  QPoint m;
  double s = 0;
  std::vector<double> logv;
  double logZ = 0;  // log of the discrete normalizer
};

SectionDensity density(const QuadratureGrid& grid, const ConvexPotential& nu, const QPoint& m,
                       double s);
SectionDensity density(const QuadratureGrid& grid, const ConvexPotential& nu, const Exponent& m,
                       double s);

// Continuous extension log rho_s^m(u) at an arbitrary domain point.
double log_density_at(const SectionDensity& rho, const ConvexPotential& nu, const QPoint& u);

// Mass of the domain outside the closed eta-ball around m (exact membership
// test on squared distance); in [0,1] up to rounding.
double mass_outside(const SectionDensity& rho, const Rational& eta);

struct TestSection {
  std::string name;
  Polynomial expr;  // polynomial in the action coordinates u1..un
};

// Integral of tau against rho; converges to tau(m) for interior m as s grows.
double weak_pairing(const SectionDensity& rho, const TestSection& tau);

// Bhattacharyya affinity: integral of sqrt(rho_a * rho_b); requires matching
// grid and s (config_error otherwise).
double affinity(const SectionDensity& a, const SectionDensity& b);
std::vector<std::vector<double>> affinity_matrix(const std::vector<SectionDensity>& ds);

// Deformation schedule: linear ramp 1 -> t0 on [0,1], then t0/s.  Continuous,
// eventually strictly decreasing, t(s) -> 0 while t(s)*s^2 is unbounded.
struct Schedule {
  double t0 = 0.5;
};

double schedule_t(const Schedule& sch, double s);

struct S0Report {
  bool found = false;
  double s0 = 0;  // meaningful when found
  std::vector<QPoint> interior_ms;
  std::vector<double> masses;  // per interior m, at s0 (or at the cap)
  int steps = 0;               // sweep values examined
  std::string str() const;
};

// Smallest s on the geometric sweep 1, 2, 4, ..., 2^cap_exp with
// mass_outside < eps for every interior point of W0; not-found is reported,
// never silent.  Throws domain_error when W0 has no interior points.
S0Report find_s0(const QuadratureGrid& grid, const ConvexPotential& nu,
                 const std::vector<Exponent>& W0, double eps, const Rational& eta,
                 int cap_exp = 20);

struct QuantConfig {
  double s_start = 1.0;
  double s_factor = 2.0;
  int s_count = 11;
  Rational eta = Rational(1, 2);
  std::vector<double> epsilons{1e-3};
  long long resolution = 100;
  double t0 = 0.5;
  std::optional<Polynomial> potential;  // default: quadratic in dim(domain)
  std::vector<TestSection> tests;
  int s0_cap = 20;
  int threads = 1;
};

struct ConvergenceRow {
  double s = 0;
  double t = 0;
  QPoint m;
  bool interior = false;
  double mass_outside = 0;
  std::vector<double> pairings;  // parallel to test sections
  double max_affinity = 0;       // max off-diagonal at this s (0 if no pair)
};

struct ConvergenceReport {
  std::vector<std::string> test_names;
  std::vector<ConvergenceRow> rows;  // s ascending, W0 order within each s
  std::vector<std::pair<double, S0Report>> s0_per_eps;
  bool mass_nonincreasing = true;   // over interior points along the sweep
  bool affinity_below_one = true;   // max off-diagonal < 1 for every s > 0
  std::string summary;

  // Columns: s, t_of_s, m coordinates, mass_outside, one pairing column per
  // test section, max_affinity.
  std::string csv() const;
};

// Full sweep over the fiber points W0 of delta0.  Densities for distinct
// (s, m) may be computed on cfg.threads workers; every reduction is
// fixed-order, so the report is byte-identical for any worker count.
ConvergenceReport convergence_run(const RationalPolytope& delta0,
                                  const std::vector<Exponent>& W0, const QuantConfig& cfg);

}  // namespace nok

#endif
