#include "nok/quantsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

namespace nok {

namespace {

// Compensated summation; used for every floating-point reduction so totals
// do not depend on summand count beyond one rounding.
struct KahanSum {
  double s = 0;
  double c = 0;
  void add(double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

std::string fmt_g(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

Rational bregman_raw(const ConvexPotential& nu, const Rational& nu_m,
                     const std::vector<Rational>& grad_m, const QPoint& u, const QPoint& m) {
  Rational b = nu.value(u) - nu_m;
  for (size_t k = 0; k < grad_m.size(); ++k) b -= grad_m[k] * (u[k] - m[k]);
  return b;
}

QPoint to_qpoint(const Exponent& m) {
  QPoint q;
  q.reserve(m.size());
  for (long long v : m) q.emplace_back(Rational(v));
  return q;
}

}  // namespace

ConvexPotential::ConvexPotential(Polynomial nu) : nu_(std::move(nu)) {
  const int n = nu_.nvars();
  grad_.reserve(n);
  for (int k = 0; k < n; ++k) grad_.push_back(nu_.derivative(k));
  hess_.resize(n);
  for (int j = 0; j < n; ++j) {
    hess_[j].reserve(n);
    for (int k = 0; k < n; ++k) hess_[j].push_back(grad_[j].derivative(k));
  }
}

ConvexPotential ConvexPotential::quadratic(int nvars) {
  if (nvars < 1) throw dimension_error("potential needs at least one variable");
  Polynomial nu = Polynomial::zero(nvars);
  for (int k = 0; k < nvars; ++k) {
    Exponent e(nvars, 0);
    e[k] = 2;
    nu += Polynomial::monomial(nvars, e, Rational(1, 2));
  }
  return ConvexPotential(std::move(nu));
}

ConvexPotential ConvexPotential::from_polynomial(const Polynomial& nu) {
  if (nu.nvars() < 1) throw dimension_error("potential needs at least one variable");
  return ConvexPotential(nu);
}

Rational ConvexPotential::value(const QPoint& u) const { return nu_.evaluate(u); }

std::vector<Rational> ConvexPotential::gradient_at(const QPoint& u) const {
  std::vector<Rational> g;
  g.reserve(grad_.size());
  for (const Polynomial& p : grad_) g.push_back(p.evaluate(u));
  return g;
}

bool ConvexPotential::hessian_positive_definite(const QPoint& u) const {
  const int n = nu_.nvars();
  // Leading principal minors, exact; n is at most 3 in practice.
  std::vector<std::vector<Rational>> H(n, std::vector<Rational>(n, Rational(0)));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) H[j][k] = hess_[j][k].evaluate(u);
  for (int k = 1; k <= n; ++k) {
    Rational det(0);
    if (k == 1) {
      det = H[0][0];
    } else if (k == 2) {
      det = H[0][0] * H[1][1] - H[0][1] * H[1][0];
    } else if (k == 3) {
      det = H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1]) -
            H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0]) +
            H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0]);
    } else {
      throw unsupported_dimension_error("convexity certificate limited to 3 variables");
    }
    if (!(det > Rational(0))) return false;
  }
  return true;
}

Rational bregman(const ConvexPotential& nu, const RationalPolytope& domain, const QPoint& u,
                 const QPoint& m) {
  if (!domain.contains(m)) throw domain_error("divergence base point lies outside the domain");
  if (!domain.contains(u)) throw domain_error("divergence argument lies outside the domain");
  return bregman_raw(nu, nu.value(m), nu.gradient_at(m), u, m);
}

QuadratureGrid::QuadratureGrid(const RationalPolytope& P, long long resolution)
    : P_(P), res_(resolution) {
  if (resolution < 1) throw config_error("quadrature resolution must be at least 1");
  const int n = P.ambient_dim();
  if (n > 2) throw unsupported_dimension_error("quadrature grids support at most 2 dimensions");
  const Rational vol = P.volume();
  if (!(vol > Rational(0)))
    throw domain_error("quadrature domain must be full-dimensional in its ambient space");

  std::vector<Rational> lo(n), hi(n);
  for (int k = 0; k < n; ++k) {
    lo[k] = P.vertices()[0][k];
    hi[k] = P.vertices()[0][k];
    for (const QPoint& v : P.vertices()) {
      if (v[k] < lo[k]) lo[k] = v[k];
      if (hi[k] < v[k]) hi[k] = v[k];
    }
  }
  // Midpoint lattice (2a+1)/(2r): a ranges over [r*lo - 1/2, r*hi - 1/2].
  const Rational half(1, 2);
  std::vector<long long> amin(n), amax(n);
  for (int k = 0; k < n; ++k) {
    amin[k] = (lo[k] * Rational(res_) - half).ceil_ll();
    amax[k] = (hi[k] * Rational(res_) - half).floor_ll();
  }
  auto push_if_inside = [this](QPoint&& q) {
    if (!P_.contains(q)) return;
    std::vector<double> qd;
    qd.reserve(q.size());
    for (const Rational& c : q) qd.push_back(c.to_double());
    nodes_.push_back(std::move(q));
    nodes_d_.push_back(std::move(qd));
  };
  if (n == 1) {
    for (long long a = amin[0]; a <= amax[0]; ++a)
      push_if_inside(QPoint{Rational(2 * a + 1, 2 * res_)});
  } else {
    for (long long a = amin[0]; a <= amax[0]; ++a)
      for (long long b = amin[1]; b <= amax[1]; ++b)
        push_if_inside(QPoint{Rational(2 * a + 1, 2 * res_), Rational(2 * b + 1, 2 * res_)});
  }
  if (nodes_.empty())
    throw domain_error("quadrature resolution too coarse: no midpoint node lies in the domain");
  cell_ = vol / Rational(static_cast<long long>(nodes_.size()));
  log_cell_ = std::log(cell_.to_double());
}

void certify_convexity(const ConvexPotential& nu, const QuadratureGrid& grid) {
  if (nu.nvars() != grid.dim())
    throw dimension_error("potential dimension does not match the quadrature domain");
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!nu.hessian_positive_definite(grid.node(i))) {
      std::ostringstream os;
      os << "potential is not strictly convex at node (";
      for (size_t k = 0; k < grid.node(i).size(); ++k)
        os << (k ? ", " : "") << grid.node(i)[k].str_compact();
      os << ")";
      throw domain_error(os.str());
    }
  }
}

SectionDensity density(const QuadratureGrid& grid, const ConvexPotential& nu, const QPoint& m,
                       double s) {
  if (s < 0) throw domain_error("deformation parameter must be nonnegative");
  if (nu.nvars() != grid.dim())
    throw dimension_error("potential dimension does not match the quadrature domain");
  if (static_cast<int>(m.size()) != grid.dim())
    throw dimension_error("density center dimension does not match the domain");
  if (!grid.domain().contains(m))
    throw domain_error("density center lies outside the domain");

  const Rational nu_m = nu.value(m);
  const std::vector<Rational> grad_m = nu.gradient_at(m);
  SectionDensity rho;
  rho.grid = &grid;
  rho.m = m;
  rho.s = s;
  rho.logv.resize(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    const Rational b = bregman_raw(nu, nu_m, grad_m, grid.node(i), m);
    rho.logv[i] = -s * b.to_double();
  }
  double mx = rho.logv[0];
  for (double l : rho.logv) mx = std::max(mx, l);
  KahanSum z;
  for (double l : rho.logv) z.add(std::exp(l - mx));
  rho.logZ = grid.log_cell_measure() + mx + std::log(z.s);
  for (double& l : rho.logv) l -= rho.logZ;
  return rho;
}

SectionDensity density(const QuadratureGrid& grid, const ConvexPotential& nu, const Exponent& m,
                       double s) {
  return density(grid, nu, to_qpoint(m), s);
}

double log_density_at(const SectionDensity& rho, const ConvexPotential& nu, const QPoint& u) {
  const Rational b = bregman(nu, rho.grid->domain(), u, rho.m);
  return -rho.s * b.to_double() - rho.logZ;
}

double mass_outside(const SectionDensity& rho, const Rational& eta) {
  if (!(eta > Rational(0))) throw domain_error("ball radius must be positive");
  const Rational eta2 = eta * eta;
  const QuadratureGrid& grid = *rho.grid;
  KahanSum acc;
  for (size_t i = 0; i < grid.size(); ++i) {
    Rational d2(0);
    const QPoint& u = grid.node(i);
    for (size_t k = 0; k < u.size(); ++k) {
      const Rational diff = u[k] - rho.m[k];
      d2 += diff * diff;
    }
    if (d2 >= eta2) acc.add(std::exp(rho.logv[i]));
  }
  return acc.s * grid.cell_measure().to_double();
}

double weak_pairing(const SectionDensity& rho, const TestSection& tau) {
  const QuadratureGrid& grid = *rho.grid;
  if (tau.expr.nvars() != grid.dim())
    throw dimension_error("test section dimension does not match the domain");
  KahanSum acc;
  for (size_t i = 0; i < grid.size(); ++i)
    acc.add(std::exp(rho.logv[i]) * tau.expr.evaluate(grid.node(i)).to_double());
  return acc.s * grid.cell_measure().to_double();
}

double affinity(const SectionDensity& a, const SectionDensity& b) {
  if (a.grid != b.grid) throw config_error("affinity requires densities on the same grid");
  if (a.s != b.s) throw config_error("affinity requires densities at the same s");
  KahanSum acc;
  for (size_t i = 0; i < a.logv.size(); ++i)
    acc.add(std::exp(0.5 * (a.logv[i] + b.logv[i])));
  return acc.s * a.grid->cell_measure().to_double();
}

std::vector<std::vector<double>> affinity_matrix(const std::vector<SectionDensity>& ds) {
  const size_t n = ds.size();
  std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      const double a = affinity(ds[i], ds[j]);
      A[i][j] = a;
      A[j][i] = a;
    }
  }
  return A;
}

double schedule_t(const Schedule& sch, double s) {
  if (!(sch.t0 > 0.0) || sch.t0 > 1.0)
    throw config_error("schedule t0 must lie in (0, 1]");
  if (s < 0) throw domain_error("schedule argument must be nonnegative");
  if (s <= 1.0) return 1.0 + (sch.t0 - 1.0) * s;
  return sch.t0 / s;
}

std::string S0Report::str() const {
  std::ostringstream os;
  if (found) {
    os << "s0 = " << fmt_g(s0);
  } else {
    os << "s0 not found within the sweep cap (" << steps << " sweep values examined)";
  }
  os << "; per-point outside mass";
  if (!found) os << " at the last s tried";
  os << ":";
  for (size_t i = 0; i < interior_ms.size(); ++i) {
    os << " m=(";
    for (size_t k = 0; k < interior_ms[i].size(); ++k)
      os << (k ? ", " : "") << interior_ms[i][k].str_compact();
    os << ") " << fmt_g(masses[i]);
  }
  return os.str();
}

S0Report find_s0(const QuadratureGrid& grid, const ConvexPotential& nu,
                 const std::vector<Exponent>& W0, double eps, const Rational& eta,
                 int cap_exp) {
  if (!(eps > 0)) throw domain_error("threshold must be positive");
  if (!(eta > Rational(0))) throw domain_error("ball radius must be positive");
  if (cap_exp < 0) throw config_error("sweep cap must be nonnegative");
  S0Report rep;
  for (const Exponent& w : W0) {
    QPoint q = to_qpoint(w);
    if (grid.domain().strictly_contains(q)) rep.interior_ms.push_back(std::move(q));
  }
  if (rep.interior_ms.empty())
    throw domain_error("no interior points among the fiber labels");
  double s = 1.0;
  for (int k = 0; k <= cap_exp; ++k, s *= 2.0) {
    rep.steps = k + 1;
    rep.masses.clear();
    bool all_below = true;
    for (const QPoint& m : rep.interior_ms) {
      const double mass = mass_outside(density(grid, nu, m, s), eta);
      rep.masses.push_back(mass);
      if (!(mass < eps)) all_below = false;
    }
    if (all_below) {
      rep.found = true;
      rep.s0 = s;
      return rep;
    }
  }
  rep.found = false;
  return rep;
}

namespace {

void compute_batch(const QuadratureGrid& grid, const ConvexPotential& nu,
                   const std::vector<QPoint>& ms, double s, int threads,
                   std::vector<SectionDensity>& out) {
  out.assign(ms.size(), SectionDensity{});
  const int T = std::max(1, std::min<int>(threads, static_cast<int>(ms.size())));
  if (T == 1) {
    for (size_t j = 0; j < ms.size(); ++j) out[j] = density(grid, nu, ms[j], s);
    return;
  }
  std::vector<std::exception_ptr> errs(ms.size());
  std::vector<std::thread> workers;
  workers.reserve(T);
  for (int t = 0; t < T; ++t) {
    workers.emplace_back([&, t]() {
      for (size_t j = static_cast<size_t>(t); j < ms.size(); j += static_cast<size_t>(T)) {
        try {
          out[j] = density(grid, nu, ms[j], s);
        } catch (...) {
          errs[j] = std::current_exception();
        }
      }
    });
  }
  for (std::thread& w : workers) w.join();
  for (const std::exception_ptr& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace

ConvergenceReport convergence_run(const RationalPolytope& delta0,
                                  const std::vector<Exponent>& W0, const QuantConfig& cfg) {
  if (!(cfg.s_start > 0)) throw config_error("s sweep must start above 0");
  if (!(cfg.s_factor > 1)) throw config_error("s sweep factor must exceed 1");
  if (cfg.s_count < 1) throw config_error("s sweep needs at least one value");
  if (!(cfg.eta > Rational(0))) throw config_error("eta must be positive");
  if (cfg.epsilons.empty()) throw config_error("at least one epsilon is required");
  for (double e : cfg.epsilons)
    if (!(e > 0)) throw config_error("epsilon values must be positive");
  if (cfg.threads < 1) throw config_error("worker count must be at least 1");
  if (W0.empty()) throw domain_error("fiber label set is empty");
  const Schedule sch{cfg.t0};
  schedule_t(sch, 0.0);  // validates t0

  const QuadratureGrid grid(delta0, cfg.resolution);
  const ConvexPotential nu = cfg.potential
                                 ? ConvexPotential::from_polynomial(*cfg.potential)
                                 : ConvexPotential::quadratic(grid.dim());
  if (nu.nvars() != grid.dim())
    throw config_error("potential variable count does not match the domain dimension");
  certify_convexity(nu, grid);

  ConvergenceReport rep;
  for (const TestSection& t : cfg.tests) rep.test_names.push_back(t.name);

  std::vector<QPoint> ms;
  std::vector<bool> interior;
  size_t n_interior = 0;
  for (const Exponent& w : W0) {
    QPoint q = to_qpoint(w);
    if (!delta0.contains(q))
      throw domain_error("fiber label " + exponent_str(w) + " lies outside the domain");
    interior.push_back(delta0.strictly_contains(q));
    if (interior.back()) ++n_interior;
    ms.push_back(std::move(q));
  }

  // Sweep: densities for one s at a time; rows in W0 order within each s.
  double s = cfg.s_start;
  std::vector<SectionDensity> batch;
  std::vector<std::vector<double>> interior_mass_tracks(ms.size());
  double final_max_affinity = 0;
  bool have_pairs = ms.size() > 1;
  for (int si = 0; si < cfg.s_count; ++si, s *= cfg.s_factor) {
    compute_batch(grid, nu, ms, s, cfg.threads, batch);
    double max_aff = 0;
    for (size_t i = 0; i < batch.size(); ++i)
      for (size_t j = i + 1; j < batch.size(); ++j)
        max_aff = std::max(max_aff, affinity(batch[i], batch[j]));
    if (have_pairs && s > 0 && !(max_aff < 1.0)) rep.affinity_below_one = false;
    final_max_affinity = max_aff;
    for (size_t j = 0; j < batch.size(); ++j) {
      ConvergenceRow row;
      row.s = s;
      row.t = schedule_t(sch, s);
      row.m = ms[j];
      row.interior = interior[j];
      row.mass_outside = mass_outside(batch[j], cfg.eta);
      for (const TestSection& t : cfg.tests) row.pairings.push_back(weak_pairing(batch[j], t));
      row.max_affinity = max_aff;
      if (interior[j]) interior_mass_tracks[j].push_back(row.mass_outside);
      rep.rows.push_back(std::move(row));
    }
  }
  for (size_t j = 0; j < ms.size(); ++j) {
    const std::vector<double>& tr = interior_mass_tracks[j];
    for (size_t k = 1; k < tr.size(); ++k)
      if (tr[k] > tr[k - 1]) rep.mass_nonincreasing = false;
  }

  if (n_interior > 0)
    for (double eps : cfg.epsilons)
      rep.s0_per_eps.emplace_back(eps, find_s0(grid, nu, W0, eps, cfg.eta, cfg.s0_cap));

  std::ostringstream os;
  os << "quantization summary\n";
  os << "  domain: dim " << grid.dim() << ", volume " << delta0.volume().str_compact() << ", "
     << grid.size() << " nodes at resolution " << grid.resolution() << " per unit\n";
  os << "  potential: " << nu.str() << " (strictly convex at every node)\n";
  os << "  schedule t0: " << fmt_g(cfg.t0) << "\n";
  os << "  fiber points: " << ms.size() << " (interior: " << n_interior << ")\n";
  os << "  s sweep: " << cfg.s_count << " values, geometric from " << fmt_g(cfg.s_start)
     << " with factor " << fmt_g(cfg.s_factor) << "\n";
  os << "  eta: " << cfg.eta.str_compact() << "\n";
  if (n_interior == 0) {
    os << "  note: no interior fiber points at this degree; boundary support diagnostics "
          "only, no pairing claims and no s0 search\n";
  } else {
    os << "  mass_outside nonincreasing for every interior point: "
       << (rep.mass_nonincreasing ? "yes" : "no") << "\n";
  }
  if (have_pairs) {
    os << "  max off-diagonal affinity strictly below 1 at every s > 0: "
       << (rep.affinity_below_one ? "yes" : "no") << "\n";
    os << "  final max off-diagonal affinity: " << fmt_g(final_max_affinity) << " at s = "
       << fmt_g(rep.rows.empty() ? 0.0 : rep.rows.back().s) << "\n";
  } else {
    os << "  affinity: n/a (single fiber point)\n";
  }
  for (const auto& [eps, s0rep] : rep.s0_per_eps)
    os << "  epsilon " << fmt_g(eps) << ": " << s0rep.str() << "\n";
  rep.summary = os.str();
  return rep;
}

std::string ConvergenceReport::csv() const {
  std::ostringstream os;
  os << "s,t_of_s";
  const size_t n = rows.empty() ? 0 : rows[0].m.size();
  for (size_t k = 0; k < n; ++k) os << ",m" << (k + 1);
  os << ",mass_outside";
  for (const std::string& name : test_names) os << ",pairing_" << name;
  os << ",max_affinity\n";
  for (const ConvergenceRow& row : rows) {
    os << fmt_g(row.s) << "," << fmt_g(row.t);
    for (size_t k = 0; k < row.m.size(); ++k) os << "," << fmt_g(row.m[k].to_double());
    os << "," << fmt_g(row.mass_outside);
    for (double p : row.pairings) os << "," << fmt_g(p);
    os << "," << fmt_g(row.max_affinity) << "\n";
  }
  return os.str();
}

}  // namespace nok
