#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nok/degeneration.hpp"
#include "nok/errors.hpp"
#include "nok/problem.hpp"
#include "nok/quantsim.hpp"

namespace {

using namespace nok;

struct Pipeline {
  ProblemFile pf;
  std::vector<Polynomial> E;
  Valuation val;
};

Pipeline load(const std::string& input, long long d_ovr, long long dmax_ovr) {
  ProblemFile pf = ProblemFile::parse_file(input);
  if (d_ovr >= 1) pf.d = d_ovr;
  if (dmax_ovr >= 1) pf.dmax = dmax_ovr;
  if (pf.dmax < pf.d) pf.dmax = pf.d;
  std::vector<Polynomial> E = pf.make_generators();
  Valuation val(pf.make_order(), pf.make_h());
  return Pipeline{std::move(pf), std::move(E), std::move(val)};
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw input_error("cannot write output file: " + p.string());
  out << content;
}

std::filesystem::path prepare_out(const std::string& out_dir) {
  std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw input_error("cannot create output directory: " + out_dir);
  return dir;
}

std::string vertex_list(const RationalPolytope& body) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < body.vertices().size(); ++i) {
    const QPoint& v = body.vertices()[i];
    os << (i ? ", " : "");
    if (v.size() == 1) {
      os << v[0].str();
    } else {
      os << "(";
      for (size_t k = 0; k < v.size(); ++k) os << (k ? ", " : "") << v[k].str();
      os << ")";
    }
  }
  os << "]";
  return os.str();
}

int cmd_body(const Pipeline& P, const std::string& out_dir) {
  const ValueSemigroup S = semigroup_of_sections(P.E, P.val, P.pf.dmax);
  const RationalPolytope body = okounkov_body(RationalCone::from_semigroup(S));
  const LatticePointSet pts = lattice_points(body, P.pf.d);
  size_t n_interior = 0;
  for (bool b : pts.interior) n_interior += b ? 1 : 0;

  std::ostringstream lattice;
  lattice << "lattice points at scale " << P.pf.d << ": " << pts.points.size() << " (interior "
          << n_interior << ")\n";
  for (size_t i = 0; i < pts.points.size(); ++i)
    lattice << "  " << exponent_str(pts.points[i]) << " "
            << (pts.interior[i] ? "interior" : "boundary") << "\n";

  std::cout << "body: " << vertex_list(body) << "\n";
  std::cout << body.json_block() << "\n";
  std::cout << lattice.str();
  if (!out_dir.empty()) {
    const auto dir = prepare_out(out_dir);
    write_file(dir / "body.json", body.json_block() + "\n");
    write_file(dir / "lattice.txt", lattice.str());
  }
  return 0;
}

int cmd_semigroup(const Pipeline& P, const std::string& out_dir) {
  const ValueSemigroup S = semigroup_of_sections(P.E, P.val, P.pf.dmax);
  const std::string csv = levels_csv(S);
  std::cout << csv;
  const std::string viol = S.additivity_violation();
  std::cout << "additivity: " << (viol.empty() ? "ok" : "violated: " + viol) << "\n";
  if (P.pf.dmax >= 2) {
    const FiniteGenerationProbe probe = finite_generation_probe(P.val, P.E, P.pf.dmax);
    std::cout << "finite generation probe: ";
    if (probe.stabilized)
      std::cout << "levels through " << probe.dstar << " regenerate levels through "
                << probe.dmax;
    else
      std::cout << "no stabilization through " << probe.dmax;
    std::cout << " (" << probe.note << ")\n";
  } else {
    std::cout << "finite generation probe: skipped (needs dmax >= 2)\n";
  }
  if (!out_dir.empty()) {
    const auto dir = prepare_out(out_dir);
    write_file(dir / "levels.csv", csv);
  }
  return 0;
}

int cmd_khovanskii(const Pipeline& P) {
  const ValueSemigroup S = semigroup_of_sections(P.E, P.val, P.pf.dmax);
  const KhovanskiiBasis B(P.pf.basis_elems(), P.val);
  std::cout << khovanskii_check(B, P.val, S).str() << "\n";
  return 0;
}

// Shared by degenerate/verify/quantize: the lift construction is only
// meaningful when the declared basis regenerates every level through d.
DegenerationSpec build_spec(const Pipeline& P, const ValueSemigroup& S) {
  const KhovanskiiBasis B(P.pf.basis_elems(), P.val);
  const KhovanskiiReport rep = khovanskii_check(B, P.val, S);
  if (!rep.pass) throw khovanskii_violation_error(rep.str());
  return make_degeneration(B, P.val, P.pf.d, S.level(P.pf.d), P.pf.covector);
}

int cmd_degenerate(const Pipeline& P, const std::string& out_dir) {
  const ValueSemigroup S = semigroup_of_sections(P.E, P.val, P.pf.d);
  const DegenerationSpec spec = build_spec(P, S);
  const BohrSommerfeldSet fiber = special_fiber(spec);
  const HypothesisReport hyp = verify_hypotheses(spec, P.val, P.E, P.pf.dim_H0);
  const std::string json = degeneration_report_json(spec, fiber, hyp);
  const std::string table = hypothesis_table_text(hyp);
  std::cout << json << "\n\n" << table;
  if (!out_dir.empty()) {
    const auto dir = prepare_out(out_dir);
    write_file(dir / "degeneration.json", json + "\n");
    write_file(dir / "hypotheses.txt", table);
  }
  return 0;
}

int cmd_verify(const Pipeline& P) {
  const ValueSemigroup S = semigroup_of_sections(P.E, P.val, P.pf.d);
  const DegenerationSpec spec = build_spec(P, S);
  const HypothesisReport hyp = verify_hypotheses(spec, P.val, P.E, P.pf.dim_H0);
  std::cout << hypothesis_table_text(hyp);
  return 0;
}

int cmd_quantize(const Pipeline& P, const std::string& out_dir, long long res_ovr,
                 int threads) {
  if (!P.pf.has_quant)
    throw config_error("problem file has no quantization config (quant.* keys)");
  const ValueSemigroup S = semigroup_of_sections(P.E, P.val, P.pf.d);
  const std::vector<Exponent>& W0 = S.level(P.pf.d);
  std::vector<QPoint> pts;
  pts.reserve(W0.size());
  for (const Exponent& w : W0) {
    QPoint q;
    for (long long v : w) q.emplace_back(Rational(v));
    pts.push_back(std::move(q));
  }
  const RationalPolytope delta0 = RationalPolytope::hull(pts);
  QuantConfig cfg = P.pf.quant;
  if (res_ovr >= 1) cfg.resolution = res_ovr;
  cfg.threads = threads;
  const ConvergenceReport rep = convergence_run(delta0, W0, cfg);
  std::cout << rep.summary << "\n" << rep.csv();
  if (!out_dir.empty()) {
    const auto dir = prepare_out(out_dir);
    write_file(dir / "summary.txt", rep.summary);
    write_file(dir / "trace.csv", rep.csv());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"value semigroups, Newton-Okounkov bodies and toric degeneration reports"};
  app.require_subcommand(1);

  std::string input;
  std::string out_dir;
  long long d_ovr = 0, dmax_ovr = 0, res_ovr = 0;
  int threads = 1;

  auto add_input = [&input](CLI::App* sub) {
    sub->add_option("--input", input, "problem file")->required();
  };
  auto add_out = [&out_dir](CLI::App* sub) {
    sub->add_option("--out", out_dir, "output directory");
  };

  CLI::App* body = app.add_subcommand("body", "Newton-Okounkov body with lattice points");
  add_input(body);
  add_out(body);
  body->add_option("--d", d_ovr, "scale for lattice points");
  body->add_option("--dmax", dmax_ovr, "level bound for the semigroup scan");

  CLI::App* semi = app.add_subcommand("semigroup", "value semigroup levels as CSV");
  add_input(semi);
  add_out(semi);
  semi->add_option("--dmax", dmax_ovr, "level bound");

  CLI::App* khov = app.add_subcommand("khovanskii", "check the declared basis against levels");
  add_input(khov);
  khov->add_option("--dmax", dmax_ovr, "level bound");

  CLI::App* deg = app.add_subcommand("degenerate", "toric degeneration report at degree d");
  add_input(deg);
  add_out(deg);
  deg->add_option("--d", d_ovr, "working degree");
  deg->add_option("--threads", threads, "worker count (reports are thread-invariant)");

  CLI::App* ver = app.add_subcommand("verify", "hypothesis table at degree d");
  add_input(ver);
  ver->add_option("--d", d_ovr, "working degree");

  CLI::App* quant = app.add_subcommand("quantize", "concentration sweep on the special fiber");
  add_input(quant);
  add_out(quant);
  quant->add_option("--d", d_ovr, "working degree");
  quant->add_option("--resolution", res_ovr, "quadrature resolution per unit");
  quant->add_option("--threads", threads, "worker count (reports are thread-invariant)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const Pipeline P = load(input, d_ovr, dmax_ovr);
    if (app.got_subcommand(body)) return cmd_body(P, out_dir);
    if (app.got_subcommand(semi)) return cmd_semigroup(P, out_dir);
    if (app.got_subcommand(khov)) return cmd_khovanskii(P);
    if (app.got_subcommand(deg)) return cmd_degenerate(P, out_dir);
    if (app.got_subcommand(ver)) return cmd_verify(P);
    if (app.got_subcommand(quant)) return cmd_quantize(P, out_dir, res_ovr, threads);
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nok::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
