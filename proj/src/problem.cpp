#include "nok/problem.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "nok/errors.hpp"

namespace nok {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

long long parse_ll(const std::string& v, const std::string& where) {
  try {
    size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw config_error(where + ": '" + v + "' is not an integer");
  }
}

double parse_double(const std::string& v, const std::string& where) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw config_error(where + ": '" + v + "' is not a number");
  }
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

Polynomial parse_poly(const std::string& text, int n, const std::string& where) {
  try {
    return Polynomial::parse(text, n);
  } catch (const input_error& e) {
    throw config_error(where + ": " + e.what());
  }
}

std::string fmt_g(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace

ProblemFile ProblemFile::parse_text(const std::string& text) {
  // Pass 1: raw key/value pairs with line numbers; semantic checks run in a
  // fixed key order afterwards so later keys (like n) can inform earlier ones.
  std::map<std::string, std::pair<std::string, int>> kv;
  {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      const size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw input_error("line " + std::to_string(lineno) + ": missing '=' separator");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty())
        throw input_error("line " + std::to_string(lineno) + ": empty key");
      if (value.empty())
        throw input_error("line " + std::to_string(lineno) + ": empty value for '" + key + "'");
      if (kv.count(key))
        throw config_error("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
      kv[key] = {value, lineno};
    }
  }

  static const std::set<std::string> known = {
      "name",        "n",           "order",          "generators",     "h",
      "d",           "dmax",        "dim_H0",         "basis",          "covector",
      "quant.s_start", "quant.s_factor", "quant.s_count", "quant.eta",
      "quant.epsilon", "quant.resolution", "quant.t0", "quant.potential",
      "quant.tests", "quant.s0_cap"};
  for (const auto& [key, vp] : kv)
    if (!known.count(key))
      throw config_error("line " + std::to_string(vp.second) + ": unknown key '" + key + "'");

  auto where = [&kv](const std::string& key) {
    return "line " + std::to_string(kv.at(key).second) + ", " + key;
  };
  auto has = [&kv](const char* key) { return kv.count(key) != 0; };
  auto val = [&kv](const char* key) { return kv.at(key).first; };

  ProblemFile pf;
  if (!has("n")) throw config_error("missing required key 'n'");
  pf.n = static_cast<int>(parse_ll(val("n"), where("n")));
  if (pf.n < 1 || pf.n > 3)
    throw config_error(where("n") + ": variable count must be between 1 and 3");
  if (has("name")) pf.name = val("name");

  if (has("order")) pf.order_spec = val("order");
  {
    const std::string& os = pf.order_spec;
    if (os != "lex" && os != "grlex") {
      if (os.rfind("weighted:", 0) != 0)
        throw config_error((has("order") ? where("order") : std::string("order")) +
                           ": expected lex, grlex or weighted:w1,...,wn");
      const std::vector<std::string> parts = split_list(os.substr(9));
      if (static_cast<int>(parts.size()) != pf.n)
        throw config_error((has("order") ? where("order") : std::string("order")) +
                           ": weighted order needs exactly " + std::to_string(pf.n) +
                           " weights");
      for (const std::string& p : parts) parse_ll(p, "order weight");
    }
  }

  if (!has("generators")) throw config_error("missing required key 'generators'");
  pf.generator_strs = split_list(val("generators"));
  if (pf.generator_strs.empty())
    throw config_error(where("generators") + ": at least one generator is required");
  for (size_t i = 0; i < pf.generator_strs.size(); ++i) {
    const Polynomial p = parse_poly(pf.generator_strs[i], pf.n,
                                    where("generators") + " entry " + std::to_string(i + 1));
    if (p.is_zero())
      throw config_error(where("generators") + ": generator " + std::to_string(i + 1) +
                         " is zero");
  }

  if (has("h")) pf.h_str = val("h");
  {
    const Polynomial h = parse_poly(pf.h_str, pf.n, has("h") ? where("h") : std::string("h"));
    if (h.is_zero())
      throw config_error((has("h") ? where("h") : std::string("h")) +
                         ": reference section must be nonzero");
  }

  if (has("d")) pf.d = parse_ll(val("d"), where("d"));
  if (pf.d < 1) throw config_error(where("d") + ": degree must be at least 1");
  if (has("dmax")) pf.dmax = parse_ll(val("dmax"), where("dmax"));
  if (pf.dmax < 1) throw config_error(where("dmax") + ": level bound must be at least 1");

  if (has("dim_H0")) {
    pf.dim_H0 = parse_ll(val("dim_H0"), where("dim_H0"));
    if (*pf.dim_H0 < 0)
      throw config_error(where("dim_H0") + ": section count cannot be negative");
  }

  if (has("basis")) {
    std::vector<std::pair<long long, std::string>> elems;
    for (const std::string& item : split_list(val("basis"))) {
      const size_t colon = item.find(':');
      if (colon == std::string::npos)
        throw config_error(where("basis") + ": expected degree:polynomial, got '" + item + "'");
      const long long deg = parse_ll(trim(item.substr(0, colon)), where("basis") + " degree");
      if (deg < 1) throw config_error(where("basis") + ": degrees must be at least 1");
      const std::string poly = trim(item.substr(colon + 1));
      const Polynomial p = parse_poly(poly, pf.n, where("basis"));
      if (p.is_zero()) throw config_error(where("basis") + ": basis element is zero");
      elems.emplace_back(deg, poly);
    }
    if (elems.empty()) throw config_error(where("basis") + ": empty basis");
    pf.basis_strs = std::move(elems);
  }

  if (has("covector")) {
    std::vector<long long> e;
    for (const std::string& item : split_list(val("covector")))
      e.push_back(parse_ll(item, where("covector")));
    if (static_cast<int>(e.size()) != pf.n)
      throw config_error(where("covector") + ": expected exactly " + std::to_string(pf.n) +
                         " entries");
    pf.covector = std::move(e);
  }

  for (const auto& [key, vp] : kv)
    if (key.rfind("quant.", 0) == 0) pf.has_quant = true;

  if (has("quant.s_start")) pf.quant.s_start = parse_double(val("quant.s_start"), where("quant.s_start"));
  if (has("quant.s_factor")) pf.quant.s_factor = parse_double(val("quant.s_factor"), where("quant.s_factor"));
  if (has("quant.s_count"))
    pf.quant.s_count = static_cast<int>(parse_ll(val("quant.s_count"), where("quant.s_count")));
  if (has("quant.eta")) {
    try {
      pf.quant.eta = Rational::from_string(val("quant.eta"));
    } catch (const input_error& e) {
      throw config_error(where("quant.eta") + ": " + e.what());
    }
  }
  if (has("quant.epsilon")) {
    pf.quant.epsilons.clear();
    for (const std::string& item : split_list(val("quant.epsilon")))
      pf.quant.epsilons.push_back(parse_double(item, where("quant.epsilon")));
    if (pf.quant.epsilons.empty())
      throw config_error(where("quant.epsilon") + ": empty list");
  }
  if (has("quant.resolution"))
    pf.quant.resolution = parse_ll(val("quant.resolution"), where("quant.resolution"));
  if (has("quant.t0")) pf.quant.t0 = parse_double(val("quant.t0"), where("quant.t0"));
  if (has("quant.s0_cap"))
    pf.quant.s0_cap = static_cast<int>(parse_ll(val("quant.s0_cap"), where("quant.s0_cap")));
  if (has("quant.potential"))
    pf.quant.potential = parse_poly(val("quant.potential"), pf.n, where("quant.potential"));
  if (has("quant.tests")) {
    for (const std::string& item : split_list(val("quant.tests"))) {
      const size_t colon = item.find(':');
      if (colon == std::string::npos)
        throw config_error(where("quant.tests") + ": expected name:polynomial, got '" + item +
                           "'");
      std::string tname = trim(item.substr(0, colon));
      if (!valid_name(tname))
        throw config_error(where("quant.tests") + ": '" + tname +
                           "' is not a valid column name");
      Polynomial expr = parse_poly(trim(item.substr(colon + 1)), pf.n, where("quant.tests"));
      pf.quant.tests.push_back(TestSection{std::move(tname), std::move(expr)});
    }
  }
  return pf;
}

ProblemFile ProblemFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open problem file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

std::string ProblemFile::str() const {
  std::ostringstream os;
  auto canon = [this](const std::string& s) { return Polynomial::parse(s, n).str(); };
  if (!name.empty()) os << "name = " << name << "\n";
  os << "n = " << n << "\n";
  os << "order = " << order_spec << "\n";
  os << "generators = ";
  for (size_t i = 0; i < generator_strs.size(); ++i)
    os << (i ? ", " : "") << canon(generator_strs[i]);
  os << "\n";
  os << "h = " << canon(h_str) << "\n";
  os << "d = " << d << "\n";
  os << "dmax = " << dmax << "\n";
  if (dim_H0) os << "dim_H0 = " << *dim_H0 << "\n";
  if (basis_strs) {
    os << "basis = ";
    for (size_t i = 0; i < basis_strs->size(); ++i)
      os << (i ? ", " : "") << (*basis_strs)[i].first << ":" << canon((*basis_strs)[i].second);
    os << "\n";
  }
  if (covector) {
    os << "covector = ";
    for (size_t i = 0; i < covector->size(); ++i) os << (i ? ", " : "") << (*covector)[i];
    os << "\n";
  }
  if (has_quant) {
    os << "quant.s_start = " << fmt_g(quant.s_start) << "\n";
    os << "quant.s_factor = " << fmt_g(quant.s_factor) << "\n";
    os << "quant.s_count = " << quant.s_count << "\n";
    os << "quant.eta = " << quant.eta.str_compact() << "\n";
    os << "quant.epsilon = ";
    for (size_t i = 0; i < quant.epsilons.size(); ++i)
      os << (i ? ", " : "") << fmt_g(quant.epsilons[i]);
    os << "\n";
    os << "quant.resolution = " << quant.resolution << "\n";
    os << "quant.t0 = " << fmt_g(quant.t0) << "\n";
    os << "quant.s0_cap = " << quant.s0_cap << "\n";
    if (quant.potential) os << "quant.potential = " << quant.potential->str() << "\n";
    if (!quant.tests.empty()) {
      os << "quant.tests = ";
      for (size_t i = 0; i < quant.tests.size(); ++i)
        os << (i ? ", " : "") << quant.tests[i].name << ":" << quant.tests[i].expr.str();
      os << "\n";
    }
  }
  return os.str();
}

GroupOrder ProblemFile::make_order() const {
  if (order_spec == "lex") return GroupOrder::lex(n);
  if (order_spec == "grlex") return GroupOrder::grlex(n);
  std::vector<long long> w;
  for (const std::string& item : split_list(order_spec.substr(9)))
    w.push_back(parse_ll(item, "order weight"));
  return GroupOrder::weighted(w);
}

std::vector<Polynomial> ProblemFile::make_generators() const {
  std::vector<Polynomial> E;
  E.reserve(generator_strs.size());
  for (const std::string& s : generator_strs) E.push_back(Polynomial::parse(s, n));
  return E;
}

Polynomial ProblemFile::make_h() const { return Polynomial::parse(h_str, n); }

std::vector<std::pair<long long, Polynomial>> ProblemFile::basis_elems() const {
  std::vector<std::pair<long long, Polynomial>> out;
  if (basis_strs) {
    for (const auto& [deg, s] : *basis_strs) out.emplace_back(deg, Polynomial::parse(s, n));
  } else {
    for (const std::string& s : generator_strs) out.emplace_back(1, Polynomial::parse(s, n));
  }
  return out;
}

}  // namespace nok
