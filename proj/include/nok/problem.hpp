#ifndef NOK_PROBLEM_HPP
#define NOK_PROBLEM_HPP

/*
 * Problem-file format: UTF-8 "key = value" lines, one per key, # comments.
 *
 *   name       = cusp                 optional label
 *   n          = 1                    variable count (required)
 *   order      = lex                  lex | grlex | weighted:w1,...,wn
 *   generators = 1, u^2, u^3          section basis E (required)
 *   h          = 1                    degree-one reference section
 *   d          = 1                    working degree
 *   dmax       = 4                    level bound for semigroup scans
 *   dim_H0     = 3                    optional ambient section count
 *   basis      = 1:u^2, 1:u^3         optional degree-tagged basis
 *   covector   = 1                    optional weight covector, n entries
 *
 * Quantization config (all optional; any quant.* key enables the block):
 *
 *   quant.s_start = 1        quant.s_factor = 2      quant.s_count = 11
 *   quant.eta = 1/2          quant.epsilon = 1e-2, 1e-3
 *   quant.resolution = 100   quant.t0 = 0.5          quant.s0_cap = 20
 *   quant.potential = u1^2   quant.tests = u:u1, usq:u1^2
 *
 * Polynomial values use the exact-core syntax; quant.potential and
 * quant.tests are polynomials in the action coordinates u1..un.
 */

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nok/order.hpp"
#include "nok/polynomial.hpp"
#include "nok/quantsim.hpp"

namespace nok {

struct ProblemFile {
  std::string name;
  int n = 0;
  std::string order_spec = "lex";
  std::vector<std::string> generator_strs;
  std::string h_str = "1";
  long long d = 1;
  long long dmax = 4;
  std::optional<long long> dim_H0;
  std::optional<std::vector<std::pair<long long, std::string>>> basis_strs;
  std::optional<std::vector<long long>> covector;
  bool has_quant = false;
  QuantConfig quant;

  // input_error with a line reference on malformed lines; config_error on
  // unknown or duplicate keys and invalid values.
  static ProblemFile parse_text(const std::string& text);
  static ProblemFile parse_file(const std::string& path);

  // Canonical emission; parse_text(str()) reproduces the same problem.
  std::string str() const;

  GroupOrder make_order() const;
  std::vector<Polynomial> make_generators() const;
  Polynomial make_h() const;
  // Declared basis, or every generator tagged with degree 1.
  std::vector<std::pair<long long, Polynomial>> basis_elems() const;
};

}  // namespace nok

#endif
