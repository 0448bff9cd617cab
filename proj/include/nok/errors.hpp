#ifndef NOK_ERRORS_HPP
#define NOK_ERRORS_HPP

/*
 * Error taxonomy for the whole library.  Every failure mode that callers are
 * expected to branch on gets its own type; the CLI maps them to exit codes
 * (input/config -> 2, mathematical precondition failures -> 3).
 */

#include <stdexcept>
#include <string>

namespace nok {

// Base class so callers can catch everything from this library at once.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed user input: unparsable polynomials, problem files, bad literals.
struct input_error : error {
  explicit input_error(const std::string& msg) : error(msg) {}
};

// Structurally valid input with inconsistent settings (bad ranges, unknown keys).
struct config_error : error {
  explicit config_error(const std::string& msg) : error(msg) {}
};

// Operands with mismatched ambient dimension.
struct dimension_error : error {
  explicit dimension_error(const std::string& msg) : error(msg) {}
};

// Valuation of the zero element, leading coefficient of zero, and similar.
struct undefined_value_error : error {
  explicit undefined_value_error(const std::string& msg) : error(msg) {}
};

// Argument outside the mathematical domain of an operation.
struct domain_error : error {
  explicit domain_error(const std::string& msg) : error(msg) {}
};

// Ambient dimension beyond the supported exact-geometry range.
struct unsupported_dimension_error : error {
  explicit unsupported_dimension_error(const std::string& msg) : error(msg) {}
};

// Cone construction from an empty level set.
struct empty_slice_error : error {
  explicit empty_slice_error(const std::string& msg) : error(msg) {}
};

// Cone whose generators all sit at level zero.
struct degenerate_cone_error : error {
  explicit degenerate_cone_error(const std::string& msg) : error(msg) {}
};

// Level-one slice of a cone is unbounded; guarded against, should not occur.
struct unbounded_error : error {
  explicit unbounded_error(const std::string& msg) : error(msg) {}
};

// A graded value at some level is not reachable from the declared basis.
struct khovanskii_violation_error : error {
  explicit khovanskii_violation_error(const std::string& msg) : error(msg) {}
};

// Every emitted coordinate vanishes at the requested evaluation point.
struct base_locus_error : error {
  explicit base_locus_error(const std::string& msg) : error(msg) {}
};

}  // namespace nok

#endif
