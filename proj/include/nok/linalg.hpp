#ifndef NOK_LINALG_HPP
#define NOK_LINALG_HPP

/*
 * Small exact linear algebra utilities: rank over the rationals and the
 * index of an integer row lattice inside Z^n.  Desk-scale inputs only.
 */

#include <gmpxx.h>

#include <vector>

#include "nok/order.hpp"
#include "nok/rational.hpp"

namespace nok {

class Polynomial;

namespace linalg {

using Matrix = std::vector<std::vector<Rational>>;

// Rank by fraction-free-enough Gaussian elimination with first-nonzero pivot
// choice; exact, deterministic.
int rank(Matrix m);

// Rows of coefficients over the union of supports, columns in exponent key
// order, rows in input order.
Matrix coefficient_matrix(const std::vector<Polynomial>& V);

struct LatticeInfo {
  int rank = 0;
  // Diagonal of a triangular (Hermite-style) basis of the row lattice,
  // one positive entry per pivot column.
  std::vector<mpz_class> diagonal;
  // [Z^n : L] when rank == n (product of the diagonal); 0 otherwise.
  mpz_class index = 0;
};

// Row lattice of integer vectors inside Z^n.
LatticeInfo row_lattice(std::vector<std::vector<mpz_class>> rows, int n);

LatticeInfo row_lattice_ll(const std::vector<Exponent>& rows, int n);

}  // namespace linalg
}  // namespace nok

#endif
