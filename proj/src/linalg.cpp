#include "nok/linalg.hpp"

#include <algorithm>
#include <set>

#include "nok/polynomial.hpp"

namespace nok {
namespace linalg {

Matrix coefficient_matrix(const std::vector<Polynomial>& V) {
  std::set<Exponent> support;
  for (const Polynomial& f : V)
    for (const auto& [e, c] : f.terms()) support.insert(e);
  std::vector<Exponent> cols(support.begin(), support.end());
  Matrix m;
  m.reserve(V.size());
  for (const Polynomial& f : V) {
    std::vector<Rational> row;
    row.reserve(cols.size());
    for (const Exponent& e : cols) {
      auto it = f.terms().find(e);
      row.push_back(it == f.terms().end() ? Rational(0) : it->second);
    }
    m.push_back(std::move(row));
  }
  return m;
}

int rank(Matrix m) {
  if (m.empty()) return 0;
  const size_t rows = m.size();
  const size_t cols = m[0].size();
  for (const auto& r : m)
    if (r.size() != cols) throw dimension_error("ragged matrix");
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t pivot = rows;
    for (size_t r = rank; r < rows; ++r) {
      if (!m[r][col].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    const Rational inv = m[rank][col].reciprocal();
    for (size_t c = col; c < cols; ++c) m[rank][c] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][col].is_zero()) continue;
      const Rational f = m[r][col];
      for (size_t c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

LatticeInfo row_lattice(std::vector<std::vector<mpz_class>> rows, int n) {
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != n) throw dimension_error("lattice row length mismatch");
  LatticeInfo info;
  size_t top = 0;  // rows above top form the triangular basis found so far
  for (int col = 0; col < n && top < rows.size(); ++col) {
    // Euclid on the column entries of the remaining rows.
    for (;;) {
      size_t best = rows.size();
      for (size_t r = top; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        if (best == rows.size() || cmp(abs(rows[r][col]), abs(rows[best][col])) < 0) best = r;
      }
      if (best == rows.size()) break;  // column is zero below top
      std::swap(rows[top], rows[best]);
      bool cleared = true;
      for (size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        mpz_class q = rows[r][col] / rows[top][col];  // truncated division
        if (q != 0)
          for (int c = 0; c < n; ++c) rows[r][c] -= q * rows[top][c];
        if (rows[r][col] != 0) cleared = false;
      }
      if (cleared) {
        if (rows[top][col] < 0)
          for (int c = 0; c < n; ++c) rows[top][c] = -rows[top][c];
        info.diagonal.push_back(rows[top][col]);
        ++top;
        break;
      }
    }
  }
  info.rank = static_cast<int>(info.diagonal.size());
  if (info.rank == n) {
    info.index = 1;
    for (const auto& d : info.diagonal) info.index *= d;
  }
  return info;
}

LatticeInfo row_lattice_ll(const std::vector<Exponent>& rows, int n) {
  std::vector<std::vector<mpz_class>> z;
  z.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<mpz_class> row;
    row.reserve(r.size());
    for (long long v : r) row.emplace_back(static_cast<long>(v));
    z.push_back(std::move(row));
  }
  return row_lattice(std::move(z), n);
}

}  // namespace linalg
}  // namespace nok
