#include "nok/valuation.hpp"

#include <algorithm>
#include <sstream>

namespace nok {

std::string graded_value_str(const GradedValue& g) {
  std::ostringstream os;
  os << "(" << g.level << ";";
  for (size_t i = 0; i < g.value.size(); ++i) os << " " << g.value[i];
  os << ")";
  return os.str();
}

Valuation::Valuation(GroupOrder order, Polynomial h)
    : order_(std::move(order)), h_(std::move(h)) {
  if (h_.is_zero()) throw undefined_value_error("reference element is zero");
  if (order_.dim() != h_.nvars())
    throw dimension_error("order dimension does not match variable count");
  vh_ = value(h_);
}

Exponent Valuation::value(const Polynomial& f) const {
  if (f.is_zero()) throw undefined_value_error("value of the zero element");
  if (f.nvars() != order_.dim())
    throw dimension_error("polynomial variable count does not match order dimension");
  const auto& terms = f.terms();
  auto it = terms.begin();
  Exponent best = it->first;
  for (++it; it != terms.end(); ++it)
    if (order_.less(it->first, best)) best = it->first;
  return best;
}

Rational Valuation::leading_coeff(const Polynomial& f) const {
  const Exponent v = value(f);
  return f.terms().at(v);
}

GradedValue Valuation::graded_value(const Polynomial& f, long long k) const {
  if (k < 0) throw domain_error("graded value needs level k >= 0");
  Exponent v = value(f);
  return GradedValue{k, exp_sub(v, exp_scale(vh_, k))};
}

Valuation::Triangular Valuation::triangularize(const std::vector<Polynomial>& V) const {
  if (V.empty()) throw domain_error("triangularize over an empty list");
  Triangular tri;
  for (const Polynomial& input : V) {
    Polynomial f = reduce(input, tri);
    if (f.is_zero()) continue;
    const Exponent v = value(f);
    // Insert keeping values ascending under the group order.
    size_t pos = tri.values.size();
    for (size_t i = 0; i < tri.values.size(); ++i) {
      if (order_.less(v, tri.values[i])) {
        pos = i;
        break;
      }
    }
    tri.values.insert(tri.values.begin() + pos, v);
    tri.basis.insert(tri.basis.begin() + pos, std::move(f));
  }
  return tri;
}

Polynomial Valuation::reduce(Polynomial f, const Triangular& tri) const {
  // Each pass either kills f or strictly raises its value; the supports live
  // in a fixed finite set, so this terminates.
  while (!f.is_zero()) {
    const Exponent v = value(f);
    bool hit = false;
    for (size_t i = 0; i < tri.values.size(); ++i) {
      if (tri.values[i] == v) {
        const Rational c = f.terms().at(v) / tri.basis[i].terms().at(v);
        f -= tri.basis[i].scaled(c);
        hit = true;
        break;
      }
    }
    if (!hit) break;
  }
  return f;
}

std::vector<Exponent> Valuation::value_image(const std::vector<Polynomial>& V) const {
  if (V.empty()) return {};
  for (const Polynomial& f : V)
    if (f.is_zero()) throw undefined_value_error("value image over a list containing zero");
  return triangularize(V).values;
}

Valuation::LeafCheck Valuation::check_one_dim_leaves(
    const std::vector<Polynomial>& V) const {
  for (size_t i = 0; i < V.size(); ++i) {
    if (V[i].is_zero()) {
      throw input_error("check_one_dim_leaves: member " + std::to_string(i) +
                        " is zero");
    }
  }
  for (size_t i = 0; i < V.size(); ++i) {
    for (size_t j = i + 1; j < V.size(); ++j) {
      const Exponent vi = value(V[i]);
      const Exponent vj = value(V[j]);
      if (vi != vj) continue;
      const Rational c = V[j].terms().at(vj) / V[i].terms().at(vi);
      Polynomial diff = V[j] - V[i].scaled(c);
      if (diff.is_zero()) continue;
      if (!order_.less(vj, value(diff))) return {false, i, j};
    }
  }
  return {};
}

linalg::LatticeInfo Valuation::observed_sublattice(const std::vector<Exponent>& values) const {
  return linalg::row_lattice_ll(values, order_.dim());
}

}  // namespace nok
