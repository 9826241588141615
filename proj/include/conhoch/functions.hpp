#pragma once

#include <string>
#include <vector>

#include "conhoch/errors.hpp"
#include "conhoch/model.hpp"
#include "conhoch/poly.hpp"

namespace conhoch {

/// The three levels of a constraint object. Null ⊆ Wobs ⊆ Total.
enum class FunctionClassTag { Total, Wobs, Null };

inline std::string to_string(FunctionClassTag t) {
  switch (t) {
    case FunctionClassTag::Total: return "Total";
    case FunctionClassTag::Wobs: return "Wobs";
    case FunctionClassTag::Null: return "Null";
  }
  return "?";
}

inline void check_ring(const FlatModel& m, const Poly& f) {
  if (f.nvars() != m.n_total()) {
    throw ModelMismatch("polynomial in " + std::to_string(f.nvars()) + " variables used with model " + m.to_string());
  }
}

/// Degree of a monomial in the normal (TC-perp) variables.
inline int normal_degree(const FlatModel& m, const Exponent& e) {
  int t = 0;
  for (int u = m.n_wobs(); u < m.n_total(); ++u) t += e[u];
  return t;
}

/// Degree of a monomial in the D variables.
inline int d_degree(const FlatModel& m, const Exponent& e) {
  int d = 0;
  for (int a = 0; a < m.n_null(); ++a) d += e[a];
  return d;
}

/// Pull-back to C: every normal variable set to zero.
inline Poly restrict_to_c(const FlatModel& m, const Poly& f) {
  check_ring(m, f);
  return f.truncate_variables(m.n_wobs());
}

/// Definitional test: Null iff f|_C = 0, Wobs iff (d_a f)|_C = 0 for every
/// frame field d_a of D.
inline FunctionClassTag classify_function(const FlatModel& m, const Poly& f) {
  if (restrict_to_c(m, f).is_zero()) return FunctionClassTag::Null;
  for (int a = 1; a <= m.n_null(); ++a)
    if (!restrict_to_c(m, f.partial(a)).is_zero()) return FunctionClassTag::Total;
  return FunctionClassTag::Wobs;
}

/// Monomial criterion: x^e is Null iff it contains a normal variable; it is
/// Wobs iff it is Null or contains no D variable.
inline FunctionClassTag monomial_function_class(const FlatModel& m, const Exponent& e) {
  if (normal_degree(m, e) > 0) return FunctionClassTag::Null;
  if (d_degree(m, e) == 0) return FunctionClassTag::Wobs;
  return FunctionClassTag::Total;
}

/// true iff a function of class `have` lies in level `want`.
inline bool level_contains(FunctionClassTag want, FunctionClassTag have) {
  switch (want) {
    case FunctionClassTag::Total: return true;
    case FunctionClassTag::Wobs: return have != FunctionClassTag::Total;
    case FunctionClassTag::Null: return have == FunctionClassTag::Null;
  }
  return false;
}

inline bool function_in(const FlatModel& m, const Poly& f, FunctionClassTag tag) {
  return level_contains(tag, classify_function(m, f));
}

/// Image in C∞(M_red), a polynomial in the D-perp variables renumbered from 1.
inline Poly reduce_function(const FlatModel& m, const Poly& f) {
  if (classify_function(m, f) == FunctionClassTag::Total) {
    throw NotWobs("reduce_function: " + f.to_string() + " is not in the Wobs class of " + m.to_string());
  }
  Poly on_c = restrict_to_c(m, f);
  for (int a = 1; a <= m.n_null(); ++a) {
    if (on_c.depends_on(a)) throw InternalError("Wobs function depends on a D variable on C");
  }
  return on_c.project_variables(m.n_null() + 1, m.n_wobs());
}

/// Monomial basis of the tagged class inside homogeneous polynomials of the
/// given degree, descending grlex.
inline std::vector<Poly> function_slice_basis(const FlatModel& m, FunctionClassTag tag, int degree) {
  std::vector<Poly> out;
  if (degree < 0) return out;
  for (const auto& e : monomials_of_degree(m.n_total(), degree)) {
    if (level_contains(tag, monomial_function_class(m, e))) out.push_back(Poly::monomial(e));
  }
  return out;
}

}  // namespace conhoch
