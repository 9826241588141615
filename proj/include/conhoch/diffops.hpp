#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conhoch/algebra.hpp"
#include "conhoch/differential.hpp"
#include "conhoch/errors.hpp"
#include "conhoch/functions.hpp"
#include "conhoch/membership.hpp"
#include "conhoch/model.hpp"

namespace conhoch {

/// Multi-differential operator vanishing on constants, identified with its
/// symbol under the flat calculus.
class MultiDiffOp {
 public:
  explicit MultiDiffOp(SymbolChain symbol) : symbol_(std::move(symbol)) {}

  const SymbolChain& symbol() const { return symbol_; }
  int arity() const { return symbol_.arity(); }
  int nvars() const { return symbol_.nvars(); }

  friend bool operator==(const MultiDiffOp& a, const MultiDiffOp& b) { return a.symbol_ == b.symbol_; }

 private:
  SymbolChain symbol_;
};

/// Op(x^γ ∂_{A_1} ⊗ ... ⊗ ∂_{A_n})(f_1, ..., f_n) = x^γ ∂^{A_1} f_1 ⋯ ∂^{A_n} f_n.
inline Poly op_apply(const SymbolChain& phi, const std::vector<Poly>& fs) {
  if (static_cast<int>(fs.size()) != phi.arity())
    throw ArityMismatch("operator of arity " + std::to_string(phi.arity()) + " applied to " +
                        std::to_string(fs.size()) + " arguments");
  const int n = phi.nvars();
  for (const auto& f : fs)
    if (f.nvars() != n) throw ModelMismatch("operator argument over a different ring");
  Poly r(n);
  std::map<std::pair<std::size_t, SymWord>, Poly> cache;
  for (const auto& [t, p] : phi.terms()) {
    Poly prod = p;
    for (std::size_t i = 0; i < t.size() && !prod.is_zero(); ++i) {
      auto key = std::make_pair(i, t[i]);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, fs[i].partial_counts(t[i].counts(n))).first;
      prod = prod * it->second;
    }
    r += prod;
  }
  return r;
}

inline Poly op_apply(const MultiDiffOp& d, const std::vector<Poly>& fs) { return op_apply(d.symbol(), fs); }

// ---------------------------------------------------------------------------
// Flat connection and symmetrized covariant derivatives

/// The standard flat connection on R^n (all Christoffel symbols zero).
struct FlatConnection {
  /// ∇_X Y = Σ_j X(Y^j) ∂_j.
  static VectorField covariant(const VectorField& x, const VectorField& y) {
    if (x.nvars() != y.nvars()) throw ModelMismatch("vector fields over different rings");
    VectorField r(x.nvars());
    for (int j = 1; j <= x.nvars(); ++j) r.component(j) = x.apply(y.component(j));
    return r;
  }

  /// ∇_X Y - ∇_Y X - [X, Y].
  static VectorField torsion(const VectorField& x, const VectorField& y) {
    VectorField r = covariant(x, y);
    const VectorField a = covariant(y, x);
    const VectorField b = bracket(x, y);
    for (int j = 1; j <= r.nvars(); ++j) r.component(j) -= a.component(j) + b.component(j);
    return r;
  }
};

/// Entries of the k-th symmetrized covariant derivative, keyed by the sorted
/// index multiset; zero entries are not stored.
struct SymCovTensor {
  int degree = 0;
  std::map<SymWord, Poly> entries;

  Poly entry(const SymWord& w, int nvars) const {
    auto it = entries.find(w);
    return it == entries.end() ? Poly(nvars) : it->second;
  }
};

inline SymCovTensor sym_cov_derivative(const Poly& f, int k) {
  if (k < 1) throw PreconditionViolation("symmetrized covariant derivative needs k >= 1");
  SymCovTensor t;
  t.degree = k;
  for (auto& ms : index_multisets(f.nvars(), k)) {
    SymWord w(std::move(ms));
    Poly d = f.partial_counts(w.counts(f.nvars()));
    if (!d.is_zero()) t.entries.emplace(std::move(w), std::move(d));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Symbol extraction and the Hochschild differential

using MultiFunction = std::function<Poly(const std::vector<Poly>&)>;

/// Recovers the symbol of an operator of the given arity and total order
/// <= max_order that vanishes on constants, from its values on monomials.
/// Tuples (A_1..A_n) are visited by increasing total size; the value on
/// (x^{A_1}, ..., x^{A_n}) minus the contributions of all strictly smaller
/// tuples equals c_A · Π A_i!.
inline SymbolChain extract_symbol(int arity, int nvars, int max_order, const MultiFunction& eval) {
  SymbolChain out(arity, nvars);
  struct Found {
    WordTuple t;
    std::vector<std::vector<int>> counts;
    Poly c;
  };
  std::vector<Found> found;
  for (int K = arity; K <= max_order; ++K) {
    for (const auto& t : word_tuples(nvars, arity, K)) {
      std::vector<std::vector<int>> counts;
      std::vector<Poly> args;
      Integer denom = 1;
      for (const auto& w : t) {
        counts.push_back(w.counts(nvars));
        args.push_back(Poly::monomial(Exponent(counts.back())));
        for (int a : counts.back()) denom *= factorial(a);
      }
      Poly val = eval(args);
      for (const auto& f : found) {
        Poly contrib = f.c;
        bool sub = true;
        for (int i = 0; i < arity && sub; ++i) {
          Exponent rest(nvars);
          Integer ff = 1;
          for (int v = 0; v < nvars; ++v) {
            if (f.counts[i][v] > counts[i][v]) {
              sub = false;
              break;
            }
            rest[v] = counts[i][v] - f.counts[i][v];
            ff *= falling_factorial(counts[i][v], f.counts[i][v]);
          }
          if (sub) contrib = contrib * Poly::monomial(rest, Rational(ff));
        }
        if (sub) val -= contrib;
      }
      if (val.is_zero()) continue;
      val *= Rational(1) / Rational(denom);
      out.add_term(t, val);
      found.push_back({t, std::move(counts), std::move(val)});
    }
  }
  return out;
}

/// (δD)(f_0..f_n) = f_0 D(f_1..f_n) + Σ_{i=0}^{n-1} (-1)^{i+1} D(.., f_i f_{i+1}, ..)
///                 + (-1)^{n+1} D(f_0..f_{n-1}) f_n.
inline Poly hochschild_delta_eval(const SymbolChain& phi, const std::vector<Poly>& fs) {
  const int n = phi.arity();
  if (static_cast<int>(fs.size()) != n + 1) throw ArityMismatch("delta of an arity-n operator takes n+1 arguments");
  std::vector<Poly> args(fs.begin() + 1, fs.end());
  Poly r = fs[0] * op_apply(phi, args);
  for (int i = 0; i < n; ++i) {
    std::vector<Poly> a;
    for (int j = 0; j < i; ++j) a.push_back(fs[j]);
    a.push_back(fs[i] * fs[i + 1]);
    for (int j = i + 2; j <= n; ++j) a.push_back(fs[j]);
    Poly term = op_apply(phi, a);
    if ((i + 1) % 2) r -= term; else r += term;
  }
  std::vector<Poly> head(fs.begin(), fs.end() - 1);
  Poly last = op_apply(phi, head) * fs[n];
  if ((n + 1) % 2) r -= last; else r += last;
  return r;
}

/// Hochschild coboundary, computed on functions and read back as a symbol.
inline SymbolChain hochschild_delta(const SymbolChain& phi) {
  return extract_symbol(phi.arity() + 1, phi.nvars(), phi.max_order(),
                        [&](const std::vector<Poly>& fs) { return hochschild_delta_eval(phi, fs); });
}

inline MultiDiffOp hochschild_delta(const MultiDiffOp& d) { return MultiDiffOp(hochschild_delta(d.symbol())); }

/// δ of a function f, as an arity-1 operator g ↦ g f - f g (always zero).
inline SymbolChain hochschild_delta_function(const Poly& f, int max_order = 1) {
  return extract_symbol(1, f.nvars(), max_order, [&](const std::vector<Poly>& g) { return g[0] * f - f * g[0]; });
}

/// All tuples of `arity` exponents whose degrees sum to at most `bound`, each
/// argument of degree >= 1.
inline void for_each_monomial_tuple(int nvars, int arity, int bound,
                                    const std::function<void(const std::vector<Poly>&)>& fn) {
  std::vector<std::vector<Exponent>> by_degree(bound + 1);
  for (int d = 1; d <= bound; ++d) by_degree[d] = monomials_of_degree(nvars, d);
  std::vector<Poly> cur;
  auto rec = [&](auto& self, int slot, int left) -> void {
    if (slot == arity) {
      fn(cur);
      return;
    }
    for (int d = 1; d <= left - (arity - 1 - slot); ++d) {
      for (const auto& e : by_degree[d]) {
        cur.push_back(Poly::monomial(e));
        self(self, slot + 1, left - d);
        cur.pop_back();
      }
    }
  };
  rec(rec, 0, bound);
}

/// Checks Op(D φ) = δ(Op φ) on every monomial tuple of total degree at most
/// `degree_bound` (default: max order + coefficient degree + 1).
inline bool chain_map_check(const SymbolChain& phi, std::optional<int> degree_bound = std::nullopt) {
  const int bound = degree_bound.value_or(phi.max_order() + phi.max_coefficient_degree() + 1);
  const SymbolChain dphi = differential_D(phi);
  bool ok = true;
  for_each_monomial_tuple(phi.nvars(), phi.arity() + 1, bound, [&](const std::vector<Poly>& fs) {
    if (ok && !(op_apply(dphi, fs) == hochschild_delta_eval(phi, fs))) ok = false;
  });
  return ok;
}

/// Operator equality on monomial tuples (independent of symbol comparison).
inline bool operators_agree(const SymbolChain& a, const SymbolChain& b, int degree_bound) {
  if (a.arity() != b.arity()) return false;
  bool ok = true;
  for_each_monomial_tuple(a.nvars(), a.arity(), degree_bound, [&](const std::vector<Poly>& fs) {
    if (ok && !(op_apply(a, fs) == op_apply(b, fs))) ok = false;
  });
  return ok;
}

// ---------------------------------------------------------------------------
// Operator-level constraint classes

inline bool op_membership(const FlatModel& m, const MultiDiffOp& d, FunctionClassTag tag) {
  return chain_membership(m, d.symbol(), tag);
}

/// Witness against the defining conditions.
struct FunctionalWitness {
  std::vector<Poly> args;
  Poly value;
  FunctionClassTag required;
};

/// Sampled oracle for the defining conditions:
///   Wobs: D(f_1..f_n) is Wobs for Wobs arguments, and Null as soon as one
///         argument is Null;
///   Null: D(f_1..f_n) is Null for Wobs arguments.
/// Arguments range over monomial bases of the Wobs class with degree in
/// [1, per_slot_degree] (constants are killed by every operator).
inline std::optional<FunctionalWitness> functional_membership_witness(const FlatModel& m, const SymbolChain& phi,
                                                                      FunctionClassTag tag, int per_slot_degree) {
  if (tag == FunctionClassTag::Total) return std::nullopt;
  const int n = m.n_total();
  std::vector<std::pair<Poly, bool>> basis;  // (monomial, is Null)
  for (int d = 1; d <= per_slot_degree; ++d)
    for (const auto& e : monomials_of_degree(n, d)) {
      auto cls = monomial_function_class(m, e);
      if (cls != FunctionClassTag::Total) basis.emplace_back(Poly::monomial(e), cls == FunctionClassTag::Null);
    }
  const int arity = phi.arity();
  std::vector<std::size_t> pick(arity, 0);
  std::vector<Poly> args(arity);
  if (basis.empty()) return std::nullopt;
  while (true) {
    bool any_null = false;
    for (int i = 0; i < arity; ++i) {
      args[i] = basis[pick[i]].first;
      any_null = any_null || basis[pick[i]].second;
    }
    Poly v = op_apply(phi, args);
    if (!v.is_zero()) {
      const FunctionClassTag need =
          (tag == FunctionClassTag::Null || any_null) ? FunctionClassTag::Null : FunctionClassTag::Wobs;
      if (!function_in(m, v, need)) return FunctionalWitness{args, v, need};
    }
    int i = arity - 1;
    while (i >= 0 && ++pick[i] == basis.size()) pick[i--] = 0;
    if (i < 0) break;
  }
  return std::nullopt;
}

/// Default per-slot degree: one more than the operator order.
inline bool functional_membership(const FlatModel& m, const SymbolChain& phi, FunctionClassTag tag,
                                  std::optional<int> per_slot_degree = std::nullopt) {
  return !functional_membership_witness(m, phi, tag, per_slot_degree.value_or(phi.max_order() + 1)).has_value();
}

}  // namespace conhoch
