#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "conhoch/algebra.hpp"
#include "conhoch/errors.hpp"
#include "conhoch/functions.hpp"
#include "conhoch/linalg.hpp"
#include "conhoch/model.hpp"

namespace conhoch {

// ---------------------------------------------------------------------------
// Enumeration helpers

/// Sorted index multisets of size k from {1..nvars}, lexicographic.
inline std::vector<std::vector<int>> index_multisets(int nvars, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto& self, int from) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = from; i <= nvars; ++i) {
      cur.push_back(i);
      self(self, i);
      cur.pop_back();
    }
  };
  if (k >= 0) rec(rec, 1);
  return out;
}

/// Strictly increasing index k-tuples from {1..nvars}.
inline std::vector<std::vector<int>> index_subsets(int nvars, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto& self, int from) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = from; i <= nvars; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  if (k >= 0) rec(rec, 1);
  return out;
}

/// All word tuples of the given arity with nonempty slots and total length K.
inline std::vector<WordTuple> word_tuples(int nvars, int arity, int K) {
  std::vector<WordTuple> out;
  if (arity < 1 || K < arity) return out;
  std::map<int, std::vector<SymWord>> words;
  for (int k = 1; k <= K - arity + 1; ++k)
    for (auto& ms : index_multisets(nvars, k)) words[k].emplace_back(std::move(ms));
  WordTuple cur;
  auto rec = [&](auto& self, int slot, int left) -> void {
    if (slot == arity - 1) {
      for (const auto& w : words[left]) {
        cur.push_back(w);
        out.push_back(cur);
        cur.pop_back();
      }
      return;
    }
    for (int k = 1; k <= left - (arity - 1 - slot); ++k) {
      for (const auto& w : words[k]) {
        cur.push_back(w);
        self(self, slot + 1, left - k);
        cur.pop_back();
      }
    }
  };
  rec(rec, 0, K);
  return out;
}

/// Exponents of all monomials of degree <= d, by increasing degree.
inline std::vector<Exponent> monomials_up_to(int nvars, int d) {
  std::vector<Exponent> out;
  for (int k = 0; k <= d; ++k)
    for (auto& e : monomials_of_degree(nvars, k)) out.push_back(std::move(e));
  return out;
}

/// Number of indices of a word lying in the TC-perp block / the D block.
inline int word_normal_count(const FlatModel& m, const SymWord& w) {
  int t = 0;
  for (int i : w.indices()) t += i > m.n_wobs();
  return t;
}
inline int word_d_count(const FlatModel& m, const SymWord& w) {
  int d = 0;
  for (int i : w.indices()) d += i <= m.n_null();
  return d;
}

// ---------------------------------------------------------------------------
// Vector fields

/// Monomial criterion for x^e ∂_i.
inline bool vf_monomial_in(const FlatModel& m, const Exponent& e, int i, FunctionClassTag tag) {
  const int t = normal_degree(m, e);
  switch (tag) {
    case FunctionClassTag::Total: return true;
    case FunctionClassTag::Null: return m.in_d(i) || t >= 1;
    case FunctionClassTag::Wobs:
      switch (m.block(i)) {
        case Block::D: return true;
        case Block::DPerp: return t >= 1 || d_degree(m, e) == 0;
        case Block::TCPerp: return t >= 1;
      }
  }
  return false;
}

/// Null iff X|_C is a section of D. Wobs iff X|_C is tangent to C and
/// [∂_a, X] ∈ Γ(D) for the frame ∂_1..∂_{n_null} of D.
inline bool vf_membership(const FlatModel& m, const VectorField& x, FunctionClassTag tag) {
  if (x.nvars() != m.n_total()) throw ModelMismatch("vector field over a different model");
  if (tag == FunctionClassTag::Total) return true;
  const int first_bad = tag == FunctionClassTag::Null ? m.n_null() + 1 : m.n_wobs() + 1;
  for (int i = first_bad; i <= m.n_total(); ++i)
    if (!restrict_to_c(m, x.component(i)).is_zero()) return false;
  if (tag == FunctionClassTag::Wobs) {
    for (int a = 1; a <= m.n_null(); ++a)
      for (int i = m.n_null() + 1; i <= m.n_total(); ++i)
        if (!restrict_to_c(m, x.component(i).partial(a)).is_zero()) return false;
  }
  return true;
}

/// Definitional oracle: tests [Y, X]|_C ∈ Γ(D) for every Y = x^β ∂_a with a in
/// D and |β| <= probe_degree, plus the restriction condition.
inline bool vf_membership_by_bracket(const FlatModel& m, const VectorField& x, FunctionClassTag tag,
                                     int probe_degree) {
  if (tag == FunctionClassTag::Total) return true;
  const int n = m.n_total();
  if (tag == FunctionClassTag::Null) {
    for (int i = m.n_null() + 1; i <= n; ++i)
      if (!restrict_to_c(m, x.component(i)).is_zero()) return false;
    return true;
  }
  for (int i = m.n_wobs() + 1; i <= n; ++i)
    if (!restrict_to_c(m, x.component(i)).is_zero()) return false;
  for (const auto& e : monomials_up_to(n, probe_degree)) {
    for (int a = 1; a <= m.n_null(); ++a) {
      const VectorField y = VectorField::basis(n, a, Poly::monomial(e));
      const VectorField b = bracket(y, x);
      for (int i = m.n_null() + 1; i <= n; ++i)
        if (!restrict_to_c(m, b.component(i)).is_zero()) return false;
    }
  }
  return true;
}

/// Monomial basis of the tagged vector-field slice at coefficient degree c.
inline std::vector<VectorField> vf_slice_basis(const FlatModel& m, FunctionClassTag tag, int c) {
  std::vector<VectorField> out;
  for (int i = 1; i <= m.n_total(); ++i)
    for (const auto& e : monomials_of_degree(m.n_total(), c))
      if (vf_monomial_in(m, e, i, tag)) out.push_back(VectorField::basis(m.n_total(), i, Poly::monomial(e)));
  return out;
}

// ---------------------------------------------------------------------------
// Multivector fields
//
// Wobs: Λ^k X_W + Λ^{k-1} X ∧ X_N.   Null: Λ^{k-1} X ∧ X_N.

/// Closed-form criterion for x^e ∂_I (I strictly increasing).
inline bool mv_monomial_in(const FlatModel& m, const std::vector<int>& idx, const Exponent& e, FunctionClassTag tag) {
  if (tag == FunctionClassTag::Total) return true;
  bool has_d = false;
  bool has_normal = false;
  for (int i : idx) {
    has_d = has_d || m.in_d(i);
    has_normal = has_normal || m.in_tc_perp(i);
  }
  const int t = normal_degree(m, e);
  if (t >= 1 || has_d) return true;
  if (tag == FunctionClassTag::Null) return false;
  return d_degree(m, e) == 0 && !has_normal;
}

namespace detail {

using MvKey = std::pair<std::vector<int>, Exponent>;

struct MvSlice {
  Indexer<MvKey> coords;
  LinearSolver span;
  std::vector<MultiVector> basis;
};

inline SparseVector mv_coordinates(Indexer<MvKey>& ix, const MultiVector& x) {
  SparseVector v;
  for (const auto& [idx, p] : x.terms())
    for (const auto& [e, c] : p.terms()) v[ix.index({idx, e})] += c;
  return v;
}

inline std::optional<SparseVector> mv_coordinates_known(const Indexer<MvKey>& ix, const MultiVector& x) {
  SparseVector v;
  for (const auto& [idx, p] : x.terms())
    for (const auto& [e, c] : p.terms()) {
      auto j = ix.find({idx, e});
      if (!j) return std::nullopt;
      v[*j] += c;
    }
  return v;
}

/// Spanning set of the tagged slice (degree k, coefficient degree c) built
/// from the generating fields of each summand, then row-reduced.
inline std::shared_ptr<const MvSlice> build_mv_slice(const FlatModel& m, int k, int c, FunctionClassTag tag) {
  auto s = std::make_shared<MvSlice>();
  const int n = m.n_total();
  // every monomial of the slice gets a coordinate up front
  for (const auto& idx : index_subsets(n, k))
    for (const auto& e : monomials_of_degree(n, c)) s->coords.index({idx, e});

  auto add = [&](const MultiVector& x) {
    if (x.is_zero()) return;
    s->span.add(mv_coordinates(s->coords, x));
  };

  if (tag == FunctionClassTag::Total) {
    for (const auto& idx : index_subsets(n, k))
      for (const auto& e : monomials_of_degree(n, c)) add(MultiVector::term(n, idx, Poly::monomial(e)));
  } else if (k == 0) {
    // Λ^0 pieces are functions; only the Wobs summand exists here
    if (tag == FunctionClassTag::Wobs) {
      for (const auto& e : monomials_of_degree(n, c)) {
        if (monomial_function_class(m, e) != FunctionClassTag::Total) {
          MultiVector x(0, n);
          x.add_term({}, Poly::monomial(e));
          add(x);
        }
      }
    } else {
      for (const auto& e : monomials_of_degree(n, c)) {
        if (monomial_function_class(m, e) == FunctionClassTag::Null) {
          MultiVector x(0, n);
          x.add_term({}, Poly::monomial(e));
          add(x);
        }
      }
    }
  } else {
    // Λ^{k-1} X ∧ X_N
    for (int c1 = 0; c1 <= c; ++c1) {
      std::vector<MultiVector> nulls;
      for (int j = 1; j <= n; ++j)
        for (const auto& e : monomials_of_degree(n, c - c1))
          if (vf_monomial_in(m, e, j, FunctionClassTag::Null)) nulls.push_back(MultiVector::term(n, {j}, Poly::monomial(e)));
      for (const auto& idx : index_subsets(n, k - 1))
        for (const auto& e : monomials_of_degree(n, c1)) {
          const MultiVector a = MultiVector::term(n, idx, Poly::monomial(e));
          for (const auto& b : nulls) add(wedge(a, b));
        }
    }
    if (tag == FunctionClassTag::Wobs) {
      // Λ^k X_W: wedges of k Wobs monomial fields with coefficient degrees summing to c
      std::vector<std::pair<int, MultiVector>> fields;
      for (int d = 0; d <= c; ++d)
        for (int j = 1; j <= n; ++j)
          for (const auto& e : monomials_of_degree(n, d))
            if (vf_monomial_in(m, e, j, FunctionClassTag::Wobs))
              fields.emplace_back(d, MultiVector::term(n, {j}, Poly::monomial(e)));
      MultiVector one(0, n);
      one.add_term({}, Poly::one(n));
      auto rec = [&](auto& self, std::size_t from, int left, int deg, const MultiVector& acc) -> void {
        if (left == 0) {
          if (deg == c) add(acc);
          return;
        }
        for (std::size_t f = from; f < fields.size(); ++f) {
          if (deg + fields[f].first > c) continue;
          MultiVector next = wedge(acc, fields[f].second);
          if (next.is_zero()) continue;
          self(self, f + 1, left - 1, deg + fields[f].first, next);
        }
      };
      rec(rec, 0, k, 0, one);
    }
  }

  // the tagged spaces are monomially spanned; read a monomial basis off the span
  for (const auto& idx : index_subsets(n, k))
    for (const auto& e : monomials_of_degree(n, c)) {
      SparseVector v{{*s->coords.find({idx, e}), Rational(1)}};
      if (s->span.contains(v)) {
        MultiVector x(k, n);
        x.add_term(idx, Poly::monomial(e));
        s->basis.push_back(std::move(x));
      }
    }
  if (s->basis.size() != s->span.rank()) throw InternalError("multivector slice is not monomially spanned");
  return s;
}

inline std::shared_ptr<const MvSlice> mv_slice(const FlatModel& m, int k, int c, FunctionClassTag tag) {
  using Key = std::tuple<int, int, int, int, int, int>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const MvSlice>> cache;
  const Key key{m.n_total(), m.n_wobs(), m.n_null(), k, c, static_cast<int>(tag)};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto s = build_mv_slice(m, k, c, tag);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(s)).first->second;
}

}  // namespace detail

/// Monomial basis of the tagged multivector slice, found by row reduction of
/// the summands' spanning sets.
inline std::vector<MultiVector> mv_slice_basis(const FlatModel& m, int k, int c, FunctionClassTag tag) {
  return detail::mv_slice(m, k, c, tag)->basis;
}

inline std::size_t mv_slice_dimension(const FlatModel& m, int k, int c, FunctionClassTag tag) {
  return detail::mv_slice(m, k, c, tag)->span.rank();
}

inline bool mv_membership(const FlatModel& m, const MultiVector& x, FunctionClassTag tag) {
  if (x.nvars() != m.n_total()) throw ModelMismatch("multivector over a different model");
  for (int c : x.coefficient_degrees()) {
    auto s = detail::mv_slice(m, x.degree(), c, tag);
    auto v = detail::mv_coordinates_known(s->coords, x.homogeneous_part(c));
    if (!v || !s->span.contains(*v)) return false;
  }
  return true;
}

/// Image in Λ^k X(M_red): restrict to C, keep the terms with only D-perp
/// indices and renumber them from 1.
inline MultiVector reduce_multivector(const FlatModel& m, const MultiVector& x) {
  if (!mv_membership(m, x, FunctionClassTag::Wobs))
    throw NotWobs("reduce_multivector: " + x.to_string() + " is not Wobs in " + m.to_string());
  MultiVector r(x.degree(), m.reduced_dimension());
  for (const auto& [idx, p] : x.terms()) {
    bool keep = true;
    for (int i : idx) keep = keep && m.block(i) == Block::DPerp;
    if (!keep) continue;
    Poly on_c = restrict_to_c(m, p);
    for (int a = 1; a <= m.n_null(); ++a)
      if (on_c.depends_on(a)) throw InternalError("Wobs multivector coefficient depends on a D variable on C");
    std::vector<int> red;
    for (int i : idx) red.push_back(i - m.n_null());
    r.add_term(red, on_c.project_variables(m.n_null() + 1, m.n_wobs()));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Symbol chains

enum class SubspaceTag { Wobs, Null, NullNotVan, WobsNotNull, TotalNotWobs, TotalNotNull };

inline std::string to_string(SubspaceTag t) {
  switch (t) {
    case SubspaceTag::Wobs: return "Wobs";
    case SubspaceTag::Null: return "Null";
    case SubspaceTag::NullNotVan: return "NullNotVan";
    case SubspaceTag::WobsNotNull: return "WobsNotNull";
    case SubspaceTag::TotalNotWobs: return "TotalNotWobs";
    case SubspaceTag::TotalNotNull: return "TotalNotNull";
  }
  return "?";
}

inline std::optional<SubspaceTag> parse_subspace_tag(const std::string& s) {
  for (auto t : {SubspaceTag::Wobs, SubspaceTag::Null, SubspaceTag::NullNotVan, SubspaceTag::WobsNotNull,
                 SubspaceTag::TotalNotWobs, SubspaceTag::TotalNotNull})
    if (to_string(t) == s) return t;
  return std::nullopt;
}

inline bool is_hatted(SubspaceTag t) { return t != SubspaceTag::Wobs && t != SubspaceTag::Null; }

inline SubspaceTag to_subspace_tag(FunctionClassTag t) {
  if (t == FunctionClassTag::Wobs) return SubspaceTag::Wobs;
  if (t == FunctionClassTag::Null) return SubspaceTag::Null;
  throw UnsupportedTag("Total is not a constraint subspace tag");
}

namespace detail {

/// Word of Sym^{k-1}Γ(TC) ∨ Γ(D): no normal index, at least one D index.
inline bool word_null_not_van(const FlatModel& m, const SymWord& w) {
  return word_normal_count(m, w) == 0 && word_d_count(m, w) > 0;
}

inline void check_hatted_arity(SubspaceTag tag, int arity) {
  if (!is_hatted(tag)) return;
  if (arity == 1) return;
  if (arity == 2 && (tag == SubspaceTag::NullNotVan || tag == SubspaceTag::TotalNotWobs)) return;
  throw UnsupportedTag("subspace " + to_string(tag) + " is not defined at arity " + std::to_string(arity));
}

}  // namespace detail

/// Decides whether x^e · w_1 ⊗ ... ⊗ w_n lies in the tagged subspace.
///
/// Wobs/Null are the operator-level classes pulled back through the symbol
/// calculus (they are spanned by monomials). With t = normal degree of the
/// coefficient and "pure" meaning a slot with no normal index but some D index:
///   Null  iff t >= 1 or some slot is pure,
///   Wobs  iff Null, or the coefficient has no D variable and no slot carries
///         a normal index.
/// Hatted tags have coefficients on C (t = 0) and are block conditions.
inline bool chain_monomial_in(const FlatModel& m, const Exponent& e, const WordTuple& t, SubspaceTag tag) {
  detail::check_hatted_arity(tag, static_cast<int>(t.size()));
  const int nt = normal_degree(m, e);
  bool some_pure = false;
  bool some_normal = false;
  for (const auto& w : t) {
    some_pure = some_pure || detail::word_null_not_van(m, w);
    some_normal = some_normal || word_normal_count(m, w) > 0;
  }
  switch (tag) {
    case SubspaceTag::Null: return nt >= 1 || some_pure;
    case SubspaceTag::Wobs: return nt >= 1 || some_pure || (d_degree(m, e) == 0 && !some_normal);
    default: break;
  }
  if (nt != 0) return false;
  if (t.size() == 1) {
    const SymWord& w = t[0];
    const bool has_normal = word_normal_count(m, w) > 0;
    const bool all_dperp = word_d_count(m, w) == 0 && !has_normal;
    switch (tag) {
      case SubspaceTag::NullNotVan: return detail::word_null_not_van(m, w);
      case SubspaceTag::WobsNotNull: return all_dperp;
      case SubspaceTag::TotalNotWobs: return has_normal;
      case SubspaceTag::TotalNotNull: return has_normal || all_dperp;
      default: break;
    }
  } else {
    switch (tag) {
      case SubspaceTag::NullNotVan: return some_pure;
      case SubspaceTag::TotalNotWobs: return !some_pure && some_normal;
      default: break;
    }
  }
  return false;
}

/// Every subspace in question is spanned by monomial chains, so a chain lies
/// in it iff each of its monomial terms does.
inline bool chain_membership(const FlatModel& m, const SymbolChain& phi, SubspaceTag tag) {
  if (phi.nvars() != m.n_total()) throw ModelMismatch("symbol chain over a different model");
  detail::check_hatted_arity(tag, phi.arity());
  for (const auto& [t, p] : phi.terms())
    for (const auto& [e, c] : p.terms())
      if (!chain_monomial_in(m, e, t, tag)) return false;
  return true;
}

inline bool chain_membership(const FlatModel& m, const SymbolChain& phi, FunctionClassTag tag) {
  if (tag == FunctionClassTag::Total) {
    if (phi.nvars() != m.n_total()) throw ModelMismatch("symbol chain over a different model");
    return true;
  }
  return chain_membership(m, phi, to_subspace_tag(tag));
}

/// Membership in the sum-of-products spaces T^n Sym X_W + Σ_i T^{i-1} ⊗ Sym_N ⊗ T^{n-i}
/// (resp. only the second summand for Null), built from Wobs/Null fields slot by
/// slot. These are contained in the operator-level classes, strictly once the
/// coefficient vanishes on C (x3·∂3∨∂3 in model (3,2,1) is the smallest witness).
inline bool sum_of_products_monomial_in(const FlatModel& m, const Exponent& e, const WordTuple& t,
                                        FunctionClassTag tag) {
  if (tag == FunctionClassTag::Total) return true;
  const int nt = normal_degree(m, e);
  // some slot alone in Sym^{k-1}X_W ∨ X_N, the coefficient placed in that slot
  for (const auto& w : t) {
    const int p = word_normal_count(m, w);
    const int r = word_d_count(m, w);
    if (r >= 1 ? nt >= p : nt >= std::max(p, 1)) return true;
  }
  if (tag == FunctionClassTag::Null) return false;
  int P = 0, R = 0;
  for (const auto& w : t) {
    P += word_normal_count(m, w);
    R += word_d_count(m, w);
  }
  if (nt < P) return false;
  if (R == 0 && P == 0 && d_degree(m, e) > 0) return nt >= 1;
  return true;
}

inline bool sum_of_products_membership(const FlatModel& m, const SymbolChain& phi, FunctionClassTag tag) {
  if (phi.nvars() != m.n_total()) throw ModelMismatch("symbol chain over a different model");
  for (const auto& [t, p] : phi.terms())
    for (const auto& [e, c] : p.terms())
      if (!sum_of_products_monomial_in(m, e, t, tag)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Splittings

struct SymSplit {
  SymbolChain wobs_part;       // in C∞(M) · (RedSym)_W
  SymbolChain total_not_wobs;  // in (RedSym)_T̂
};

/// A monomial term goes to the complement iff its coefficient is on C and its
/// word contains a normal index.
inline SymSplit decompose_sym(const FlatModel& m, const SymbolChain& psi) {
  if (psi.arity() != 1) throw ArityMismatch("decompose_sym needs arity 1");
  if (psi.nvars() != m.n_total()) throw ModelMismatch("symbol chain over a different model");
  SymSplit s{SymbolChain(1, psi.nvars()), SymbolChain(1, psi.nvars())};
  for (const auto& [t, p] : psi.terms())
    for (const auto& [e, c] : p.terms()) {
      const bool tnw = normal_degree(m, e) == 0 && word_normal_count(m, t[0]) > 0;
      (tnw ? s.total_not_wobs : s.wobs_part).add_monomial(t, e, c);
    }
  return s;
}

struct Tensor2Split {
  SymbolChain cinf_wobs;       // C∞(M) · (T² RedSym)_W
  SymbolChain total_not_wobs;  // (T² RedSym)_T̂
  std::optional<SymbolChain> vanishing;      // V_C · T² RedSym, Null inputs only
  std::optional<SymbolChain> null_not_van;   // (T² RedSym)_N̂, Null inputs only
};

inline Tensor2Split decompose_tensor2(const FlatModel& m, const SymbolChain& phi) {
  if (phi.arity() != 2) throw ArityMismatch("decompose_tensor2 needs arity 2");
  if (phi.nvars() != m.n_total()) throw ModelMismatch("symbol chain over a different model");
  const int n = phi.nvars();
  Tensor2Split s{SymbolChain(2, n), SymbolChain(2, n), std::nullopt, std::nullopt};
  for (const auto& [t, p] : phi.terms())
    for (const auto& [e, c] : p.terms()) {
      const bool tnw = chain_monomial_in(m, e, t, SubspaceTag::TotalNotWobs);
      (tnw ? s.total_not_wobs : s.cinf_wobs).add_monomial(t, e, c);
    }
  if (chain_membership(m, phi, SubspaceTag::Null)) {
    SymbolChain van(2, n), nnv(2, n);
    for (const auto& [t, p] : phi.terms())
      for (const auto& [e, c] : p.terms()) (normal_degree(m, e) >= 1 ? van : nnv).add_monomial(t, e, c);
    s.vanishing = std::move(van);
    s.null_not_van = std::move(nnv);
  }
  return s;
}

}  // namespace conhoch
