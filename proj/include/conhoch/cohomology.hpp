#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conhoch/algebra.hpp"
#include "conhoch/differential.hpp"
#include "conhoch/diffops.hpp"
#include "conhoch/errors.hpp"
#include "conhoch/functions.hpp"
#include "conhoch/linalg.hpp"
#include "conhoch/membership.hpp"
#include "conhoch/model.hpp"
#include "conhoch/parallel.hpp"

namespace conhoch {

/// Finite window of the chain complex: fixed arity, total symmetric degree K
/// and homogeneous coefficient degree c.
struct Slice {
  int arity = 1;
  int K = 1;
  int c = 0;
  FunctionClassTag tag = FunctionClassTag::Wobs;

  Slice next() const { return {arity + 1, K, c, tag}; }
  std::string to_string() const {
    return "(arity " + std::to_string(arity) + ", K=" + std::to_string(K) + ", c=" + std::to_string(c) + ", " +
           conhoch::to_string(tag) + ")";
  }
};

using ChainKey = std::pair<WordTuple, Exponent>;

/// Monomial chains of the slice lying in the tagged class. The classes are
/// monomially spanned, so these form a basis.
inline std::vector<ChainKey> slice_monomials(const FlatModel& m, const Slice& s) {
  std::vector<ChainKey> out;
  const auto exps = monomials_of_degree(m.n_total(), s.c);
  for (const auto& t : word_tuples(m.n_total(), s.arity, s.K))
    for (const auto& e : exps)
      if (s.tag == FunctionClassTag::Total || chain_monomial_in(m, e, t, to_subspace_tag(s.tag))) out.emplace_back(t, e);
  return out;
}

inline SymbolChain chain_of(int nvars, const ChainKey& k, const Rational& c = 1) {
  SymbolChain r(static_cast<int>(k.first.size()), nvars);
  r.add_monomial(k.first, k.second, c);
  return r;
}

inline std::vector<SymbolChain> slice_basis(const FlatModel& m, const Slice& s) {
  std::vector<SymbolChain> out;
  for (const auto& k : slice_monomials(m, s)) out.push_back(chain_of(m.n_total(), k));
  return out;
}

inline SparseVector chain_coordinates(Indexer<ChainKey>& ix, const SymbolChain& phi) {
  SparseVector v;
  for (const auto& [t, p] : phi.terms())
    for (const auto& [e, c] : p.terms()) v[ix.index({t, e})] += c;
  return v;
}

namespace detail {

/// Images of the slice basis under D, as coordinate vectors over the
/// codomain basis. Throws if an image leaves the tagged codomain.
inline std::vector<SparseVector> d_images(const FlatModel& m, const Slice& dom, Indexer<ChainKey>& cod_ix) {
  const Slice cod = dom.next();
  for (const auto& k : slice_monomials(m, cod)) cod_ix.index(k);
  const std::size_t cod_dim = cod_ix.size();
  std::vector<SparseVector> cols;
  for (const auto& k : slice_monomials(m, dom)) {
    SymbolChain img = differential_D(chain_of(m.n_total(), k));
    SparseVector v = chain_coordinates(cod_ix, img);
    if (cod_ix.size() != cod_dim)
      throw InternalError("D maps " + chain_of(m.n_total(), k).to_string() + " out of the slice " + cod.to_string());
    cols.push_back(std::move(v));
  }
  return cols;
}

}  // namespace detail

/// Matrix of D from `dom` to `cod` in the slice bases (rows: codomain).
inline RationalMatrix matrix_of_D(const FlatModel& m, const Slice& dom, const Slice& cod) {
  if (cod.arity != dom.arity + 1 || cod.K != dom.K || cod.c != dom.c || cod.tag != dom.tag)
    throw PreconditionViolation("codomain slice must be the domain slice with arity + 1");
  Indexer<ChainKey> ix;
  auto cols = detail::d_images(m, dom, ix);
  RationalMatrix a(ix.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [i, v] : cols[j]) a.set(i, j, v);
  return a;
}

inline std::size_t rank_of_D(const FlatModel& m, const Slice& dom) {
  Indexer<ChainKey> ix;
  return fraction_free_rank(detail::d_images(m, dom, ix));
}

/// dim HH^degree in the (K, c) window, degree 0..2. For degree 0 only c
/// matters: the cochains are functions of coefficient degree c.
inline std::size_t hh_dimension(const FlatModel& m, FunctionClassTag tag, int degree, int K, int c) {
  if (degree == 0) {
    const auto fs = function_slice_basis(m, tag, c);
    std::vector<SparseVector> imgs;
    Indexer<ChainKey> ix;
    for (const auto& f : fs) imgs.push_back(chain_coordinates(ix, hochschild_delta_function(f, std::max(1, K))));
    return fs.size() - fraction_free_rank(imgs);
  }
  if (degree < 0 || degree > 2) throw PreconditionViolation("hh_dimension covers degrees 0, 1, 2");
  if (K < 1 || c < 0) throw PreconditionViolation("slice needs K >= 1 and c >= 0");
  const Slice s1{1, K, c, tag};
  const std::size_t r1 = rank_of_D(m, s1);
  if (degree == 1) return slice_monomials(m, s1).size() - r1;
  const Slice s2{2, K, c, tag};
  return slice_monomials(m, s2).size() - rank_of_D(m, s2) - r1;
}

/// Basis of Sym^{K-1}Γ(D) ∨ Γ(TC⊥) with coefficients of degree c in the
/// variables 1..n_wobs.
inline std::vector<SymbolChain> psi_space_basis(const FlatModel& m, int K, int c) {
  std::vector<SymbolChain> out;
  if (K < 2) return out;
  const int n = m.n_total();
  std::vector<Exponent> coeffs;
  for (const auto& e : monomials_of_degree(m.n_wobs(), c)) {
    Exponent f(e);
    f.resize(n, 0);
    coeffs.push_back(std::move(f));
  }
  for (const auto& ds : index_multisets(m.n_null(), K - 1))
    for (int u = m.n_wobs() + 1; u <= n; ++u) {
      std::vector<int> w = ds;
      w.push_back(u);
      for (const auto& e : coeffs) {
        SymbolChain x(1, n);
        x.add_monomial({SymWord(w)}, e, 1);
        out.push_back(std::move(x));
      }
    }
  return out;
}

inline bool in_psi_space(const FlatModel& m, const SymbolChain& psi) {
  if (psi.arity() != 1 || psi.nvars() != m.n_total()) return false;
  for (const auto& [t, p] : psi.terms()) {
    if (t[0].length() < 2) return false;
    if (word_normal_count(m, t[0]) != 1 || word_d_count(m, t[0]) != t[0].length() - 1) return false;
    for (const auto& [e, c] : p.terms())
      if (normal_degree(m, e) != 0) return false;
  }
  return true;
}

/// [K = 2]·dim(tagged bivector slice at c) + dim of the ψ window.
inline std::size_t theorem_rhs_dimension(const FlatModel& m, FunctionClassTag tag, int K, int c) {
  if (K < 2) throw PreconditionViolation("theorem_rhs_dimension needs K >= 2");
  std::size_t d = psi_space_basis(m, K, c).size();
  if (K == 2) d += mv_slice_dimension(m, 2, c, tag);
  return d;
}

// ---------------------------------------------------------------------------
// Solving D ψ = φ

/// Solves D ψ = φ with ψ in the tagged arity-(n-1) slices covering the
/// gradings of φ. Returns nothing if no such ψ exists.
inline std::optional<SymbolChain> solve_D(const FlatModel& m, const SymbolChain& phi, FunctionClassTag tag) {
  if (phi.nvars() != m.n_total()) throw ModelMismatch("symbol chain over a different model");
  if (phi.arity() < 2) throw ArityMismatch("D-potentials exist only for arity >= 2");
  SymbolChain psi(phi.arity() - 1, m.n_total());
  for (const auto& [K, c] : phi.gradings()) {
    const Slice s{phi.arity() - 1, K, c, tag};
    const auto basis = slice_monomials(m, s);
    Indexer<ChainKey> ix;
    LinearSolver solver;
    for (const auto& k : basis) solver.add(chain_coordinates(ix, differential_D(chain_of(m.n_total(), k))));
    const std::size_t known = ix.size();
    SparseVector target = chain_coordinates(ix, phi.graded_part(K, c));
    if (ix.size() != known) return std::nullopt;  // φ has a coordinate no image reaches
    auto coeffs = solver.solve(target);
    if (!coeffs) return std::nullopt;
    for (const auto& [j, q] : *coeffs) psi.add_monomial(basis[j].first, basis[j].second, q);
  }
  return psi;
}

inline std::optional<SymbolChain> find_potential(const FlatModel& m, const SymbolChain& phi) {
  return solve_D(m, phi, FunctionClassTag::Total);
}

inline std::optional<SymbolChain> find_constraint_potential(const FlatModel& m, const SymbolChain& phi,
                                                            FunctionClassTag tag = FunctionClassTag::Wobs) {
  return solve_D(m, phi, tag);
}

// ---------------------------------------------------------------------------
// Degree-2 classes

/// (X, ψ): a constraint bivector and an element of Sym^{≥1}Γ(D) ∨ Γ(TC⊥).
struct CocycleClass {
  MultiVector x;
  SymbolChain psi;

  friend bool operator==(const CocycleClass& a, const CocycleClass& b) { return a.x == b.x && a.psi == b.psi; }
};

/// φ = D(potential) + hkr(X) + D(ψ).
struct CocycleDecomposition {
  CocycleClass cls;
  SymbolChain potential;
};

/// hkr(X) + D ψ, the representative of a class.
inline SymbolChain class_representative(const CocycleClass& cls) { return hkr(cls.x) + differential_D(cls.psi); }

inline void check_constraint_cocycle(const FlatModel& m, const SymbolChain& phi, FunctionClassTag tag) {
  if (phi.arity() != 2) throw ArityMismatch("degree-2 cocycles have arity 2");
  if (phi.nvars() != m.n_total()) throw ModelMismatch("symbol chain over a different model");
  if (!chain_membership(m, phi, tag))
    throw NotConstraint(phi.to_string() + " is not in the " + to_string(tag) + " class of " + m.to_string());
  if (!differential_D(phi).is_zero()) throw NotCocycle(phi.to_string() + " is not D-closed");
}

inline CocycleDecomposition decompose_2cocycle(const FlatModel& m, const SymbolChain& phi,
                                               FunctionClassTag tag = FunctionClassTag::Wobs) {
  if (tag == FunctionClassTag::Total) throw UnsupportedTag("decompose_2cocycle needs tag Wobs or Null");
  check_constraint_cocycle(m, phi, tag);
  const MultiVector x = pr1_top(phi);
  if (!mv_membership(m, x, tag)) throw SolveFailure("bivector part " + x.to_string() + " is not constraint");
  const SymbolChain rest = phi - hkr(x);
  auto psi = solve_D(m, rest, FunctionClassTag::Total);
  if (!psi) throw SolveFailure("no potential for the symmetric part of " + phi.to_string());
  SymSplit split = decompose_sym(m, *psi);
  if (!chain_membership(m, split.wobs_part, tag))
    throw SolveFailure("potential part " + split.wobs_part.to_string() + " is not constraint");
  SymbolChain cls_psi = split.total_not_wobs - pr1(split.total_not_wobs);
  if (!in_psi_space(m, cls_psi))
    throw SolveFailure("complement part " + cls_psi.to_string() + " is not in Sym Γ(D) ∨ Γ(TC⊥)");
  CocycleDecomposition out{{x, std::move(cls_psi)}, std::move(split.wobs_part)};
  if (!(differential_D(out.potential) + class_representative(out.cls) == phi))
    throw InternalError("decomposition does not reproduce its input");
  return out;
}

/// (X, ψ) ↦ X and (X, ψ) ↦ [X] on M_red.
inline std::pair<MultiVector, MultiVector> class_maps(const FlatModel& m, const CocycleClass& cls) {
  return {cls.x, reduce_multivector(m, cls.x)};
}

/// hkr of the bivector basis (K = 2 only) followed by D of the ψ basis.
inline std::vector<SymbolChain> cohomology_representatives(const FlatModel& m, FunctionClassTag tag, int K, int c) {
  std::vector<SymbolChain> out;
  if (K == 2)
    for (const auto& x : mv_slice_basis(m, 2, c, tag)) out.push_back(hkr(x));
  for (const auto& psi : psi_space_basis(m, K, c)) out.push_back(differential_D(psi));
  return out;
}

/// The representatives are cocycles of the tagged slice and independent
/// modulo the image of D.
inline bool representatives_independent(const FlatModel& m, FunctionClassTag tag, int K, int c) {
  const auto reps = cohomology_representatives(m, tag, K, c);
  for (const auto& r : reps)
    if (!chain_membership(m, r, tag) || !differential_D(r).is_zero()) return false;
  Indexer<ChainKey> ix;
  std::vector<SparseVector> exact = detail::d_images(m, Slice{1, K, c, tag}, ix);
  const std::size_t r_exact = fraction_free_rank(exact);
  for (const auto& r : reps) exact.push_back(chain_coordinates(ix, r));
  return fraction_free_rank(exact) == r_exact + reps.size();
}

// ---------------------------------------------------------------------------
// Grid verification

struct SliceReport {
  FlatModel model;
  FunctionClassTag tag;
  int K;
  int c;
  std::size_t hh_dim;
  std::size_t rhs_dim;
  bool match;
  std::vector<SymbolChain> representatives;
};

inline SliceReport verify_slice(const FlatModel& m, FunctionClassTag tag, int K, int c, bool with_reps = false) {
  const std::size_t hh = hh_dimension(m, tag, 2, K, c);
  const std::size_t rhs = theorem_rhs_dimension(m, tag, K, c);
  SliceReport r{m, tag, K, c, hh, rhs, hh == rhs, {}};
  if (with_reps) r.representatives = cohomology_representatives(m, tag, K, c);
  return r;
}

/// Every (K, c) with 2 <= K <= kmax, 0 <= c <= cmax, ordered by (K, c).
inline std::vector<SliceReport> verify_theorem_grid(const FlatModel& m, FunctionClassTag tag, int kmax, int cmax,
                                                    int jobs = 1, bool with_reps = false) {
  std::vector<std::pair<int, int>> keys;
  for (int K = 2; K <= kmax; ++K)
    for (int c = 0; c <= cmax; ++c) keys.emplace_back(K, c);
  std::vector<std::optional<SliceReport>> slots(keys.size());
  parallel_for(keys.size(), jobs, [&](std::size_t i) {
    slots[i] = verify_slice(m, tag, keys[i].first, keys[i].second, with_reps);
  });
  std::vector<SliceReport> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace conhoch
