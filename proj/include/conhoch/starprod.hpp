#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conhoch/algebra.hpp"
#include "conhoch/cohomology.hpp"
#include "conhoch/differential.hpp"
#include "conhoch/diffops.hpp"
#include "conhoch/errors.hpp"
#include "conhoch/membership.hpp"
#include "conhoch/model.hpp"

namespace conhoch {

/// The bracket is taken as C_1^-(f, g) = C_1(f, g) - C_1(g, f). The usual
/// physical normalization multiplies it by this factor (-i), which is left
/// symbolic since all coefficients here are rational.
inline constexpr const char* kBracketConventionFactor = "-i";

/// ⋆ = μ_0 + Σ_{r=1}^{order} ħ^r C_r, with C_r = cochains[r-1].
class TruncatedStar {
 public:
  explicit TruncatedStar(std::vector<MultiDiffOp> cochains) : cochains_(std::move(cochains)) {
    if (cochains_.empty()) throw PreconditionViolation("a truncated star product has order >= 1");
    for (const auto& c : cochains_) {
      if (c.arity() != 2) throw ArityMismatch("star product cochains are bidifferential");
      if (c.nvars() != cochains_.front().nvars()) throw ModelMismatch("star product cochains over different rings");
    }
  }
  static TruncatedStar first_order(const SymbolChain& c1) { return TruncatedStar({MultiDiffOp(c1)}); }

  int order() const { return static_cast<int>(cochains_.size()); }
  int nvars() const { return cochains_.front().nvars(); }
  /// 1-based, C_r.
  const MultiDiffOp& cochain(int r) const { return cochains_.at(r - 1); }
  const std::vector<MultiDiffOp>& cochains() const { return cochains_; }

 private:
  std::vector<MultiDiffOp> cochains_;
};

/// S = id + Σ ħ^r S_r.
class TruncatedEquivalence {
 public:
  explicit TruncatedEquivalence(std::vector<MultiDiffOp> maps) : maps_(std::move(maps)) {
    for (const auto& s : maps_)
      if (s.arity() != 1) throw ArityMismatch("equivalence components are differential operators");
  }
  int order() const { return static_cast<int>(maps_.size()); }
  const MultiDiffOp& map(int r) const { return maps_.at(r - 1); }
  const std::vector<MultiDiffOp>& maps() const { return maps_; }

 private:
  std::vector<MultiDiffOp> maps_;
};

/// Coefficients of ħ^0..ħ^order in f ⋆ g.
inline std::vector<Poly> star_apply(const TruncatedStar& s, const Poly& f, const Poly& g) {
  std::vector<Poly> out{f * g};
  for (int r = 1; r <= s.order(); ++r) out.push_back(op_apply(s.cochain(r), {f, g}));
  return out;
}

struct AssociativityViolation {
  int order;
  std::vector<Poly> args;  // f, g, h
  Poly defect;             // ħ^order coefficient of (f⋆g)⋆h - f⋆(g⋆h)
};

namespace detail {

inline Poly star_term(const TruncatedStar& s, int r, const Poly& f, const Poly& g) {
  return r == 0 ? f * g : op_apply(s.cochain(r), {f, g});
}

inline Poly associator(const TruncatedStar& s, int r, const Poly& f, const Poly& g, const Poly& h) {
  Poly d(f.nvars());
  for (int a = 0; a <= r; ++a) {
    const int b = r - a;
    d += star_term(s, a, star_term(s, b, f, g), h);
    d -= star_term(s, a, f, star_term(s, b, g, h));
  }
  return d;
}

}  // namespace detail

/// First order at which (f⋆g)⋆h ≠ f⋆(g⋆h), found on monomial triples whose
/// total degree is at most the largest combined order at that ħ power plus
/// one. At order 1 the symbolic condition δC_1 = 0 is checked as well.
inline std::optional<AssociativityViolation> check_associativity(const TruncatedStar& s, int up_to) {
  if (up_to < 1 || up_to > s.order()) throw PreconditionViolation("associativity order outside [1, star order]");
  const int n = s.nvars();
  for (int r = 1; r <= up_to; ++r) {
    int bound = 0;
    for (int a = 0; a <= r; ++a) {
      const int oa = a == 0 ? 0 : s.cochain(a).symbol().max_order();
      const int ob = r - a == 0 ? 0 : s.cochain(r - a).symbol().max_order();
      bound = std::max(bound, oa + ob);
    }
    bound += 1;
    std::optional<AssociativityViolation> found;
    for_each_monomial_tuple(n, 3, bound, [&](const std::vector<Poly>& fs) {
      if (found) return;
      Poly d = detail::associator(s, r, fs[0], fs[1], fs[2]);
      if (!d.is_zero()) found = AssociativityViolation{r, fs, d};
    });
    if (found) return found;
    if (r == 1 && !hochschild_delta(s.cochain(1).symbol()).is_zero()) {
      // unreachable when the functional test above is complete
      throw InternalError("δC_1 ≠ 0 but no violating monomial triple was found");
    }
  }
  return std::nullopt;
}

inline bool is_constraint_star(const FlatModel& m, const TruncatedStar& s) {
  for (const auto& c : s.cochains())
    if (!op_membership(m, c, FunctionClassTag::Wobs)) return false;
  return true;
}

/// Bivector π with C_1^-(f, g) = π(df, dg) on the antisymmetric first-order
/// part, i.e. π = ½ ∧∘pr_1^{⊗2}(C_1^-).
inline MultiVector poisson_from_star(const TruncatedStar& s) {
  const SymbolChain& c1 = s.cochain(1).symbol();
  if (!differential_D(c1).is_zero()) throw NotClosed("C_1 is not a Hochschild cocycle");
  const SymbolChain minus = c1 - c1.swapped();
  return Rational(1, 2) * pr1_top(minus);
}

/// C ⊆ (M, π) is coisotropic iff the Hamiltonian field π(·, dx^u) of every
/// normal coordinate u restricts on C to a section of D, i.e. π^{iu}|_C = 0
/// for u > n_wobs and every i > n_null.
inline bool coisotropy_check(const FlatModel& m, const MultiVector& pi) {
  if (pi.degree() != 2) throw ArityMismatch("coisotropy_check takes a bivector");
  if (pi.nvars() != m.n_total()) throw ModelMismatch("bivector over a different model");
  for (const auto& [idx, p] : pi.terms()) {
    const int i = idx[0], j = idx[1];
    const bool hits = (j > m.n_wobs() && i > m.n_null()) || (i > m.n_wobs() && j > m.n_null());
    if (hits && !restrict_to_c(m, p).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Equivalences
//
// With S = id + ħ^{k+1} S_{k+1} and f ⋆' g = S^{-1}(S f ⋆ S g), the order k+1
// cochains differ by C'_{k+1} - C_{k+1} = δ S_{k+1}.

namespace detail {

inline SymbolChain order_difference(const TruncatedStar& s, const TruncatedStar& s2, int k) {
  if (s.nvars() != s2.nvars()) throw ModelMismatch("star products over different rings");
  if (k < 0 || k + 1 > s.order() || k + 1 > s2.order())
    throw PreconditionViolation("both star products need order >= k+1");
  for (int r = 1; r <= k; ++r)
    if (!(s.cochain(r) == s2.cochain(r)))
      throw PreconditionViolation("star products differ at order " + std::to_string(r) + " <= k");
  SymbolChain diff = s2.cochain(k + 1).symbol() - s.cochain(k + 1).symbol();
  if (!differential_D(diff).is_zero())
    throw PreconditionViolation("order k+1 difference is not closed; one of the products is not associative");
  return diff;
}

}  // namespace detail

/// Solves δS_{k+1} = C'_{k+1} - C_{k+1} with S_{k+1} in the tagged arity-1
/// slices (Total: plain equivalence, Wobs: constraint equivalence).
inline std::optional<MultiDiffOp> equivalence_step(const FlatModel& m, const TruncatedStar& s,
                                                   const TruncatedStar& s2, int k,
                                                   FunctionClassTag tag = FunctionClassTag::Wobs) {
  if (tag != FunctionClassTag::Total && (!is_constraint_star(m, s) || !is_constraint_star(m, s2)))
    throw PreconditionViolation("constraint equivalence needs constraint star products");
  const SymbolChain diff = detail::order_difference(s, s2, k);
  if (diff.is_zero()) return MultiDiffOp(SymbolChain(1, s.nvars()));
  auto psi = solve_D(m, diff, tag);
  if (!psi) return std::nullopt;
  return MultiDiffOp(std::move(*psi));
}

inline std::optional<MultiDiffOp> plain_equivalence_step(const FlatModel& m, const TruncatedStar& s,
                                                         const TruncatedStar& s2, int k) {
  return equivalence_step(m, s, s2, k, FunctionClassTag::Total);
}

struct EquivalenceReport {
  bool plain_equivalent;
  bool constraint_equivalent;
  std::optional<MultiDiffOp> s;  // the constraint S_{k+1} if any, else the plain one
};

inline EquivalenceReport equivalence_report(const FlatModel& m, const TruncatedStar& s, const TruncatedStar& s2,
                                            int k) {
  auto plain = plain_equivalence_step(m, s, s2, k);
  std::optional<MultiDiffOp> cons;
  if (is_constraint_star(m, s) && is_constraint_star(m, s2)) cons = equivalence_step(m, s, s2, k);
  EquivalenceReport r{plain.has_value(), cons.has_value(), cons ? cons : plain};
  return r;
}

/// ħ^{k+1} coefficient of S^{-1}(S f ⋆ S g) for S = id + ħ^{k+1} S_{k+1}.
inline Poly transformed_order_coefficient(const TruncatedStar& s, const MultiDiffOp& sk1, int k, const Poly& f,
                                          const Poly& g) {
  const Poly cf = op_apply(s.cochain(k + 1), {f, g});
  const Poly sf = op_apply(sk1, {f});
  const Poly sg = op_apply(sk1, {g});
  return cf + sf * g + f * sg - op_apply(sk1, {f * g});
}

/// The class of an infinitesimal constraint star product.
inline CocycleClass classify_infinitesimal(const FlatModel& m, const MultiDiffOp& c1) {
  if (c1.arity() != 2) throw ArityMismatch("infinitesimal deformations are bidifferential");
  if (!op_membership(m, c1, FunctionClassTag::Wobs)) throw NotConstraint("C_1 is not a constraint operator");
  if (!differential_D(c1.symbol()).is_zero()) throw NotClosed("C_1 is not a Hochschild cocycle");
  return decompose_2cocycle(m, c1.symbol()).cls;
}

}  // namespace conhoch
