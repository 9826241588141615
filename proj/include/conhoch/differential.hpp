#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "conhoch/algebra.hpp"
#include "conhoch/errors.hpp"

namespace conhoch {

/// (first block, second block) -> number of (ℓ, k-ℓ)-shuffles producing it,
/// summed over ℓ = 1..k-1. Shuffles act on positions, so repeated indices
/// give multiplicities.
inline std::map<std::pair<SymWord, SymWord>, long> shuffle_splits(const SymWord& w) {
  std::map<std::pair<SymWord, SymWord>, long> out;
  const int k = w.length();
  const auto& idx = w.indices();
  if (k < 2) return out;
  const unsigned full = (1u << k) - 1;
  for (unsigned mask = 1; mask < full; ++mask) {
    std::vector<int> a, b;
    for (int p = 0; p < k; ++p) ((mask >> p) & 1u ? a : b).push_back(idx[p]);
    out[{SymWord(std::move(a)), SymWord(std::move(b))}] += 1;
  }
  return out;
}

/// Reduced shuffle coproduct of coeff · w, returned as an arity-2 chain.
/// The coefficient rides along.
inline SymbolChain shuffle_coproduct(const SymWord& w, const Poly& coeff) {
  SymbolChain r(2, coeff.nvars());
  for (const auto& [ab, n] : shuffle_splits(w)) r.add_term({ab.first, ab.second}, coeff * Rational(n));
  return r;
}

/// D(φ_1 ⊗ ... ⊗ φ_n) = Σ_i (-1)^i φ_1 ⊗ ... ⊗ Δ'(φ_i) ⊗ ... ⊗ φ_n.
inline SymbolChain differential_D(const SymbolChain& phi) {
  SymbolChain r(phi.arity() + 1, phi.nvars());
  std::map<SymWord, std::map<std::pair<SymWord, SymWord>, long>> cache;
  for (const auto& [t, p] : phi.terms()) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      const long sign = (i + 1) % 2 ? -1 : 1;
      auto it = cache.find(t[i]);
      if (it == cache.end()) it = cache.emplace(t[i], shuffle_splits(t[i])).first;
      for (const auto& [ab, n] : it->second) {
        WordTuple u;
        u.reserve(t.size() + 1);
        u.insert(u.end(), t.begin(), t.begin() + static_cast<long>(i));
        u.push_back(ab.first);
        u.push_back(ab.second);
        u.insert(u.end(), t.begin() + static_cast<long>(i) + 1, t.end());
        r.add_term(u, p * Rational(sign * n));
      }
    }
  }
  return r;
}

/// Multiplication Sym ⊗ Sym -> Sym applied to an arity-2 chain.
inline SymbolChain vee_product(const SymbolChain& phi) {
  if (phi.arity() != 2) throw ArityMismatch("vee product needs arity 2");
  SymbolChain r(1, phi.nvars());
  for (const auto& [t, p] : phi.terms()) r.add_term({vee(t[0], t[1])}, p);
  return r;
}

/// hkr(X_1 ∧ ... ∧ X_n) = 1/n! Σ_σ sign(σ) X_σ(1) ⊗ ... ⊗ X_σ(n).
inline SymbolChain hkr(const MultiVector& x) {
  if (x.degree() < 1) throw ArityMismatch("hkr is defined on multivectors of degree >= 1");
  const int n = x.degree();
  SymbolChain r(n, x.nvars());
  const Rational inv_fact = Rational(1) / Rational(factorial(n));
  std::vector<int> perm(n);
  for (const auto& [idx, p] : x.terms()) {
    std::iota(perm.begin(), perm.end(), 0);
    do {
      int inversions = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (perm[a] > perm[b]) ++inversions;
      WordTuple t;
      for (int a = 0; a < n; ++a) t.push_back(SymWord{idx[perm[a]]});
      r.add_term(t, p * (inversions % 2 ? -inv_fact : inv_fact));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return r;
}

/// ∧ ∘ pr_1^{⊗2}: keeps the terms of symmetric degree (1,1) and wedges them.
inline MultiVector pr1_top(const SymbolChain& phi) {
  if (phi.arity() != 2) throw ArityMismatch("pr1_top needs arity 2");
  MultiVector x(2, phi.nvars());
  for (const auto& [t, p] : phi.terms()) {
    if (t[0].length() == 1 && t[1].length() == 1) x.add_term({t[0].indices()[0], t[1].indices()[0]}, p);
  }
  return x;
}

/// Projection of an arity-1 chain onto symmetric degree 1.
inline SymbolChain pr1(const SymbolChain& psi) {
  if (psi.arity() != 1) throw ArityMismatch("pr1 needs arity 1");
  SymbolChain r(1, psi.nvars());
  for (const auto& [t, p] : psi.terms())
    if (t[0].length() == 1) r.add_term(t, p);
  return r;
}

/// Arity-1 chain of a vector field (symmetric degree 1).
inline SymbolChain as_chain(const VectorField& x) {
  SymbolChain r(1, x.nvars());
  for (int i = 1; i <= x.nvars(); ++i) r.add_term({SymWord{i}}, x.component(i));
  return r;
}

}  // namespace conhoch
