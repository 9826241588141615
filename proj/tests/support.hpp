#pragma once

#include <random>
#include <vector>

#include "conhoch/conhoch.hpp"

namespace conhoch::testing {

inline const std::vector<FlatModel>& grid_models() {
  static const std::vector<FlatModel> models{{3, 2, 1}, {4, 2, 1}, {4, 3, 1}, {4, 3, 2}};
  return models;
}

/// All models with n_total <= nmax.
inline std::vector<FlatModel> all_models(int nmax) {
  std::vector<FlatModel> out;
  for (int t = 1; t <= nmax; ++t)
    for (int w = 0; w <= t; ++w)
      for (int z = 0; z <= w; ++z) out.emplace_back(t, w, z);
  return out;
}

inline SymbolChain term(int n, std::vector<std::vector<int>> slots, const Rational& c = 1) {
  return SymbolChain::term(n, slots, c);
}
inline SymbolChain term(int n, std::vector<std::vector<int>> slots, const Poly& c) {
  return SymbolChain::term(n, slots, c);
}
inline Poly x(int n, int i) { return Poly::variable(n, i); }

/// Seeded generators for randomized property checks.
class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  Rational small_rational() {
    int num = 0;
    while (num == 0) num = uniform(-4, 4);
    return make_rational(num, uniform(1, 3));
  }

  Exponent exponent(int nvars, int degree) {
    Exponent e(nvars, 0);
    for (int k = 0; k < degree; ++k) e[uniform(0, nvars - 1)] += 1;
    return e;
  }

  /// Up to `terms` random terms, degrees in [0, max_degree].
  Poly poly(int nvars, int max_degree, int terms = 3) {
    Poly p(nvars);
    const int n = uniform(1, terms);
    for (int k = 0; k < n; ++k) p.add_term(exponent(nvars, uniform(0, max_degree)), small_rational());
    return p;
  }

  Poly homogeneous(int nvars, int degree, int terms = 2) {
    Poly p(nvars);
    for (int k = 0; k < terms; ++k) p.add_term(exponent(nvars, degree), small_rational());
    return p;
  }

  SymWord word(int nvars, int length) {
    std::vector<int> idx;
    for (int k = 0; k < length; ++k) idx.push_back(uniform(1, nvars));
    return SymWord(std::move(idx));
  }

  /// Random chain of the given arity with total symmetric degree <= max_k
  /// (at least one per slot) and coefficient degree <= max_c.
  SymbolChain chain(int nvars, int arity, int max_k, int max_c, int terms = 3) {
    SymbolChain c(arity, nvars);
    const int n = uniform(1, terms);
    for (int k = 0; k < n; ++k) {
      std::vector<int> len(arity, 1);
      const int extra = uniform(0, std::max(0, max_k - arity));
      for (int e = 0; e < extra; ++e) len[uniform(0, arity - 1)] += 1;
      WordTuple t;
      for (int s = 0; s < arity; ++s) t.push_back(word(nvars, len[s]));
      c.add_term(t, poly(nvars, max_c, 2));
    }
    return c;
  }

  MultiVector multivector(int nvars, int degree, int max_c, int terms = 3) {
    MultiVector x(degree, nvars);
    const int n = uniform(1, terms);
    for (int k = 0; k < n; ++k) {
      std::vector<int> idx;
      for (int s = 0; s < degree; ++s) idx.push_back(uniform(1, nvars));
      x.add_term(idx, poly(nvars, max_c, 2));
    }
    return x;
  }

  VectorField vector_field(int nvars, int max_c) {
    std::vector<Poly> comps;
    for (int i = 0; i < nvars; ++i) comps.push_back(coin() ? poly(nvars, max_c, 2) : Poly(nvars));
    return VectorField(std::move(comps));
  }

  /// Random linear combination of a few members of a basis.
  template <typename T>
  T combination(const std::vector<T>& basis, T zero, int terms = 3) {
    for (int k = 0; k < terms && !basis.empty(); ++k)
      zero += small_rational() * basis[static_cast<std::size_t>(uniform(0, static_cast<int>(basis.size()) - 1))];
    return zero;
  }

  VectorField combination(const std::vector<VectorField>& basis, int nvars, int terms = 3) {
    VectorField r(nvars);
    for (int k = 0; k < terms && !basis.empty(); ++k) {
      const auto& b = basis[static_cast<std::size_t>(uniform(0, static_cast<int>(basis.size()) - 1))];
      const Rational s = small_rational();
      for (int i = 1; i <= nvars; ++i) r.component(i) += b.component(i) * s;
    }
    return r;
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace conhoch::testing
