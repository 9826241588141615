#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "conhoch/errors.hpp"
#include "conhoch/poly.hpp"
#include "conhoch/rational.hpp"

namespace conhoch {

/// Basis word ∂_{i1} ∨ ... ∨ ∂_{ik} of Sym^k, stored as the sorted multiset
/// of 1-based indices.
class SymWord {
 public:
  SymWord() = default;
  SymWord(std::initializer_list<int> idx) : idx_(idx) { std::sort(idx_.begin(), idx_.end()); }
  explicit SymWord(std::vector<int> idx) : idx_(std::move(idx)) { std::sort(idx_.begin(), idx_.end()); }

  const std::vector<int>& indices() const { return idx_; }
  int length() const { return static_cast<int>(idx_.size()); }
  bool empty() const { return idx_.empty(); }

  /// Multiplicity vector of length nvars.
  std::vector<int> counts(int nvars) const {
    std::vector<int> c(nvars, 0);
    for (int i : idx_) c[i - 1] += 1;
    return c;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t k = 0; k < idx_.size(); ++k) s += (k ? "," : "") + std::to_string(idx_[k]);
    return s + "]";
  }

  friend SymWord vee(const SymWord& a, const SymWord& b) {
    std::vector<int> m;
    m.reserve(a.idx_.size() + b.idx_.size());
    std::merge(a.idx_.begin(), a.idx_.end(), b.idx_.begin(), b.idx_.end(), std::back_inserter(m));
    SymWord w;
    w.idx_ = std::move(m);
    return w;
  }

  friend auto operator<=>(const SymWord&, const SymWord&) = default;
  friend bool operator==(const SymWord&, const SymWord&) = default;

 private:
  std::vector<int> idx_;
};

using WordTuple = std::vector<SymWord>;

inline int sym_degree(const WordTuple& t) {
  int k = 0;
  for (const auto& w : t) k += w.length();
  return k;
}

/// Element of T^n RedSym: a finite sum of (polynomial) · w_1 ⊗ ... ⊗ w_n
/// with every word nonempty.
class SymbolChain {
 public:
  using TermMap = std::map<WordTuple, Poly>;

  SymbolChain(int arity, int nvars) : arity_(arity), nvars_(nvars) {
    if (arity < 1) throw ArityMismatch("symbol chains have arity >= 1");
  }

  /// One term coeff · ∂_{slots[0]} ⊗ ... .
  static SymbolChain term(int nvars, const std::vector<std::vector<int>>& slots, const Poly& coeff) {
    SymbolChain c(static_cast<int>(slots.size()), nvars);
    WordTuple t;
    for (const auto& s : slots) t.emplace_back(s);
    c.add_term(t, coeff);
    return c;
  }
  static SymbolChain term(int nvars, const std::vector<std::vector<int>>& slots, const Rational& coeff = 1) {
    return term(nvars, slots, Poly::constant(nvars, coeff));
  }

  int arity() const { return arity_; }
  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const WordTuple& t, const Poly& coeff) {
    if (static_cast<int>(t.size()) != arity_) throw ArityMismatch("word tuple arity does not match chain arity");
    if (coeff.nvars() != nvars_) throw ModelMismatch("chain coefficient over a different ring");
    for (const auto& w : t) {
      if (w.empty()) throw PreconditionViolation("reduced symmetric words must be nonempty");
      for (int i : w.indices())
        if (i < 1 || i > nvars_) throw IndexOutOfRange("vector field index " + std::to_string(i) + " out of range");
    }
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(t, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void add_monomial(const WordTuple& t, const Exponent& e, const Rational& c) { add_term(t, Poly::monomial(e, c)); }

  SymbolChain& operator+=(const SymbolChain& o) {
    check_same(o);
    for (const auto& [t, p] : o.terms_) add_term(t, p);
    return *this;
  }
  SymbolChain& operator-=(const SymbolChain& o) {
    check_same(o);
    for (const auto& [t, p] : o.terms_) add_term(t, -p);
    return *this;
  }
  SymbolChain& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [t, p] : terms_) p *= s;
    return *this;
  }
  friend SymbolChain operator+(SymbolChain a, const SymbolChain& b) { return a += b; }
  friend SymbolChain operator-(SymbolChain a, const SymbolChain& b) { return a -= b; }
  friend SymbolChain operator-(SymbolChain a) { return a *= Rational(-1); }
  friend SymbolChain operator*(const Rational& s, SymbolChain a) { return a *= s; }
  friend SymbolChain operator*(const Poly& f, const SymbolChain& a) {
    SymbolChain r(a.arity_, a.nvars_);
    for (const auto& [t, p] : a.terms_) r.add_term(t, f * p);
    return r;
  }
  friend bool operator==(const SymbolChain& a, const SymbolChain& b) {
    return a.arity_ == b.arity_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Tensor concatenation; coefficients multiply.
  friend SymbolChain tensor(const SymbolChain& a, const SymbolChain& b) {
    if (a.nvars_ != b.nvars_) throw ModelMismatch("tensor of chains over different rings");
    SymbolChain r(a.arity_ + b.arity_, a.nvars_);
    for (const auto& [ta, pa] : a.terms_) {
      for (const auto& [tb, pb] : b.terms_) {
        WordTuple t = ta;
        t.insert(t.end(), tb.begin(), tb.end());
        r.add_term(t, pa * pb);
      }
    }
    return r;
  }

  /// Slot lengths of a word tuple.
  static std::vector<int> multidegree(const WordTuple& t) {
    std::vector<int> d;
    for (const auto& w : t) d.push_back(w.length());
    return d;
  }

  /// The (total symmetric degree K, coefficient degree c) pairs present.
  std::set<std::pair<int, int>> gradings() const {
    std::set<std::pair<int, int>> g;
    for (const auto& [t, p] : terms_)
      for (const auto& [e, c] : p.terms()) g.emplace(sym_degree(t), total_degree(e));
    return g;
  }

  SymbolChain graded_part(int K, int c) const {
    SymbolChain r(arity_, nvars_);
    for (const auto& [t, p] : terms_)
      if (sym_degree(t) == K) r.add_term(t, p.homogeneous_part(c));
    return r;
  }

  /// Maximum total order; 0 for the zero chain.
  int max_order() const {
    int k = 0;
    for (const auto& [t, p] : terms_) k = std::max(k, sym_degree(t));
    return k;
  }

  int max_coefficient_degree() const {
    int c = 0;
    for (const auto& [t, p] : terms_) c = std::max(c, p.degree());
    return c;
  }

  /// Swaps the two slots of an arity-2 chain.
  SymbolChain swapped() const {
    if (arity_ != 2) throw ArityMismatch("slot swap needs arity 2");
    SymbolChain r(2, nvars_);
    for (const auto& [t, p] : terms_) r.add_term({t[1], t[0]}, p);
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [t, p] : terms_) {
      if (!first) s += " + ";
      first = false;
      s += "(" + p.to_string() + ")*";
      for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "x" : "") + t[i].to_string();
    }
    return s;
  }

 private:
  void check_same(const SymbolChain& o) const {
    if (arity_ != o.arity_) throw ArityMismatch("chains of different arity");
    if (nvars_ != o.nvars_) throw ModelMismatch("chains over different rings");
  }

  int arity_;
  int nvars_;
  TermMap terms_;
};

/// Element of Λ^k: coefficients on strictly increasing index tuples.
class MultiVector {
 public:
  using TermMap = std::map<std::vector<int>, Poly>;

  MultiVector(int degree, int nvars) : degree_(degree), nvars_(nvars) {}

  /// coeff · ∂_{i1} ∧ ... ∧ ∂_{ik}; indices need not be sorted.
  static MultiVector term(int nvars, std::vector<int> idx, const Poly& coeff) {
    MultiVector x(static_cast<int>(idx.size()), nvars);
    x.add_term(std::move(idx), coeff);
    return x;
  }
  static MultiVector term(int nvars, std::vector<int> idx, const Rational& coeff = 1) {
    return term(nvars, std::move(idx), Poly::constant(nvars, coeff));
  }

  int degree() const { return degree_; }
  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Sorts the indices with the permutation sign; repeated indices vanish.
  void add_term(std::vector<int> idx, const Poly& coeff) {
    if (static_cast<int>(idx.size()) != degree_) throw ArityMismatch("multivector degree mismatch");
    if (coeff.nvars() != nvars_) throw ModelMismatch("multivector coefficient over a different ring");
    for (int i : idx)
      if (i < 1 || i > nvars_) throw IndexOutOfRange("vector field index " + std::to_string(i) + " out of range");
    int sign = 1;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = 0; b + 1 < idx.size() - a; ++b) {
        if (idx[b] > idx[b + 1]) {
          std::swap(idx[b], idx[b + 1]);
          sign = -sign;
        }
      }
    }
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) return;
    if (coeff.is_zero()) return;
    Poly c = sign > 0 ? coeff : -coeff;
    auto [it, inserted] = terms_.try_emplace(idx, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MultiVector& operator+=(const MultiVector& o) {
    check_same(o);
    for (const auto& [i, p] : o.terms_) add_term(i, p);
    return *this;
  }
  MultiVector& operator-=(const MultiVector& o) {
    check_same(o);
    for (const auto& [i, p] : o.terms_) add_term(i, -p);
    return *this;
  }
  MultiVector& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [i, p] : terms_) p *= s;
    return *this;
  }
  friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
  friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
  friend MultiVector operator*(const Rational& s, MultiVector a) { return a *= s; }
  friend MultiVector operator*(const Poly& f, const MultiVector& a) {
    MultiVector r(a.degree_, a.nvars_);
    for (const auto& [i, p] : a.terms_) r.add_term(i, f * p);
    return r;
  }
  friend bool operator==(const MultiVector& a, const MultiVector& b) {
    return a.degree_ == b.degree_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  friend MultiVector wedge(const MultiVector& a, const MultiVector& b) {
    if (a.nvars_ != b.nvars_) throw ModelMismatch("wedge of multivectors over different rings");
    MultiVector r(a.degree_ + b.degree_, a.nvars_);
    for (const auto& [ia, pa] : a.terms_) {
      for (const auto& [ib, pb] : b.terms_) {
        std::vector<int> idx = ia;
        idx.insert(idx.end(), ib.begin(), ib.end());
        r.add_term(idx, pa * pb);
      }
    }
    return r;
  }

  MultiVector homogeneous_part(int c) const {
    MultiVector r(degree_, nvars_);
    for (const auto& [i, p] : terms_) r.add_term(i, p.homogeneous_part(c));
    return r;
  }

  std::set<int> coefficient_degrees() const {
    std::set<int> s;
    for (const auto& [i, p] : terms_)
      for (const auto& [e, c] : p.terms()) s.insert(total_degree(e));
    return s;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [idx, p] : terms_) {
      if (!first) s += " + ";
      first = false;
      s += "(" + p.to_string() + ")*";
      for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "^" : "") + std::string("d") + std::to_string(idx[k]);
      if (idx.empty()) s += "1";
    }
    return s;
  }

 private:
  void check_same(const MultiVector& o) const {
    if (degree_ != o.degree_) throw ArityMismatch("multivectors of different degree");
    if (nvars_ != o.nvars_) throw ModelMismatch("multivectors over different rings");
  }

  int degree_;
  int nvars_;
  TermMap terms_;
};

/// X = Σ X^i ∂_i.
class VectorField {
 public:
  explicit VectorField(int nvars) : components_(nvars, Poly(nvars)) {}
  explicit VectorField(std::vector<Poly> components) : components_(std::move(components)) {
    for (const auto& p : components_)
      if (p.nvars() != nvars()) throw ModelMismatch("vector field components over different rings");
  }

  static VectorField basis(int nvars, int i, const Poly& coeff) {
    if (i < 1 || i > nvars) throw IndexOutOfRange("vector field index " + std::to_string(i) + " out of range");
    VectorField x(nvars);
    x.components_[i - 1] = coeff;
    return x;
  }
  static VectorField basis(int nvars, int i, const Rational& coeff = 1) {
    return basis(nvars, i, Poly::constant(nvars, coeff));
  }

  int nvars() const { return static_cast<int>(components_.size()); }
  /// 1-based.
  const Poly& component(int i) const { return components_.at(i - 1); }
  Poly& component(int i) { return components_.at(i - 1); }
  const std::vector<Poly>& components() const { return components_; }

  /// X(f) = Σ X^i ∂_i f.
  Poly apply(const Poly& f) const {
    Poly r(nvars());
    for (int i = 1; i <= nvars(); ++i)
      if (!components_[i - 1].is_zero()) r += components_[i - 1] * f.partial(i);
    return r;
  }

  MultiVector as_multivector() const {
    MultiVector x(1, nvars());
    for (int i = 1; i <= nvars(); ++i) x.add_term({i}, components_[i - 1]);
    return x;
  }

  VectorField& operator+=(const VectorField& o) {
    if (o.nvars() != nvars()) throw ModelMismatch("vector fields over different rings");
    for (int i = 0; i < nvars(); ++i) components_[i] += o.components_[i];
    return *this;
  }
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend bool operator==(const VectorField&, const VectorField&) = default;

  /// Lie bracket [X, Y].
  friend VectorField bracket(const VectorField& x, const VectorField& y) {
    VectorField r(x.nvars());
    for (int i = 1; i <= x.nvars(); ++i) r.component(i) = x.apply(y.component(i)) - y.apply(x.component(i));
    return r;
  }

  std::string to_string() const { return as_multivector().to_string(); }

 private:
  std::vector<Poly> components_;
};

}  // namespace conhoch
