#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conhoch/errors.hpp"
#include "conhoch/rational.hpp"

namespace conhoch {

/// Exponent multi-index; position 0 is x1.
using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Graded lexicographic order: total degree first, then lexicographic with
/// x1 > x2 > ... .
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

/// All exponents of total degree `degree` in `nvars` variables, descending in
/// grlex (x1^d first).
inline std::vector<Exponent> monomials_of_degree(int nvars, int degree) {
  std::vector<Exponent> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponent e(nvars, 0);
  // recursive fill, first variable takes the largest share first
  auto rec = [&](auto& self, int pos, int left) -> void {
    if (pos == nvars - 1) {
      e[pos] = left;
      out.push_back(e);
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[pos] = a;
      self(self, pos + 1, left - a);
    }
  };
  rec(rec, 0, degree);
  return out;
}

/// Sparse multivariate polynomial with rational coefficients. No zero
/// coefficients are ever stored.
class Poly {
 public:
  using TermMap = std::map<Exponent, Rational, GrlexLess>;

  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, const Rational& c) {
    Poly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }

  static Poly one(int nvars) { return constant(nvars, 1); }

  /// x_i, 1-based.
  static Poly variable(int nvars, int i) {
    if (i < 1 || i > nvars) {
      throw IndexOutOfRange("variable x" + std::to_string(i) + " outside [1, " + std::to_string(nvars) + "]");
    }
    Exponent e(nvars, 0);
    e[i - 1] = 1;
    return monomial(e, 1);
  }

  static Poly monomial(const Exponent& e, const Rational& c = 1) {
    Poly p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
  }

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Exponent& e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars_) throw ModelMismatch("exponent length does not match polynomial ring");
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }

  Poly homogeneous_part(int d) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == d) r.terms_.emplace(e, c);
    return r;
  }

  Poly& operator+=(const Poly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    Poly r(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

  /// d/dx_i, 1-based.
  Poly partial(int i) const {
    if (i < 1 || i > nvars_) {
      throw IndexOutOfRange("partial derivative index " + std::to_string(i) + " outside [1, " +
                            std::to_string(nvars_) + "]");
    }
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i - 1] == 0) continue;
      Exponent f = e;
      f[i - 1] -= 1;
      r.add_term(f, c * e[i - 1]);
    }
    return r;
  }

  /// Iterated partial derivative by a multiset of 1-based indices, given as
  /// exponent counts (counts[v] = number of d/dx_{v+1}).
  Poly partial_counts(std::span<const int> counts) const {
    Poly r(nvars_);
    Exponent f(nvars_);
    for (const auto& [e, c] : terms_) {
      Integer mult = 1;
      bool dead = false;
      for (int v = 0; v < nvars_; ++v) {
        if (e[v] < counts[v]) {
          dead = true;
          break;
        }
        mult *= falling_factorial(e[v], counts[v]);
        f[v] = e[v] - counts[v];
      }
      if (!dead) r.add_term(f, c * Rational(mult));
    }
    return r;
  }

  /// Substitutes zero for every variable with 1-based index > keep.
  Poly truncate_variables(int keep) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
      bool alive = true;
      for (int v = keep; v < nvars_; ++v)
        if (e[v] != 0) alive = false;
      if (alive) r.terms_.emplace(e, c);
    }
    return r;
  }

  bool depends_on(int i) const {
    for (const auto& [e, c] : terms_)
      if (e[i - 1] != 0) return true;
    return false;
  }

  /// Keeps variables first..last (1-based, inclusive) as the new ring; the
  /// caller guarantees no other variable occurs.
  Poly project_variables(int first, int last) const {
    const int n = std::max(0, last - first + 1);
    Poly r(n);
    for (const auto& [e, c] : terms_) {
      Exponent f(e.begin() + (first - 1), e.begin() + (first - 1) + n);
      r.terms_.emplace(std::move(f), c);
    }
    return r;
  }

  /// Leading term first, e.g. "x1^2 - 1/2*x2*x3 + 3".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational mag = abs(c);
      if (first) {
        if (sgn(c) < 0) s += "-";
      } else {
        s += sgn(c) < 0 ? " - " : " + ";
      }
      first = false;
      std::string mono;
      for (int v = 0; v < nvars_; ++v) {
        if (e[v] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(v + 1);
        if (e[v] > 1) mono += "^" + std::to_string(e[v]);
      }
      if (mono.empty()) {
        s += mag.get_str();
      } else if (mag == 1) {
        s += mono;
      } else {
        s += mag.get_str() + "*" + mono;
      }
    }
    return s;
  }

 private:
  void check_same(const Poly& o) const {
    if (nvars_ != o.nvars_) throw ModelMismatch("polynomials over different numbers of variables");
  }

  int nvars_ = 0;
  TermMap terms_;
};

}  // namespace conhoch
