#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "conhoch/errors.hpp"
#include "conhoch/rational.hpp"

namespace conhoch {

using SparseVector = std::map<std::size_t, Rational>;

/// Assigns dense coordinates to arbitrary ordered keys, in first-seen order.
template <typename Key>
class Indexer {
 public:
  std::size_t index(const Key& k) {
    auto [it, inserted] = map_.try_emplace(k, keys_.size());
    if (inserted) keys_.push_back(k);
    return it->second;
  }
  std::optional<std::size_t> find(const Key& k) const {
    auto it = map_.find(k);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  const Key& key(std::size_t i) const { return keys_.at(i); }
  std::size_t size() const { return keys_.size(); }

 private:
  std::map<Key, std::size_t> map_;
  std::vector<Key> keys_;
};

namespace detail {

using IntRow = std::map<std::size_t, Integer>;

inline IntRow to_primitive_integer_row(const SparseVector& v) {
  Integer l = 1;
  for (const auto& [j, q] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  IntRow r;
  for (const auto& [j, q] : v) {
    if (sgn(q) == 0) continue;
    Integer n = q.get_num() * (l / q.get_den());
    r.emplace(j, n);
  }
  return r;
}

inline void make_primitive(IntRow& r) {
  Integer g = 0;
  for (const auto& [j, n] : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  if (g > 1)
    for (auto& [j, n] : r) mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), g.get_mpz_t());
}

}  // namespace detail

/// Rank of a set of row vectors by fraction-free elimination over the
/// integers. Rows are scaled to primitive integer vectors; elimination
/// cross-multiplies and divides out the content. Pivot = smallest column.
inline std::size_t fraction_free_rank(const std::vector<SparseVector>& rows) {
  std::map<std::size_t, detail::IntRow> pivots;
  for (const auto& v : rows) {
    detail::IntRow r = detail::to_primitive_integer_row(v);
    while (!r.empty()) {
      const std::size_t lead = r.begin()->first;
      auto pit = pivots.find(lead);
      if (pit == pivots.end()) {
        pivots.emplace(lead, std::move(r));
        break;
      }
      const detail::IntRow& p = pit->second;
      const Integer a = p.begin()->second;  // pivot entry
      const Integer b = r.begin()->second;
      Integer g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      const Integer fa = a / g;
      const Integer fb = b / g;
      detail::IntRow out;
      auto ri = r.begin();
      auto pi = p.begin();
      while (ri != r.end() || pi != p.end()) {
        if (pi == p.end() || (ri != r.end() && ri->first < pi->first)) {
          out.emplace(ri->first, fa * ri->second);
          ++ri;
        } else if (ri == r.end() || pi->first < ri->first) {
          out.emplace(pi->first, -fb * pi->second);
          ++pi;
        } else {
          Integer n = fa * ri->second - fb * pi->second;
          if (sgn(n) != 0) out.emplace(ri->first, std::move(n));
          ++ri;
          ++pi;
        }
      }
      detail::make_primitive(out);
      r = std::move(out);
    }
  }
  return pivots.size();
}

/// Exact sparse matrix; rows are stored sparsely.
class RationalMatrix {
 public:
  RationalMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return cols_; }

  void set(std::size_t i, std::size_t j, const Rational& v) {
    if (i >= rows() || j >= cols_) throw IndexOutOfRange("matrix index out of range");
    if (sgn(v) == 0)
      data_[i].erase(j);
    else
      data_[i][j] = v;
  }
  Rational get(std::size_t i, std::size_t j) const {
    auto it = data_.at(i).find(j);
    return it == data_[i].end() ? Rational(0) : it->second;
  }
  const SparseVector& row(std::size_t i) const { return data_.at(i); }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }
  bool is_zero() const { return nonzeros() == 0; }

  std::vector<SparseVector> column_vectors() const {
    std::vector<SparseVector> c(cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
      for (const auto& [j, v] : data_[i]) c[j].emplace(i, v);
    return c;
  }

  std::size_t rank() const { return fraction_free_rank(data_); }

 private:
  std::size_t cols_;
  std::vector<SparseVector> data_;
};

/// Incremental echelon basis over the rationals that remembers how every
/// reduced row was built from the generators, so membership queries come
/// with coefficients.
class LinearSolver {
 public:
  /// Returns true iff v is independent of the previous generators.
  bool add(const SparseVector& v) {
    const std::size_t id = generators_++;
    SparseVector row = v;
    SparseVector hist{{id, Rational(1)}};
    reduce(row, hist);
    if (row.empty()) return false;
    const std::size_t lead = row.begin()->first;
    const Rational inv = Rational(1) / row.begin()->second;
    for (auto& [j, q] : row) q *= inv;
    for (auto& [j, q] : hist) q *= inv;
    pivots_.emplace(lead, Entry{std::move(row), std::move(hist)});
    return true;
  }

  std::size_t rank() const { return pivots_.size(); }
  std::size_t generators() const { return generators_; }

  bool contains(const SparseVector& v) const {
    SparseVector row = v;
    SparseVector hist;
    reduce(row, hist);
    return row.empty();
  }

  /// Coefficients c with Σ c_id · generator_id = v, if v is in the span.
  std::optional<SparseVector> solve(const SparseVector& v) const {
    SparseVector row = v;
    SparseVector hist;
    reduce(row, hist);
    if (!row.empty()) return std::nullopt;
    for (auto& [j, q] : hist) q = -q;
    return hist;
  }

 private:
  struct Entry {
    SparseVector row;
    SparseVector hist;
  };

  static void axpy(SparseVector& y, const Rational& a, const SparseVector& x) {
    for (const auto& [j, q] : x) {
      auto [it, inserted] = y.try_emplace(j, a * q);
      if (!inserted) {
        it->second += a * q;
        if (sgn(it->second) == 0) y.erase(it);
      }
    }
  }

  /// row -= pivots; hist accumulates the subtracted combinations.
  void reduce(SparseVector& row, SparseVector& hist) const {
    auto it = row.begin();
    while (it != row.end()) {
      auto pit = pivots_.find(it->first);
      if (pit == pivots_.end()) {
        ++it;
        continue;
      }
      const std::size_t col = it->first;
      const Rational f = -it->second;
      axpy(row, f, pit->second.row);
      axpy(hist, f, pit->second.hist);
      it = row.upper_bound(col);
    }
  }

  std::map<std::size_t, Entry> pivots_;
  std::size_t generators_ = 0;
};

}  // namespace conhoch
