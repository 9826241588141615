#pragma once

#include <string>

#include "conhoch/errors.hpp"

namespace conhoch {

/// Which coordinate block a vector-field index belongs to.
///   D      : 1 .. n_null           (the distribution)
///   DPerp  : n_null+1 .. n_wobs    (complement of D inside TC)
///   TCPerp : n_wobs+1 .. n_total   (normal directions to C)
enum class Block { D, DPerp, TCPerp };

/// M = R^{n_total} containing C = R^{n_wobs} (first n_wobs coordinates),
/// with D spanned by the first n_null coordinate directions.
class FlatModel {
 public:
  FlatModel(int n_total, int n_wobs, int n_null) : n_total_(n_total), n_wobs_(n_wobs), n_null_(n_null) {
    if (n_total < 1 || n_wobs < 0 || n_null < 0 || n_wobs > n_total || n_null > n_wobs) {
      throw InvalidModel("flat model requires n_total >= n_wobs >= n_null >= 0 and n_total >= 1, got (" +
                         std::to_string(n_total) + "," + std::to_string(n_wobs) + "," + std::to_string(n_null) + ")");
    }
  }

  int n_total() const { return n_total_; }
  int n_wobs() const { return n_wobs_; }
  int n_null() const { return n_null_; }

  /// 1-based coordinate index.
  Block block(int i) const {
    check_index(i);
    if (i <= n_null_) return Block::D;
    if (i <= n_wobs_) return Block::DPerp;
    return Block::TCPerp;
  }

  bool in_d(int i) const { return block(i) == Block::D; }
  bool in_tc_perp(int i) const { return block(i) == Block::TCPerp; }

  void check_index(int i) const {
    if (i < 1 || i > n_total_) {
      throw IndexOutOfRange("coordinate index " + std::to_string(i) + " outside [1, " + std::to_string(n_total_) + "]");
    }
  }

  /// Dimension of M_red = C / D = R^{n_wobs - n_null}.
  int reduced_dimension() const { return n_wobs_ - n_null_; }

  std::string to_string() const {
    return "(" + std::to_string(n_total_) + "," + std::to_string(n_wobs_) + "," + std::to_string(n_null_) + ")";
  }

  friend bool operator==(const FlatModel&, const FlatModel&) = default;

 private:
  int n_total_;
  int n_wobs_;
  int n_null_;
};

}  // namespace conhoch
