#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "conhoch/algebra.hpp"
#include "conhoch/cohomology.hpp"
#include "conhoch/diffops.hpp"
#include "conhoch/errors.hpp"
#include "conhoch/model.hpp"
#include "conhoch/poly.hpp"
#include "conhoch/starprod.hpp"

namespace conhoch::json_io {

using nlohmann::json;

/// Malformed or inconsistent JSON input.
class FormatError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw FormatError("bad integer string '" + j.get<std::string>() + "'");
    return z;
  }
  throw FormatError("expected an integer, got " + j.dump());
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline int small_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string(what) + " must be an integer");
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw FormatError(std::string(what) + " out of range");
  return static_cast<int>(v);
}

}  // namespace detail

// Rational: [num, den]

inline json to_json(const Rational& q) {
  return json::array({detail::integer_to_json(q.get_num()), detail::integer_to_json(q.get_den())});
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(detail::integer_from_json(j));
  if (!j.is_array() || j.size() != 2) throw FormatError("rational must be [num, den], got " + j.dump());
  Integer num = detail::integer_from_json(j[0]);
  Integer den = detail::integer_from_json(j[1]);
  if (den == 0) throw FormatError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// FlatModel

inline json to_json(const FlatModel& m) {
  return {{"n_total", m.n_total()}, {"n_wobs", m.n_wobs()}, {"n_null", m.n_null()}};
}

inline FlatModel model_from_json(const json& j) {
  return FlatModel(detail::small_int(detail::field(j, "n_total"), "n_total"),
                   detail::small_int(detail::field(j, "n_wobs"), "n_wobs"),
                   detail::small_int(detail::field(j, "n_null"), "n_null"));
}

// Poly: terms in descending grlex order

inline json to_json(const Poly& p) {
  json terms = json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    terms.push_back({{"coeff", to_json(it->second)}, {"exp", it->first}});
  return {{"terms", terms}};
}

/// nvars < 0: infer from the first term (zero polynomials then need nvars).
inline Poly poly_from_json(const json& j, int nvars) {
  const json& terms = detail::field(j, "terms");
  if (!terms.is_array()) throw FormatError("'terms' must be an array");
  if (nvars < 0) {
    if (terms.empty()) throw FormatError("cannot infer the ring of an empty polynomial");
    nvars = static_cast<int>(detail::field(terms[0], "exp").size());
  }
  Poly p(nvars);
  for (const auto& t : terms) {
    const json& e = detail::field(t, "exp");
    if (!e.is_array() || static_cast<int>(e.size()) != nvars)
      throw FormatError("exponent must have length " + std::to_string(nvars));
    Exponent ex;
    for (const auto& a : e) {
      const int v = detail::small_int(a, "exponent");
      if (v < 0) throw FormatError("negative exponent");
      ex.push_back(v);
    }
    p.add_term(ex, rational_from_json(detail::field(t, "coeff")));
  }
  return p;
}

// SymbolChain

inline json to_json(const SymbolChain& c) {
  json terms = json::array();
  for (const auto& [t, p] : c.terms()) {
    json slots = json::array();
    for (const auto& w : t) slots.push_back(w.indices());
    terms.push_back({{"coeff_poly", to_json(p)}, {"slots", slots}});
  }
  return {{"arity", c.arity()}, {"terms", terms}};
}

inline SymbolChain chain_from_json(const json& j, int nvars) {
  const int arity = detail::small_int(detail::field(j, "arity"), "arity");
  if (arity < 1) throw FormatError("arity must be >= 1");
  SymbolChain c(arity, nvars);
  for (const auto& t : detail::field(j, "terms")) {
    const json& slots = detail::field(t, "slots");
    if (!slots.is_array() || static_cast<int>(slots.size()) != arity)
      throw FormatError("term must have " + std::to_string(arity) + " slots");
    WordTuple wt;
    for (const auto& s : slots) {
      if (!s.is_array() || s.empty()) throw FormatError("slots are nonempty index arrays");
      std::vector<int> idx;
      for (const auto& i : s) idx.push_back(detail::small_int(i, "slot index"));
      wt.emplace_back(std::move(idx));
    }
    c.add_term(wt, poly_from_json(detail::field(t, "coeff_poly"), nvars));
  }
  return c;
}

// MultiDiffOp

inline json to_json(const MultiDiffOp& d) { return {{"symbol", to_json(d.symbol())}}; }

inline MultiDiffOp op_from_json(const json& j, int nvars) {
  return MultiDiffOp(chain_from_json(detail::field(j, "symbol"), nvars));
}

// MultiVector: {"degree": k, "terms": [{"coeff_poly": Poly, "indices": [...]}]}

inline json to_json(const MultiVector& x) {
  json terms = json::array();
  for (const auto& [idx, p] : x.terms()) terms.push_back({{"coeff_poly", to_json(p)}, {"indices", idx}});
  return {{"degree", x.degree()}, {"terms", terms}};
}

inline MultiVector multivector_from_json(const json& j, int nvars) {
  const int k = detail::small_int(detail::field(j, "degree"), "degree");
  if (k < 0) throw FormatError("degree must be >= 0");
  MultiVector x(k, nvars);
  for (const auto& t : detail::field(j, "terms")) {
    std::vector<int> idx;
    for (const auto& i : detail::field(t, "indices")) idx.push_back(detail::small_int(i, "index"));
    x.add_term(idx, poly_from_json(detail::field(t, "coeff_poly"), nvars));
  }
  return x;
}

// VectorField: {"components": [Poly, ...]}

inline json to_json(const VectorField& x) {
  json comps = json::array();
  for (const auto& p : x.components()) comps.push_back(to_json(p));
  return {{"components", comps}};
}

inline VectorField vector_field_from_json(const json& j, int nvars) {
  const json& comps = detail::field(j, "components");
  if (!comps.is_array() || static_cast<int>(comps.size()) != nvars)
    throw FormatError("vector field needs " + std::to_string(nvars) + " components");
  std::vector<Poly> ps;
  for (const auto& c : comps) ps.push_back(poly_from_json(c, nvars));
  return VectorField(std::move(ps));
}

// TruncatedStar

inline json to_json(const TruncatedStar& s) {
  json cs = json::array();
  for (const auto& c : s.cochains()) cs.push_back(to_json(c));
  return {{"order", s.order()}, {"cochains", cs}};
}

inline TruncatedStar star_from_json(const json& j, int nvars) {
  const int order = detail::small_int(detail::field(j, "order"), "order");
  const json& cs = detail::field(j, "cochains");
  if (!cs.is_array() || static_cast<int>(cs.size()) != order)
    throw FormatError("star product of order " + std::to_string(order) + " needs that many cochains");
  std::vector<MultiDiffOp> ops;
  for (const auto& c : cs) ops.push_back(op_from_json(c, nvars));
  return TruncatedStar(std::move(ops));
}

// Reports

inline json to_json(const EquivalenceReport& r) {
  return {{"plain_equivalent", r.plain_equivalent},
          {"constraint_equivalent", r.constraint_equivalent},
          {"S", r.s ? to_json(*r.s) : json(nullptr)}};
}

inline json to_json(const CocycleClass& c) { return {{"X", to_json(c.x)}, {"psi", to_json(c.psi)}}; }

inline json to_json(const CocycleDecomposition& d) {
  return {{"class", to_json(d.cls)}, {"potential", to_json(d.potential)}};
}

inline json to_json(const SliceReport& r) {
  json reps = json::array();
  for (const auto& c : r.representatives) reps.push_back(to_json(c));
  return {{"model", to_json(r.model)},     {"tag", conhoch::to_string(r.tag)}, {"degree", 2},
          {"K", r.K},                      {"c", r.c},                       {"hh_dim", r.hh_dim},
          {"rhs_dim", r.rhs_dim},          {"match", r.match},               {"representatives", reps}};
}

}  // namespace conhoch::json_io
