// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "support.hpp"

using namespace conhoch;
using conhoch::testing::Gen;
using conhoch::testing::grid_models;
using conhoch::testing::term;
using conhoch::testing::x;

namespace {

constexpr auto W = FunctionClassTag::Wobs;
constexpr auto N = FunctionClassTag::Null;
constexpr int kSamples = 100;

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void run(int id, const std::string& title, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_seconds > 0 && secs >= limit_seconds) o.fail("runtime " + std::to_string(secs) + " s over limit");
  std::printf("%s criterion %d: %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), secs,
              o.ok ? "" : " -- ", o.detail.c_str());
  std::fflush(stdout);
  if (!o.ok) ++failures;
}

void grid(Outcome& o, FunctionClassTag tag) {
  for (const auto& m : grid_models())
    for (int K = 2; K <= 3; ++K)
      for (int c = 0; c <= 2; ++c) {
        const auto hh = hh_dimension(m, tag, 2, K, c);
        const auto rhs = theorem_rhs_dimension(m, tag, K, c);
        if (hh != rhs)
          o.fail(m.to_string() + " K=" + std::to_string(K) + " c=" + std::to_string(c) + ": " + std::to_string(hh) +
                 " vs " + std::to_string(rhs));
      }
}

SymbolChain tagged_combination(Gen& g, const FlatModel& m, int arity, FunctionClassTag tag, int K, int c) {
  return g.combination(slice_basis(m, {arity, K, c, tag}), SymbolChain(arity, m.n_total()), 3);
}

}  // namespace

int main() {
  const FlatModel m321(3, 2, 1);
  constexpr int n3 = 3;

  run(1, "counterexample class in (3,2,1)", 1.0, [&](Outcome& o) {
    const SymbolChain p13 = term(n3, {{1, 3}});
    const SymbolChain d = hochschild_delta(MultiDiffOp(p13)).symbol();
    if (d != -term(n3, {{1}, {3}}) - term(n3, {{3}, {1}})) o.fail("delta symbol " + d.to_string());
    if (!chain_membership(m321, d, W)) o.fail("delta not Wobs");
    if (find_constraint_potential(m321, d)) o.fail("unexpected constraint potential");
    if (op_membership(m321, MultiDiffOp(p13), W)) o.fail("Op(d1 v d3) classified Wobs");
    const auto w = functional_membership_witness(m321, p13, W, 2);
    if (!w || w->args.size() != 1 || w->args[0] != x(n3, 1) * x(n3, 3)) o.fail("witness is not x1*x3");
  });

  run(2, "second constraint cohomology grid, tag Wobs", 300.0, [&](Outcome& o) {
    grid(o, W);
    const auto spot = hh_dimension(m321, W, 2, 2, 0);
    if (spot != 3) o.fail("spot value " + std::to_string(spot));
    if (mv_slice_dimension(m321, 2, 0, W) + psi_space_basis(m321, 2, 0).size() != 3) o.fail("spot split is not 2 + 1");
  });

  run(3, "second constraint cohomology grid, tag Null", 300.0, [&](Outcome& o) { grid(o, N); });

  run(4, "low degrees and injectivity of hkr", 0, [&](Outcome& o) {
    for (const auto& m : grid_models())
      for (int c = 0; c <= 2; ++c) {
        const std::string where = m.to_string() + " c=" + std::to_string(c);
        if (hh_dimension(m, W, 0, 1, c) != function_slice_basis(m, W, c).size()) o.fail("HH0 " + where);
        if (hh_dimension(m, W, 1, 1, c) != vf_slice_basis(m, W, c).size()) o.fail("HH1 " + where);
        for (int K = 2; K <= 3; ++K)
          if (hh_dimension(m, W, 1, K, c) != 0) o.fail("HH1 K=" + std::to_string(K) + " " + where);
        for (const auto& b : mv_slice_basis(m, 2, c, W))
          if (find_constraint_potential(m, hkr(b))) o.fail("potential for hkr(" + b.to_string() + ") " + where);
      }
  });

  run(5, "structural identities", 0, [&](Outcome& o) {
    Gen g(5001);
    for (int i = 0; i < kSamples; ++i) {
      const int n = g.uniform(2, 4);
      const SymbolChain phi = g.chain(n, g.uniform(1, 3), 4, 2);
      if (!differential_D(differential_D(phi)).is_zero()) o.fail("D^2 on " + phi.to_string());
    }
    for (int i = 0; i < kSamples; ++i) {
      const int n = g.uniform(2, 3);
      const SymbolChain phi = g.chain(n, g.uniform(1, 2), 3, 2, 2);
      const SymbolChain d = hochschild_delta(phi);
      if (!hochschild_delta(d).is_zero()) o.fail("delta^2 on " + phi.to_string());
      for_each_monomial_tuple(n, phi.arity() + 2, phi.max_order() + 1, [&](const std::vector<Poly>& fs) {
        if (!hochschild_delta_eval(d, fs).is_zero()) o.fail("delta^2 (functional) on " + phi.to_string());
      });
    }
    for (int i = 0; i < kSamples; ++i) {
      const int n = g.uniform(2, 3);
      const int arity = g.uniform(1, 3);
      const SymbolChain phi = g.chain(n, arity, std::min(4, arity + 2), 2, 2);
      if (hochschild_delta(phi) != differential_D(phi)) o.fail("Op D != delta Op on " + phi.to_string());
      if (arity <= 2 && !chain_map_check(phi)) o.fail("chain map (functional) on " + phi.to_string());
    }
    for (int i = 0; i < kSamples; ++i) {
      const int n = g.uniform(1, 4);
      const int k = 2 + i % 4;
      const SymWord w = g.word(n, k);
      const Poly c = g.poly(n, 2);
      SymbolChain expect(1, n);
      expect.add_term({w}, c);
      if (vee_product(shuffle_coproduct(w, c)) != Rational((1 << k) - 2) * expect) o.fail("kernel identity " + w.to_string());
    }
  });

  run(6, "decomposition lemmas", 0, [&](Outcome& o) {
    Gen g(6001);
    // D of the complement of Wobs in arity one lands in the complement plus NullNotVan
    for (int i = 0; i < kSamples; ++i) {
      const FlatModel& m = grid_models()[i % 4];
      const int n = m.n_total();
      SymbolChain psi(1, n);
      for (int t = 0; t < 3; ++t) {
        std::vector<int> idx = g.word(n, g.uniform(1, 3)).indices();
        idx.push_back(g.uniform(m.n_wobs() + 1, n));
        Exponent e = g.exponent(m.n_wobs(), g.uniform(0, 2));
        e.resize(n, 0);
        psi.add_monomial({SymWord(idx)}, e, g.small_rational());
      }
      if (!chain_membership(m, psi, SubspaceTag::TotalNotWobs)) o.fail("generator left TotalNotWobs");
      const SymbolChain d = differential_D(psi);
      const Tensor2Split s = decompose_tensor2(m, d);
      if (!chain_membership(m, s.total_not_wobs, SubspaceTag::TotalNotWobs)) o.fail("split part not TotalNotWobs");
      if (!chain_membership(m, s.cinf_wobs, SubspaceTag::NullNotVan))
        o.fail("remainder not NullNotVan: " + s.cinf_wobs.to_string());
      if (s.total_not_wobs + s.cinf_wobs != d) o.fail("split does not sum back");
    }
    // symmetric and tensor algebra decompositions
    for (int i = 0; i < kSamples; ++i) {
      const FlatModel& m = grid_models()[i % 4];
      const SymbolChain psi = g.chain(m.n_total(), 1, 4, 2, 4);
      const SymSplit s = decompose_sym(m, psi);
      if (s.wobs_part + s.total_not_wobs != psi) o.fail("sym split does not sum back");
      if (!chain_membership(m, s.total_not_wobs, SubspaceTag::TotalNotWobs)) o.fail("sym complement part");
      if (!decompose_sym(m, s.wobs_part).total_not_wobs.is_zero()) o.fail("sym split not idempotent");

      const SymbolChain phi = tagged_combination(g, m, 2, N, g.uniform(2, 4), g.uniform(0, 2)) +
                              (i % 2 ? g.chain(m.n_total(), 2, 4, 2, 3) : SymbolChain(2, m.n_total()));
      const Tensor2Split t = decompose_tensor2(m, phi);
      if (t.cinf_wobs + t.total_not_wobs != phi) o.fail("tensor split does not sum back");
      if (!chain_membership(m, t.total_not_wobs, SubspaceTag::TotalNotWobs)) o.fail("tensor complement part");
      if (!decompose_tensor2(m, t.cinf_wobs).total_not_wobs.is_zero()) o.fail("tensor split not idempotent");
      if (chain_membership(m, phi, N)) {
        if (!t.vanishing || !t.null_not_van) {
          o.fail("Null input without Null split");
          continue;
        }
        if (*t.vanishing + *t.null_not_van != phi) o.fail("Null split does not sum back");
        if (!chain_membership(m, *t.null_not_van, SubspaceTag::NullNotVan)) o.fail("NullNotVan part");
        for (const auto& [w, p] : t.vanishing->terms())
          for (const auto& [e, c] : p.terms())
            if (normal_degree(m, e) < 1) o.fail("vanishing part has a term not vanishing on C");
      }
    }
  });

  run(7, "infinitesimal deformations in (3,2,1)", 0, [&](Outcome& o) {
    const MultiVector x13 = MultiVector::term(n3, {1, 3});
    const SymbolChain c1 = hkr(x13);
    const TruncatedStar s = TruncatedStar::first_order(c1);
    int count = 0;
    for (int K = 2; K <= 3; ++K)
      for (int c = 0; c <= 1; ++c)
        for (const auto& psi : psi_space_basis(m321, K, c)) {
          ++count;
          const TruncatedStar s2 = TruncatedStar::first_order(c1 + differential_D(psi));
          if (!plain_equivalence_step(m321, s, s2, 0)) o.fail("plain solve failed for " + psi.to_string());
          if (equivalence_step(m321, s, s2, 0)) o.fail("constraint solve succeeded for " + psi.to_string());
          const CocycleClass cls = classify_infinitesimal(m321, s2.cochain(1));
          if (cls.x != x13 || cls.psi != psi) o.fail("classification of " + psi.to_string());
        }
    if (count == 0) o.fail("empty psi space");
  });

  run(8, "coisotropy of Wobs bivectors", 0, [&](Outcome& o) {
    for (const auto& m : conhoch::testing::all_models(4)) {
      if (m.n_total() < 2) continue;
      for (int c = 0; c <= 1; ++c)
        for (const auto& b : mv_slice_basis(m, 2, c, W))
          if (!coisotropy_check(m, b)) o.fail(m.to_string() + " " + b.to_string());
    }
    if (coisotropy_check(m321, MultiVector::term(n3, {2, 3}))) o.fail("witness d2^d3 passed");
  });

  return failures == 0 ? 0 : 1;
}
