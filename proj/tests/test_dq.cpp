#include <doctest.h>

#include <string>
#include <vector>

#include "dqra/abstract.hpp"
#include "dqra/catalog.hpp"
#include "dqra/dq.hpp"
#include "dqra/error.hpp"
#include "dqra/relcore.hpp"
#include "dqra/represent.hpp"
#include "dqra/twisted.hpp"
#include "test_support.hpp"

using namespace dqra;
using testing_support::antichain_swap_beta_algebra;
using testing_support::bool16_algebra;
using testing_support::two_chain_algebra;

namespace {

FinRel pairs2(int n, std::initializer_list<std::pair<int, int>> ps) {
  return FinRel::from_pairs(n, std::vector<std::pair<int, int>>(ps));
}

BuildFault build_fault_of(const Poset& p, const FinRel& e, const Endomap& a, const Endomap& b,
                          std::size_t cap = kDefaultCarrierCap) {
  try {
    ConcreteDqRA::build(p, e, a, b, cap);
  } catch (const BuildError& err) {
    return err.fault();
  }
  FAIL("expected a build error");
  return BuildFault::NotOrderAutomorphism;
}

// The 3-antichain system with a 3-cycle alpha; the smallest period-3 host.
ConcreteDqRA three_cycle_algebra() {
  return ConcreteDqRA::build(Poset::antichain(3, {"x", "y", "z"}), FinRel::full(3),
                             Endomap({1, 2, 0}), Endomap({1, 0, 2}));
}

}  // namespace

TEST_CASE("build: the 2-chain with identity alpha and the flip beta") {
  const ConcreteDqRA c = two_chain_algebra();
  CHECK(c.size() == 6);
  CHECK(c.one() == c.base().leq());
  CHECK(c.zero() == pairs2(2, {{0, 1}}));
  CHECK(c.cyclic());
  CHECK(c.periodicity() == 1);
}

TEST_CASE("build: each violated hypothesis is reported by name") {
  const Poset d3 = Poset::antichain(3, {"x", "y", "z"});
  const FinRel full3 = FinRel::full(3);

  // A transposed alpha with a 3-cycle beta breaks the compatibility equation.
  CHECK(build_fault_of(d3, full3, Endomap({1, 0, 2}), Endomap({1, 2, 0})) ==
        BuildFault::AbaConditionFailed);
  // With the identity alpha the same beta survives compatibility but is not
  // self-inverse.
  CHECK(build_fault_of(d3, full3, Endomap::identity(3), Endomap({1, 2, 0})) ==
        BuildFault::BetaNotSelfInverse);

  const Poset chain2 = Poset::chain(2, {"x", "y"});
  CHECK(build_fault_of(chain2, FinRel::full(2), Endomap({1, 0}), Endomap({1, 0})) ==
        BuildFault::NotOrderAutomorphism);
  CHECK(build_fault_of(chain2, FinRel::full(2), Endomap({0, 0}), Endomap({1, 0})) ==
        BuildFault::NotOrderAutomorphism);
  CHECK(build_fault_of(chain2, FinRel::full(2), Endomap::identity(2), Endomap::identity(2)) ==
        BuildFault::BetaNotDualAutomorphism);

  const Poset anti2 = Poset::antichain(2, {"x", "y"});
  CHECK(build_fault_of(anti2, FinRel::identity(2), Endomap({1, 0}), Endomap::identity(2)) ==
        BuildFault::GammaNotInsideE);
  CHECK(build_fault_of(chain2, FinRel::full(2), Endomap::identity(2), Endomap({1, 0}), 3) ==
        BuildFault::CarrierCapExceeded);
}

TEST_CASE("build: the 2-antichain with swap alpha has 16 elements and zero = one") {
  const ConcreteDqRA c = bool16_algebra();
  CHECK(c.size() == 16);
  CHECK(c.zero() == FinRel::identity(2));
  CHECK(c.one() == c.zero());
  CHECK_FALSE(c.cyclic());
  CHECK(c.periodicity() == 2);
}

TEST_CASE("build: a sweep can adopt a carrier enumerated once per base and equivalence") {
  const Poset p = Poset::antichain(2, {"x", "y"});
  const UpSetLattice carrier = enumerate_upsets(twisted_order(p, FinRel::full(2)));
  const ConcreteDqRA c =
      ConcreteDqRA::build(p, FinRel::full(2), Endomap({1, 0}), Endomap::identity(2), carrier);
  const ConcreteDqRA fresh = bool16_algebra();
  CHECK(c.size() == fresh.size());
  CHECK(c.zero() == fresh.zero());

  // A carrier enumerated for a different system is rejected.
  const UpSetLattice other = enumerate_upsets(twisted_order(p, FinRel::identity(2)));
  CHECK_THROWS_AS(
      ConcreteDqRA::build(p, FinRel::full(2), Endomap({1, 0}), Endomap::identity(2), other),
      Error);
}

TEST_CASE("fuse: unit, absorbing bottom, and a composition that fills up") {
  const ConcreteDqRA c = two_chain_algebra();
  const FinRel empty(2);
  for (const FinRel& r : c.lattice().elements()) {
    CHECK(c.fuse(c.one(), r) == r);
    CHECK(c.fuse(r, c.one()) == r);
    CHECK(c.fuse(empty, r) == empty);
    CHECK(c.fuse(r, empty) == empty);
  }
  // In the 16-element algebra, composing everything-but-(x,x) with itself
  // recovers every pair.
  const ConcreteDqRA b = bool16_algebra();
  const FinRel r = pairs2(2, {{0, 1}, {1, 0}, {1, 1}});
  CHECK(b.fuse(r, r) == FinRel::full(2));

  // Arguments must be carrier elements.
  CHECK_THROWS_AS(c.fuse(pairs2(2, {{0, 0}}), c.one()), Error);
  try {
    c.fuse(pairs2(2, {{0, 0}}), c.one());
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::NonCarrier);
  }
}

TEST_CASE("residuals: worked equalities and the adjunction over every triple") {
  const ConcreteDqRA c = two_chain_algebra();
  CHECK(c.residual_left(c.one(), c.one()) == c.one());
  const FinRel top = FinRel::full(2);
  for (const FinRel& r : c.lattice().elements()) {
    CHECK(c.residual_left(r, top) == top);
  }
  for (const FinRel& x : c.lattice().elements()) {
    for (const FinRel& y : c.lattice().elements()) {
      for (const FinRel& z : c.lattice().elements()) {
        const bool below = subset(c.fuse(x, y), z);
        CHECK(below == subset(y, c.residual_left(x, z)));
        CHECK(below == subset(x, c.residual_right(z, y)));
      }
    }
  }
}

TEST_CASE("tilde and minus: closed forms, residual forms, and mutual inverses") {
  for (const ConcreteDqRA& c : {two_chain_algebra(), bool16_algebra()}) {
    const FinRel ag = c.alpha().graph();
    for (const FinRel& r : c.lattice().elements()) {
      const FinRel conv_comp = converse(c.complement(r));
      CHECK(c.tilde(r) == compose(conv_comp, ag));
      CHECK(c.minus(r) == compose(ag, conv_comp));
      CHECK(c.tilde(r) == c.residual_left(r, c.zero()));
      CHECK(c.minus(r) == c.residual_right(c.zero(), r));
      CHECK(c.tilde(c.minus(r)) == r);
      CHECK(c.minus(c.tilde(r)) == r);
    }
    const FinRel empty(c.base().size());
    CHECK(c.tilde(empty) == c.E());
    CHECK(c.minus(empty) == c.E());
    CHECK(c.tilde(c.E()) == empty);
  }
  // With a discrete base and swap alpha, the order is its own negation.
  const ConcreteDqRA b = bool16_algebra();
  CHECK(b.tilde(b.one()) == b.one());
  CHECK(b.zero() == b.one());
}

TEST_CASE("iterated involutions follow the even/odd closed forms") {
  const ConcreteDqRA c3 = three_cycle_algebra();
  CHECK(c3.periodicity() == 3);
  const FinRel ag = c3.alpha().graph();
  const FinRel agi = converse(ag);
  for (const FinRel& r : c3.lattice().elements()) {
    CHECK(c3.tilde_n(r, 0) == r);
    CHECK(c3.minus_n(r, 0) == r);
    CHECK(c3.tilde_n(r, 1) == c3.tilde(r));
    CHECK(c3.minus_n(r, 1) == c3.minus(r));
    // Even case: conjugation by powers of alpha.
    CHECK(c3.tilde_n(r, 2) == compose(agi, compose(r, ag)));
    CHECK(c3.minus_n(r, 2) == compose(ag, compose(r, agi)));
    // Odd case at n = 3.
    const FinRel cc = converse(c3.complement(r));
    CHECK(c3.tilde_n(r, 3) == compose(agi, compose(cc, compose(ag, ag))));
    CHECK(c3.minus_n(r, 3) == compose(compose(ag, ag), compose(cc, agi)));
    // And the closed forms agree with literal iteration.
    CHECK(c3.tilde_n(r, 3) == c3.tilde(c3.tilde(c3.tilde(r))));
    CHECK(c3.minus_n(r, 3) == c3.minus(c3.minus(c3.minus(r))));
    // Period 3: six applications of either map is the identity.
    CHECK(c3.tilde_n(r, 6) == r);
    CHECK(c3.minus_n(r, 6) == r);
  }
}

TEST_CASE("prime: pointwise examples and involutivity") {
  const ConcreteDqRA b = bool16_algebra();
  CHECK(b.prime(pairs2(2, {{0, 1}, {1, 0}, {1, 1}})) == pairs2(2, {{1, 0}}));

  const ConcreteDqRA c = two_chain_algebra();
  const FinRel a_elt = pairs2(2, {{0, 0}, {0, 1}});
  const FinRel b_elt = pairs2(2, {{1, 1}, {0, 1}});
  CHECK(c.prime(a_elt) == a_elt);
  CHECK(c.prime(b_elt) == b_elt);
  for (const ConcreteDqRA& alg : {two_chain_algebra(), bool16_algebra()}) {
    for (const FinRel& r : alg.lattice().elements()) {
      CHECK(alg.prime(alg.prime(r)) == r);
    }
  }
}

TEST_CASE("plus: unit at zero, absorbing top, and the product law for prime") {
  const ConcreteDqRA c = two_chain_algebra();
  const FinRel top = FinRel::full(2);
  for (const FinRel& r : c.lattice().elements()) {
    CHECK(c.plus(c.zero(), r) == r);
    CHECK(c.plus(r, c.zero()) == r);
    CHECK(c.plus(r, top) == top);
  }
  for (const FinRel& r : c.lattice().elements()) {
    for (const FinRel& s : c.lattice().elements()) {
      CHECK(c.prime(c.fuse(r, s)) == c.plus(c.prime(r), c.prime(s)));
    }
  }
}

TEST_CASE("periodicity equals the order of alpha") {
  CHECK(two_chain_algebra().periodicity() == 1);
  CHECK(bool16_algebra().periodicity() == 2);
  CHECK(three_cycle_algebra().periodicity() == 3);
  CHECK(antichain_swap_beta_algebra().periodicity() == 1);
  CHECK(antichain_swap_beta_algebra().cyclic());
}

TEST_CASE("table form: the construction always yields an algebra that passes the axioms") {
  const ConcreteDqRA c = two_chain_algebra();
  const AbstractDqRA a = c.to_abstract("two-chain");
  CHECK(a.size == 6);
  CHECK(a.name == "two-chain");
  CHECK(axiom_check(a).all_pass());
  CHECK(a.labels[a.one] == "{(x,x),(x,y),(y,y)}");
  CHECK(a.labels[a.zero] == "{(x,y)}");
  CHECK(a.one == c.lattice().index_of(c.one()));
  CHECK(a.zero == c.lattice().index_of(c.zero()));

  // One point, full equivalence: two elements with zero at the bottom.
  const ConcreteDqRA tiny = ConcreteDqRA::build(Poset::chain(1, {"x"}), FinRel::full(1),
                                                Endomap::identity(1), Endomap::identity(1));
  const AbstractDqRA ta = tiny.to_abstract();
  CHECK(ta.size == 2);
  CHECK(ta.zero == 0);
  CHECK(ta.one == 1);
  CHECK(axiom_check(ta).all_pass());

  const AbstractDqRA ba = bool16_algebra().to_abstract("host16");
  CHECK(ba.size == 16);
  CHECK(axiom_check(ba).all_pass());
  CHECK_FALSE(is_cyclic(ba));
}

TEST_CASE("zero can be computed on either side of alpha") {
  for (const ConcreteDqRA& c :
       {two_chain_algebra(), bool16_algebra(), three_cycle_algebra(),
        antichain_swap_beta_algebra()}) {
    const FinRel cc = converse(c.complement(c.one()));
    CHECK(c.zero() == graph_compose(c.alpha(), cc));
    CHECK(c.zero() == graph_compose(cc, c.alpha()));
  }
}

TEST_CASE("the shifted primes factor through alpha and beta") {
  for (const ConcreteDqRA& c : {two_chain_algebra(), bool16_algebra(), three_cycle_algebra()}) {
    const FinRel ag = c.alpha().graph();
    const FinRel bg = c.beta().graph();
    for (const FinRel& r : c.lattice().elements()) {
      // One tilde-squared past the prime is conjugation: beta.Rc.beta.alpha.
      CHECK(c.tilde_n(c.prime(r), 2) ==
            compose(bg, compose(c.complement(r), compose(bg, ag))));
      // The minus-shifted primes: alpha.(alpha^n.beta).Rc.(alpha^n.beta).
      for (int n = 0; n <= 3; ++n) {
        const FinRel g = compose(rel_power(ag, n), bg);
        CHECK(c.minus_n(c.prime(r), 2 * n) ==
              compose(ag, compose(g, compose(c.complement(r), g))));
      }
    }
  }
}

TEST_CASE("double involutions distribute over fusion") {
  const ConcreteDqRA c = three_cycle_algebra();
  const std::vector<FinRel>& elems = c.lattice().elements();
  for (std::size_t i = 0; i < elems.size(); i += 7) {
    for (std::size_t j = 0; j < elems.size(); j += 5) {
      const FinRel& r = elems[i];
      const FinRel& s = elems[j];
      CHECK(c.tilde_n(c.fuse(r, s), 2) == c.fuse(c.tilde_n(r, 2), c.tilde_n(s, 2)));
      CHECK(c.minus_n(c.fuse(r, s), 2) == c.fuse(c.minus_n(r, 2), c.minus_n(s, 2)));
    }
  }
  const ConcreteDqRA c2 = two_chain_algebra();
  for (const FinRel& r : c2.lattice().elements()) {
    for (const FinRel& s : c2.lattice().elements()) {
      CHECK(c2.tilde_n(c2.fuse(r, s), 2) == c2.fuse(c2.tilde_n(r, 2), c2.tilde_n(s, 2)));
    }
  }
}

TEST_CASE("non-carrier arguments are rejected by every validated operation") {
  // Outside the equivalence: (x,y) is not even a subset of E = id.
  const ConcreteDqRA c = ConcreteDqRA::build(Poset::antichain(2, {"x", "y"}),
                                             FinRel::identity(2), Endomap::identity(2),
                                             Endomap::identity(2));
  CHECK(c.size() == 4);
  try {
    c.tilde(pairs2(2, {{0, 1}}));
    FAIL("expected a non-carrier error");
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::NonCarrier);
  }

  // Inside E but not an up-set of the twisted order: {(x,x)} alone misses
  // the point (x,y) above it in the two-chain algebra.
  const ConcreteDqRA f = two_chain_algebra();
  const FinRel bad = pairs2(2, {{0, 0}});
  CHECK(!f.lattice().index_of(bad).has_value());
  CHECK_THROWS_AS(f.tilde(bad), Error);
  CHECK_THROWS_AS(f.minus(bad), Error);
  CHECK_THROWS_AS(f.prime(bad), Error);
  CHECK_THROWS_AS(f.fuse(bad, f.one()), Error);
  CHECK_THROWS_AS(f.fuse(f.one(), bad), Error);
  CHECK_THROWS_AS(f.residual_left(bad, f.zero()), Error);
  CHECK_THROWS_AS(f.residual_right(f.zero(), bad), Error);

  // The raw ambient-complement helper is still reachable and stays valid for
  // any subset of E.
  CHECK(f.complement(bad) == pairs2(2, {{0, 1}, {1, 0}, {1, 1}}));
}

TEST_CASE("construction sweep over all four-point systems") {
  // Every valid system on 4 points whose carrier fits the cap: the periodicity
  // is the order of alpha, zero agrees on both sides of alpha, identity alpha
  // means cyclic, and the table form passes every axiom group.  Oversized
  // carriers (the near-discrete equivalences) are skipped by the cap.
  int built = 0, skipped = 0;
  for (const Poset& p : poset_catalog(4)) {
    for (const FinRel& e : equivalence_candidates(p)) {
      UpSetLattice carrier;
      try {
        carrier = enumerate_upsets(twisted_order(p, e), 4096);
      } catch (const CapacityError&) {
        ++skipped;
        continue;
      }
      for (const Endomap& alpha : order_automorphisms(p)) {
        if (!subset(alpha.graph(), e)) continue;
        for (const Endomap& beta : dual_order_automorphisms(p, true)) {
          if (!subset(beta.graph(), e)) continue;
          bool aba = true;
          for (int x = 0; x < p.size() && aba; ++x) aba = beta(x) == alpha(beta(alpha(x)));
          if (!aba) continue;
          const ConcreteDqRA c = ConcreteDqRA::build(p, e, alpha, beta, carrier);
          ++built;
          CHECK(c.periodicity() == map_order(alpha));
          if (alpha == Endomap::identity(4)) CHECK(c.cyclic());
          const FinRel cc = converse(c.complement(c.one()));
          CHECK(c.zero() == graph_compose(alpha, cc));
          CHECK(c.zero() == graph_compose(cc, alpha));
          const AxiomReport rep = axiom_check(c.to_abstract());
          CHECK(rep.all_pass());
        }
      }
    }
  }
  CHECK(built > 50);
  CAPTURE(built);
  CAPTURE(skipped);
}
