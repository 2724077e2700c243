#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "dqra/abstract.hpp"
#include "dqra/error.hpp"
#include "dqra/json_io.hpp"
#include "dqra/relcore.hpp"
#include "test_support.hpp"

using namespace dqra;
using testing_support::data_dir;

namespace {

AbstractDqRA golden(const std::string& name) {
  return load_algebra(data_dir() + "/algebras/" + name + ".json");
}

const std::vector<std::string>& golden_names() {
  static const std::vector<std::string> names{
      "trivial1",  "chain2",        "sugihara3", "chain4",        "chain5a",
      "chain5b",   "diamond4a",     "diamond4b", "diamond4c",     "diamond4d",
      "diamond4e", "lat6a",         "lat6b",     "lat8",          "bool16",
      "noncyclic7_p2", "noncyclic7_p3", "chain3_nilpotent", "diamond4_open"};
  return names;
}

int idx(const AbstractDqRA& a, const std::string& label) {
  auto i = a.index_of_label(label);
  REQUIRE_MESSAGE(i.has_value(), "missing label " << label << " in " << a.name);
  return *i;
}

}  // namespace

TEST_CASE("axiom check: the published tables pass, with one deliberate exception") {
  for (const std::string& name : golden_names()) {
    const AbstractDqRA a = golden(name);
    const AxiomReport rep = axiom_check(a);
    CAPTURE(name);
    if (name == "noncyclic7_p3") {
      // The period-3 seven-element algebra sits on the M3 lattice: every
      // group except distributivity holds, and the first witness is the
      // canonical middle triple.
      for (int g = 0; g < kAxiomGroupCount; ++g) {
        const auto grp = static_cast<AxiomGroup>(g);
        if (grp == AxiomGroup::Distributivity) {
          CHECK_FALSE(rep[grp].pass);
          CHECK(rep[grp].witness == std::vector<int>{idx(a, "q"), idx(a, "r"), idx(a, "s")});
        } else {
          CHECK(rep[grp].pass);
        }
      }
    } else {
      CHECK(rep.all_pass());
    }
  }
}

TEST_CASE("axiom check: swapping the two self-prime elements breaks the product law") {
  AbstractDqRA a = golden("lat6a");
  const int ia = idx(a, "a"), ib = idx(a, "b");
  CHECK(a.prime[ia] == ia);
  CHECK(a.prime[ib] == ib);
  a.prime[ia] = ib;
  a.prime[ib] = ia;
  const AxiomReport rep = axiom_check(a);
  CHECK_FALSE(rep.all_pass());
  CHECK_FALSE(rep[AxiomGroup::Dp].pass);
  CHECK(rep[AxiomGroup::Dp].witness.size() == 2);
  // The alternative prime still is an involutive dual lattice isomorphism.
  CHECK(rep[AxiomGroup::PrimeInvolution].pass);
  CHECK(rep[AxiomGroup::Dm].pass);
}

TEST_CASE("axiom check: shape problems are rejected before any axiom runs") {
  AbstractDqRA a = golden("chain2");
  a.mult[0][0] = 7;
  CHECK_THROWS_AS(axiom_check(a), Error);
  AbstractDqRA b = golden("chain2");
  b.leq.set(1, 0);  // collapses antisymmetry
  CHECK_THROWS_AS(axiom_check(b), Error);
}

TEST_CASE("residual tables: unit row, worked entries, and the adjunction") {
  const AbstractDqRA s3 = golden("sugihara3");
  const ResidualTables rt = residual_tables(s3);
  const int bot = idx(s3, "bot"), one = idx(s3, "1"), top = idx(s3, "top");
  // 1\z = z, and top\bot = bot.
  for (int z = 0; z < s3.size; ++z) CHECK(rt.left[one][z] == z);
  CHECK(rt.left[top][bot] == bot);

  for (const std::string& name : golden_names()) {
    const AbstractDqRA a = golden(name);
    const ResidualTables t = residual_tables(a);
    CAPTURE(name);
    for (int x = 0; x < a.size; ++x) {
      for (int y = 0; y < a.size; ++y) {
        for (int z = 0; z < a.size; ++z) {
          const bool below = a.leq.at(a.mult[x][y], z);
          CHECK(below == a.leq.at(y, t.left[x][z]));
          CHECK(below == a.leq.at(x, t.right[z][y]));
        }
      }
    }
  }

  // A fusion that never dips below the top is not residuated.
  AbstractDqRA broken = golden("chain2");
  broken.mult = {{1, 1}, {1, 1}};
  try {
    residual_tables(broken);
    FAIL("expected an unresiduated error");
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::Unresiduated);
  }
}

TEST_CASE("cyclicity and periodicity of the named examples") {
  CHECK(is_cyclic(golden("chain2")));
  CHECK(periodicity_abstract(golden("chain2")) == 1);
  CHECK_FALSE(is_cyclic(golden("noncyclic7_p2")));
  CHECK(periodicity_abstract(golden("noncyclic7_p2")) == 2);
  CHECK_FALSE(is_cyclic(golden("noncyclic7_p3")));
  CHECK(periodicity_abstract(golden("noncyclic7_p3")) == 3);
  CHECK(periodicity_abstract(golden("bool16")) == 2);

  // The notions are undefined when tilde and minus are not mutually inverse.
  AbstractDqRA broken = golden("chain2");
  broken.tilde = {1, 0};
  broken.minus = {0, 1};
  try {
    is_cyclic(broken);
    FAIL("expected a not-involutive error");
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::NotInvolutive);
  }
  CHECK_THROWS_AS(periodicity_abstract(broken), Error);
}

TEST_CASE("negations are mutually inverse dual lattice isomorphisms on every golden algebra") {
  for (const std::string& name : golden_names()) {
    const AbstractDqRA a = golden(name);
    CAPTURE(name);
    const LatticeTables lt = lattice_tables(a.leq);
    REQUIRE(lt.ok);
    for (int x = 0; x < a.size; ++x) {
      CHECK(a.tilde[a.minus[x]] == x);
      CHECK(a.minus[a.tilde[x]] == x);
      for (int y = 0; y < a.size; ++y) {
        // Order-reversing both ways, hence dual isomorphisms.
        CHECK(a.leq.at(x, y) == a.leq.at(a.tilde[y], a.tilde[x]));
        CHECK(a.leq.at(x, y) == a.leq.at(a.minus[y], a.minus[x]));
        // De Morgan forms over meet and join.
        CHECK(a.tilde[lt.join[x][y]] == lt.meet[a.tilde[x]][a.tilde[y]]);
        CHECK(a.minus[lt.meet[x][y]] == lt.join[a.minus[x]][a.minus[y]]);
      }
    }
  }
}

TEST_CASE("negation powers slide through the prime on every golden algebra") {
  for (const std::string& name : golden_names()) {
    const AbstractDqRA a = golden(name);
    CAPTURE(name);
    auto tilde_n = [&a](int x, int n) {
      for (int i = 0; i < n; ++i) x = a.tilde[x];
      return x;
    };
    auto minus_n = [&a](int x, int n) {
      for (int i = 0; i < n; ++i) x = a.minus[x];
      return x;
    };
    for (int x = 0; x < a.size; ++x) {
      for (int n = 0; n <= 4; ++n) {
        CHECK(tilde_n(a.prime[x], n) == a.prime[minus_n(x, n)]);
        CHECK(minus_n(a.prime[x], n) == a.prime[tilde_n(x, n)]);
      }
    }
    // Even negation powers distribute over fusion.
    auto t2 = [&a](int x) { return a.tilde[a.tilde[x]]; };
    auto m2 = [&a](int x) { return a.minus[a.minus[x]]; };
    for (int x = 0; x < a.size; ++x) {
      for (int y = 0; y < a.size; ++y) {
        CHECK(t2(a.mult[x][y]) == a.mult[t2(x)][t2(y)]);
        CHECK(m2(a.mult[x][y]) == a.mult[m2(x)][m2(y)]);
        CHECK(t2(t2(a.mult[x][y])) == a.mult[t2(t2(x))][t2(t2(y))]);
      }
    }
  }
}

TEST_CASE("cyclic subuniverse: the elements where the negations agree") {
  // A cyclic algebra is its own cyclic part.
  const AbstractDqRA s3 = golden("sugihara3");
  const Subalgebra whole = cyclic_subuniverse(s3);
  CHECK(whole.algebra.size == s3.size);
  CHECK(whole.carrier.size() == static_cast<std::size_t>(s3.size));

  // The period-2 seven-element algebra keeps exactly bottom, middle, top, and
  // that part is the nilpotent 3-chain.
  const AbstractDqRA p2 = golden("noncyclic7_p2");
  const Subalgebra part = cyclic_subuniverse(p2);
  CHECK(part.algebra.size == 3);
  CHECK(part.carrier == std::vector<int>{idx(p2, "0"), idx(p2, "c"), idx(p2, "1")});
  const IsoResult iso = isomorphism_search(part.algebra, golden("chain3_nilpotent"));
  CHECK(iso.map.has_value());
  CHECK(part.algebra.name == "noncyclic7_p2-cyclic-part");

  // The 16-element host keeps a 4-element cyclic part isomorphic to one of
  // the diamonds.
  const Subalgebra host_part = cyclic_subuniverse(golden("bool16"));
  CHECK(host_part.algebra.size == 4);
  CHECK(isomorphism_search(host_part.algebra, golden("diamond4a")).map.has_value());

  // Every cyclic part of a passing golden algebra is again a passing cyclic
  // algebra.
  for (const std::string& name : golden_names()) {
    const AbstractDqRA a = golden(name);
    if (!axiom_check(a).all_pass()) continue;
    const Subalgebra sub = cyclic_subuniverse(a);
    CAPTURE(name);
    CHECK(axiom_check(sub.algebra).all_pass());
    CHECK(is_cyclic(sub.algebra));
  }
}

TEST_CASE("derived algebras: shifted primes keep the axioms") {
  // Zero shift changes nothing but the name.
  const AbstractDqRA p2 = golden("noncyclic7_p2");
  const AbstractDqRA same = derive_algebra(p2, DeriveKind::Nabla, 0);
  CHECK(same.prime == p2.prime);
  CHECK(same.mult == p2.mult);
  CHECK(same.name == "noncyclic7_p2-nabla0");

  const AbstractDqRA shifted = derive_algebra(p2, DeriveKind::Nabla, 1);
  CHECK(shifted.name == "noncyclic7_p2-nabla1");
  // nabla-1 applies tilde twice after the prime.
  for (int x = 0; x < p2.size; ++x) {
    CHECK(shifted.prime[x] == p2.tilde[p2.tilde[p2.prime[x]]]);
  }
  const AbstractDqRA delta = derive_algebra(p2, DeriveKind::Delta, 1);
  for (int x = 0; x < p2.size; ++x) {
    CHECK(delta.prime[x] == p2.minus[p2.minus[p2.prime[x]]]);
  }

  for (const std::string& name : golden_names()) {
    const AbstractDqRA a = golden(name);
    if (!axiom_check(a).all_pass()) continue;
    CAPTURE(name);
    for (int n = 1; n <= 2; ++n) {
      CHECK(axiom_check(derive_algebra(a, DeriveKind::Nabla, n)).all_pass());
      CHECK(axiom_check(derive_algebra(a, DeriveKind::Delta, n)).all_pass());
    }
  }
  // The non-distributive example keeps its exact axiom profile as well.
  const AxiomReport dp3 = axiom_check(derive_algebra(golden("noncyclic7_p3"), DeriveKind::Nabla, 1));
  for (int g = 0; g < kAxiomGroupCount; ++g) {
    const auto grp = static_cast<AxiomGroup>(g);
    CHECK(dp3[grp].pass == (grp != AxiomGroup::Distributivity));
  }
}

TEST_CASE("homomorphism check: identity, constants, and an embedding") {
  const AbstractDqRA l6 = golden("lat6a");
  std::vector<int> id(l6.size);
  for (int i = 0; i < l6.size; ++i) id[i] = i;
  CHECK(homomorphism_check(l6, l6, id).ok);

  // Collapsing the 2-chain to its top misses the zero constant.
  const AbstractDqRA c2 = golden("chain2");
  const HomReport bad = homomorphism_check(c2, c2, {1, 1});
  CHECK_FALSE(bad.ok);
  CHECK(bad.op == "zero");

  // The Sugihara chain embeds into the 16-element host as empty, identity,
  // and everything.
  const AbstractDqRA host = golden("bool16");
  const AbstractDqRA s3 = golden("sugihara3");
  const std::vector<int> h{idx(host, "{}"), idx(host, "{(x,x),(y,y)}"),
                           idx(host, "{(x,x),(x,y),(y,x),(y,y)}")};
  CHECK(homomorphism_check(s3, host, h).ok);
}

TEST_CASE("generated subalgebra: the Sugihara image inside the 16-element host") {
  const AbstractDqRA host = golden("bool16");
  const Subalgebra gen = generated_subalgebra(
      host, {idx(host, "{}"), idx(host, "{(x,x),(y,y)}"),
             idx(host, "{(x,x),(x,y),(y,x),(y,y)}")});
  CHECK(gen.algebra.size == 3);
  CHECK(isomorphism_search(gen.algebra, golden("sugihara3")).map.has_value());

  // Seeding with the constants alone reproduces at least the constants.
  const AbstractDqRA c2 = golden("chain2");
  const Subalgebra gen2 = generated_subalgebra(c2, {c2.one});
  CHECK(gen2.algebra.size == 2);
}

TEST_CASE("isomorphism search: relabelled algebras match, different primes do not") {
  // Relabel a diamond by the lattice automorphism swapping its midpoints.
  const AbstractDqRA d = golden("diamond4a");
  const int ia = idx(d, "a"), ib = idx(d, "01");
  std::vector<int> sigma(d.size);
  for (int i = 0; i < d.size; ++i) sigma[i] = i;
  sigma[ia] = ib;
  sigma[ib] = ia;
  AbstractDqRA moved = d;
  moved.name = "relabelled";
  for (int x = 0; x < d.size; ++x) {
    moved.tilde[sigma[x]] = sigma[d.tilde[x]];
    moved.minus[sigma[x]] = sigma[d.minus[x]];
    moved.prime[sigma[x]] = sigma[d.prime[x]];
    for (int y = 0; y < d.size; ++y) moved.mult[sigma[x]][sigma[y]] = sigma[d.mult[x][y]];
  }
  moved.one = sigma[d.one];
  moved.zero = sigma[d.zero];
  FinRel new_leq(d.size);
  for (int x = 0; x < d.size; ++x) {
    for (int y = 0; y < d.size; ++y) {
      if (d.leq.at(x, y)) new_leq.set(sigma[x], sigma[y]);
    }
  }
  moved.leq = new_leq;
  const IsoResult found = isomorphism_search(d, moved);
  REQUIRE(found.map.has_value());
  CHECK(homomorphism_check(d, moved, *found.map).ok);

  // The two prime choices on the 6-element lattice give non-isomorphic tables.
  const AbstractDqRA l6 = golden("lat6a");
  AbstractDqRA swapped = l6;
  const int ja = idx(l6, "a"), jb = idx(l6, "b");
  swapped.prime[ja] = jb;
  swapped.prime[jb] = ja;
  const IsoResult none = isomorphism_search(l6, swapped);
  CHECK_FALSE(none.map.has_value());
  // The invariant fingerprints already disagree (the swap destroys both
  // self-prime elements), so the bijection search never even starts.
  CHECK(none.candidates_tried == 0);

  // Identical tables come back with the identity-first witness.
  const IsoResult self = isomorphism_search(l6, l6);
  REQUIRE(self.map.has_value());
  std::vector<int> identity(l6.size);
  for (int i = 0; i < l6.size; ++i) identity[i] = i;
  CHECK(*self.map == identity);
}

TEST_CASE("derived-algebra isomorphism: period 3 maps onto its shift, period 2 does not") {
  const AbstractDqRA p3 = golden("noncyclic7_p3");
  const OddIsoResult odd = odd_periodic_iso(p3, 1);
  CHECK(odd.ok);
  // The map is the double minus.
  std::vector<int> want{0, 1, 4, 2, 3, 5, 6};
  CHECK(odd.map == want);
  CHECK(homomorphism_check(p3, derive_algebra(p3, DeriveKind::Nabla, 1), odd.map).ok);

  // Shift index five: now the double tilde.
  const OddIsoResult odd5 = odd_periodic_iso(p3, 5);
  CHECK(odd5.ok);
  CHECK(odd5.map == std::vector<int>{0, 1, 3, 4, 2, 5, 6});

  // A cyclic (period 1) algebra maps onto its shift by the identity.
  const OddIsoResult cyc = odd_periodic_iso(golden("chain2"), 1);
  CHECK(cyc.ok);
  CHECK(cyc.map == std::vector<int>{0, 1});

  // Even shift or even period fall outside the statement.
  CHECK_THROWS_AS(odd_periodic_iso(p3, 2), Error);
  const AbstractDqRA p2 = golden("noncyclic7_p2");
  CHECK_THROWS_AS(odd_periodic_iso(p2, 1), Error);

  // The period-2 algebra is not isomorphic to its first shift at all: the
  // search exhausts all four lattice automorphisms.
  const IsoResult none = isomorphism_search(p2, derive_algebra(p2, DeriveKind::Nabla, 1));
  CHECK_FALSE(none.map.has_value());
  CHECK(none.candidates_tried == 4);
}

TEST_CASE("the nonrepresentability detector") {
  // A strictly interior element squaring to or below zero is the signal.
  const NonFinRepVerdict flag3 = nonfinrep_detector(golden("chain3_nilpotent"));
  CHECK(flag3.flagged);
  CHECK(flag3.witness == idx(golden("chain3_nilpotent"), "a"));

  const AbstractDqRA p2 = golden("noncyclic7_p2");
  const NonFinRepVerdict flag7 = nonfinrep_detector(p2);
  CHECK(flag7.flagged);
  // Both a and c qualify (a.a = c.c = bottom = zero); the scan reports the
  // first in carrier order.
  CHECK(flag7.witness == idx(p2, "a"));
  CHECK(p2.mult[idx(p2, "c")][idx(p2, "c")] == idx(p2, "0"));

  // The period-3 seven-element algebra has p.p = 0 with 0 < p < 1, so it is
  // caught by the same square-below-zero signal.
  const AbstractDqRA p3 = golden("noncyclic7_p3");
  const NonFinRepVerdict flagp3 = nonfinrep_detector(p3);
  CHECK(flagp3.flagged);
  CHECK(flagp3.witness == idx(p3, "p"));

  // Everything else in the golden corpus stays clear.
  for (const std::string& name : golden_names()) {
    if (name == "chain3_nilpotent" || name == "noncyclic7_p2" || name == "noncyclic7_p3") continue;
    CAPTURE(name);
    CHECK_FALSE(nonfinrep_detector(golden(name)).flagged);
  }
}

TEST_CASE("order isomorphisms between small orders") {
  const FinRel chain3 = Poset::chain(3).leq();
  const auto same = order_isomorphisms(chain3, chain3);
  REQUIRE(same.size() == 1);
  CHECK(same[0] == std::vector<int>{0, 1, 2});

  CHECK(order_isomorphisms(chain3, FinRel::identity(3)).empty());

  const AbstractDqRA d = golden("diamond4a");
  const auto diamond_autos = order_isomorphisms(d.leq, d.leq);
  CHECK(diamond_autos.size() == 2);
}
