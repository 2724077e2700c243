#include "dqra/abstract.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "dqra/error.hpp"

namespace dqra {

namespace {

// z with cand a subset of cover(z) and z in cand is the unique greatest
// (resp. least) element of cand; candidate scan order is only a heuristic.
int bounded_extreme(const FinRel& cover, const std::vector<uint64_t>& cand, int n, bool descending) {
  const int wpr = cover.words_per_row();
  auto fits = [&](int z) {
    const uint64_t* row = cover.row(z);
    for (int w = 0; w < wpr; ++w) {
      if (cand[w] & ~row[w]) return false;
    }
    return true;
  };
  if (descending) {
    for (int w = wpr - 1; w >= 0; --w) {
      uint64_t bits = cand[w];
      while (bits) {
        const int b = 63 - std::countl_zero(bits);
        const int z = w * 64 + b;
        if (z < n && fits(z)) return z;
        bits &= ~(uint64_t{1} << b);
      }
    }
  } else {
    for (int w = 0; w < wpr; ++w) {
      uint64_t bits = cand[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        const int z = w * 64 + b;
        if (fits(z)) return z;
        bits &= bits - 1;
      }
    }
  }
  return -1;
}

}  // namespace

std::optional<int> AbstractDqRA::index_of_label(const std::string& s) const {
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    if (labels[i] == s) return i;
  }
  return std::nullopt;
}

void ensure_labels(AbstractDqRA& a) {
  if (!a.labels.empty()) return;
  a.labels.resize(a.size);
  for (int i = 0; i < a.size; ++i) a.labels[i] = "e" + std::to_string(i);
}

void validate_shape(const AbstractDqRA& a) {
  auto fail = [](const std::string& msg) { throw Error(Error::Kind::Validation, msg); };
  if (a.size < 1) fail("algebra carrier must be nonempty");
  const int n = a.size;
  if (a.leq.size() != n) fail("order relation size does not match the carrier");
  if (auto w = partial_order_witness(a.leq)) {
    fail("order relation is not a partial order (" + w->reason + " at indices " +
         std::to_string(w->x) + "," + std::to_string(w->y) + ")");
  }
  auto check_unary = [&](const std::vector<int>& t, const char* name) {
    if (static_cast<int>(t.size()) != n) fail(std::string(name) + " table size mismatch");
    for (int v : t) {
      if (v < 0 || v >= n) fail(std::string(name) + " table entry out of range");
    }
  };
  check_unary(a.tilde, "tilde");
  check_unary(a.minus, "minus");
  check_unary(a.prime, "prime");
  if (static_cast<int>(a.mult.size()) != n) fail("fusion table size mismatch");
  for (const auto& row : a.mult) check_unary(row, "fusion");
  if (a.one < 0 || a.one >= n) fail("identity constant out of range");
  if (a.zero < 0 || a.zero >= n) fail("zero constant out of range");
  if (!a.labels.empty()) {
    if (static_cast<int>(a.labels.size()) != n) fail("label list size mismatch");
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (a.labels[i] == a.labels[j]) fail("duplicate label \"" + a.labels[i] + "\"");
      }
    }
  }
}

LatticeTables lattice_tables(const FinRel& leq) {
  const int n = leq.size();
  if (auto w = partial_order_witness(leq)) {
    throw Error(Error::Kind::Validation, "not a partial order (" + w->reason + ")");
  }
  LatticeTables t;
  const FinRel geq = converse(leq);
  const int wpr = leq.words_per_row();
  std::vector<uint64_t> cand(wpr);
  t.meet.assign(n, std::vector<int>(n, -1));
  t.join.assign(n, std::vector<int>(n, -1));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int w = 0; w < wpr; ++w) cand[w] = geq.row(x)[w] & geq.row(y)[w];
      const int m = bounded_extreme(geq, cand, n, /*descending=*/true);
      if (m < 0) {
        t.witness = {x, y};
        return t;
      }
      t.meet[x][y] = m;
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int w = 0; w < wpr; ++w) cand[w] = leq.row(x)[w] & leq.row(y)[w];
      const int j = bounded_extreme(leq, cand, n, /*descending=*/false);
      if (j < 0) {
        t.witness = {x, y};
        return t;
      }
      t.join[x][y] = j;
    }
  }
  t.bottom = 0;
  t.top = 0;
  for (int x = 1; x < n; ++x) {
    t.bottom = t.meet[t.bottom][x];
    t.top = t.join[t.top][x];
  }
  t.ok = true;
  return t;
}

std::vector<int> join_irreducibles(const FinRel& leq) {
  const LatticeTables t = lattice_tables(leq);
  if (!t.ok) {
    throw Error(Error::Kind::Validation, "join-irreducibles need a lattice order");
  }
  const int n = leq.size();
  std::vector<int> out;
  for (int j = 0; j < n; ++j) {
    if (j == t.bottom) continue;
    int below = t.bottom;
    for (int z = 0; z < n; ++z) {
      if (z != j && leq.at(z, j)) below = t.join[below][z];
    }
    if (below != j) out.push_back(j);
  }
  return out;
}

const char* axiom_group_name(AxiomGroup g) {
  switch (g) {
    case AxiomGroup::Lattice: return "lattice";
    case AxiomGroup::Distributivity: return "distributivity";
    case AxiomGroup::Monoid: return "monoid";
    case AxiomGroup::Residuation: return "residuation";
    case AxiomGroup::In: return "In";
    case AxiomGroup::Dm: return "Dm";
    case AxiomGroup::Di: return "Di";
    case AxiomGroup::Dp: return "Dp";
    case AxiomGroup::PrimeInvolution: return "prime-involution";
  }
  return "?";
}

bool AxiomReport::all_pass() const {
  for (const auto& e : groups) {
    if (!e.pass) return false;
  }
  return true;
}

namespace {

// Join-irreducible scans below are sound because every element of a finite
// lattice is the join of the join-irreducibles below it: a law that preserves
// joins in its scanned argument then extends from irreducibles to everything
// by induction, with the bottom case covered separately.
struct Checker {
  const AbstractDqRA& a;
  const LatticeTables& lt;
  const std::vector<int>& ji;

  AxiomReport::Entry distributivity() const {
    AxiomReport::Entry e;
    const int n = a.size;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        for (int j : ji) {
          if (lt.meet[x][lt.join[y][j]] != lt.join[lt.meet[x][y]][lt.meet[x][j]]) {
            return full_distributivity();
          }
        }
      }
    }
    e.pass = true;
    return e;
  }

  AxiomReport::Entry full_distributivity() const {
    AxiomReport::Entry e;
    const int n = a.size;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        for (int z = 0; z < n; ++z) {
          if (lt.meet[x][lt.join[y][z]] != lt.join[lt.meet[x][y]][lt.meet[x][z]]) {
            e.witness = {x, y, z};
            return e;
          }
        }
      }
    }
    e.pass = true;
    return e;
  }

  AxiomReport::Entry residuation() const {
    const int n = a.size;
    const int bot = lt.bottom;
    for (int x = 0; x < n; ++x) {
      if (a.mult[x][bot] != bot || a.mult[bot][x] != bot) return full_residuation();
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        for (int j : ji) {
          if (a.mult[x][lt.join[y][j]] != lt.join[a.mult[x][y]][a.mult[x][j]]) {
            return full_residuation();
          }
          if (a.mult[lt.join[y][j]][x] != lt.join[a.mult[y][x]][a.mult[j][x]]) {
            return full_residuation();
          }
        }
      }
    }
    AxiomReport::Entry e;
    e.pass = true;
    return e;
  }

  AxiomReport::Entry full_residuation() const {
    AxiomReport::Entry e;
    const int n = a.size;
    const int bot = lt.bottom;
    for (int x = 0; x < n; ++x) {
      if (a.mult[x][bot] != bot || a.mult[bot][x] != bot) {
        e.witness = {x};
        return e;
      }
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        for (int z = 0; z < n; ++z) {
          if (a.mult[x][lt.join[y][z]] != lt.join[a.mult[x][y]][a.mult[x][z]]) {
            e.witness = {x, y, z};
            return e;
          }
        }
      }
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        for (int z = 0; z < n; ++z) {
          if (a.mult[lt.join[y][z]][x] != lt.join[a.mult[y][x]][a.mult[z][x]]) {
            e.witness = {x, y, z};
            return e;
          }
        }
      }
    }
    e.pass = true;
    return e;
  }

  // Associativity with all three variables over join-irreducibles is enough
  // once fusion is known to preserve joins in each argument.
  AxiomReport::Entry monoid(bool join_preserving) const {
    const int n = a.size;
    for (int x = 0; x < n; ++x) {
      if (a.mult[a.one][x] != x || a.mult[x][a.one] != x) return full_monoid();
    }
    if (join_preserving) {
      for (int x : ji) {
        for (int y : ji) {
          for (int z : ji) {
            if (a.mult[a.mult[x][y]][z] != a.mult[x][a.mult[y][z]]) return full_monoid();
          }
        }
      }
      AxiomReport::Entry e;
      e.pass = true;
      return e;
    }
    return full_monoid();
  }

  AxiomReport::Entry full_monoid() const {
    AxiomReport::Entry e;
    const int n = a.size;
    for (int x = 0; x < n; ++x) {
      if (a.mult[a.one][x] != x || a.mult[x][a.one] != x) {
        e.witness = {x};
        return e;
      }
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        for (int z = 0; z < n; ++z) {
          if (a.mult[a.mult[x][y]][z] != a.mult[x][a.mult[y][z]]) {
            e.witness = {x, y, z};
            return e;
          }
        }
      }
    }
    e.pass = true;
    return e;
  }
};

}  // namespace

AxiomReport axiom_check(const AbstractDqRA& a) {
  validate_shape(a);
  AxiomReport rep;
  const int n = a.size;

  LatticeTables lt = lattice_tables(a.leq);
  auto& lattice_entry = rep[AxiomGroup::Lattice];
  lattice_entry.pass = lt.ok;
  if (!lt.ok) lattice_entry.witness = lt.witness;

  std::vector<int> ji;
  if (lt.ok) ji = join_irreducibles(a.leq);
  Checker ck{a, lt, ji};

  // Groups that need meets or joins inherit the lattice witness when the
  // order is not a lattice.
  auto inherit = [&](AxiomGroup g) {
    rep[g].pass = false;
    rep[g].witness = lt.witness;
  };

  if (lt.ok) {
    rep[AxiomGroup::Distributivity] = ck.distributivity();
    rep[AxiomGroup::Residuation] = ck.residuation();
    rep[AxiomGroup::Monoid] = ck.monoid(rep[AxiomGroup::Residuation].pass);
  } else {
    inherit(AxiomGroup::Distributivity);
    inherit(AxiomGroup::Residuation);
    rep[AxiomGroup::Monoid] = Checker{a, lt, ji}.full_monoid();
  }

  {
    auto& e = rep[AxiomGroup::In];
    e.pass = true;
    for (int x = 0; x < n; ++x) {
      if (a.tilde[a.minus[x]] != x || a.minus[a.tilde[x]] != x) {
        e.pass = false;
        e.witness = {x};
        break;
      }
    }
  }

  {
    auto& e = rep[AxiomGroup::Dm];
    if (lt.ok) {
      e.pass = true;
      for (int x = 0; x < n && e.pass; ++x) {
        for (int y = 0; y < n; ++y) {
          if (a.prime[lt.join[x][y]] != lt.meet[a.prime[x]][a.prime[y]]) {
            e.pass = false;
            e.witness = {x, y};
            break;
          }
        }
      }
    } else {
      e.pass = false;
      e.witness = lt.witness;
    }
  }

  {
    auto& e = rep[AxiomGroup::Di];
    e.pass = true;
    for (int x = 0; x < n; ++x) {
      if (a.prime[a.tilde[x]] != a.minus[a.prime[x]]) {
        e.pass = false;
        e.witness = {x};
        break;
      }
    }
  }

  {
    auto& e = rep[AxiomGroup::Dp];
    e.pass = true;
    auto plus = [&](int x, int y) { return a.tilde[a.mult[a.minus[y]][a.minus[x]]]; };
    for (int x = 0; x < n && e.pass; ++x) {
      for (int y = 0; y < n; ++y) {
        if (a.prime[a.mult[x][y]] != plus(a.prime[x], a.prime[y])) {
          e.pass = false;
          e.witness = {x, y};
          break;
        }
      }
    }
  }

  {
    auto& e = rep[AxiomGroup::PrimeInvolution];
    e.pass = true;
    for (int x = 0; x < n; ++x) {
      if (a.prime[a.prime[x]] != x) {
        e.pass = false;
        e.witness = {x};
        break;
      }
    }
  }

  return rep;
}

ResidualTables residual_tables(const AbstractDqRA& a) {
  validate_shape(a);
  const LatticeTables lt = lattice_tables(a.leq);
  if (!lt.ok) {
    throw Error(Error::Kind::Unresiduated, "order is not a lattice, so residuals are undefined");
  }
  const std::vector<int> ji = join_irreducibles(a.leq);
  Checker ck{a, lt, ji};
  if (!ck.residuation().pass) {
    throw Error(Error::Kind::Unresiduated, "fusion does not preserve joins, so residuals do not exist");
  }
  const int n = a.size;
  ResidualTables t;
  t.left.assign(n, std::vector<int>(n, lt.bottom));
  t.right.assign(n, std::vector<int>(n, lt.bottom));
  for (int x = 0; x < n; ++x) {
    for (int z = 0; z < n; ++z) {
      int acc = lt.bottom;
      for (int y = 0; y < n; ++y) {
        if (a.leq.at(a.mult[x][y], z)) acc = lt.join[acc][y];
      }
      t.left[x][z] = acc;
    }
  }
  for (int z = 0; z < n; ++z) {
    for (int y = 0; y < n; ++y) {
      int acc = lt.bottom;
      for (int x = 0; x < n; ++x) {
        if (a.leq.at(a.mult[x][y], z)) acc = lt.join[acc][x];
      }
      t.right[z][y] = acc;
    }
  }
  // Join preservation plus these two inequalities is the full adjunction.
  for (int x = 0; x < n; ++x) {
    for (int z = 0; z < n; ++z) {
      if (!a.leq.at(a.mult[x][t.left[x][z]], z) || !a.leq.at(a.mult[t.right[z][x]][x], z)) {
        throw Error(Error::Kind::Unresiduated, "residual candidates violate the adjunction");
      }
    }
  }
  return t;
}

namespace {

void require_involutive(const AbstractDqRA& a) {
  for (int x = 0; x < a.size; ++x) {
    if (a.tilde[a.minus[x]] != x || a.minus[a.tilde[x]] != x) {
      throw Error(Error::Kind::NotInvolutive,
                  "tilde and minus are not mutually inverse at index " + std::to_string(x));
    }
  }
}

}  // namespace

bool is_cyclic(const AbstractDqRA& a) {
  validate_shape(a);
  require_involutive(a);
  for (int x = 0; x < a.size; ++x) {
    if (a.tilde[x] != a.minus[x]) return false;
  }
  return true;
}

int periodicity_abstract(const AbstractDqRA& a) {
  validate_shape(a);
  require_involutive(a);
  std::vector<int> t2(a.size);
  for (int x = 0; x < a.size; ++x) t2[x] = a.tilde[a.tilde[x]];
  return map_order(Endomap(t2));
}

namespace {

// Reindexes the parent's tables onto `carrier` (sorted parent indices), with a
// Domain error naming the operation if the carrier is not closed.
AbstractDqRA restrict_to(const AbstractDqRA& a, const std::vector<int>& carrier,
                         const LatticeTables& lt, const std::string& name) {
  const int m = static_cast<int>(carrier.size());
  std::vector<int> pos(a.size, -1);
  for (int i = 0; i < m; ++i) pos[carrier[i]] = i;
  auto inside = [&](int parent_idx, const char* op) {
    if (pos[parent_idx] < 0) {
      throw Error(Error::Kind::Domain,
                  std::string("subset is not closed under ") + op + " (escapes at parent index " +
                      std::to_string(parent_idx) + ")");
    }
    return pos[parent_idx];
  };
  AbstractDqRA out;
  out.size = m;
  out.name = name;
  out.leq = FinRel(m);
  out.mult.assign(m, std::vector<int>(m, -1));
  out.tilde.resize(m);
  out.minus.resize(m);
  out.prime.resize(m);
  out.labels.resize(m);
  for (int i = 0; i < m; ++i) {
    const int p = carrier[i];
    out.labels[i] = a.labels.empty() ? "e" + std::to_string(p) : a.labels[p];
    out.tilde[i] = inside(a.tilde[p], "tilde");
    out.minus[i] = inside(a.minus[p], "minus");
    out.prime[i] = inside(a.prime[p], "prime");
    for (int j = 0; j < m; ++j) {
      const int q = carrier[j];
      out.leq.set(i, j, a.leq.at(p, q));
      out.mult[i][j] = inside(a.mult[p][q], "fuse");
      inside(lt.meet[p][q], "meet");
      inside(lt.join[p][q], "join");
    }
  }
  out.one = inside(a.one, "one");
  out.zero = inside(a.zero, "zero");
  return out;
}

}  // namespace

Subalgebra cyclic_subuniverse(const AbstractDqRA& a) {
  validate_shape(a);
  require_involutive(a);
  const LatticeTables lt = lattice_tables(a.leq);
  if (!lt.ok) {
    throw Error(Error::Kind::Domain, "cyclic subuniverse needs a lattice order");
  }
  Subalgebra s;
  for (int x = 0; x < a.size; ++x) {
    if (a.tilde[x] == a.minus[x]) s.carrier.push_back(x);
  }
  s.algebra = restrict_to(a, s.carrier, lt, a.name.empty() ? "cyclic-part" : a.name + "-cyclic-part");
  return s;
}

AbstractDqRA derive_algebra(const AbstractDqRA& a, DeriveKind kind, int n) {
  validate_shape(a);
  if (n < 0) throw Error(Error::Kind::Domain, "derivation index must be >= 0");
  AbstractDqRA out = a;
  const std::vector<int>& step = kind == DeriveKind::Nabla ? a.tilde : a.minus;
  for (int x = 0; x < a.size; ++x) {
    int v = a.prime[x];
    for (int k = 0; k < 2 * n; ++k) v = step[v];
    out.prime[x] = v;
  }
  const char* tag = kind == DeriveKind::Nabla ? "-nabla" : "-delta";
  out.name = (a.name.empty() ? "derived" : a.name) + tag + std::to_string(n);
  return out;
}

HomReport homomorphism_check(const AbstractDqRA& a, const AbstractDqRA& b, const std::vector<int>& h) {
  validate_shape(a);
  validate_shape(b);
  if (static_cast<int>(h.size()) != a.size) {
    throw Error(Error::Kind::Validation, "map size does not match the source carrier");
  }
  for (int v : h) {
    if (v < 0 || v >= b.size) throw Error(Error::Kind::Validation, "map value out of range");
  }
  const LatticeTables la = lattice_tables(a.leq);
  const LatticeTables lb = lattice_tables(b.leq);
  if (!la.ok || !lb.ok) {
    throw Error(Error::Kind::Validation, "homomorphisms are defined between lattice-ordered algebras");
  }
  HomReport r;
  if (h[a.one] != b.one) {
    r.op = "one";
    return r;
  }
  if (h[a.zero] != b.zero) {
    r.op = "zero";
    return r;
  }
  for (int x = 0; x < a.size; ++x) {
    if (h[a.tilde[x]] != b.tilde[h[x]]) {
      r.op = "tilde";
      r.witness = {x};
      return r;
    }
    if (h[a.minus[x]] != b.minus[h[x]]) {
      r.op = "minus";
      r.witness = {x};
      return r;
    }
    if (h[a.prime[x]] != b.prime[h[x]]) {
      r.op = "prime";
      r.witness = {x};
      return r;
    }
  }
  for (int x = 0; x < a.size; ++x) {
    for (int y = 0; y < a.size; ++y) {
      if (h[la.meet[x][y]] != lb.meet[h[x]][h[y]]) {
        r.op = "meet";
        r.witness = {x, y};
        return r;
      }
      if (h[la.join[x][y]] != lb.join[h[x]][h[y]]) {
        r.op = "join";
        r.witness = {x, y};
        return r;
      }
      if (h[a.mult[x][y]] != b.mult[h[x]][h[y]]) {
        r.op = "fuse";
        r.witness = {x, y};
        return r;
      }
    }
  }
  r.ok = true;
  return r;
}

Subalgebra generated_subalgebra(const AbstractDqRA& a, const std::vector<int>& seeds) {
  validate_shape(a);
  const LatticeTables lt = lattice_tables(a.leq);
  if (!lt.ok) {
    throw Error(Error::Kind::Validation, "generation needs a lattice order");
  }
  for (int s : seeds) {
    if (s < 0 || s >= a.size) throw Error(Error::Kind::Validation, "seed index out of range");
  }
  std::vector<char> in(a.size, 0);
  std::vector<int> work;
  auto add = [&](int x) {
    if (!in[x]) {
      in[x] = 1;
      work.push_back(x);
    }
  };
  add(a.one);
  add(a.zero);
  for (int s : seeds) add(s);
  for (std::size_t head = 0; head < work.size(); ++head) {
    const int x = work[head];
    add(a.tilde[x]);
    add(a.minus[x]);
    add(a.prime[x]);
    // Pairs against everything already reached, including x itself.
    for (std::size_t k = 0; k <= head; ++k) {
      const int y = work[k];
      add(a.mult[x][y]);
      add(a.mult[y][x]);
      add(lt.meet[x][y]);
      add(lt.join[x][y]);
    }
  }
  Subalgebra s;
  for (int x = 0; x < a.size; ++x) {
    if (in[x]) s.carrier.push_back(x);
  }
  s.algebra = restrict_to(a, s.carrier, lt, a.name.empty() ? "generated" : a.name + "-generated");
  return s;
}

std::vector<std::vector<int>> order_isomorphisms(const FinRel& leq_a, const FinRel& leq_b) {
  std::vector<std::vector<int>> out;
  const int n = leq_a.size();
  if (leq_b.size() != n) return out;
  std::vector<int> img(n, -1);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, int x) -> void {
    if (x == n) {
      out.push_back(img);
      return;
    }
    for (int y = 0; y < n; ++y) {
      if (used[y]) continue;
      bool ok = true;
      for (int x2 = 0; x2 < x && ok; ++x2) {
        ok = leq_a.at(x, x2) == leq_b.at(y, img[x2]) && leq_a.at(x2, x) == leq_b.at(img[x2], y);
      }
      if (!ok) continue;
      img[x] = y;
      used[y] = 1;
      self(self, x + 1);
      used[y] = 0;
      img[x] = -1;
    }
  };
  rec(rec, 0);
  return out;
}

namespace {

// Number of distinct elements reachable from x by iterating a unary table;
// preserved by any bijection that commutes with the table.
int orbit_size(const std::vector<int>& table, int x) {
  int seen = 0;
  int y = x;
  std::vector<char> hit(table.size(), 0);
  while (!hit[y]) {
    hit[y] = 1;
    ++seen;
    y = table[y];
  }
  return seen;
}

// Isomorphism-invariant per-element signature used to prune the backtracking:
// position in the order (down-set/up-set sizes), the constants, and the orbit
// shapes of the unary operations.
std::vector<std::array<int, 8>> fingerprints(const AbstractDqRA& a) {
  const int n = a.size;
  std::vector<std::array<int, 8>> f(n);
  for (int x = 0; x < n; ++x) {
    int down = 0, up = 0;
    for (int y = 0; y < n; ++y) {
      down += a.leq.at(y, x);
      up += a.leq.at(x, y);
    }
    f[x] = {down,
            up,
            x == a.one,
            x == a.zero,
            orbit_size(a.tilde, x),
            a.tilde[x] == a.minus[x],
            orbit_size(a.prime, x),
            a.mult[x][x] == x};
  }
  return f;
}

}  // namespace

IsoResult isomorphism_search(const AbstractDqRA& a, const AbstractDqRA& b) {
  validate_shape(a);
  validate_shape(b);
  IsoResult res;
  if (a.size != b.size) return res;
  const int n = a.size;
  const auto fa = fingerprints(a);
  const auto fb = fingerprints(b);
  {
    auto sa = fa;
    auto sb = fb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return res;
  }

  std::vector<int> img(n, -1);
  std::vector<char> used(n, 0);
  auto full_check = [&]() {
    for (int x = 0; x < n; ++x) {
      if (img[a.tilde[x]] != b.tilde[img[x]]) return false;
      if (img[a.minus[x]] != b.minus[img[x]]) return false;
      if (img[a.prime[x]] != b.prime[img[x]]) return false;
      for (int y = 0; y < n; ++y) {
        if (img[a.mult[x][y]] != b.mult[img[x]][img[y]]) return false;
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, int x) -> bool {
    if (x == n) {
      ++res.candidates_tried;
      return full_check();
    }
    for (int y = 0; y < n; ++y) {
      if (used[y] || fa[x] != fb[y]) continue;
      bool ok = true;
      for (int x2 = 0; x2 < x && ok; ++x2) {
        ok = a.leq.at(x, x2) == b.leq.at(y, img[x2]) && a.leq.at(x2, x) == b.leq.at(img[x2], y);
      }
      if (!ok) continue;
      img[x] = y;
      used[y] = 1;
      if (self(self, x + 1)) return true;
      used[y] = 0;
      img[x] = -1;
    }
    return false;
  };
  if (rec(rec, 0)) res.map = img;
  return res;
}

OddIsoResult odd_periodic_iso(const AbstractDqRA& a, int m) {
  validate_shape(a);
  require_involutive(a);
  if (m < 1 || m % 2 == 0) {
    throw Error(Error::Kind::Domain, "the derived-algebra index must be odd and positive");
  }
  const int n = periodicity_abstract(a);
  if (n % 2 == 0) {
    throw Error(Error::Kind::Domain, "the construction needs odd periodicity, but the period is " +
                                         std::to_string(n));
  }
  const AbstractDqRA target = derive_algebra(a, DeriveKind::Nabla, m);
  OddIsoResult r;
  r.map.resize(a.size);
  const std::vector<int>& step = m <= n ? a.minus : a.tilde;
  const int times = m <= n ? n - m : m - n;
  for (int x = 0; x < a.size; ++x) {
    int v = x;
    for (int k = 0; k < times; ++k) v = step[v];
    r.map[x] = v;
  }
  const HomReport h = homomorphism_check(a, target, r.map);
  if (!h.ok) {
    r.ok = false;
    r.violated_op = h.op;
    r.witness = h.witness;
    return r;
  }
  std::vector<char> seen(a.size, 0);
  for (int v : r.map) seen[v] = 1;
  for (int x = 0; x < a.size; ++x) {
    if (!seen[x]) {
      r.ok = false;
      r.violated_op = "bijectivity";
      r.witness = {x};
      return r;
    }
  }
  r.ok = true;
  return r;
}

NonFinRepVerdict nonfinrep_detector(const AbstractDqRA& a) {
  validate_shape(a);
  NonFinRepVerdict v;
  for (int x = 0; x < a.size; ++x) {
    const bool above_zero = a.leq.at(a.zero, x) && x != a.zero;
    const bool below_one = a.leq.at(x, a.one) && x != a.one;
    if (above_zero && below_one && a.leq.at(a.mult[x][x], a.zero)) {
      v.flagged = true;
      v.witness = x;
      return v;
    }
  }
  return v;
}

}  // namespace dqra
