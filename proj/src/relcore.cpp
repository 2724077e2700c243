#include "dqra/relcore.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace dqra {

namespace {

constexpr int kMaxCarrier = 4096;

void check_same_size(const FinRel& a, const FinRel& b, const char* op) {
  if (a.size() != b.size()) {
    std::ostringstream msg;
    msg << op << ": carrier sizes differ (" << a.size() << " vs " << b.size() << ")";
    throw Error(Error::Kind::Dimension, msg.str());
  }
}

uint64_t tail_mask(int n) {
  int rem = n & 63;
  return rem == 0 ? ~0ull : (~0ull >> (64 - rem));
}

}  // namespace

const char* build_fault_name(BuildFault f) {
  switch (f) {
    case BuildFault::NotOrderAutomorphism: return "not-order-automorphism";
    case BuildFault::BetaNotSelfInverse: return "beta-not-self-inverse";
    case BuildFault::BetaNotDualAutomorphism: return "beta-not-dual-automorphism";
    case BuildFault::GammaNotInsideE: return "gamma-not-inside-E";
    case BuildFault::AbaConditionFailed: return "aba-condition-failed";
    case BuildFault::CarrierCapExceeded: return "carrier-cap-exceeded";
  }
  return "unknown-build-fault";
}

BuildError::BuildError(BuildFault fault, const std::string& detail)
    : Error(Kind::Build, std::string(build_fault_name(fault)) + ": " + detail), fault_(fault) {}

FinRel::FinRel(int n) : n_(n), wpr_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * wpr_, 0) {
  if (n < 0 || n > kMaxCarrier) {
    throw Error(Error::Kind::Validation,
                "relation carrier size out of range: " + std::to_string(n));
  }
}

FinRel FinRel::identity(int n) {
  FinRel r(n);
  for (int i = 0; i < n; ++i) r.set(i, i);
  return r;
}

FinRel FinRel::full(int n) {
  FinRel r(n);
  if (n == 0) return r;
  uint64_t tm = tail_mask(n);
  for (int x = 0; x < n; ++x) {
    uint64_t* row = r.row(x);
    for (int w = 0; w < r.wpr_; ++w) row[w] = (w == r.wpr_ - 1) ? tm : ~0ull;
  }
  return r;
}

FinRel FinRel::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  FinRel r(n);
  for (auto [x, y] : pairs) {
    if (x < 0 || x >= n || y < 0 || y >= n) {
      throw Error(Error::Kind::Validation,
                  "pair (" + std::to_string(x) + "," + std::to_string(y) + ") outside carrier of size " + std::to_string(n));
    }
    r.set(x, y);
  }
  return r;
}

void FinRel::set(int x, int y, bool value) {
  uint64_t& word = bits_[static_cast<std::size_t>(x) * wpr_ + (y >> 6)];
  uint64_t bit = 1ull << (y & 63);
  if (value) word |= bit; else word &= ~bit;
}

int FinRel::count() const {
  int total = 0;
  for (uint64_t w : bits_) total += std::popcount(w);
  return total;
}

bool FinRel::empty() const {
  for (uint64_t w : bits_) if (w) return false;
  return true;
}

std::vector<std::pair<int, int>> FinRel::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < n_; ++x) {
    const uint64_t* r = row(x);
    for (int w = 0; w < wpr_; ++w) {
      uint64_t bits = r[w];
      while (bits) {
        int y = (w << 6) + std::countr_zero(bits);
        out.emplace_back(x, y);
        bits &= bits - 1;
      }
    }
  }
  return out;
}

std::size_t FinRelHash::operator()(const FinRel& r) const noexcept {
  // FNV-1a over the words plus the carrier size.
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<uint64_t>(r.size()));
  for (int x = 0; x < r.size(); ++x) {
    const uint64_t* row = r.row(x);
    for (int w = 0; w < r.words_per_row(); ++w) mix(row[w]);
  }
  return h;
}

bool card_bits_less(const FinRel& a, const FinRel& b) {
  int ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  for (int x = 0; x < a.size(); ++x) {
    const uint64_t* ra = a.row(x);
    const uint64_t* rb = b.row(x);
    for (int w = 0; w < a.words_per_row(); ++w) {
      if (ra[w] != rb[w]) return ra[w] < rb[w];
    }
  }
  return false;
}

bool subset(const FinRel& a, const FinRel& b) {
  check_same_size(a, b, "subset");
  for (int x = 0; x < a.size(); ++x) {
    const uint64_t* ra = a.row(x);
    const uint64_t* rb = b.row(x);
    for (int w = 0; w < a.words_per_row(); ++w) {
      if (ra[w] & ~rb[w]) return false;
    }
  }
  return true;
}

FinRel rel_union(const FinRel& a, const FinRel& b) {
  check_same_size(a, b, "union");
  FinRel out = a;
  for (int x = 0; x < a.size(); ++x) {
    uint64_t* ro = out.row(x);
    const uint64_t* rb = b.row(x);
    for (int w = 0; w < a.words_per_row(); ++w) ro[w] |= rb[w];
  }
  return out;
}

FinRel rel_intersect(const FinRel& a, const FinRel& b) {
  check_same_size(a, b, "intersect");
  FinRel out = a;
  for (int x = 0; x < a.size(); ++x) {
    uint64_t* ro = out.row(x);
    const uint64_t* rb = b.row(x);
    for (int w = 0; w < a.words_per_row(); ++w) ro[w] &= rb[w];
  }
  return out;
}

FinRel compose(const FinRel& a, const FinRel& b) {
  check_same_size(a, b, "compose");
  int n = a.size();
  FinRel out(n);
  for (int x = 0; x < n; ++x) {
    const uint64_t* ra = a.row(x);
    uint64_t* ro = out.row(x);
    for (int w = 0; w < a.words_per_row(); ++w) {
      uint64_t bits = ra[w];
      while (bits) {
        int z = (w << 6) + std::countr_zero(bits);
        const uint64_t* rb = b.row(z);
        for (int v = 0; v < a.words_per_row(); ++v) ro[v] |= rb[v];
        bits &= bits - 1;
      }
    }
  }
  return out;
}

FinRel converse(const FinRel& a) {
  int n = a.size();
  FinRel out(n);
  for (auto [x, y] : a.pairs()) out.set(y, x);
  return out;
}

FinRel complement_in(const FinRel& r, const FinRel& ambient) {
  check_same_size(r, ambient, "complement_in");
  if (!subset(r, ambient)) {
    throw Error(Error::Kind::Containment, "complement_in: relation is not inside the ambient relation");
  }
  FinRel out = ambient;
  for (int x = 0; x < r.size(); ++x) {
    uint64_t* ro = out.row(x);
    const uint64_t* rr = r.row(x);
    for (int w = 0; w < r.words_per_row(); ++w) ro[w] &= ~rr[w];
  }
  return out;
}

FinRel rel_power(const FinRel& r, int k) {
  if (k < 0) throw Error(Error::Kind::Domain, "rel_power: negative exponent");
  FinRel acc = FinRel::identity(r.size());
  for (int i = 0; i < k; ++i) acc = compose(acc, r);
  return acc;
}

std::optional<RelWitness> partial_order_witness(const FinRel& r) {
  int n = r.size();
  for (int x = 0; x < n; ++x) {
    if (!r.at(x, x)) return RelWitness{"not-reflexive", x, x};
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x != y && r.at(x, y) && r.at(y, x)) return RelWitness{"not-antisymmetric", x, y};
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (!r.at(x, y)) continue;
      for (int z = 0; z < n; ++z) {
        if (r.at(y, z) && !r.at(x, z)) return RelWitness{"not-transitive", x, z};
      }
    }
  }
  return std::nullopt;
}

std::optional<RelWitness> equivalence_witness(const FinRel& r) {
  int n = r.size();
  for (int x = 0; x < n; ++x) {
    if (!r.at(x, x)) return RelWitness{"not-reflexive", x, x};
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (r.at(x, y) && !r.at(y, x)) return RelWitness{"not-symmetric", x, y};
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (!r.at(x, y)) continue;
      for (int z = 0; z < n; ++z) {
        if (r.at(y, z) && !r.at(x, z)) return RelWitness{"not-transitive", x, z};
      }
    }
  }
  return std::nullopt;
}

bool is_partial_order(const FinRel& r) { return !partial_order_witness(r).has_value(); }
bool is_equivalence(const FinRel& r) { return !equivalence_witness(r).has_value(); }

Endomap::Endomap(std::vector<int> image) : img_(std::move(image)) {
  int n = static_cast<int>(img_.size());
  for (int v : img_) {
    if (v < 0 || v >= n) {
      throw Error(Error::Kind::Validation, "endomap image value " + std::to_string(v) +
                                               " outside carrier of size " + std::to_string(n));
    }
  }
}

Endomap Endomap::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  return Endomap(std::move(img));
}

bool Endomap::is_bijection() const {
  std::vector<bool> seen(img_.size(), false);
  for (int v : img_) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Endomap Endomap::inverse() const {
  if (!is_bijection()) throw Error(Error::Kind::Domain, "inverse of a non-bijective endomap");
  std::vector<int> inv(img_.size());
  for (int i = 0; i < size(); ++i) inv[img_[i]] = i;
  return Endomap(std::move(inv));
}

FinRel Endomap::graph() const {
  FinRel g(size());
  for (int i = 0; i < size(); ++i) g.set(i, img_[i]);
  return g;
}

Endomap map_compose(const Endomap& f, const Endomap& g) {
  if (f.size() != g.size()) throw Error(Error::Kind::Dimension, "map_compose: carrier sizes differ");
  std::vector<int> img(f.size());
  for (int i = 0; i < f.size(); ++i) img[i] = g(f(i));
  return Endomap(std::move(img));
}

Endomap map_power(const Endomap& g, int k) {
  if (k < 0) throw Error(Error::Kind::Domain, "map_power: negative exponent");
  Endomap acc = Endomap::identity(g.size());
  for (int i = 0; i < k; ++i) acc = map_compose(acc, g);
  return acc;
}

int map_order(const Endomap& g) {
  if (!g.is_bijection()) throw Error(Error::Kind::Domain, "map_order of a non-bijective endomap");
  Endomap id = Endomap::identity(g.size());
  Endomap acc = g;
  int k = 1;
  while (!(acc == id)) {
    acc = map_compose(acc, g);
    ++k;
  }
  return k;
}

FinRel graph_compose(const Endomap& g, const FinRel& r) {
  if (g.size() != r.size()) throw Error(Error::Kind::Dimension, "graph_compose: carrier sizes differ");
  int n = r.size();
  FinRel out(n);
  for (int x = 0; x < n; ++x) {
    const uint64_t* src = r.row(g(x));
    uint64_t* dst = out.row(x);
    for (int w = 0; w < r.words_per_row(); ++w) dst[w] = src[w];
  }
  return out;
}

FinRel graph_compose(const FinRel& r, const Endomap& g) {
  if (g.size() != r.size()) throw Error(Error::Kind::Dimension, "graph_compose: carrier sizes differ");
  FinRel out(r.size());
  for (auto [x, z] : r.pairs()) out.set(x, g(z));
  return out;
}

Poset::Poset(FinRel leq, std::vector<std::string> labels) : leq_(std::move(leq)), labels_(std::move(labels)) {
  if (auto w = partial_order_witness(leq_)) {
    std::ostringstream msg;
    msg << "not a partial order (" << w->reason << " at (" << w->x << "," << w->y << "))";
    throw Error(Error::Kind::Validation, msg.str());
  }
  if (labels_.empty()) {
    for (int i = 0; i < leq_.size(); ++i) labels_.push_back("x" + std::to_string(i));
  }
  if (static_cast<int>(labels_.size()) != leq_.size()) {
    throw Error(Error::Kind::Validation, "label count does not match carrier size");
  }
}

Poset Poset::chain(int n, std::vector<std::string> labels) {
  FinRel leq(n);
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) leq.set(x, y);
  return Poset(leq, std::move(labels));
}

Poset Poset::antichain(int n, std::vector<std::string> labels) {
  return Poset(FinRel::identity(n), std::move(labels));
}

namespace {

// Backtracking enumeration of bijections compatible with a pair constraint.
// keep(x, y, gx, gy) must hold for every assigned pair; constraints are checked
// against all previously assigned points, which for order conditions is enough
// because they are binary.
template <typename Keep, typename Accept>
void enumerate_bijections(int n, Keep keep, Accept accept) {
  std::vector<int> img(n, -1);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, int x) -> void {
    if (x == n) {
      accept(img);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      bool ok = true;
      for (int y = 0; y < x && ok; ++y) ok = keep(x, y, v, img[y]);
      if (!ok) continue;
      img[x] = v;
      used[v] = true;
      self(self, x + 1);
      img[x] = -1;
      used[v] = false;
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<Endomap> order_automorphisms(const Poset& p) {
  std::vector<Endomap> out;
  const FinRel& leq = p.leq();
  enumerate_bijections(
      p.size(),
      [&](int x, int y, int gx, int gy) {
        return leq.at(x, y) == leq.at(gx, gy) && leq.at(y, x) == leq.at(gy, gx);
      },
      [&](const std::vector<int>& img) { out.emplace_back(img); });
  return out;
}

std::vector<Endomap> dual_order_automorphisms(const Poset& p, bool self_inverse_only) {
  std::vector<Endomap> out;
  const FinRel& leq = p.leq();
  enumerate_bijections(
      p.size(),
      [&](int x, int y, int gx, int gy) {
        return leq.at(x, y) == leq.at(gy, gx) && leq.at(y, x) == leq.at(gx, gy);
      },
      [&](const std::vector<int>& img) {
        if (self_inverse_only) {
          for (int i = 0; i < static_cast<int>(img.size()); ++i) {
            if (img[img[i]] != i) return;
          }
        }
        out.emplace_back(img);
      });
  return out;
}

std::string format_relation(const FinRel& r, const std::vector<std::string>& labels) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (auto [x, y] : r.pairs()) {
    if (!first) out << ",";
    first = false;
    out << "(" << labels[x] << "," << labels[y] << ")";
  }
  out << "}";
  return out.str();
}

}  // namespace dqra
