#include "dqra/twisted.hpp"

#include <algorithm>
#include <sstream>

namespace dqra {

TwistedOrder twisted_order(const Poset& base, const FinRel& E) {
  if (E.size() != base.size()) {
    throw Error(Error::Kind::Dimension, "twisted_order: E carrier size differs from poset");
  }
  if (auto w = equivalence_witness(E)) {
    std::ostringstream msg;
    msg << "E is not an equivalence (" << w->reason << " at (" << base.label(w->x) << ","
        << base.label(w->y) << "))";
    throw Error(Error::Kind::Validation, msg.str());
  }
  if (!subset(base.leq(), E)) {
    for (auto [x, y] : base.leq().pairs()) {
      if (!E.at(x, y)) {
        throw Error(Error::Kind::Validation,
                    "E does not contain the order: related pair (" + base.label(x) + "," +
                        base.label(y) + ") crosses E-classes");
      }
    }
  }

  TwistedOrder t;
  t.base_ = base;
  t.E_ = E;
  int n = base.size();
  t.point_index_.assign(static_cast<std::size_t>(n) * n, -1);
  for (auto [u, v] : E.pairs()) {
    t.point_index_[static_cast<std::size_t>(u) * n + v] = static_cast<int>(t.points_.size());
    t.points_.emplace_back(u, v);
  }
  int m = t.point_count();
  t.prec_ = FinRel(m);
  for (int p = 0; p < m; ++p) {
    auto [u, v] = t.points_[p];
    for (int q = 0; q < m; ++q) {
      auto [x, y] = t.points_[q];
      if (base.leq(x, u) && base.leq(v, y)) t.prec_.set(p, q);
    }
  }
  t.point_up_.reserve(m);
  for (int p = 0; p < m; ++p) {
    FinRel up(n);
    for (int q = 0; q < m; ++q) {
      if (t.prec_.at(p, q)) up.set(t.points_[q].first, t.points_[q].second);
    }
    t.point_up_.push_back(std::move(up));
  }
  return t;
}

FinRel TwistedOrder::up_closure(const FinRel& seed) const {
  if (!subset(seed, E_)) {
    throw Error(Error::Kind::Containment, "up_closure: seed is not inside E");
  }
  FinRel out(base_.size());
  for (auto [u, v] : seed.pairs()) {
    out = rel_union(out, point_up_[point_index(u, v)]);
  }
  return out;
}

bool TwistedOrder::is_upset(const FinRel& r) const {
  if (!subset(r, E_)) {
    throw Error(Error::Kind::Containment, "is_upset: relation is not inside E");
  }
  for (auto [u, v] : r.pairs()) {
    if (!subset(point_up_[point_index(u, v)], r)) return false;
  }
  return true;
}

UpSetLattice enumerate_upsets(const TwistedOrder& order, std::size_t cap) {
  UpSetLattice lat;
  lat.order_ = order;
  int m = order.point_count();
  int n = order.base().size();

  // Linear extension of the twisted order (Kahn, smallest point index first).
  std::vector<int> indeg(m, 0);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      if (p != q && order.prec(p, q)) ++indeg[q];
  std::vector<int> ext;
  std::vector<bool> done(m, false);
  for (int step = 0; step < m; ++step) {
    int pick = -1;
    for (int p = 0; p < m; ++p) {
      if (!done[p] && indeg[p] == 0) { pick = p; break; }
    }
    ext.push_back(pick);
    done[pick] = true;
    for (int q = 0; q < m; ++q)
      if (q != pick && !done[q] && order.prec(pick, q)) --indeg[q];
  }

  // Strict up-closure of each point over the base carrier, for the inclusion test.
  std::vector<FinRel> strict_up(m, FinRel(n));
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q < m; ++q) {
      if (p != q && order.prec(p, q)) {
        auto [x, y] = order.point(q);
        strict_up[p].set(x, y);
      }
    }
  }

  // Walk points from maximal to minimal; a point may be included only once
  // everything above it already is.  Every leaf of this tree is an up-set and
  // every up-set appears exactly once.
  FinRel cur(n);
  std::vector<FinRel> elems;
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == m) {
      if (elems.size() >= cap) {
        throw CapacityError("up-set enumeration exceeded cap of " + std::to_string(cap),
                            elems.size() + 1);
      }
      elems.push_back(cur);
      return;
    }
    int p = ext[m - 1 - depth];
    self(self, depth + 1);
    if (subset(strict_up[p], cur)) {
      auto [x, y] = order.point(p);
      cur.set(x, y, true);
      self(self, depth + 1);
      cur.set(x, y, false);
    }
  };
  rec(rec, 0);

  std::sort(elems.begin(), elems.end(), card_bits_less);
  lat.elems_ = std::move(elems);
  lat.index_.reserve(lat.elems_.size());
  for (int i = 0; i < lat.size(); ++i) lat.index_.emplace(lat.elems_[i], i);
  return lat;
}

std::optional<int> UpSetLattice::index_of(const FinRel& r) const {
  auto it = index_.find(r);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int UpSetLattice::index_checked(const FinRel& r, const char* op) const {
  auto it = index_.find(r);
  if (it == index_.end()) {
    throw Error(Error::Kind::NonCarrier, std::string(op) + ": result is not a carrier element");
  }
  return it->second;
}

int UpSetLattice::meet(int i, int j) const { return index_checked(rel_intersect(elems_[i], elems_[j]), "meet"); }
int UpSetLattice::join(int i, int j) const { return index_checked(rel_union(elems_[i], elems_[j]), "join"); }

const FinRel& UpSetLattice::inclusion_order() const {
  if (!inclusion_built_) {
    int k = size();
    inclusion_ = FinRel(k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (subset(elems_[i], elems_[j])) inclusion_.set(i, j);
    inclusion_built_ = true;
  }
  return inclusion_;
}

}  // namespace dqra
