#ifndef DQRA_TWISTED_HPP_
#define DQRA_TWISTED_HPP_

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dqra/relcore.hpp"

namespace dqra {

inline constexpr std::size_t kDefaultCarrierCap = 1000000;

// The pairs of an equivalence E over a poset, ordered by the twisted order:
//   (u,v) before (x,y)  iff  x <= u and v <= y.
// Points are the pairs of E in row-major order; prec is the twisted order on
// point indices.
class TwistedOrder {
 public:
  TwistedOrder() = default;

  const Poset& base() const { return base_; }
  const FinRel& E() const { return E_; }
  int point_count() const { return static_cast<int>(points_.size()); }
  std::pair<int, int> point(int k) const { return points_[k]; }
  int point_index(int u, int v) const { return point_index_[static_cast<std::size_t>(u) * base_.size() + v]; }
  const FinRel& prec() const { return prec_; }
  bool prec(int p, int q) const { return prec_.at(p, q); }

  // Smallest up-set containing the given pairs (seed must be inside E).
  FinRel up_closure(const FinRel& seed) const;
  // Is r (a subset of E) upward closed?  Containment error if r is not inside E.
  bool is_upset(const FinRel& r) const;

  friend TwistedOrder twisted_order(const Poset& base, const FinRel& E);

 private:
  Poset base_;
  FinRel E_;
  std::vector<std::pair<int, int>> points_;
  std::vector<int> point_index_;
  FinRel prec_;
  // Up-closure of each single point, as a relation over the base carrier.
  std::vector<FinRel> point_up_;
};

// Validates that E is an equivalence containing the order, then builds the
// twisted order.  Validation errors name the offending pair.
TwistedOrder twisted_order(const Poset& base, const FinRel& E);

// All up-sets of a twisted order, as relations over the base carrier, sorted
// by cardinality then row-major bit pattern.  Lattice operations are set
// union/intersection.  Throws CapacityError past `cap` elements.
class UpSetLattice {
 public:
  UpSetLattice() = default;

  const TwistedOrder& order() const { return order_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const FinRel& at(int i) const { return elems_[i]; }
  const std::vector<FinRel>& elements() const { return elems_; }
  std::optional<int> index_of(const FinRel& r) const;

  bool includes(int i, int j) const { return subset(elems_[i], elems_[j]); }
  int meet(int i, int j) const;
  int join(int i, int j) const;
  int bottom_index() const { return 0; }
  int top_index() const { return size() - 1; }

  // Inclusion order as an explicit relation over element indices; built on
  // first use (quadratic, so only sensible for lattices that fit in memory).
  const FinRel& inclusion_order() const;

  friend UpSetLattice enumerate_upsets(const TwistedOrder& order, std::size_t cap);

 private:
  int index_checked(const FinRel& r, const char* op) const;

  TwistedOrder order_;
  std::vector<FinRel> elems_;
  std::unordered_map<FinRel, int, FinRelHash> index_;
  mutable FinRel inclusion_;
  mutable bool inclusion_built_ = false;
};

UpSetLattice enumerate_upsets(const TwistedOrder& order, std::size_t cap = kDefaultCarrierCap);

}  // namespace dqra

#endif  // DQRA_TWISTED_HPP_
