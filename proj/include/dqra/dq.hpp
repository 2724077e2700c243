#ifndef DQRA_DQ_HPP_
#define DQRA_DQ_HPP_

#include <string>
#include <vector>

#include "dqra/abstract.hpp"
#include "dqra/relcore.hpp"
#include "dqra/twisted.hpp"

namespace dqra {

// Concrete algebra of up-sets of the twisted order on an equivalence E over a
// poset, with fusion = relation composition, identity = the order relation,
// and the involutions induced by a pair of maps (alpha, beta):
//   alpha: order automorphism with graph inside E,
//   beta:  self-inverse dual order automorphism with graph inside E,
//   beta = alpha . beta . alpha (pointwise).
// All complements below are relative to E.
class ConcreteDqRA {
 public:
  // Validates the hypotheses (BuildError with a named fault otherwise) and
  // materialises the carrier (CapacityError past `cap`).
  static ConcreteDqRA build(const Poset& base, const FinRel& E, const Endomap& alpha,
                            const Endomap& beta, std::size_t cap = kDefaultCarrierCap);
  // Same validation, but adopts an already enumerated carrier for this exact
  // (base, E); lets a sweep over map pairs enumerate the carrier once.
  static ConcreteDqRA build(const Poset& base, const FinRel& E, const Endomap& alpha,
                            const Endomap& beta, const UpSetLattice& carrier);

  const Poset& base() const { return base_; }
  const FinRel& E() const { return E_; }
  const Endomap& alpha() const { return alpha_; }
  const Endomap& beta() const { return beta_; }
  const TwistedOrder& order() const { return lattice_.order(); }
  const UpSetLattice& lattice() const { return lattice_; }
  int size() const { return lattice_.size(); }

  const FinRel& one() const { return one_; }    // the base order
  const FinRel& zero() const { return zero_; }  // alpha . (complement of order)^converse

  // Operations on carrier elements (all arguments/results must be up-sets of
  // the twisted order; NonCarrier via lattice indexing, Containment on shape).
  FinRel fuse(const FinRel& r, const FinRel& s) const;            // composition
  FinRel residual_left(const FinRel& r, const FinRel& s) const;   // r \ s
  FinRel residual_right(const FinRel& r, const FinRel& s) const;  // r / s
  FinRel tilde(const FinRel& r) const;
  FinRel minus(const FinRel& r) const;
  FinRel prime(const FinRel& r) const;
  FinRel plus(const FinRel& r, const FinRel& s) const;  // dual of fusion

  // n-fold involution powers via the closed even/odd forms (n >= 0; tilde_n
  // with n = 1 is tilde, n = 0 is identity).
  FinRel tilde_n(const FinRel& r, int n) const;
  FinRel minus_n(const FinRel& r, int n) const;

  // Order of alpha in the symmetric group = least p > 0 with tilde^(2p) = id.
  int periodicity() const;
  bool cyclic() const { return periodicity_ == 1; }

  // Table form over carrier indices; labels are the formatted pair sets.
  AbstractDqRA to_abstract(const std::string& name = "") const;

  FinRel complement(const FinRel& r) const;  // relative to E

 private:
  ConcreteDqRA() = default;
  void finish(const Poset& base, const FinRel& E, const Endomap& alpha, const Endomap& beta);
  void require_carrier(const FinRel& r, const char* op) const;

  Poset base_;
  FinRel E_;
  Endomap alpha_, beta_;
  UpSetLattice lattice_;
  FinRel one_, zero_;
  Endomap alpha_inv_;
  int periodicity_ = 1;
};

}  // namespace dqra

#endif  // DQRA_DQ_HPP_
