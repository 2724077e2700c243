#ifndef DQRA_ABSTRACT_HPP_
#define DQRA_ABSTRACT_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dqra/relcore.hpp"

namespace dqra {

// Finite algebra in the signature (meet, join, fuse, 1, 0, tilde, minus,
// prime) presented by tables over {0..size-1}.  The lattice order is `leq`;
// meets and joins are derived from it.  Bottom and top are not constants of
// the signature even though a finite lattice always has them.
struct AbstractDqRA {
  int size = 0;
  FinRel leq;                          // over element indices
  std::vector<std::vector<int>> mult;  // fusion table
  std::vector<int> tilde;
  std::vector<int> minus;
  std::vector<int> prime;
  int one = -1;
  int zero = -1;
  std::string name;
  std::vector<std::string> labels;  // display names; defaulted to e0,e1,... if empty

  const std::string& label(int i) const { return labels[i]; }
  std::optional<int> index_of_label(const std::string& s) const;
};

// Throws a Validation error unless sizes, ranges, and the order relation are
// well formed (this is shape checking; the axioms live in axiom_check).
void validate_shape(const AbstractDqRA& a);

// Fills labels with e0, e1, ... when empty.
void ensure_labels(AbstractDqRA& a);

// Meet/join tables for a lattice order, or a witness pair with no meet/join.
struct LatticeTables {
  bool ok = false;
  std::vector<int> witness;  // offending pair when !ok
  std::vector<std::vector<int>> meet, join;
  int bottom = -1, top = -1;
};
LatticeTables lattice_tables(const FinRel& leq);

// Indices of the join-irreducible elements (not bottom, not the join of the
// elements strictly below).  Validation error if leq is not a lattice order.
std::vector<int> join_irreducibles(const FinRel& leq);

enum class AxiomGroup {
  Lattice,
  Distributivity,
  Monoid,
  Residuation,
  In,
  Dm,
  Di,
  Dp,
  PrimeInvolution,
};
inline constexpr int kAxiomGroupCount = 9;
const char* axiom_group_name(AxiomGroup g);

struct AxiomReport {
  struct Entry {
    bool pass = false;
    std::vector<int> witness;  // first counterexample in row-major tuple order
  };
  std::array<Entry, kAxiomGroupCount> groups;

  Entry& operator[](AxiomGroup g) { return groups[static_cast<int>(g)]; }
  const Entry& operator[](AxiomGroup g) const { return groups[static_cast<int>(g)]; }
  bool all_pass() const;
};

// Checks every defining axiom group and reports the first counterexample per
// failing group.  Groups needing meets/joins inherit a lattice failure.
AxiomReport axiom_check(const AbstractDqRA& a);

// x\z = join{y : x*y <= z} and z/y = join{x : x*y <= z}; verified against the
// adjunction, with an Unresiduated error if fusion is not residuated.
struct ResidualTables {
  std::vector<std::vector<int>> left;   // left[x][z] = x\z
  std::vector<std::vector<int>> right;  // right[z][y] = z/y
};
ResidualTables residual_tables(const AbstractDqRA& a);

// tilde and minus must be mutually inverse for these; NotInvolutive otherwise.
bool is_cyclic(const AbstractDqRA& a);
int periodicity_abstract(const AbstractDqRA& a);

// Subalgebra of elements with tilde a == minus a, together with the carrier
// indices it keeps from the parent.
struct Subalgebra {
  AbstractDqRA algebra;
  std::vector<int> carrier;
};
Subalgebra cyclic_subuniverse(const AbstractDqRA& a);

enum class DeriveKind { Nabla, Delta };
// Same carrier and tables except prime becomes tilde^(2n) prime (Nabla) or
// minus^(2n) prime (Delta).
AbstractDqRA derive_algebra(const AbstractDqRA& a, DeriveKind kind, int n);

struct HomReport {
  bool ok = false;
  std::string op;            // violated operation when !ok
  std::vector<int> witness;  // argument tuple
};
HomReport homomorphism_check(const AbstractDqRA& a, const AbstractDqRA& b, const std::vector<int>& h);

Subalgebra generated_subalgebra(const AbstractDqRA& a, const std::vector<int>& seeds);

struct IsoResult {
  std::optional<std::vector<int>> map;
  long candidates_tried = 0;  // order-compatible bijections examined
};
// First algebra isomorphism in canonical backtracking order, or none.
IsoResult isomorphism_search(const AbstractDqRA& a, const AbstractDqRA& b);

// For n-periodic algebras with n odd and m odd, the candidate map onto the
// Nabla-m derived algebra (minus^(n-m) when m <= n, tilde^(m-n) otherwise),
// checked to be an isomorphism.
struct OddIsoResult {
  std::vector<int> map;
  bool ok = false;
  std::string violated_op;
  std::vector<int> witness;
};
OddIsoResult odd_periodic_iso(const AbstractDqRA& a, int m);

// Flags an element a with 0 < a < 1 and a*a <= 0; such an algebra has no
// finite representation.  A clear verdict proves nothing.
struct NonFinRepVerdict {
  bool flagged = false;
  int witness = -1;
};
NonFinRepVerdict nonfinrep_detector(const AbstractDqRA& a);

// All order isomorphisms from leq_a to leq_b in lexicographic image order.
// Used for isomorphism search and for dual-automorphism enumeration.
std::vector<std::vector<int>> order_isomorphisms(const FinRel& leq_a, const FinRel& leq_b);

}  // namespace dqra

#endif  // DQRA_ABSTRACT_HPP_
