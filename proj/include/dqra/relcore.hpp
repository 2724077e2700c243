#ifndef DQRA_RELCORE_HPP_
#define DQRA_RELCORE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dqra/error.hpp"

namespace dqra {

// Binary relation on {0..n-1} as a dense bit matrix, one row of ceil(n/64)
// words per element.  Value semantics; equality is bitwise.  Carriers here are
// small (posets of a dozen points, lattices of a few hundred elements), so
// everything is word-parallel and nothing is clever.
class FinRel {
 public:
  FinRel() = default;
  explicit FinRel(int n);

  static FinRel identity(int n);
  static FinRel full(int n);
  static FinRel from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);

  int size() const { return n_; }
  int words_per_row() const { return wpr_; }

  bool at(int x, int y) const {
    return (bits_[static_cast<std::size_t>(x) * wpr_ + (y >> 6)] >> (y & 63)) & 1u;
  }
  void set(int x, int y, bool value = true);

  int count() const;  // number of related pairs
  bool empty() const;
  std::vector<std::pair<int, int>> pairs() const;  // row-major order

  const uint64_t* row(int x) const { return bits_.data() + static_cast<std::size_t>(x) * wpr_; }
  uint64_t* row(int x) { return bits_.data() + static_cast<std::size_t>(x) * wpr_; }

  bool operator==(const FinRel& other) const = default;

 private:
  int n_ = 0;
  int wpr_ = 0;
  std::vector<uint64_t> bits_;
};

struct FinRelHash {
  std::size_t operator()(const FinRel& r) const noexcept;
};

// Deterministic total order used wherever carrier elements must be listed
// reproducibly: fewer pairs first, then row-major bit pattern.
bool card_bits_less(const FinRel& a, const FinRel& b);

bool subset(const FinRel& a, const FinRel& b);
// contains(R, S): S is a subrelation of R.
inline bool contains(const FinRel& r, const FinRel& s) { return subset(s, r); }

FinRel rel_union(const FinRel& a, const FinRel& b);
FinRel rel_intersect(const FinRel& a, const FinRel& b);
inline FinRel operator|(const FinRel& a, const FinRel& b) { return rel_union(a, b); }
inline FinRel operator&(const FinRel& a, const FinRel& b) { return rel_intersect(a, b); }

FinRel compose(const FinRel& a, const FinRel& b);
FinRel converse(const FinRel& a);
// Complement relative to an ambient relation; requires r to be inside ambient.
FinRel complement_in(const FinRel& r, const FinRel& ambient);
FinRel rel_power(const FinRel& r, int k);

bool is_partial_order(const FinRel& r);
bool is_equivalence(const FinRel& r);

// First witness that r fails to be a partial order / equivalence, with a short
// reason ("not-reflexive", "not-antisymmetric", "not-transitive", "not-symmetric").
struct RelWitness {
  std::string reason;
  int x = -1;
  int y = -1;
};
std::optional<RelWitness> partial_order_witness(const FinRel& r);
std::optional<RelWitness> equivalence_witness(const FinRel& r);

// Total function {0..n-1} -> {0..n-1}.
class Endomap {
 public:
  Endomap() = default;
  explicit Endomap(std::vector<int> image);
  static Endomap identity(int n);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<int>& image() const { return img_; }

  bool is_bijection() const;
  Endomap inverse() const;  // Domain error unless bijective
  FinRel graph() const;

  bool operator==(const Endomap& other) const = default;

 private:
  std::vector<int> img_;
};

// Relation-style composition of function graphs: result(x) = g(f(x)).
Endomap map_compose(const Endomap& f, const Endomap& g);
Endomap map_power(const Endomap& g, int k);  // k >= 0
int map_order(const Endomap& g);             // least k >= 1 with g^k = id; Domain error if not bijective

// Left: (x,y) in result iff (g(x),y) in r   (the relation g∘r for a function graph g).
FinRel graph_compose(const Endomap& g, const FinRel& r);
// Right: r∘g, i.e. (x, g(z)) for every (x,z) in r.
FinRel graph_compose(const FinRel& r, const Endomap& g);

// Finite poset: carrier {0..n-1} with labels and a validated order relation.
// Element order is fixed at construction and never reshuffled.
class Poset {
 public:
  Poset() = default;
  Poset(FinRel leq, std::vector<std::string> labels = {});

  int size() const { return leq_.size(); }
  const FinRel& leq() const { return leq_; }
  bool leq(int x, int y) const { return leq_.at(x, y); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[i]; }

  static Poset chain(int n, std::vector<std::string> labels = {});
  static Poset antichain(int n, std::vector<std::string> labels = {});

  bool operator==(const Poset& other) const = default;

 private:
  FinRel leq_;
  std::vector<std::string> labels_;
};

// All order automorphisms (x <= y iff g(x) <= g(y)), sorted by image array.
std::vector<Endomap> order_automorphisms(const Poset& p);
// All dual order automorphisms (x <= y iff g(y) <= g(x)); optionally only the
// self-inverse ones.  Sorted by image array.
std::vector<Endomap> dual_order_automorphisms(const Poset& p, bool self_inverse_only = false);

// "{(x,y),(y,y)}" using the poset's labels; pairs in row-major order.
std::string format_relation(const FinRel& r, const std::vector<std::string>& labels);

}  // namespace dqra

#endif  // DQRA_RELCORE_HPP_
