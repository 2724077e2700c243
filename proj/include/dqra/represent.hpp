#ifndef DQRA_REPRESENT_HPP_
#define DQRA_REPRESENT_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dqra/abstract.hpp"
#include "dqra/dq.hpp"
#include "dqra/relcore.hpp"
#include "dqra/twisted.hpp"

namespace dqra {

// The raw material of the construction: a poset, an equivalence containing
// its order, and the pair of maps.  No validation here; ConcreteDqRA::build
// is the validator.
struct TwistedSystem {
  Poset base;
  FinRel E;
  Endomap alpha;
  Endomap beta;
};

// A claimed representation: a twisted system plus a partial map from source
// algebra elements (by label) to relations over the system's base.
struct RepresentationSpec {
  TwistedSystem system;
  std::vector<std::pair<std::string, FinRel>> assignment;
};

struct RepReport {
  bool ok = false;
  std::string reason;        // human-readable, uses labels; empty when ok
  std::vector<FinRel> image;  // per source element; meaningful when ok
};

// Checks that the assignment extends (by closing under the operations) to an
// injective homomorphism from `a` into the algebra built from the system.
// Construction hypothesis failures are reported, not thrown; malformed shapes
// still throw.
RepReport verify_representation(const AbstractDqRA& a, const RepresentationSpec& spec);

struct EmbedResult {
  std::optional<std::vector<FinRel>> image;  // per source element
  long nodes = 0;                            // candidate placements examined
  bool exhausted = false;                    // node budget ran out first
};

// First embedding of `a` into `c` in canonical order (variables: bottom and
// the join-irreducibles by index, candidates in carrier order), or none.
// max_nodes = 0 means unlimited.
EmbedResult search_embedding(const AbstractDqRA& a, const ConcreteDqRA& c, long max_nodes = 0);

struct SearchCounters {
  long posets = 0;           // base posets considered
  long partitions = 0;       // equivalences considered across posets
  long pairs = 0;            // (alpha, beta) pairs passing the hypotheses
  long builds = 0;           // algebras actually constructed
  long carrier_skips = 0;    // (poset, E) pairs skipped for carrier size
  long embeddings_tried = 0; // embedding searches actually run
  long embedding_nodes = 0;  // total backtracking nodes across those searches
};

struct SearchOptions {
  int max_base_size = 4;
  std::size_t carrier_cap = kDefaultCarrierCap;
  long node_budget = 0;  // total embedding nodes across the search; 0 = unlimited
};

struct SearchOutcome {
  std::optional<RepresentationSpec> spec;  // full image assignment when found
  SearchCounters counters;
  bool budget_exhausted = false;
};

// Deterministic sweep: posets in catalog order by size, equivalences finest
// first, map pairs in lexicographic order, then embedding search.  The first
// hit is the canonical representation.
SearchOutcome search_representation(const AbstractDqRA& a, const SearchOptions& opt = {});

// Equivalences over the poset that contain its order (each block a union of
// order-components), finest first, then by block pattern.
std::vector<FinRel> equivalence_candidates(const Poset& p);

// Side-by-side sum: tagged carriers ("label@i"), block-diagonal order and
// equivalence, maps acting within their own component.
TwistedSystem disjoint_union(const std::vector<TwistedSystem>& parts);

struct DecomposeOutcome {
  std::vector<TwistedSystem> blocks;  // one per equivalence class, base order restricted
  bool product_verified = false;      // carrier factors as the product of the blocks
  long pairs_checked = 0;
};

// Splits a built algebra along its equivalence classes and verifies that
// intersecting with each class is an isomorphism onto the product of the
// block algebras (skipped as trivially true with a single block).
DecomposeOutcome block_decompose(const ConcreteDqRA& c, std::size_t cap = kDefaultCarrierCap);

}  // namespace dqra

#endif  // DQRA_REPRESENT_HPP_
