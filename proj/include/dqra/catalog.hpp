#ifndef DQRA_CATALOG_HPP_
#define DQRA_CATALOG_HPP_

#include <string>
#include <vector>

#include "dqra/relcore.hpp"

namespace dqra {

// All posets on n points up to isomorphism (n <= 6; Domain error beyond),
// each in its canonical labelling, ordered by number of related pairs then
// by row-major bit pattern.  Expensive for n = 6, so results can be cached.
std::vector<Poset> poset_catalog(int n);

// poset_catalog backed by a JSON cache file ("<dir>/posets-<n>.json");
// generates and writes it when absent.
std::vector<Poset> poset_catalog_cached(int n, const std::string& cache_dir);

}  // namespace dqra

#endif  // DQRA_CATALOG_HPP_
