#ifndef DQRA_DOT_HPP_
#define DQRA_DOT_HPP_

#include <string>
#include <vector>

#include "dqra/relcore.hpp"

namespace dqra {

// Hasse diagram of a partial order as Graphviz input: covering edges only,
// drawn bottom-up.  Labels default to x<i> when the list is empty.
std::string hasse_dot(const FinRel& leq, const std::vector<std::string>& labels = {});

inline std::string hasse_dot(const Poset& p) { return hasse_dot(p.leq(), p.labels()); }

}  // namespace dqra

#endif  // DQRA_DOT_HPP_
