#ifndef DQRA_JSON_IO_HPP_
#define DQRA_JSON_IO_HPP_

#include <string>

#include <json.hpp>

#include "dqra/abstract.hpp"
#include "dqra/relcore.hpp"
#include "dqra/represent.hpp"

namespace dqra {

// Schemas.  Elements may be referenced either by 0-based index or by name;
// emitted files use indices plus a name array.
//   poset:    {"elements": ["x","y"], "leq": [[0,1], ...]}
//             ("labels" is accepted for "elements"; reflexive pairs are
//             implied and the transitive closure is taken)
//   E:        "full" | {"blocks": [[0,1],[2], ...]}
//   system:   {"poset": ..., "E": ..., "alpha": [1,0], "beta": [0,1]}
//             (maps may also be given as objects {"x":"y", ...})
//   spec:     system plus {"assignment": {"elt": [[0,1], ...], ...}}
//   algebra:  {"name", "size", "labels", "leq": [[i,j],...] or "join" table,
//              "mult": [[...]], "tilde": [...], "minus": [...], "prime": [...],
//              "one": k, "zero": j}
//             (when both "leq" and "join" appear they are cross-checked)
// Parse problems throw Io (file level) or Validation (schema level) errors.

Poset poset_from_json(const nlohmann::json& j);
nlohmann::json poset_to_json(const Poset& p);

FinRel equivalence_from_json(const nlohmann::json& j, const Poset& base);
nlohmann::json equivalence_to_json(const FinRel& E, const Poset& base);

TwistedSystem system_from_json(const nlohmann::json& j);
nlohmann::json system_to_json(const TwistedSystem& s);

RepresentationSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const RepresentationSpec& s);

AbstractDqRA algebra_from_json(const nlohmann::json& j);
nlohmann::json algebra_to_json(const AbstractDqRA& a);

nlohmann::json load_json(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);

AbstractDqRA load_algebra(const std::string& path);
TwistedSystem load_system(const std::string& path);
RepresentationSpec load_spec(const std::string& path);

}  // namespace dqra

#endif  // DQRA_JSON_IO_HPP_
