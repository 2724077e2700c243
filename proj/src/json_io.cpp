#include "dqra/json_io.hpp"

#include <fstream>
#include <utility>
#include <vector>

#include "dqra/error.hpp"

namespace dqra {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw Error(Error::Kind::Validation, msg); }

int label_index(const std::vector<std::string>& labels, const std::string& s, const char* where) {
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    if (labels[i] == s) return i;
  }
  bad(std::string(where) + " refers to unknown label \"" + s + "\"");
}

// One element reference: a 0-based index or a label.
int element_ref(const json& v, const std::vector<std::string>& labels, const char* where) {
  if (v.is_number_integer()) {
    const long long k = v.get<long long>();
    if (k < 0 || k >= static_cast<long long>(labels.size())) {
      bad(std::string(where) + " index " + std::to_string(k) + " is out of range");
    }
    return static_cast<int>(k);
  }
  if (v.is_string()) return label_index(labels, v.get<std::string>(), where);
  bad(std::string(where) + " entries must be element indices or labels");
}

FinRel transitive_closure(FinRel r) {
  const int n = r.size();
  for (int k = 0; k < n; ++k) {
    for (int x = 0; x < n; ++x) {
      if (!r.at(x, k)) continue;
      for (int w = 0; w < r.words_per_row(); ++w) r.row(x)[w] |= r.row(k)[w];
    }
  }
  return r;
}

std::vector<std::string> names_from_json(const json& j, const char* where, int implied_size) {
  json arr = json::array();
  if (j.contains("labels")) {
    arr = j["labels"];
  } else if (j.contains("elements")) {
    arr = j["elements"];
  }
  if (arr.empty()) {
    if (implied_size <= 0) {
      bad(std::string(where) + " needs an \"elements\" (or \"labels\") array");
    }
    std::vector<std::string> labels;
    for (int i = 0; i < implied_size; ++i) labels.push_back("e" + std::to_string(i));
    return labels;
  }
  if (!arr.is_array()) bad(std::string(where) + ": element names must form an array");
  std::vector<std::string> labels;
  for (const auto& v : arr) {
    if (!v.is_string()) bad(std::string(where) + ": element names must be strings");
    labels.push_back(v.get<std::string>());
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t k = i + 1; k < labels.size(); ++k) {
      if (labels[i] == labels[k]) bad(std::string(where) + ": duplicate name \"" + labels[i] + "\"");
    }
  }
  if (implied_size > 0 && static_cast<int>(labels.size()) != implied_size) {
    bad(std::string(where) + ": \"size\" disagrees with the element name count");
  }
  return labels;
}

FinRel pairs_from_json(const json& j, const std::vector<std::string>& labels, const char* where) {
  const int n = static_cast<int>(labels.size());
  FinRel r(n);
  if (!j.is_array()) bad(std::string(where) + " must be an array of pairs");
  for (const auto& pr : j) {
    if (!pr.is_array() || pr.size() != 2) {
      bad(std::string(where) + " entries must be [a, b] pairs of indices or labels");
    }
    r.set(element_ref(pr[0], labels, where), element_ref(pr[1], labels, where));
  }
  return r;
}

json pairs_to_json(const FinRel& r) {
  json out = json::array();
  for (const auto& [x, y] : r.pairs()) out.push_back(json::array({x, y}));
  return out;
}

std::vector<int> table_from_json(const json& j, const std::vector<std::string>& labels,
                                 const char* where) {
  const int n = static_cast<int>(labels.size());
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    bad(std::string(where) + " must list one entry per element");
  }
  std::vector<int> t(n);
  for (int x = 0; x < n; ++x) t[x] = element_ref(j[x], labels, where);
  return t;
}

Endomap map_from_json(const json& j, const std::vector<std::string>& labels, const char* where) {
  const int n = static_cast<int>(labels.size());
  if (j.is_array()) return Endomap(table_from_json(j, labels, where));
  if (!j.is_object()) {
    bad(std::string(where) + " must be an index array or an object mapping labels to elements");
  }
  std::vector<int> img(n, -1);
  for (const auto& [key, value] : j.items()) {
    const int x = label_index(labels, key, where);
    if (img[x] != -1) bad(std::string(where) + " assigns \"" + key + "\" twice");
    img[x] = element_ref(value, labels, where);
  }
  for (int x = 0; x < n; ++x) {
    if (img[x] == -1) bad(std::string(where) + " is missing \"" + labels[x] + "\"");
  }
  return Endomap(img);
}

json map_to_json(const Endomap& m) {
  json out = json::array();
  for (int x = 0; x < m.size(); ++x) out.push_back(m(x));
  return out;
}

}  // namespace

Poset poset_from_json(const json& j) {
  if (!j.is_object()) bad("poset must be an object");
  const std::vector<std::string> labels = names_from_json(j, "poset", j.value("size", -1));
  FinRel leq = pairs_from_json(j.value("leq", json::array()), labels, "poset leq");
  for (int x = 0; x < leq.size(); ++x) leq.set(x, x);
  leq = transitive_closure(std::move(leq));
  return Poset(std::move(leq), labels);  // validates antisymmetry
}

json poset_to_json(const Poset& p) {
  json j;
  j["elements"] = p.labels();
  j["leq"] = pairs_to_json(p.leq());
  return j;
}

FinRel equivalence_from_json(const json& j, const Poset& base) {
  const int n = base.size();
  if (j.is_string()) {
    if (j.get<std::string>() == "full") return FinRel::full(n);
    bad("E must be \"full\" or {\"blocks\": ...}");
  }
  if (!j.is_object() || !j.contains("blocks")) bad("E must be \"full\" or {\"blocks\": ...}");
  std::vector<int> block_of(n, -1);
  int b = 0;
  for (const auto& blk : j["blocks"]) {
    if (!blk.is_array() || blk.empty()) bad("E blocks must be nonempty element arrays");
    for (const auto& v : blk) {
      const int x = element_ref(v, base.labels(), "E blocks");
      if (block_of[x] != -1) bad("E blocks repeat element \"" + base.label(x) + "\"");
      block_of[x] = b;
    }
    ++b;
  }
  for (int x = 0; x < n; ++x) {
    if (block_of[x] == -1) bad("E blocks are missing element \"" + base.label(x) + "\"");
  }
  FinRel E(n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (block_of[x] == block_of[y]) E.set(x, y);
    }
  }
  return E;
}

json equivalence_to_json(const FinRel& E, const Poset& base) {
  const int n = base.size();
  if (E == FinRel::full(n)) return json("full");
  std::vector<int> block_of(n, -1);
  json blocks = json::array();
  for (int x = 0; x < n; ++x) {
    if (block_of[x] != -1) continue;
    json blk = json::array();
    for (int y = x; y < n; ++y) {
      if (E.at(x, y)) {
        block_of[y] = x;
        blk.push_back(y);
      }
    }
    blocks.push_back(std::move(blk));
  }
  json j;
  j["blocks"] = std::move(blocks);
  return j;
}

TwistedSystem system_from_json(const json& j) {
  if (!j.is_object() || !j.contains("poset")) bad("system must be an object with a \"poset\"");
  TwistedSystem s;
  s.base = poset_from_json(j["poset"]);
  s.E = equivalence_from_json(j.value("E", json("full")), s.base);
  const json id = [&] {
    json m = json::array();
    for (int x = 0; x < s.base.size(); ++x) m.push_back(x);
    return m;
  }();
  s.alpha = map_from_json(j.value("alpha", id), s.base.labels(), "alpha");
  s.beta = map_from_json(j.value("beta", id), s.base.labels(), "beta");
  return s;
}

json system_to_json(const TwistedSystem& s) {
  json j;
  j["poset"] = poset_to_json(s.base);
  j["E"] = equivalence_to_json(s.E, s.base);
  j["alpha"] = map_to_json(s.alpha);
  j["beta"] = map_to_json(s.beta);
  return j;
}

RepresentationSpec spec_from_json(const json& j) {
  RepresentationSpec s;
  s.system = system_from_json(j);
  if (!j.contains("assignment") || !j["assignment"].is_object()) {
    bad("spec needs an \"assignment\" object");
  }
  for (const auto& [key, value] : j["assignment"].items()) {
    s.assignment.emplace_back(key, pairs_from_json(value, s.system.base.labels(), "assignment"));
  }
  return s;
}

json spec_to_json(const RepresentationSpec& s) {
  json j = system_to_json(s.system);
  json asg = json::object();
  for (const auto& [label, rel] : s.assignment) {
    asg[label] = pairs_to_json(rel);
  }
  j["assignment"] = std::move(asg);
  return j;
}

AbstractDqRA algebra_from_json(const json& j) {
  if (!j.is_object()) bad("algebra must be an object");
  AbstractDqRA a;
  a.name = j.value("name", std::string{});
  a.labels = names_from_json(j, "algebra", j.value("size", -1));
  a.size = static_cast<int>(a.labels.size());

  const bool has_leq = j.contains("leq");
  const bool has_join = j.contains("join");
  if (!has_leq && !has_join) bad("algebra needs a \"leq\" pair list or a \"join\" table");
  std::vector<std::vector<int>> join_given;
  if (has_join) {
    const auto& rows = j["join"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != a.size) {
      bad("algebra \"join\" must have one row per element");
    }
    for (int x = 0; x < a.size; ++x) {
      join_given.push_back(table_from_json(rows[x], a.labels, "join"));
    }
  }
  if (has_leq) {
    a.leq = pairs_from_json(j["leq"], a.labels, "algebra leq");
    for (int x = 0; x < a.size; ++x) a.leq.set(x, x);
    a.leq = transitive_closure(std::move(a.leq));
  } else {
    a.leq = FinRel(a.size);  // x <= y exactly when x join y = y
    for (int x = 0; x < a.size; ++x) {
      for (int y = 0; y < a.size; ++y) {
        if (join_given[x][y] == y) a.leq.set(x, y);
      }
    }
  }
  if (has_join) {
    const LatticeTables lt = lattice_tables(a.leq);
    if (!lt.ok || lt.join != join_given) {
      bad("algebra \"join\" table disagrees with the lattice order");
    }
  }

  a.tilde = table_from_json(j.value("tilde", json::array()), a.labels, "tilde");
  a.minus = table_from_json(j.value("minus", json::array()), a.labels, "minus");
  a.prime = table_from_json(j.value("prime", json::array()), a.labels, "prime");

  if (!j.contains("mult") || !j["mult"].is_array() || static_cast<int>(j["mult"].size()) != a.size) {
    bad("algebra \"mult\" must have one row per element");
  }
  for (int x = 0; x < a.size; ++x) {
    a.mult.push_back(table_from_json(j["mult"][x], a.labels, "mult"));
  }
  if (!j.contains("one") || !j.contains("zero")) bad("algebra needs \"one\" and \"zero\"");
  a.one = element_ref(j["one"], a.labels, "one");
  a.zero = element_ref(j["zero"], a.labels, "zero");
  validate_shape(a);
  return a;
}

json algebra_to_json(const AbstractDqRA& a) {
  AbstractDqRA copy = a;
  ensure_labels(copy);
  json j;
  if (!copy.name.empty()) j["name"] = copy.name;
  j["size"] = copy.size;
  j["labels"] = copy.labels;
  j["leq"] = pairs_to_json(copy.leq);
  auto unary = [](const std::vector<int>& t) {
    json arr = json::array();
    for (int v : t) arr.push_back(v);
    return arr;
  };
  j["tilde"] = unary(copy.tilde);
  j["minus"] = unary(copy.minus);
  j["prime"] = unary(copy.prime);
  json mult = json::array();
  for (int x = 0; x < copy.size; ++x) mult.push_back(unary(copy.mult[x]));
  j["mult"] = std::move(mult);
  j["one"] = copy.one;
  j["zero"] = copy.zero;
  return j;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Error::Kind::Io, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(Error::Kind::Io, "bad JSON in " + path + ": " + e.what());
  }
  return j;
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(Error::Kind::Io, "cannot write " + path);
  out << j.dump(2) << "\n";
}

AbstractDqRA load_algebra(const std::string& path) { return algebra_from_json(load_json(path)); }
TwistedSystem load_system(const std::string& path) { return system_from_json(load_json(path)); }
RepresentationSpec load_spec(const std::string& path) { return spec_from_json(load_json(path)); }

}  // namespace dqra
