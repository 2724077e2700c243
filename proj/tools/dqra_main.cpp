#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dqra/abstract.hpp"
#include "dqra/dot.hpp"
#include "dqra/dq.hpp"
#include "dqra/error.hpp"
#include "dqra/json_io.hpp"
#include "dqra/represent.hpp"

namespace {

using dqra::AbstractDqRA;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailedCheck = 2;

std::string tuple_text(const std::vector<int>& t, const std::vector<std::string>& labels) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += labels[t[i]];
  }
  out += ")";
  return out;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

void emit(bool as_json, const json& j, const std::string& text) {
  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text << "\n";
  }
}

int cmd_build(const std::string& path, std::size_t cap, const std::string& out_path,
              const std::string& name, bool as_json) {
  const dqra::TwistedSystem s = dqra::load_system(path);
  const dqra::ConcreteDqRA c = dqra::ConcreteDqRA::build(s.base, s.E, s.alpha, s.beta, cap);
  const std::string zero = dqra::format_relation(c.zero(), c.base().labels());
  json j{{"carrier", c.size()},
         {"zero", zero},
         {"cyclic", c.cyclic()},
         {"period", c.periodicity()}};
  emit(as_json, j,
       "carrier=" + std::to_string(c.size()) + " zero=" + zero +
           " cyclic=" + bool_text(c.cyclic()) + " period=" + std::to_string(c.periodicity()));
  if (!out_path.empty()) {
    AbstractDqRA a = c.to_abstract(name);
    dqra::save_json(out_path, dqra::algebra_to_json(a));
  }
  return kExitOk;
}

int cmd_check(const std::string& path, bool as_json) {
  const AbstractDqRA a = dqra::load_algebra(path);
  const dqra::AxiomReport rep = dqra::axiom_check(a);
  json groups = json::array();
  std::string text;
  for (int g = 0; g < dqra::kAxiomGroupCount; ++g) {
    const auto& e = rep.groups[g];
    const char* gname = dqra::axiom_group_name(static_cast<dqra::AxiomGroup>(g));
    json item{{"group", gname}, {"pass", e.pass}};
    std::string line = e.pass ? std::string(gname) + ": pass" : std::string(gname) + " fails";
    if (!e.pass && !e.witness.empty()) {
      item["witness"] = tuple_text(e.witness, a.labels);
      line += " witness=" + tuple_text(e.witness, a.labels);
    }
    groups.push_back(item);
    if (!text.empty()) text += "\n";
    text += line;
  }
  emit(as_json, json{{"groups", groups}, {"all_pass", rep.all_pass()}}, text);
  return rep.all_pass() ? kExitOk : kExitFailedCheck;
}

int cmd_derive(const std::string& path, const std::string& kind, int n,
               const std::string& out_path) {
  const AbstractDqRA a = dqra::load_algebra(path);
  const auto k =
      (kind == "nabla" || kind == "▽") ? dqra::DeriveKind::Nabla : dqra::DeriveKind::Delta;
  const AbstractDqRA d = dqra::derive_algebra(a, k, n);
  const json j = dqra::algebra_to_json(d);
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    dqra::save_json(out_path, j);
  }
  return kExitOk;
}

int cmd_cyclic(const std::string& path, const std::string& out_path, bool as_json) {
  const AbstractDqRA a = dqra::load_algebra(path);
  const bool cyc = dqra::is_cyclic(a);
  const int period = dqra::periodicity_abstract(a);
  const dqra::Subalgebra sub = dqra::cyclic_subuniverse(a);
  emit(as_json,
       json{{"cyclic", cyc},
            {"period", period},
            {"cyclic_part_size", sub.algebra.size},
            {"size", a.size}},
       "cyclic=" + bool_text(cyc) + " period=" + std::to_string(period) +
           " cyclic-part=" + std::to_string(sub.algebra.size) + "/" + std::to_string(a.size));
  if (!out_path.empty()) dqra::save_json(out_path, dqra::algebra_to_json(sub.algebra));
  return kExitOk;
}

int cmd_iso(const std::string& path_a, const std::string& path_b, bool as_json) {
  const AbstractDqRA a = dqra::load_algebra(path_a);
  const AbstractDqRA b = dqra::load_algebra(path_b);
  const dqra::IsoResult r = dqra::isomorphism_search(a, b);
  json j{{"isomorphic", r.map.has_value()}, {"candidates", r.candidates_tried}};
  std::string text = "isomorphic=" + bool_text(r.map.has_value()) +
                     " candidates=" + std::to_string(r.candidates_tried);
  if (r.map) {
    std::string m;
    json jm = json::object();
    for (int x = 0; x < a.size; ++x) {
      if (x) m += ",";
      m += a.labels[x] + "->" + b.labels[(*r.map)[x]];
      jm[a.labels[x]] = b.labels[(*r.map)[x]];
    }
    j["map"] = jm;
    text += " map=[" + m + "]";
  }
  emit(as_json, j, text);
  return r.map ? kExitOk : kExitFailedCheck;
}

int cmd_verify(const std::string& algebra_path, const std::string& rep_path, bool as_json) {
  const AbstractDqRA a = dqra::load_algebra(algebra_path);
  const dqra::RepresentationSpec spec = dqra::load_spec(rep_path);
  const dqra::RepReport r = dqra::verify_representation(a, spec);
  json j{{"verified", r.ok}};
  std::string text = "verified=" + bool_text(r.ok);
  if (!r.ok) {
    j["reason"] = r.reason;
    text += " reason=" + r.reason;
  }
  emit(as_json, j, text);
  return r.ok ? kExitOk : kExitFailedCheck;
}

int cmd_search(const std::string& path, int max_n, std::size_t cap, long budget,
               const std::string& out_path, bool as_json) {
  const AbstractDqRA a = dqra::load_algebra(path);
  dqra::SearchOptions opt;
  opt.max_base_size = max_n;
  opt.carrier_cap = cap;
  opt.node_budget = budget;
  const dqra::SearchOutcome r = dqra::search_representation(a, opt);
  json j{{"found", r.spec.has_value()},
         {"budget_exhausted", r.budget_exhausted},
         {"counters",
          json{{"posets", r.counters.posets},
               {"partitions", r.counters.partitions},
               {"pairs", r.counters.pairs},
               {"builds", r.counters.builds},
               {"embeddings_tried", r.counters.embeddings_tried},
               {"carrier_skips", r.counters.carrier_skips},
               {"nodes", r.counters.embedding_nodes}}},
         {"witness", r.spec ? dqra::spec_to_json(*r.spec) : json(nullptr)}};
  std::string text = "found=" + bool_text(r.spec.has_value()) +
                     " posets=" + std::to_string(r.counters.posets) +
                     " partitions=" + std::to_string(r.counters.partitions) +
                     " pairs=" + std::to_string(r.counters.pairs) +
                     " builds=" + std::to_string(r.counters.builds) +
                     " embeddings=" + std::to_string(r.counters.embeddings_tried) +
                     " nodes=" + std::to_string(r.counters.embedding_nodes);
  if (r.spec) text += " base=" + std::to_string(r.spec->system.base.size());
  if (r.budget_exhausted) text += " budget-exhausted=true";
  emit(as_json, j, text);
  if (r.spec && !out_path.empty()) dqra::save_json(out_path, dqra::spec_to_json(*r.spec));
  return r.spec ? kExitOk : kExitFailedCheck;
}

int cmd_detect(const std::string& path, bool as_json) {
  const AbstractDqRA a = dqra::load_algebra(path);
  const dqra::NonFinRepVerdict v = dqra::nonfinrep_detector(a);
  json j{{"flagged", v.flagged}};
  std::string text;
  if (v.flagged) {
    j["witness"] = a.labels[v.witness];
    text = "FLAGGED: not finitely representable (witness " + a.labels[v.witness] + ")";
  } else {
    text = "CLEAR: detector is silent (this is not a representability proof)";
  }
  emit(as_json, j, text);
  return v.flagged ? kExitFailedCheck : kExitOk;
}

int cmd_decompose(const std::string& path, const std::string& out_prefix, std::size_t cap,
                  bool as_json) {
  const dqra::TwistedSystem s = dqra::load_system(path);
  const dqra::ConcreteDqRA c = dqra::ConcreteDqRA::build(s.base, s.E, s.alpha, s.beta, cap);
  const dqra::DecomposeOutcome r = dqra::block_decompose(c, cap);
  json sizes = json::array();
  std::string sizes_text;
  for (const dqra::TwistedSystem& blk : r.blocks) {
    sizes.push_back(blk.base.size());
    if (!sizes_text.empty()) sizes_text += ",";
    sizes_text += std::to_string(blk.base.size());
  }
  emit(as_json,
       json{{"blocks", r.blocks.size()},
            {"product_verified", r.product_verified},
            {"pairs_checked", r.pairs_checked},
            {"block_points", sizes}},
       "blocks=" + std::to_string(r.blocks.size()) +
           " product-verified=" + bool_text(r.product_verified) + " block-points=[" + sizes_text +
           "]");
  if (!out_prefix.empty()) {
    for (std::size_t i = 0; i < r.blocks.size(); ++i) {
      dqra::save_json(out_prefix + "-" + std::to_string(i) + ".json",
                      dqra::system_to_json(r.blocks[i]));
    }
  }
  return r.product_verified ? kExitOk : kExitFailedCheck;
}

int cmd_union(const std::vector<std::string>& paths, const std::string& out_path, bool as_json) {
  std::vector<dqra::TwistedSystem> parts;
  parts.reserve(paths.size());
  for (const std::string& p : paths) parts.push_back(dqra::load_system(p));
  const dqra::TwistedSystem u = dqra::disjoint_union(parts);
  emit(as_json, json{{"parts", paths.size()}, {"points", u.base.size()}},
       "parts=" + std::to_string(paths.size()) + " points=" + std::to_string(u.base.size()));
  if (!out_path.empty()) dqra::save_json(out_path, dqra::system_to_json(u));
  return kExitOk;
}

void write_dot(const std::string& dot_path, const dqra::FinRel& leq,
               const std::vector<std::string>& labels) {
  std::ofstream out(dot_path);
  if (!out) throw dqra::Error(dqra::Error::Kind::Io, "cannot write " + dot_path);
  out << dqra::hasse_dot(leq, labels);
}

// Aligned text table: first row and column are headers.
std::string grid_text(const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> width;
  for (const auto& row : cells) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << std::left << row[c];
    }
    out << "\n";
  }
  return out.str();
}

int report_algebra(const AbstractDqRA& a, const std::string& dot_path, bool as_json) {
  const dqra::AxiomReport rep = dqra::axiom_check(a);
  int failing = 0;
  for (const auto& e : rep.groups) failing += !e.pass;
  json j{{"name", a.name},
         {"size", a.size},
         {"axioms_pass", rep.all_pass()},
         {"failing_groups", failing}};
  std::string summary = "size=" + std::to_string(a.size) +
                        " axioms=" + std::string(rep.all_pass() ? "pass" : "FAIL") +
                        " failing-groups=" + std::to_string(failing);
  if (rep[dqra::AxiomGroup::In].pass) {
    const bool cyc = dqra::is_cyclic(a);
    const int period = dqra::periodicity_abstract(a);
    j["cyclic"] = cyc;
    j["period"] = period;
    summary += " cyclic=" + bool_text(cyc) + " period=" + std::to_string(period);
  }
  const dqra::NonFinRepVerdict v = dqra::nonfinrep_detector(a);
  j["flagged"] = v.flagged;
  summary += " flagged=" + bool_text(v.flagged);

  std::string text;
  if (!a.name.empty()) text += a.name + "\n";
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head{"x"};
  for (int y = 0; y < a.size; ++y) head.push_back(a.labels[y]);
  head.insert(head.end(), {"~x", "-x", "x'"});
  cells.push_back(head);
  for (int x = 0; x < a.size; ++x) {
    std::vector<std::string> row{a.labels[x] + (x == a.one ? " (1)" : x == a.zero ? " (0)" : "")};
    for (int y = 0; y < a.size; ++y) row.push_back(a.labels[a.mult[x][y]]);
    row.push_back(a.labels[a.tilde[x]]);
    row.push_back(a.labels[a.minus[x]]);
    row.push_back(a.labels[a.prime[x]]);
    cells.push_back(row);
  }
  text += "fusion table (x down, y across) with the unary columns\n" + grid_text(cells) + summary;
  emit(as_json, j, text);
  if (!dot_path.empty()) write_dot(dot_path, a.leq, a.labels);
  return kExitOk;
}

int report_system(const json& raw, const std::string& dot_path, bool as_json) {
  const dqra::TwistedSystem s = dqra::system_from_json(raw);
  json j = dqra::system_to_json(s);
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"point", "alpha", "beta"});
  for (int x = 0; x < s.base.size(); ++x) {
    cells.push_back({s.base.label(x), s.base.label(s.alpha(x)), s.base.label(s.beta(x))});
  }
  std::string text = "points=" + std::to_string(s.base.size()) +
                     " order-pairs=" + std::to_string(s.base.leq().count()) +
                     " E-pairs=" + std::to_string(s.E.count()) + "\n" + grid_text(cells);
  if (raw.contains("assignment")) {
    const dqra::RepresentationSpec spec = dqra::spec_from_json(raw);
    j = dqra::spec_to_json(spec);
    for (const auto& [label, rel] : spec.assignment) {
      text += label + " -> " + dqra::format_relation(rel, s.base.labels()) + "\n";
    }
  }
  while (!text.empty() && text.back() == '\n') text.pop_back();
  emit(as_json, j, text);
  if (!dot_path.empty()) write_dot(dot_path, s.base.leq(), s.base.labels());
  return kExitOk;
}

int cmd_report(const std::string& path, const std::string& dot_path, bool as_json) {
  const json raw = dqra::load_json(path);
  if (raw.is_object() && raw.contains("mult")) {
    return report_algebra(dqra::algebra_from_json(raw), dot_path, as_json);
  }
  if (raw.is_object() && raw.contains("poset")) return report_system(raw, dot_path, as_json);
  if (raw.is_object() && (raw.contains("elements") || raw.contains("labels"))) {
    const dqra::Poset p = dqra::poset_from_json(raw);
    emit(as_json, dqra::poset_to_json(p),
         "points=" + std::to_string(p.size()) +
             " order-pairs=" + std::to_string(p.leq().count()));
    if (!dot_path.empty()) write_dot(dot_path, p.leq(), p.labels());
    return kExitOk;
  }
  // Anything else: pretty-print as-is.
  std::cout << raw.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-model workbench for distributive quasi relation algebras"};
  app.require_subcommand(1);

  std::string path, path_b, out_path, name, kind, out_prefix;
  std::vector<std::string> paths;
  std::size_t cap = dqra::kDefaultCarrierCap;
  int derive_n = 1;
  int max_n = 4;
  long budget = 0;
  bool as_json = false;

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", as_json, "emit JSON"); };

  CLI::App* build = app.add_subcommand("build", "build an algebra from a system file");
  build->add_option("system", path, "system JSON file")->required();
  build->add_option("--cap", cap, "carrier size cap");
  build->add_option("--out", out_path, "write the algebra tables here");
  build->add_option("--name", name, "name for the saved algebra");
  add_json(build);

  CLI::App* check = app.add_subcommand("check", "check the defining axioms of an algebra file");
  check->add_option("algebra", path, "algebra JSON file")->required();
  add_json(check);

  CLI::App* derive = app.add_subcommand("derive", "derive the algebra with a shifted prime");
  derive->add_option("algebra", path, "algebra JSON file")->required();
  derive->add_option("--kind", kind, "nabla or delta")->required()
      ->check(CLI::IsMember({"nabla", "delta", "▽", "△"}));
  derive->add_option("--n", derive_n, "derivation index")->required();
  derive->add_option("--out", out_path, "write the derived algebra here");

  CLI::App* cyclic = app.add_subcommand("cyclic", "cyclicity, period, and the cyclic part");
  cyclic->add_option("algebra", path, "algebra JSON file")->required();
  cyclic->add_option("--out", out_path, "write the cyclic part here");
  add_json(cyclic);

  CLI::App* iso = app.add_subcommand("iso", "search for an isomorphism between two algebras");
  iso->add_option("a", path, "first algebra JSON file")->required();
  iso->add_option("b", path_b, "second algebra JSON file")->required();
  add_json(iso);

  CLI::App* verify = app.add_subcommand("verify", "verify a claimed representation");
  verify->add_option("--algebra", path, "algebra JSON file")->required();
  verify->add_option("--rep", path_b, "representation spec JSON file")->required();
  add_json(verify);

  CLI::App* search = app.add_subcommand("search", "search for a representation");
  search->add_option("algebra", path, "algebra JSON file")->required();
  search->add_option("--max-n", max_n, "largest base poset size");
  search->add_option("--cap", cap, "carrier size cap");
  search->add_option("--budget", budget, "total embedding-node budget (0 = unlimited)");
  search->add_option("--out", out_path, "write the found spec here");
  add_json(search);

  CLI::App* detect = app.add_subcommand("detect", "flag algebras with no finite representation");
  detect->add_option("algebra", path, "algebra JSON file")->required();
  add_json(detect);

  CLI::App* decompose = app.add_subcommand("decompose", "split a system along its equivalence");
  decompose->add_option("system", path, "system JSON file")->required();
  decompose->add_option("--out-prefix", out_prefix, "write each block system to <prefix>-<i>.json");
  decompose->add_option("--cap", cap, "carrier size cap");
  add_json(decompose);

  CLI::App* uni = app.add_subcommand("union", "combine systems side by side");
  uni->add_option("systems", paths, "system JSON files")->required()->expected(-1);
  uni->add_option("--out", out_path, "write the combined system here");
  add_json(uni);

  CLI::App* report = app.add_subcommand("report", "one-line summary of an algebra file");
  report->add_option("algebra", path, "algebra JSON file")->required();
  report->add_option("--dot", out_path, "write a Hasse diagram here");
  add_json(report);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) return cmd_build(path, cap, out_path, name, as_json);
    if (*check) return cmd_check(path, as_json);
    if (*derive) return cmd_derive(path, kind, derive_n, out_path);
    if (*cyclic) return cmd_cyclic(path, out_path, as_json);
    if (*iso) return cmd_iso(path, path_b, as_json);
    if (*verify) return cmd_verify(path, path_b, as_json);
    if (*search) return cmd_search(path, max_n, cap, budget, out_path, as_json);
    if (*detect) return cmd_detect(path, as_json);
    if (*decompose) return cmd_decompose(path, out_prefix, cap, as_json);
    if (*uni) return cmd_union(paths, out_path, as_json);
    if (*report) return cmd_report(path, out_path, as_json);
  } catch (const dqra::BuildError& e) {
    std::cerr << "build failed: " << e.what() << "\n";
    return kExitFailedCheck;
  } catch (const dqra::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
