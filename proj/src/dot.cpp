#include "dqra/dot.hpp"

#include "dqra/error.hpp"

namespace dqra {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

std::string hasse_dot(const FinRel& leq, const std::vector<std::string>& labels) {
  if (auto w = partial_order_witness(leq)) {
    throw Error(Error::Kind::Validation, "Hasse diagram needs a partial order (" + w->reason + ")");
  }
  const int n = leq.size();
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) {
    names[i] = labels.empty() ? "x" + std::to_string(i) : labels[i];
  }
  std::string out = "digraph {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (int i = 0; i < n; ++i) {
    out += "  " + quoted(names[i]) + ";\n";
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y || !leq.at(x, y)) continue;
      bool cover = true;
      for (int z = 0; z < n && cover; ++z) {
        cover = z == x || z == y || !(leq.at(x, z) && leq.at(z, y));
      }
      if (cover) out += "  " + quoted(names[x]) + " -> " + quoted(names[y]) + ";\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace dqra
