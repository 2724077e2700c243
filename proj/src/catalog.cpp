#include "dqra/catalog.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "dqra/error.hpp"

namespace dqra {

namespace {

// Orders on up to 6 points fit one word as a row-major n*n bit pattern.
uint64_t pack(const FinRel& r) {
  const int n = r.size();
  uint64_t bits = 0;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (r.at(x, y)) bits |= uint64_t{1} << (x * n + y);
    }
  }
  return bits;
}

FinRel unpack(uint64_t bits, int n) {
  FinRel r(n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if ((bits >> (x * n + y)) & 1u) r.set(x, y);
    }
  }
  return r;
}

// Smallest packed pattern over all relabellings: the canonical form.
uint64_t canonical_pattern(uint64_t bits, int n, const std::vector<std::vector<int>>& perms) {
  uint64_t best = ~uint64_t{0};
  for (const auto& p : perms) {
    uint64_t img = 0;
    uint64_t rest = bits;
    while (rest) {
      const int b = std::countr_zero(rest);
      rest &= rest - 1;
      img |= uint64_t{1} << (p[b / n] * n + p[b % n]);
    }
    best = std::min(best, img);
  }
  return best;
}

}  // namespace

std::vector<Poset> poset_catalog(int n) {
  if (n < 1 || n > 6) {
    throw Error(Error::Kind::Domain, "poset catalog supports 1 to 6 points");
  }
  std::vector<std::vector<int>> perms;
  {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }

  // Strict parts of partial orders whose indices are a linear extension are
  // exactly the transitive subsets of the upper triangle; every isomorphism
  // class has at least one such labelling.
  std::vector<std::pair<int, int>> slots;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) slots.emplace_back(x, y);
  }
  uint64_t refl = 0;
  for (int x = 0; x < n; ++x) refl |= uint64_t{1} << (x * n + x);

  std::vector<uint64_t> canon;
  const uint64_t limit = uint64_t{1} << slots.size();
  for (uint64_t mask = 0; mask < limit; ++mask) {
    uint64_t bits = refl;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if ((mask >> s) & 1u) bits |= uint64_t{1} << (slots[s].first * n + slots[s].second);
    }
    bool transitive = true;
    for (std::size_t s = 0; s < slots.size() && transitive; ++s) {
      if (!((mask >> s) & 1u)) continue;
      const auto [x, y] = slots[s];
      for (int z = y + 1; z < n && transitive; ++z) {
        if ((bits >> (y * n + z)) & 1u) transitive = ((bits >> (x * n + z)) & 1u) != 0;
      }
    }
    if (!transitive) continue;
    canon.push_back(canonical_pattern(bits, n, perms));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  std::sort(canon.begin(), canon.end(), [](uint64_t a, uint64_t b) {
    const int ca = std::popcount(a), cb = std::popcount(b);
    return ca != cb ? ca < cb : a < b;
  });

  std::vector<Poset> out;
  out.reserve(canon.size());
  for (uint64_t bits : canon) out.emplace_back(unpack(bits, n));
  return out;
}

std::vector<Poset> poset_catalog_cached(int n, const std::string& cache_dir) {
  if (n < 1 || n > 6) {
    throw Error(Error::Kind::Domain, "poset catalog supports 1 to 6 points");
  }
  namespace fs = std::filesystem;
  const fs::path path = fs::path(cache_dir) / ("posets-" + std::to_string(n) + ".json");
  if (fs::exists(path)) {
    std::ifstream in(path);
    nlohmann::json j;
    try {
      in >> j;
      std::vector<Poset> out;
      for (uint64_t bits : j.at("patterns").get<std::vector<uint64_t>>()) {
        out.emplace_back(unpack(bits, n));
      }
      return out;
    } catch (const std::exception& e) {
      throw Error(Error::Kind::Io, "bad catalog cache " + path.string() + ": " + e.what());
    }
  }
  std::vector<Poset> out = poset_catalog(n);
  std::vector<uint64_t> patterns;
  patterns.reserve(out.size());
  for (const Poset& p : out) patterns.push_back(pack(p.leq()));
  nlohmann::json j;
  j["points"] = n;
  j["patterns"] = patterns;
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream outf(path);
  if (!outf) {
    throw Error(Error::Kind::Io, "cannot write catalog cache " + path.string());
  }
  outf << j.dump() << "\n";
  return out;
}

}  // namespace dqra
