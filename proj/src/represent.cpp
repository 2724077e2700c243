#include "dqra/represent.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "dqra/catalog.hpp"
#include "dqra/error.hpp"

namespace dqra {

namespace {

// Per-element verification of every operation on an explicit image map; used
// by both the representation verifier and the embedding search leaf check.
// Returns an
// empty string on success, otherwise a reason built with the given labels.
std::string check_image(const AbstractDqRA& a, const LatticeTables& lt, const ConcreteDqRA& c,
                        const std::vector<FinRel>& img) {
  const int n = a.size;
  auto lab = [&](int x) {
    return a.labels.empty() ? "#" + std::to_string(x) : a.labels[x];
  };
  if (!(img[a.one] == c.one())) return "the identity element does not map to the base order";
  if (!(img[a.zero] == c.zero())) return "the zero element does not map to the canonical zero";
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (a.leq.at(x, y) != subset(img[x], img[y])) {
        return "order is not reflected at (\"" + lab(x) + "\",\"" + lab(y) + "\")";
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (img[x] == img[y]) {
        return "images collide: \"" + lab(x) + "\" and \"" + lab(y) + "\"";
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    if (!(img[a.tilde[x]] == c.tilde(img[x]))) {
      return "tilde is not preserved at \"" + lab(x) + "\"";
    }
    if (!(img[a.minus[x]] == c.minus(img[x]))) {
      return "minus is not preserved at \"" + lab(x) + "\"";
    }
    if (!(img[a.prime[x]] == c.prime(img[x]))) {
      return "prime is not preserved at \"" + lab(x) + "\"";
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (!(img[lt.meet[x][y]] == (img[x] & img[y]))) {
        return "meet is not preserved at (\"" + lab(x) + "\",\"" + lab(y) + "\")";
      }
      if (!(img[lt.join[x][y]] == (img[x] | img[y]))) {
        return "join is not preserved at (\"" + lab(x) + "\",\"" + lab(y) + "\")";
      }
      if (!(img[a.mult[x][y]] == c.fuse(img[x], img[y]))) {
        return "fuse is not preserved at (\"" + lab(x) + "\",\"" + lab(y) + "\")";
      }
    }
  }
  return {};
}

}  // namespace

RepReport verify_representation(const AbstractDqRA& a, const RepresentationSpec& spec) {
  validate_shape(a);
  AbstractDqRA src = a;
  ensure_labels(src);
  const LatticeTables lt = lattice_tables(src.leq);
  if (!lt.ok) {
    throw Error(Error::Kind::Validation, "the source order is not a lattice");
  }
  RepReport rep;
  auto fail = [&](const std::string& reason) {
    rep.ok = false;
    rep.reason = reason;
    return rep;
  };

  std::optional<ConcreteDqRA> built;
  try {
    built = ConcreteDqRA::build(spec.system.base, spec.system.E, spec.system.alpha, spec.system.beta);
  } catch (const BuildError& e) {
    return fail(std::string("construction hypothesis failed (") + build_fault_name(e.fault()) +
                "): " + e.what());
  }
  const ConcreteDqRA& c = *built;

  const int n = src.size;
  std::vector<FinRel> img(n);
  std::vector<char> known(n, 0);
  std::string conflict;
  auto put = [&](int x, const FinRel& r, const std::string& via) {
    if (known[x]) {
      if (!(img[x] == r)) {
        conflict = "assignment is inconsistent: two values for \"" + src.labels[x] + "\" (via " +
                   via + ")";
        return false;
      }
      return true;
    }
    img[x] = r;
    known[x] = 1;
    return true;
  };

  for (const auto& [label, rel] : spec.assignment) {
    const auto x = src.index_of_label(label);
    if (!x) return fail("assignment names unknown element \"" + label + "\"");
    if (rel.size() != spec.system.base.size()) {
      throw Error(Error::Kind::Dimension, "assigned relation size does not match the base");
    }
    if (!subset(rel, spec.system.E) || !c.order().is_upset(rel)) {
      return fail("assigned relation for \"" + label + "\" is not a carrier element");
    }
    if (!put(*x, rel, "the explicit assignment")) return fail(conflict);
  }
  if (!put(src.one, c.one(), "the identity constant")) return fail(conflict);
  if (!put(src.zero, c.zero(), "the zero constant")) return fail(conflict);

  // Close the partial map under every operation until nothing new appears.
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<char> snap = known;
    for (int x = 0; x < n; ++x) {
      if (!snap[x]) continue;
      const bool was_t = known[src.tilde[x]], was_m = known[src.minus[x]], was_p = known[src.prime[x]];
      if (!put(src.tilde[x], c.tilde(img[x]), "tilde of \"" + src.labels[x] + "\"")) {
        return fail(conflict);
      }
      if (!put(src.minus[x], c.minus(img[x]), "minus of \"" + src.labels[x] + "\"")) {
        return fail(conflict);
      }
      if (!put(src.prime[x], c.prime(img[x]), "prime of \"" + src.labels[x] + "\"")) {
        return fail(conflict);
      }
      grew = grew || !was_t || !was_m || !was_p;
      for (int y = 0; y < n; ++y) {
        if (!snap[y]) continue;
        const int fz = src.mult[x][y], mz = lt.meet[x][y], jz = lt.join[x][y];
        const bool had = known[fz] && known[mz] && known[jz];
        if (!put(fz, c.fuse(img[x], img[y]),
                 "fuse of (\"" + src.labels[x] + "\",\"" + src.labels[y] + "\")")) {
          return fail(conflict);
        }
        if (!put(mz, img[x] & img[y],
                 "meet of (\"" + src.labels[x] + "\",\"" + src.labels[y] + "\")")) {
          return fail(conflict);
        }
        if (!put(jz, img[x] | img[y],
                 "join of (\"" + src.labels[x] + "\",\"" + src.labels[y] + "\")")) {
          return fail(conflict);
        }
        grew = grew || !had;
      }
    }
  }

  for (int x = 0; x < n; ++x) {
    if (!known[x]) {
      return fail("assignment does not cover a generating set (element \"" + src.labels[x] +
                  "\" is never reached)");
    }
  }

  const std::string reason = check_image(src, lt, c, img);
  if (!reason.empty()) return fail(reason);
  rep.ok = true;
  rep.image = std::move(img);
  return rep;
}

EmbedResult search_embedding(const AbstractDqRA& a, const ConcreteDqRA& c, long max_nodes) {
  validate_shape(a);
  const LatticeTables lt = lattice_tables(a.leq);
  if (!lt.ok) {
    throw Error(Error::Kind::Validation, "the source order is not a lattice");
  }
  const std::vector<int> ji = join_irreducibles(a.leq);
  const int n = a.size;
  const UpSetLattice& lat = c.lattice();

  EmbedResult res;
  const auto one_idx = lat.index_of(c.one());
  const auto zero_idx = lat.index_of(c.zero());
  if (!one_idx || !zero_idx) {
    throw Error(Error::Kind::NonCarrier, "internal: constants are missing from the carrier");
  }
  if (a.one != a.zero && *one_idx == *zero_idx) return res;

  // Variables: bottom plus the join-irreducibles, minus the forced constants;
  // everything else is a join of assigned values.
  std::vector<int> vars;
  if (lt.bottom != a.one && lt.bottom != a.zero) vars.push_back(lt.bottom);
  for (int j : ji) {
    if (j != a.one && j != a.zero) vars.push_back(j);
  }
  std::sort(vars.begin(), vars.end());

  std::vector<int> assigned;  // source indices with chosen images, in DFS order
  std::vector<int> img_idx(n, -1);
  std::vector<char> used(lat.size(), 0);
  img_idx[a.one] = *one_idx;
  used[*one_idx] = 1;
  assigned.push_back(a.one);
  if (a.zero != a.one) {
    img_idx[a.zero] = *zero_idx;
    used[*zero_idx] = 1;
    assigned.push_back(a.zero);
  }

  std::vector<std::vector<int>> ji_below(n);
  for (int x = 0; x < n; ++x) {
    for (int j : ji) {
      if (a.leq.at(j, x)) ji_below[x].push_back(j);
    }
  }

  auto leaf = [&]() -> bool {
    std::vector<FinRel> img(n);
    for (int x = 0; x < n; ++x) {
      if (img_idx[x] >= 0) {
        img[x] = lat.at(img_idx[x]);
        continue;
      }
      // Everything unassigned is the join of the irreducibles below it.
      FinRel acc = lat.at(img_idx[lt.bottom]);
      for (int j : ji_below[x]) acc = acc | lat.at(img_idx[j]);
      img[x] = acc;
    }
    if (!check_image(a, lt, c, img).empty()) return false;
    res.image = std::move(img);
    return true;
  };

  bool out_of_budget = false;
  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == vars.size()) return leaf();
    const int x = vars[k];
    for (int cand = 0; cand < lat.size(); ++cand) {
      if (used[cand]) continue;
      bool ok = true;
      for (int y : assigned) {
        if (a.leq.at(x, y) != lat.includes(cand, img_idx[y]) ||
            a.leq.at(y, x) != lat.includes(img_idx[y], cand)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (max_nodes > 0 && res.nodes >= max_nodes) {
        out_of_budget = true;
        return false;
      }
      ++res.nodes;
      img_idx[x] = cand;
      used[cand] = 1;
      assigned.push_back(x);
      if (self(self, k + 1)) return true;
      assigned.pop_back();
      used[cand] = 0;
      img_idx[x] = -1;
      if (out_of_budget) return false;
    }
    return false;
  };
  rec(rec, 0);
  res.exhausted = out_of_budget;
  return res;
}

std::vector<FinRel> equivalence_candidates(const Poset& p) {
  const int n = p.size();
  // Order-components: x and y share one when connected through comparabilities.
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  auto root = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (p.leq(x, y)) comp[root(x)] = root(y);
    }
  }
  std::vector<int> reps;
  std::vector<int> comp_id(n, -1);
  for (int x = 0; x < n; ++x) {
    const int r = root(x);
    if (comp_id[r] < 0) {
      comp_id[r] = static_cast<int>(reps.size());
      reps.push_back(r);
    }
    comp_id[x] = comp_id[r];
  }
  const int k = static_cast<int>(reps.size());

  // Set partitions of the components as restricted growth strings.
  std::vector<std::vector<int>> parts;
  std::vector<int> rgs(k, 0);
  auto gen = [&](auto&& self, int i, int max_used) -> void {
    if (i == k) {
      parts.push_back(rgs);
      return;
    }
    for (int b = 0; b <= max_used + 1 && b < k; ++b) {
      rgs[i] = b;
      self(self, i + 1, std::max(max_used, b));
    }
  };
  gen(gen, 0, -1);
  std::stable_sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
    const int ba = *std::max_element(a.begin(), a.end());
    const int bb = *std::max_element(b.begin(), b.end());
    return ba > bb;  // more blocks first = finest first
  });

  std::vector<FinRel> out;
  out.reserve(parts.size());
  for (const auto& part : parts) {
    FinRel E(n);
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (part[comp_id[x]] == part[comp_id[y]]) E.set(x, y);
      }
    }
    out.push_back(std::move(E));
  }
  return out;
}

SearchOutcome search_representation(const AbstractDqRA& a, const SearchOptions& opt) {
  validate_shape(a);
  AbstractDqRA src = a;
  ensure_labels(src);
  SearchOutcome out;
  if (opt.max_base_size < 1) {
    throw Error(Error::Kind::Domain, "search needs a positive base-size limit");
  }

  for (int nb = 1; nb <= opt.max_base_size; ++nb) {
    for (const Poset& p : poset_catalog(nb)) {
      ++out.counters.posets;
      const std::vector<Endomap> all_alphas = order_automorphisms(p);
      const std::vector<Endomap> all_betas = dual_order_automorphisms(p, /*self_inverse_only=*/true);
      for (const FinRel& E : equivalence_candidates(p)) {
        ++out.counters.partitions;
        std::vector<const Endomap*> alphas, betas;
        auto inside = [&](const Endomap& g) {
          for (int x = 0; x < p.size(); ++x) {
            if (!E.at(x, g(x))) return false;
          }
          return true;
        };
        for (const Endomap& g : all_alphas) {
          if (inside(g)) alphas.push_back(&g);
        }
        for (const Endomap& g : all_betas) {
          if (inside(g)) betas.push_back(&g);
        }
        if (alphas.empty() || betas.empty()) continue;

        bool have_lattice = false;
        UpSetLattice lat;
        for (const Endomap* al : alphas) {
          for (const Endomap* be : betas) {
            bool aba = true;
            for (int x = 0; x < p.size() && aba; ++x) {
              aba = (*be)(x) == (*al)((*be)((*al)(x)));
            }
            if (!aba) continue;
            ++out.counters.pairs;
            if (!have_lattice) {
              try {
                lat = enumerate_upsets(twisted_order(p, E), opt.carrier_cap);
              } catch (const CapacityError&) {
                ++out.counters.carrier_skips;
                goto next_partition;
              }
              have_lattice = true;
            }
            if (lat.size() < src.size) goto next_partition;
            const ConcreteDqRA c = ConcreteDqRA::build(p, E, *al, *be, lat);
            ++out.counters.builds;
            long budget = 0;
            if (opt.node_budget > 0) {
              budget = opt.node_budget - out.counters.embedding_nodes;
              if (budget <= 0) {
                out.budget_exhausted = true;
                return out;
              }
            }
            ++out.counters.embeddings_tried;
            EmbedResult er = search_embedding(src, c, budget);
            out.counters.embedding_nodes += er.nodes;
            if (er.exhausted) {
              out.budget_exhausted = true;
              return out;
            }
            if (er.image) {
              RepresentationSpec spec;
              spec.system = {p, E, *al, *be};
              for (int x = 0; x < src.size; ++x) {
                spec.assignment.emplace_back(src.labels[x], (*er.image)[x]);
              }
              out.spec = std::move(spec);
              return out;
            }
          }
        }
      next_partition:;
      }
    }
  }
  return out;
}

TwistedSystem disjoint_union(const std::vector<TwistedSystem>& parts) {
  if (parts.empty()) {
    throw Error(Error::Kind::Validation, "a union needs at least one part");
  }
  int total = 0;
  for (const TwistedSystem& s : parts) {
    if (s.E.size() != s.base.size() || s.alpha.size() != s.base.size() ||
        s.beta.size() != s.base.size()) {
      throw Error(Error::Kind::Dimension, "union part pieces must share one carrier size");
    }
    total += s.base.size();
  }
  FinRel leq(total), E(total);
  std::vector<int> alpha(total), beta(total);
  std::vector<std::string> labels(total);
  int off = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const TwistedSystem& s = parts[i];
    const int m = s.base.size();
    for (int x = 0; x < m; ++x) {
      labels[off + x] = s.base.label(x) + "@" + std::to_string(i);
      alpha[off + x] = off + s.alpha(x);
      beta[off + x] = off + s.beta(x);
      for (int y = 0; y < m; ++y) {
        if (s.base.leq(x, y)) leq.set(off + x, off + y);
        if (s.E.at(x, y)) E.set(off + x, off + y);
      }
    }
    off += m;
  }
  TwistedSystem u;
  u.base = Poset(std::move(leq), std::move(labels));
  u.E = std::move(E);
  u.alpha = Endomap(std::move(alpha));
  u.beta = Endomap(std::move(beta));
  return u;
}

DecomposeOutcome block_decompose(const ConcreteDqRA& c, std::size_t cap) {
  const int n = c.base().size();
  DecomposeOutcome out;

  std::vector<std::vector<int>> classes;
  std::vector<char> seen(n, 0);
  for (int x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::vector<int> cls;
    for (int y = 0; y < n; ++y) {
      if (c.E().at(x, y)) {
        cls.push_back(y);
        seen[y] = 1;
      }
    }
    classes.push_back(std::move(cls));
  }

  std::vector<FinRel> class_rel;  // each class as a full square over the parent carrier
  for (const std::vector<int>& cls : classes) {
    const int m = static_cast<int>(cls.size());
    FinRel leq(m), E(m);
    std::vector<int> alpha(m), beta(m), back(n, -1);
    std::vector<std::string> labels(m);
    for (int i = 0; i < m; ++i) back[cls[i]] = i;
    FinRel square(n);
    for (int i = 0; i < m; ++i) {
      labels[i] = c.base().label(cls[i]);
      alpha[i] = back[c.alpha()(cls[i])];
      beta[i] = back[c.beta()(cls[i])];
      for (int k = 0; k < m; ++k) {
        if (c.base().leq(cls[i], cls[k])) leq.set(i, k);
        E.set(i, k);
        square.set(cls[i], cls[k]);
      }
    }
    TwistedSystem s;
    s.base = Poset(std::move(leq), std::move(labels));
    s.E = std::move(E);
    s.alpha = Endomap(std::move(alpha));
    s.beta = Endomap(std::move(beta));
    out.blocks.push_back(std::move(s));
    class_rel.push_back(std::move(square));
  }

  if (out.blocks.size() == 1) {
    out.product_verified = true;  // restriction is the identity; nothing to check
    return out;
  }

  // The carrier must factor as the product of the block carriers, with every
  // operation acting classwise.  All checks run in parent coordinates, where
  // each block operation is the parent formula restricted to the class square.
  std::size_t product = 1;
  for (const TwistedSystem& s : out.blocks) {
    const UpSetLattice bl = enumerate_upsets(twisted_order(s.base, s.E), cap);
    product *= static_cast<std::size_t>(bl.size());
  }
  if (product != static_cast<std::size_t>(c.size())) return out;

  const UpSetLattice& lat = c.lattice();
  auto block_tilde = [&](const FinRel& r, const FinRel& sq) {
    return graph_compose(converse(complement_in(r, sq)), c.alpha());
  };
  auto block_minus = [&](const FinRel& r, const FinRel& sq) {
    return graph_compose(c.alpha(), converse(complement_in(r, sq)));
  };
  auto block_prime = [&](const FinRel& r, const FinRel& sq) {
    FinRel t = graph_compose(c.beta(), complement_in(r, sq));
    t = graph_compose(c.alpha(), t);
    return graph_compose(t, c.beta());
  };
  for (const FinRel& sq : class_rel) {
    if (!((c.zero() & sq) == block_tilde(c.one() & sq, sq))) return out;
  }
  for (int i = 0; i < lat.size(); ++i) {
    const FinRel& r = lat.at(i);
    for (const FinRel& sq : class_rel) {
      const FinRel ri = r & sq;
      if (!c.order().is_upset(ri)) return out;
      if (!((c.tilde(r) & sq) == block_tilde(ri, sq))) return out;
      if (!((c.minus(r) & sq) == block_minus(ri, sq))) return out;
      if (!((c.prime(r) & sq) == block_prime(ri, sq))) return out;
    }
  }
  for (int i = 0; i < lat.size(); ++i) {
    for (int k = 0; k < lat.size(); ++k) {
      const FinRel fused = c.fuse(lat.at(i), lat.at(k));
      for (const FinRel& sq : class_rel) {
        if (!((fused & sq) == compose(lat.at(i) & sq, lat.at(k) & sq))) return out;
      }
      ++out.pairs_checked;
    }
  }
  out.product_verified = true;
  return out;
}

}  // namespace dqra
