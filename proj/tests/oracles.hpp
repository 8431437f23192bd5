#pragma once

// Independent test oracles.  These deliberately take different algorithmic
// routes from the library: subgroup enumeration by extending with arbitrary
// elements instead of prime-order cyclic extension, nilpotency through the
// lower central series instead of normal Sylow subgroups, and definition
// re-checks that quantify over whole subgroups instead of generating sets.

#include <algorithm>
#include <map>
#include <vector>

#include "hallstone/group.hpp"
#include "hallstone/lattice.hpp"

namespace oracles {

using hallstone::Group;
using hallstone::IndexVec;
using hallstone::Subgroup;

// Every subgroup, by closing the family of cyclic subgroups under
// one-element extensions.  Intended for small orders only.
inline std::vector<IndexVec> brute_force_subgroup_sets(const Group& g) {
  const auto& rep = *g.rep();
  std::map<IndexVec, bool> found;
  std::vector<IndexVec> work;
  auto add = [&](IndexVec s) {
    if (found.emplace(s, true).second) work.push_back(std::move(s));
  };
  add(IndexVec{0});
  for (std::uint32_t x = 1; x < g.order(); ++x) add(hallstone::detail::closure(rep, {x}));
  for (std::size_t w = 0; w < work.size(); ++w) {
    IndexVec h = work[w];
    for (std::uint32_t x = 1; x < g.order(); ++x) {
      if (std::binary_search(h.begin(), h.end(), x)) continue;
      IndexVec gens = hallstone::detail::small_gens(rep, h);
      gens.push_back(x);
      add(hallstone::detail::closure(rep, gens));
    }
  }
  std::vector<IndexVec> out;
  for (auto& [s, v] : found) out.push_back(s);
  std::sort(out.begin(), out.end(), [](const IndexVec& a, const IndexVec& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

// Nilpotency via the lower central series.
inline bool lower_central_nilpotent(const Subgroup& h) {
  Subgroup gamma = h;
  for (;;) {
    Subgroup next = hallstone::commutator_subgroup(gamma, h);
    if (next.is_trivial()) return true;
    if (next.order() == gamma.order()) return false;
    gamma = next;
  }
}

// Normalizer straight from the definition: conjugation of the whole
// subgroup, not just a generating set.
inline IndexVec definition_normalizer(const Group& g, const Subgroup& h) {
  IndexVec out;
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (std::uint32_t t : h.elem_indices()) {
      if (!h.contains_index(g.conj(t, x))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return out;
}

inline IndexVec definition_centralizer(const Group& g, const Subgroup& h) {
  IndexVec out;
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (std::uint32_t t : h.elem_indices()) {
      if (g.mul(x, t) != g.mul(t, x)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return out;
}

// Commutator closure from the definition, used against derived_subgroup.
inline IndexVec definition_derived(const Group& g, const Subgroup& h) {
  const auto& rep = *g.rep();
  IndexVec gens;
  for (std::uint32_t a : h.elem_indices())
    for (std::uint32_t b : h.elem_indices())
      gens.push_back(g.mul(g.mul(g.mul(g.inv(a), g.inv(b)), a), b));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return hallstone::detail::closure(rep, gens);
}

// Composition factors by always extracting the *largest* maximal normal
// subgroup (the library picks the canonical smallest); Jordan-Hoelder says
// the multiset must agree.
inline std::vector<hallstone::CompositionFactor> composition_factors_largest_first(const Group& g) {
  std::vector<hallstone::CompositionFactor> out;
  Group cur = g;
  while (cur.order() > 1) {
    std::vector<Subgroup> normals = hallstone::normal_subgroups(cur);
    const Subgroup* chosen = nullptr;
    for (const Subgroup& n : normals) {
      if (n.order() == cur.order()) continue;
      bool maximal = true;
      for (const Subgroup& m : normals) {
        if (m.order() == cur.order() || m.order() <= n.order()) continue;
        if (m.contains(n)) {
          maximal = false;
          break;
        }
      }
      if (maximal && (!chosen || n.order() > chosen->order())) chosen = &n;
    }
    hallstone::CompositionFactor f;
    f.order = cur.order() / chosen->order();
    f.abelian = chosen->contains(hallstone::derived_subgroup(cur));
    out.push_back(f);
    cur = chosen->as_group();
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracles
