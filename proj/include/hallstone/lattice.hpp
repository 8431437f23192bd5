#pragma once

// Exhaustive subgroup enumeration.  Soluble subgroups are found by cyclic
// extension (seed with the trivial subgroup, extend upward by prime-order
// coset representatives inside the normalizer); when the group is not
// soluble the family is then saturated by joining with prime-order cyclic
// subgroups, which reaches the perfect subgroups the extension step cannot.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "hallstone/group.hpp"

namespace hallstone {

class SubgroupLattice {
public:
  SubgroupLattice(Group parent, std::shared_ptr<const detail::LatticeData> data)
      : parent_(std::move(parent)), data_(std::move(data)) {}

  const Group& parent() const { return parent_; }
  std::size_t size() const { return data_->subgroups.size(); }
  Subgroup at(std::uint32_t pos) const { return parent_.adopt_subgroup(data_->subgroups[pos]); }
  const std::vector<IndexVec>& subgroup_sets() const { return data_->subgroups; }
  const std::vector<std::vector<std::uint32_t>>& conjugacy_classes() const { return data_->classes; }
  std::uint32_t class_of(std::uint32_t pos) const { return data_->class_of[pos]; }

  std::optional<std::uint32_t> position_of(const Subgroup& s) const {
    auto it = data_->position.find(s.elem_indices());
    if (it == data_->position.end()) return std::nullopt;
    return it->second;
  }

  std::vector<Subgroup> subgroups() const {
    std::vector<Subgroup> out;
    out.reserve(size());
    for (std::uint32_t i = 0; i < size(); ++i) out.push_back(at(i));
    return out;
  }

private:
  Group parent_;
  std::shared_ptr<const detail::LatticeData> data_;
};

namespace detail {

inline std::shared_ptr<const LatticeData> build_lattice(const Group& g) {
  const GroupRep& rep = *g.rep();
  const std::uint32_t n = static_cast<std::uint32_t>(g.order());

  std::map<IndexVec, bool> found;
  std::vector<IndexVec> work;
  auto add = [&](IndexVec s) {
    if (found.emplace(s, true).second) work.push_back(std::move(s));
  };
  add(IndexVec{0});

  // Cyclic extension: from H, adjoin g in N(H) \ H whose coset has prime
  // order; this reaches every soluble subgroup.
  for (std::size_t w = 0; w < work.size(); ++w) {
    IndexVec h = work[w];
    Subgroup hs = g.adopt_subgroup(h);
    Subgroup norm = normalizer(g, hs);
    for (std::uint32_t x : norm.elem_indices()) {
      if (hs.contains_index(x)) continue;
      std::uint32_t y = x;
      std::uint64_t coset_order = 1;
      while (!hs.contains_index(y)) {
        y = mul(rep, y, x);
        ++coset_order;
      }
      if (!is_prime(coset_order)) continue;
      IndexVec gens = small_gens(rep, h);
      gens.push_back(x);
      add(closure(rep, gens));
    }
  }

  // Saturate with joins of prime-power-order cyclic subgroups to pick up the
  // insoluble subgroups the extension step cannot reach.  Every subgroup is
  // a join of such cyclics, so closing the soluble family under these joins
  // is exhaustive.
  if (!is_soluble(g)) {
    std::map<IndexVec, bool> cyc_seen;
    std::vector<IndexVec> seeds;
    for (std::uint32_t x = 1; x < n; ++x) {
      if (factorize(rep.elem_order[x]).size() != 1) continue;
      IndexVec c = closure(rep, {x});
      if (cyc_seen.emplace(c, true).second) seeds.push_back(std::move(c));
    }
    for (std::size_t w = 0; w < work.size(); ++w) {
      IndexVec h = work[w];
      for (const IndexVec& c : seeds) {
        if (subset(c, h)) continue;
        IndexVec gens = small_gens(rep, h);
        const IndexVec& cg = small_gens(rep, c);
        gens.insert(gens.end(), cg.begin(), cg.end());
        add(closure(rep, gens));
      }
    }
  }

  auto data = std::make_shared<LatticeData>();
  for (auto& [s, v] : found) data->subgroups.push_back(s);
  std::sort(data->subgroups.begin(), data->subgroups.end(), [](const IndexVec& a, const IndexVec& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  for (std::uint32_t i = 0; i < data->subgroups.size(); ++i) data->position.emplace(data->subgroups[i], i);

  // Conjugacy classes as orbits under conjugation by the generators.
  const std::uint32_t total = static_cast<std::uint32_t>(data->subgroups.size());
  data->class_of.assign(total, ~0u);
  IndexVec gen_idx;
  for (const Perm& p : rep.generators) gen_idx.push_back(rep.index.at(p));
  for (std::uint32_t i = 0; i < total; ++i) {
    if (data->class_of[i] != ~0u) continue;
    std::uint32_t cls = static_cast<std::uint32_t>(data->classes.size());
    std::vector<std::uint32_t> orbit{i};
    data->class_of[i] = cls;
    for (std::size_t w = 0; w < orbit.size(); ++w) {
      const IndexVec& cur = data->subgroups[orbit[w]];
      for (std::uint32_t gi : gen_idx) {
        IndexVec img = conj_subgroup(rep, cur, gi);
        std::uint32_t pos = data->position.at(img);
        if (data->class_of[pos] == ~0u) {
          data->class_of[pos] = cls;
          orbit.push_back(pos);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    data->classes.push_back(std::move(orbit));
  }
  return data;
}

}  // namespace detail

// Every subgroup of G.  Throws TooLargeError when G.order() exceeds the
// configured lattice cap.
inline SubgroupLattice all_subgroups(const Group& g) {
  const detail::GroupRep& rep = *g.rep();
  if (g.order() > g.limits().max_lattice) throw TooLargeError("lattice too large");
  {
    std::lock_guard<std::mutex> lock(rep.mu);
    if (rep.lattice) return SubgroupLattice(g, rep.lattice);
  }
  std::lock_guard<std::mutex> build(rep.lattice_build_mu);
  {
    std::lock_guard<std::mutex> lock(rep.mu);
    if (rep.lattice) return SubgroupLattice(g, rep.lattice);
  }
  auto data = detail::build_lattice(g);
  std::lock_guard<std::mutex> lock(rep.mu);
  if (!rep.lattice) rep.lattice = data;
  return SubgroupLattice(g, rep.lattice);
}

inline std::vector<Subgroup> normal_subgroups(const Group& g) {
  std::vector<Subgroup> out;
  for (const IndexVec& s : detail::normal_subgroup_sets(*g.rep())) out.push_back(g.adopt_subgroup(s));
  return out;
}

inline std::vector<Subgroup> minimal_normal_subgroups(const Group& g) {
  const auto& sets = detail::normal_subgroup_sets(*g.rep());
  std::vector<Subgroup> out;
  for (const IndexVec& n : sets) {
    if (n.size() == 1) continue;
    bool minimal = true;
    for (const IndexVec& m : sets) {
      if (m.size() == 1 || m.size() >= n.size()) continue;
      if (detail::subset(m, n)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(g.adopt_subgroup(n));
  }
  return out;
}

// Some g with A^g = B; the witness is the first such element in the fixed
// element order.
inline std::optional<Perm> are_conjugate(const Group& g, const Subgroup& a, const Subgroup& b) {
  require_same_context(g, a, "are_conjugate");
  require_same_context(g, b, "are_conjugate");
  if (a.order() != b.order()) return std::nullopt;
  const detail::GroupRep& rep = *g.rep();
  const IndexVec& gens = detail::small_gens(rep, a.elem_indices());
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (std::uint32_t t : gens) {
      if (!b.contains_index(g.conj(t, x))) {
        ok = false;
        break;
      }
    }
    if (ok) return g.elements()[x];
  }
  return std::nullopt;
}

// All X with H <= X <= G, in canonical order (H and G included).
inline std::vector<Subgroup> intermediate_subgroups(const Group& g, const Subgroup& h) {
  require_same_context(g, h, "intermediate_subgroups");
  SubgroupLattice lat = all_subgroups(g);
  const detail::GroupRep& rep = *g.rep();
  detail::Key key = detail::make_key(detail::Tag::Intermediates, h.elem_indices());
  std::shared_ptr<const std::vector<IndexVec>> cached;
  {
    std::lock_guard<std::mutex> lock(rep.mu);
    auto it = rep.list_cache.find(key);
    if (it != rep.list_cache.end()) cached = it->second;
  }
  if (!cached) {
    auto positions = std::make_shared<std::vector<IndexVec>>();
    for (const IndexVec& s : lat.subgroup_sets())
      if (detail::subset(h.elem_indices(), s)) positions->push_back(s);
    std::lock_guard<std::mutex> lock(rep.mu);
    cached = rep.list_cache.emplace(std::move(key), positions).first->second;
  }
  std::vector<Subgroup> out;
  out.reserve(cached->size());
  for (const IndexVec& s : *cached) out.push_back(g.adopt_subgroup(s));
  return out;
}

}  // namespace hallstone
