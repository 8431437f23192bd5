#pragma once

// Hall subgroups, E_rho/D_rho, separability and solubility relative to a
// prime set, complement pi-bases, Hall pi-systems, Sylow pi-bases, the
// generation construction, counting and transitivity, and Du's
// characterization.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hallstone/group.hpp"
#include "hallstone/lattice.hpp"

namespace hallstone {

namespace detail {

// All subgroups of order dividing m.  Uses the full lattice for small groups
// (or when it is already built); otherwise runs an order-targeted join
// closure that never leaves the divisors of m.
inline std::shared_ptr<const std::vector<IndexVec>> order_dividing_family(const Group& g, std::uint64_t m) {
  const GroupRep& rep = *g.rep();
  Key key = make_key(Tag::Family, {}, {m});
  {
    std::lock_guard<std::mutex> lock(rep.mu);
    auto it = rep.list_cache.find(key);
    if (it != rep.list_cache.end()) return it->second;
  }
  bool lattice_ready = false;
  {
    std::lock_guard<std::mutex> lock(rep.mu);
    lattice_ready = rep.lattice != nullptr;
  }
  auto family = std::make_shared<std::vector<IndexVec>>();
  if (lattice_ready || (g.order() <= 120 && g.order() <= g.limits().max_lattice)) {
    SubgroupLattice lat = all_subgroups(g);
    for (const IndexVec& s : lat.subgroup_sets())
      if (m % s.size() == 0) family->push_back(s);
  } else {
    // Seeds are the cyclic subgroups of prime-power order dividing m; every
    // subgroup is a join of such seeds (each <x> is the join of the cyclic
    // groups generated by the prime-power parts of x), so closing under
    // seed joins inside the divisors of m finds every subgroup of order m.
    std::map<IndexVec, bool> cyc_seen;
    std::vector<IndexVec> seeds;
    for (std::uint32_t x = 1; x < g.order(); ++x) {
      std::uint64_t ord = rep.elem_order[x];
      if (factorize(ord).size() != 1 || m % ord != 0) continue;
      IndexVec c = closure(rep, {x});
      if (cyc_seen.emplace(c, true).second) seeds.push_back(std::move(c));
    }
    std::map<IndexVec, bool> found;
    std::vector<IndexVec> work;
    found.emplace(IndexVec{0}, true);
    work.push_back(IndexVec{0});
    for (std::size_t w = 0; w < work.size(); ++w) {
      IndexVec h = work[w];
      for (const IndexVec& c : seeds) {
        if (subset(c, h)) continue;
        // the join contains the product set of size |H||C|/|H∩C| and its
        // order is divisible by lcm(|H|, |C|); prune before any closure
        std::uint64_t inter = intersect_sets(h, c).size();
        if (h.size() / inter * c.size() > m ||
            m % std::lcm<std::uint64_t>(h.size(), c.size()) != 0)
          continue;
        IndexVec gens = small_gens(rep, h);
        const IndexVec& cg = small_gens(rep, c);
        gens.insert(gens.end(), cg.begin(), cg.end());
        IndexVec u = closure_bounded(rep, gens, m);
        if (u.empty() || m % u.size() != 0) continue;
        if (found.emplace(u, true).second) work.push_back(u);
      }
    }
    for (auto& [s, v] : found) family->push_back(s);
    std::sort(family->begin(), family->end(), [](const IndexVec& a, const IndexVec& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
  }
  std::lock_guard<std::mutex> lock(rep.mu);
  return rep.list_cache.emplace(std::move(key), family).first->second;
}

inline std::vector<Subgroup> subgroups_of_order(const Group& g, std::uint64_t m) {
  if (m == 1) return {g.trivial_subgroup()};
  if (m == g.order()) return {g.full_subgroup()};
  auto family = order_dividing_family(g, m);
  std::vector<Subgroup> out;
  for (const IndexVec& s : *family)
    if (s.size() == m) out.push_back(g.adopt_subgroup(s));
  return out;
}

// |HK| = |H||K|/|H∩K| always holds for the product set; HK is a subgroup
// (equivalently HK = KH) exactly when the join has that size, so the join
// closure can stop as soon as it grows past it.
inline bool permute(const Subgroup& h, const Subgroup& k) {
  Subgroup meet = intersect(h, k);
  std::uint64_t product_size = h.order() / meet.order() * k.order();
  const GroupRep& rep = *h.parent().rep();
  IndexVec gens = small_gens(rep, h.elem_indices());
  const IndexVec& kg = small_gens(rep, k.elem_indices());
  gens.insert(gens.end(), kg.begin(), kg.end());
  IndexVec joined = closure_bounded(rep, gens, product_size);
  return joined.size() == product_size;
}

}  // namespace detail

// All Hall rho-subgroups: subgroups whose order is the rho-part of |G|.
inline std::vector<Subgroup> hall_subgroups(const Group& g, const PrimeSet& rho) {
  return detail::subgroups_of_order(g, pi_part(g.order(), rho));
}

inline bool satisfies_E(const Group& g, const PrimeSet& rho) { return !hall_subgroups(g, rho).empty(); }

// E_rho plus: every rho-subgroup lies in some Hall rho-subgroup.  Checking
// the maximal rho-subgroups suffices (containment is upward-closed).
inline bool satisfies_D(const Group& g, const PrimeSet& rho) {
  std::uint64_t m = pi_part(g.order(), rho);
  std::vector<Subgroup> halls = detail::subgroups_of_order(g, m);
  if (halls.empty()) return false;
  if (m == g.order()) return true;
  auto family = detail::order_dividing_family(g, m);
  for (std::size_t i = 0; i < family->size(); ++i) {
    const IndexVec& s = (*family)[i];
    bool maximal = true;
    for (const IndexVec& t : *family) {
      if (t.size() <= s.size()) continue;
      if (detail::subset(s, t)) {
        maximal = false;
        break;
      }
    }
    if (!maximal) continue;
    bool covered = false;
    for (const Subgroup& h : halls) {
      if (detail::subset(s, h.elem_indices())) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

// Every composition factor is a pi-group or a pi'-group.
inline bool is_pi_separable(const Group& g, const PrimeSet& pi) {
  for (const CompositionFactor& f : composition_factors(g))
    if (!is_pi_number(f.order, pi) && !is_pi_number(f.order, pi.complement())) return false;
  return true;
}

// pi-separable with every pi-composition factor of prime-power order.
inline bool is_pi_soluble(const Group& g, const PrimeSet& pi) {
  if (!is_pi_separable(g, pi)) return false;
  for (const CompositionFactor& f : composition_factors(g)) {
    if (is_pi_number(f.order, pi) && factorize(f.order).size() > 1) return false;
  }
  return true;
}

// --- complement bases and Hall systems ---------------------------------------

struct ComplementBasis {
  Group group;
  PrimeSet pi;
  std::map<std::uint64_t, Subgroup> complements;  // p in pi' ∩ pi(G)  ->  Hall p'-subgroup
  Subgroup hall_pi_prime;

  std::vector<Subgroup> members() const {
    std::vector<Subgroup> out;
    for (const auto& [p, s] : complements) out.push_back(s);
    out.push_back(hall_pi_prime);
    return out;
  }
};

inline std::vector<ComplementBasis> complement_pi_bases(const Group& g, const PrimeSet& pi) {
  std::vector<std::uint64_t> gprimes = prime_divisors(g.order());
  std::vector<std::uint64_t> pi_prime_in_g;
  for (std::uint64_t p : gprimes)
    if (!pi.contains(p)) pi_prime_in_g.push_back(p);

  std::vector<std::vector<Subgroup>> lists;
  for (std::uint64_t p : pi_prime_in_g) {
    std::uint64_t m = g.order() / pi_part(g.order(), PrimeSet::finite({p}));
    lists.push_back(detail::subgroups_of_order(g, m));
    if (lists.back().empty()) return {};
  }
  std::vector<Subgroup> hall_pp = detail::subgroups_of_order(g, pi_part(g.order(), pi.complement()));
  if (hall_pp.empty()) return {};

  std::vector<ComplementBasis> out;
  std::vector<std::size_t> odo(lists.size(), 0);
  for (;;) {
    for (const Subgroup& hp : hall_pp) {
      ComplementBasis b{g, pi, {}, hp};
      for (std::size_t i = 0; i < lists.size(); ++i) b.complements.emplace(pi_prime_in_g[i], lists[i][odo[i]]);
      out.push_back(std::move(b));
    }
    std::size_t i = 0;
    while (i < odo.size() && ++odo[i] == lists[i].size()) {
      odo[i] = 0;
      ++i;
    }
    if (i == odo.size()) break;
  }
  return out;
}

struct HallSystem {
  Group group;
  PrimeSet pi;
  // rho ⊆ pi(G) with pi∩pi(G) ⊆ rho or rho∩pi = ∅, each to its Hall
  // rho-subgroup.
  std::map<std::vector<std::uint64_t>, Subgroup> members;

  const Subgroup& member(const std::vector<std::uint64_t>& rho) const { return members.at(rho); }

  std::vector<IndexVec> signature() const {
    std::vector<IndexVec> sig;
    for (const auto& [rho, s] : members) sig.push_back(s.elem_indices());
    return sig;
  }

  bool operator==(const HallSystem& o) const { return group.same_rep(o.group) && signature() == o.signature(); }
};

namespace detail {

inline bool subset_of(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::vector<std::vector<std::uint64_t>> admissible_rhos(const Group& g, const PrimeSet& pi) {
  std::vector<std::uint64_t> gprimes = prime_divisors(g.order());
  std::vector<std::uint64_t> pi_in_g = pi.trace(gprimes);
  std::vector<std::vector<std::uint64_t>> out;
  for (std::uint64_t mask = 0; mask < (1ull << gprimes.size()); ++mask) {
    std::vector<std::uint64_t> rho;
    for (std::size_t i = 0; i < gprimes.size(); ++i)
      if (mask & (1ull << i)) rho.push_back(gprimes[i]);
    bool contains_pi = subset_of(pi_in_g, rho);
    bool disjoint = true;
    for (std::uint64_t p : rho)
      if (pi.contains(p)) disjoint = false;
    if (contains_pi || disjoint) out.push_back(std::move(rho));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Prop.-style generation: each admissible Hall subgroup is an intersection
// of basis members.  Verifies the system invariants (member orders and
// pairwise permutability) before returning.
inline HallSystem hall_system_from_basis(const ComplementBasis& basis) {
  const Group& g = basis.group;
  const PrimeSet& pi = basis.pi;
  std::vector<std::uint64_t> gprimes = prime_divisors(g.order());

  HallSystem sys{g, pi, {}};
  for (const auto& rho : detail::admissible_rhos(g, pi)) {
    bool rho_meets_pi = false;
    for (std::uint64_t p : rho)
      if (pi.contains(p)) rho_meets_pi = true;
    Subgroup cur = g.full_subgroup();
    for (std::uint64_t p : gprimes) {
      if (std::binary_search(rho.begin(), rho.end(), p)) continue;
      if (pi.contains(p)) continue;  // complements exist only for p in pi'
      cur = intersect(cur, basis.complements.at(p));
    }
    if (!rho_meets_pi) cur = intersect(cur, basis.hall_pi_prime);
    std::uint64_t expected = pi_part(g.order(), PrimeSet::finite(rho));
    if (cur.order() != expected) {
      throw SystemGenerationError("basis does not generate a system: member for rho=" +
                                  PrimeSet::finite(rho).to_string() + " has order " + std::to_string(cur.order()) +
                                  ", expected " + std::to_string(expected));
    }
    sys.members.emplace(rho, std::move(cur));
  }
  for (auto it = sys.members.begin(); it != sys.members.end(); ++it) {
    for (auto jt = std::next(it); jt != sys.members.end(); ++jt) {
      if (!detail::permute(it->second, jt->second)) {
        throw SystemGenerationError("basis does not generate a system: members for rho=" +
                                    PrimeSet::finite(it->first).to_string() + " and rho=" +
                                    PrimeSet::finite(jt->first).to_string() + " do not permute");
      }
    }
  }
  return sys;
}

struct BasisFailure {
  ComplementBasis basis;
  std::string message;
};

struct HallSystemEnumeration {
  std::vector<HallSystem> systems;           // deduplicated, canonical order
  std::vector<BasisFailure> failures;        // bases that failed to generate
};

inline HallSystemEnumeration enumerate_hall_systems(const Group& g, const PrimeSet& pi) {
  HallSystemEnumeration out;
  std::map<std::vector<IndexVec>, bool> seen;
  for (const ComplementBasis& b : complement_pi_bases(g, pi)) {
    try {
      HallSystem sys = hall_system_from_basis(b);
      if (seen.emplace(sys.signature(), true).second) out.systems.push_back(std::move(sys));
    } catch (const SystemGenerationError& e) {
      out.failures.push_back(BasisFailure{b, e.what()});
    }
  }
  std::sort(out.systems.begin(), out.systems.end(),
            [](const HallSystem& a, const HallSystem& b) { return a.signature() < b.signature(); });
  return out;
}

// prod over basis members S of |G : N_G(S)|.
inline std::uint64_t hall_system_count_formula(const Group& g, const ComplementBasis& basis) {
  std::uint64_t count = 1;
  for (const Subgroup& s : basis.members()) {
    std::uint64_t index = g.order() / normalizer(g, s).order();
    if (index != 0 && count > ~0ull / index) throw Error("hall_system_count_formula: product overflows");
    count *= index;
  }
  return count;
}

// --- Sylow bases --------------------------------------------------------------

struct SylowBasis {
  Group group;
  PrimeSet pi;
  Subgroup hall_pi;
  std::map<std::uint64_t, Subgroup> sylows;  // p in pi' ∩ pi(G) -> Sylow p-subgroup
};

inline SylowBasis sylow_basis_of_system(const HallSystem& sys) {
  const Group& g = sys.group;
  std::vector<std::uint64_t> gprimes = prime_divisors(g.order());
  std::vector<std::uint64_t> pi_in_g = sys.pi.trace(gprimes);
  SylowBasis b{g, sys.pi, sys.member(pi_in_g), {}};
  for (std::uint64_t p : gprimes)
    if (!sys.pi.contains(p)) b.sylows.emplace(p, sys.member({p}));
  return b;
}

// Regenerates the system: each member is the product of the relevant basis
// members, taken in sorted-prime order, validated as a subgroup of the right
// order.
inline HallSystem system_from_sylow_basis(const SylowBasis& b) {
  const Group& g = b.group;
  const detail::GroupRep& rep = *g.rep();
  HallSystem sys{g, b.pi, {}};
  for (const auto& rho : detail::admissible_rhos(g, b.pi)) {
    bool rho_meets_pi = false;
    for (std::uint64_t p : rho)
      if (b.pi.contains(p)) rho_meets_pi = true;
    IndexVec cur{0};
    if (rho_meets_pi) cur = b.hall_pi.elem_indices();
    for (std::uint64_t p : rho) {
      if (b.pi.contains(p)) continue;
      cur = detail::product_set(rep, cur, b.sylows.at(p).elem_indices());
    }
    std::uint64_t expected = pi_part(g.order(), PrimeSet::finite(rho));
    if (cur.size() != expected || !detail::set_is_subgroup(rep, cur)) {
      throw SystemGenerationError("basis members do not permute: product for rho=" +
                                  PrimeSet::finite(rho).to_string() + " is not a Hall subgroup");
    }
    sys.members.emplace(rho, g.adopt_subgroup(std::move(cur)));
  }
  return sys;
}

// The complement pi-basis contained in a system.
inline ComplementBasis basis_of_system(const HallSystem& sys) {
  const Group& g = sys.group;
  std::vector<std::uint64_t> gprimes = prime_divisors(g.order());
  std::vector<std::uint64_t> pi_prime_in_g;
  for (std::uint64_t p : gprimes)
    if (!sys.pi.contains(p)) pi_prime_in_g.push_back(p);
  ComplementBasis b{g, sys.pi, {}, sys.member(pi_prime_in_g)};
  for (std::uint64_t p : pi_prime_in_g) {
    std::vector<std::uint64_t> rho;
    for (std::uint64_t q : gprimes)
      if (q != p) rho.push_back(q);
    b.complements.emplace(p, sys.member(rho));
  }
  return b;
}

inline HallSystem conjugate_system(const HallSystem& sys, const Perm& p) {
  const Group& g = sys.group;
  std::uint32_t gi = g.index_of(p);
  HallSystem out{g, sys.pi, {}};
  for (const auto& [rho, s] : sys.members)
    out.members.emplace(rho, g.adopt_subgroup(detail::conj_subgroup(*g.rep(), s.elem_indices(), gi)));
  return out;
}

// The conjugation orbit of one system equals the full enumeration.
inline bool orbit_is_all(const Group& g, const PrimeSet& pi) {
  HallSystemEnumeration all = enumerate_hall_systems(g, pi);
  if (all.systems.empty()) return true;
  std::map<std::vector<IndexVec>, bool> orbit;
  std::vector<HallSystem> work{all.systems.front()};
  orbit.emplace(work.front().signature(), true);
  for (std::size_t w = 0; w < work.size(); ++w) {
    for (const Perm& gen : g.generators()) {
      HallSystem img = conjugate_system(work[w], gen);
      if (orbit.emplace(img.signature(), true).second) work.push_back(std::move(img));
    }
  }
  if (orbit.size() != all.systems.size()) return false;
  for (const HallSystem& s : all.systems)
    if (!orbit.count(s.signature())) return false;
  return true;
}

// --- Du's characterization and the D_pi theorem --------------------------------

struct DuReport {
  bool separable = false;  // (i)
  bool cond_ii = false;    // E_pi, E_pi' and E_{pi∪{q}}, E_{pi'∪{p}}
  bool cond_iii = false;   // E_pi, E_pi' and E_{p,q}
  bool consistent = false;
};

inline DuReport du_equivalence(const Group& g, const PrimeSet& pi) {
  DuReport r;
  r.separable = is_pi_separable(g, pi);
  std::vector<std::uint64_t> gprimes = prime_divisors(g.order());
  std::vector<std::uint64_t> pi_in_g = pi.trace(gprimes);
  std::vector<std::uint64_t> pi_prime_in_g;
  for (std::uint64_t p : gprimes)
    if (!pi.contains(p)) pi_prime_in_g.push_back(p);

  bool base = satisfies_E(g, pi) && satisfies_E(g, pi.complement());
  r.cond_ii = base;
  r.cond_iii = base;
  if (base) {
    for (std::uint64_t q : pi_prime_in_g)
      if (!satisfies_E(g, pi.with(q))) r.cond_ii = false;
    for (std::uint64_t p : pi_in_g)
      if (!satisfies_E(g, pi.complement().with(p))) r.cond_ii = false;
    for (std::uint64_t p : pi_in_g)
      for (std::uint64_t q : pi_prime_in_g)
        if (!satisfies_E(g, PrimeSet::finite({p, q}))) r.cond_iii = false;
  }
  r.consistent = (r.separable == r.cond_ii) && (r.separable == r.cond_iii);
  return r;
}

struct DpiReport {
  bool two_in_pi = false;
  bool basis_exists = false;
  bool satisfies_d_pi = false;
  bool hypothesis = false;  // basis_exists && satisfies_d_pi
  bool separable = false;
  bool violation = false;   // hypothesis holds (with 2 in pi) but separability fails
};

inline DpiReport dpi_implies_separable_check(const Group& g, const PrimeSet& pi) {
  DpiReport r;
  r.two_in_pi = pi.contains(2);
  r.basis_exists = !complement_pi_bases(g, pi).empty();
  r.satisfies_d_pi = satisfies_D(g, pi);
  r.hypothesis = r.basis_exists && r.satisfies_d_pi;
  r.separable = is_pi_separable(g, pi);
  r.violation = r.two_in_pi && r.hypothesis && !r.separable;
  return r;
}

// The HallSystem invariants for an arbitrary family of subgroups of `host`:
// exactly one member per admissible rho, of the right order, pairwise
// permutable.  Used for the heredity checks.
inline bool is_hall_system_family(const Group& host, const PrimeSet& pi, const std::vector<Subgroup>& members) {
  std::map<IndexVec, bool> dedup;
  std::vector<Subgroup> distinct;
  for (const Subgroup& s : members) {
    require_same_context(host, s, "is_hall_system_family");
    if (dedup.emplace(s.elem_indices(), true).second) distinct.push_back(s);
  }
  auto rhos = detail::admissible_rhos(host, pi);
  if (distinct.size() != rhos.size()) return false;
  for (const auto& rho : rhos) {
    std::uint64_t expected = pi_part(host.order(), PrimeSet::finite(rho));
    std::size_t count = 0;
    for (const Subgroup& s : distinct)
      if (s.order() == expected) ++count;
    if (count != 1) return false;
  }
  for (std::size_t i = 0; i < distinct.size(); ++i)
    for (std::size_t j = i + 1; j < distinct.size(); ++j)
      if (!detail::permute(distinct[i], distinct[j])) return false;
  return true;
}

}  // namespace hallstone
