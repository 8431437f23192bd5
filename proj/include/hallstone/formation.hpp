#pragma once

// The class N^pi of direct products of a pi-group with a nilpotent pi'-group:
// membership decompositions, residuals, Dnormality in both the
// characterization form and the definition form, self-Dnormalizing
// subgroups, projectors and covering subgroups by brute-force definition,
// Carter subgroups, and the verifiers for the two main theorems.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hallstone/group.hpp"
#include "hallstone/hall.hpp"
#include "hallstone/lattice.hpp"

namespace hallstone {

struct NpiDecomposition {
  Subgroup subject;
  Subgroup pi_part;        // O_pi(X)
  Subgroup pi_prime_part;  // O_pi'(X)
  bool member = false;
};

// X in N^pi iff |O_pi(X)| * |O_pi'(X)| = |X| and O_pi'(X) is nilpotent; the
// two cores then form an internal direct product.
inline NpiDecomposition in_npi(const Subgroup& x, const PrimeSet& pi) {
  const Group& g = x.parent();
  const detail::GroupRep& rep = *g.rep();
  detail::Key key = detail::make_key(detail::Tag::InNpi, x.elem_indices(), detail::trace_of(pi, x.order()));
  {
    std::lock_guard<std::mutex> lock(rep.mu);
    auto it = rep.npi_cache.find(key);
    if (it != rep.npi_cache.end()) {
      return NpiDecomposition{x, g.adopt_subgroup(it->second.pi_part), g.adopt_subgroup(it->second.pi_prime_part),
                              it->second.member};
    }
  }
  Subgroup pp = core_o_pi(x, pi);
  Subgroup ppp = core_o_pi(x, pi.complement());
  bool member = pp.order() * ppp.order() == x.order() && is_nilpotent(ppp);
  detail::NpiRaw raw{pp.elem_indices(), ppp.elem_indices(), member};
  std::lock_guard<std::mutex> lock(rep.mu);
  rep.npi_cache.emplace(std::move(key), std::move(raw));
  return NpiDecomposition{x, std::move(pp), std::move(ppp), member};
}

inline NpiDecomposition in_npi(const Group& g, const PrimeSet& pi) { return in_npi(g.full_subgroup(), pi); }

// X^{N^pi}: the intersection of all normal subgroups with quotient in N^pi.
// N^pi is a formation, so the intersection itself qualifies; that is
// asserted before returning.
inline Subgroup npi_residual(const Subgroup& x, const PrimeSet& pi) {
  const Group& parent = x.parent();
  const detail::GroupRep& rep = *parent.rep();
  detail::Key key = detail::make_key(detail::Tag::NpiResidual, x.elem_indices(), detail::trace_of(pi, x.order()));
  {
    std::lock_guard<std::mutex> lock(rep.mu);
    auto it = rep.ivec_cache.find(key);
    if (it != rep.ivec_cache.end()) return Subgroup(parent, it->second);
  }
  Group xg = x.as_group();
  Subgroup res = xg.full_subgroup();
  for (const Subgroup& n : normal_subgroups(xg)) {
    Quotient q = quotient_group(xg, n);
    if (in_npi(q.group(), pi).member) res = intersect(res, n);
  }
  if (!in_npi(quotient_group(xg, res).group(), pi).member)
    throw Error("internal error: N^pi residual quotient is not in N^pi");
  Subgroup lifted = lift(parent, res);
  std::lock_guard<std::mutex> lock(rep.mu);
  auto [it, ins] = rep.ivec_cache.emplace(std::move(key), lifted.elem_indices());
  return Subgroup(parent, it->second);
}

inline Subgroup npi_residual(const Group& g, const PrimeSet& pi) { return npi_residual(g.full_subgroup(), pi); }

// Subgroups in N^pi that are maximal under inclusion among N^pi-subgroups.
inline std::vector<Subgroup> npi_maximal_subgroups(const Group& g, const PrimeSet& pi) {
  const detail::GroupRep& rep = *g.rep();
  detail::Key key = detail::make_key(detail::Tag::NpiMax, {}, detail::trace_of(pi, g.order()));
  std::shared_ptr<const std::vector<IndexVec>> cached;
  {
    std::lock_guard<std::mutex> lock(rep.mu);
    auto it = rep.list_cache.find(key);
    if (it != rep.list_cache.end()) cached = it->second;
  }
  if (!cached) {
    SubgroupLattice lat = all_subgroups(g);
    std::vector<IndexVec> members;
    for (const IndexVec& s : lat.subgroup_sets())
      if (in_npi(g.adopt_subgroup(s), pi).member) members.push_back(s);
    auto maximal = std::make_shared<std::vector<IndexVec>>();
    for (const IndexVec& s : members) {
      bool is_max = true;
      for (const IndexVec& t : members) {
        if (t.size() <= s.size()) continue;
        if (detail::subset(s, t)) {
          is_max = false;
          break;
        }
      }
      if (is_max) maximal->push_back(s);
    }
    std::lock_guard<std::mutex> lock(rep.mu);
    cached = rep.list_cache.emplace(std::move(key), maximal).first->second;
  }
  std::vector<Subgroup> out;
  for (const IndexVec& s : *cached) out.push_back(g.adopt_subgroup(s));
  return out;
}

// --- Dnormality ---------------------------------------------------------------

// Characterization form: for |pi| <= 1 the class is N and Dnormal means
// normal; for |pi| >= 2, H is N^pi-Dnormal in K iff O^pi(H) is normal in K
// and O^pi(K) normalizes H.  A cofinite pi always takes the >= 2 branch.
inline bool is_dnormal(const Subgroup& k, const Subgroup& h, const PrimeSet& pi) {
  require_same_context(k, h, "is_dnormal");
  if (!k.contains(h)) throw Error("is_dnormal: H is not contained in K");
  if (pi.size_class() <= 1) return is_normalized_by(h, k);
  Subgroup h_res = residual_o_pi(h, pi);
  if (!is_normalized_by(h_res, k)) return false;
  Subgroup k_res = residual_o_pi(k, pi);
  return is_normalized_by(h, k_res);
}

inline bool is_dnormal(const Group& g, const Subgroup& h, const PrimeSet& pi) {
  return is_dnormal(g.full_subgroup(), h, pi);
}

// Definition form: for every Sylow subgroup K_p of K that reduces into H
// (K_p ∩ H is a Sylow p-subgroup of H), K_p normalizes H when p is in pi'
// and normalizes O^pi(H) when p is in pi.  The characteristic condition
// pi(|K:H|) ⊆ Char(N^pi) is vacuous since Char(N^pi) is the set of all
// primes.
inline bool is_dnormal_reduction(const Subgroup& k, const Subgroup& h, const PrimeSet& pi) {
  require_same_context(k, h, "is_dnormal_reduction");
  if (!k.contains(h)) throw Error("is_dnormal_reduction: H is not contained in K");
  if (pi.size_class() <= 1) return is_normalized_by(h, k);
  const Group& parent = k.parent();
  Group kg = k.as_group();
  Subgroup h_res = residual_o_pi(h, pi);
  for (std::uint64_t p : prime_divisors(k.order())) {
    std::uint64_t h_p_part = pi_part(h.order(), PrimeSet::finite({p}));
    for (const Subgroup& syl : hall_subgroups(kg, PrimeSet::finite({p}))) {
      Subgroup p_sub = lift(parent, syl);
      if (intersect(p_sub, h).order() != h_p_part) continue;  // does not reduce into H
      if (pi.contains(p)) {
        if (!is_normalized_by(h_res, p_sub)) return false;
      } else {
        if (!is_normalized_by(h, p_sub)) return false;
      }
    }
  }
  return true;
}

inline bool is_dnormal_reduction(const Group& g, const Subgroup& h, const PrimeSet& pi) {
  return is_dnormal_reduction(g.full_subgroup(), h, pi);
}

// H is Dnormal in no strictly larger intermediate subgroup.
inline bool is_self_dnormalizing(const Group& g, const Subgroup& h, const PrimeSet& pi) {
  require_same_context(g, h, "is_self_dnormalizing");
  for (const Subgroup& k : intermediate_subgroups(g, h)) {
    if (k.order() == h.order()) continue;
    if (is_dnormal(k, h, pi)) return false;
  }
  return true;
}

// --- projectors and covering subgroups ----------------------------------------

// U is a projector iff its image in G/K is N^pi-maximal in G/K for every
// normal K.  The K = 1 case cuts the candidate list to the N^pi-maximal
// subgroups; the remaining normals are taken in decreasing order so most
// survivors are decided at the maximal normal subgroup.
inline std::vector<Subgroup> projectors(const Group& g, const PrimeSet& pi) {
  const detail::GroupRep& rep = *g.rep();
  detail::Key key = detail::make_key(detail::Tag::Proj, {}, detail::trace_of(pi, g.order()));
  std::shared_ptr<const std::vector<IndexVec>> cached;
  {
    std::lock_guard<std::mutex> lock(rep.mu);
    auto it = rep.list_cache.find(key);
    if (it != rep.list_cache.end()) cached = it->second;
  }
  if (!cached) {
    std::vector<Subgroup> candidates = npi_maximal_subgroups(g, pi);
    std::vector<Subgroup> normals = normal_subgroups(g);
    std::sort(normals.begin(), normals.end(), [](const Subgroup& a, const Subgroup& b) {
      if (a.order() != b.order()) return a.order() > b.order();
      return a.elem_indices() < b.elem_indices();
    });
    for (const Subgroup& k : normals) {
      if (candidates.empty()) break;
      if (k.is_trivial() || k.is_full()) continue;
      Quotient q = quotient_group(g, k);
      std::map<IndexVec, bool> qmax;
      for (const Subgroup& m : npi_maximal_subgroups(q.group(), pi)) qmax.emplace(m.elem_indices(), true);
      std::vector<Subgroup> next;
      for (const Subgroup& u : candidates)
        if (qmax.count(q.image_of(u).elem_indices())) next.push_back(u);
      candidates = std::move(next);
    }
    auto list = std::make_shared<std::vector<IndexVec>>();
    for (const Subgroup& u : candidates) list->push_back(u.elem_indices());
    std::lock_guard<std::mutex> lock(rep.mu);
    cached = rep.list_cache.emplace(std::move(key), list).first->second;
  }
  std::vector<Subgroup> out;
  for (const IndexVec& s : *cached) out.push_back(g.adopt_subgroup(s));
  return out;
}

// E is covering iff E is a projector of every X with E <= X <= G.  The X = G
// case means covering subgroups are projectors of G, so those are the only
// candidates.
inline std::vector<Subgroup> covering_subgroups(const Group& g, const PrimeSet& pi) {
  const detail::GroupRep& rep = *g.rep();
  detail::Key key = detail::make_key(detail::Tag::Cov, {}, detail::trace_of(pi, g.order()));
  std::shared_ptr<const std::vector<IndexVec>> cached;
  {
    std::lock_guard<std::mutex> lock(rep.mu);
    auto it = rep.list_cache.find(key);
    if (it != rep.list_cache.end()) cached = it->second;
  }
  if (!cached) {
    auto list = std::make_shared<std::vector<IndexVec>>();
    for (const Subgroup& e : projectors(g, pi)) {
      bool covering = true;
      for (const Subgroup& x : intermediate_subgroups(g, e)) {
        if (x.is_full()) continue;
        Group xg = x.as_group();
        IndexVec e_in_x = restrict_to(xg, e).elem_indices();
        bool found = false;
        for (const Subgroup& p : projectors(xg, pi)) {
          if (p.elem_indices() == e_in_x) {
            found = true;
            break;
          }
        }
        if (!found) {
          covering = false;
          break;
        }
      }
      if (covering) list->push_back(e.elem_indices());
    }
    std::lock_guard<std::mutex> lock(rep.mu);
    cached = rep.list_cache.emplace(std::move(key), list).first->second;
  }
  std::vector<Subgroup> out;
  for (const IndexVec& s : *cached) out.push_back(g.adopt_subgroup(s));
  return out;
}

// Property (*): H ∩ X^{N^pi} <= (X^{N^pi})' for every intermediate X.
inline bool star_property(const Group& g, const Subgroup& h, const PrimeSet& pi) {
  require_same_context(g, h, "star_property");
  for (const Subgroup& x : intermediate_subgroups(g, h)) {
    Subgroup res = npi_residual(x, pi);
    Subgroup lhs = intersect(h, res);
    if (!derived_subgroup(res).contains(lhs)) return false;
  }
  return true;
}

// Self-normalizing nilpotent subgroups.
inline std::vector<Subgroup> carter_subgroups(const Group& g) {
  std::vector<Subgroup> out;
  for (const Subgroup& s : all_subgroups(g).subgroups()) {
    if (!is_nilpotent(s)) continue;
    if (normalizer(g, s).order() == s.order()) out.push_back(s);
  }
  return out;
}

// Lemma-style decomposition of N^pi-maximal subgroups in a pi-separable
// group: M = M_pi' * C for some Hall pi-subgroup C of C_G(M_pi'), and any two
// N^pi-maximal subgroups with conjugate pi'-parts are conjugate.
inline bool lem3_decomposition_check(const Group& g, const PrimeSet& pi) {
  std::vector<Subgroup> maxes = npi_maximal_subgroups(g, pi);
  std::vector<NpiDecomposition> decs;
  for (const Subgroup& m : maxes) {
    NpiDecomposition d = in_npi(m, pi);
    if (!d.member) return false;
    Subgroup cent = centralizer(g, d.pi_prime_part);
    Group cg = cent.as_group();
    bool witnessed = false;
    for (const Subgroup& c : hall_subgroups(cg, pi)) {
      Subgroup c_in_g = lift(g, c);
      IndexVec prod = detail::product_set(*g.rep(), d.pi_prime_part.elem_indices(), c_in_g.elem_indices());
      if (prod == m.elem_indices()) {
        witnessed = true;
        break;
      }
    }
    if (!witnessed) return false;
    decs.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < maxes.size(); ++i) {
    for (std::size_t j = i + 1; j < maxes.size(); ++j) {
      if (are_conjugate(g, decs[i].pi_prime_part, decs[j].pi_prime_part)) {
        if (!are_conjugate(g, maxes[i], maxes[j])) return false;
      }
    }
  }
  return true;
}

// --- theorem verifiers ---------------------------------------------------------

struct ProjectorReport {
  Group group;
  PrimeSet pi;
  std::vector<Subgroup> projectors;
  std::vector<Subgroup> covering;
  std::vector<std::vector<std::uint32_t>> classes;  // partition of projector indices
  bool nonempty = false;
  bool equal_sets = false;
  bool single_class = false;
};

inline ProjectorReport projector_report(const Group& g, const PrimeSet& pi) {
  ProjectorReport r{g, pi, projectors(g, pi), covering_subgroups(g, pi), {}, false, false, false};
  r.nonempty = !r.projectors.empty();
  r.equal_sets = r.projectors.size() == r.covering.size();
  if (r.equal_sets) {
    for (std::size_t i = 0; i < r.projectors.size(); ++i)
      if (r.projectors[i] != r.covering[i]) r.equal_sets = false;
  }
  SubgroupLattice lat = all_subgroups(g);
  std::map<std::uint32_t, std::vector<std::uint32_t>> by_class;
  for (std::uint32_t i = 0; i < r.projectors.size(); ++i)
    by_class[lat.class_of(*lat.position_of(r.projectors[i]))].push_back(i);
  for (auto& [cls, idxs] : by_class) r.classes.push_back(idxs);
  r.single_class = r.nonempty && r.classes.size() == 1;
  return r;
}

struct Theorem1Report {
  ProjectorReport proj;
  bool hypothesis = false;  // G is pi'-soluble
  bool conclusion = false;  // nonempty, proj = cov, single conjugacy class
  bool violation = false;
};

inline Theorem1Report verify_theorem1(const Group& g, const PrimeSet& pi) {
  Theorem1Report r{projector_report(g, pi), false, false, false};
  r.hypothesis = is_pi_soluble(g, pi.complement());
  r.conclusion = r.proj.nonempty && r.proj.equal_sets && r.proj.single_class;
  r.violation = r.hypothesis && !r.conclusion;
  return r;
}

struct Theorem2Report {
  bool hypothesis = false;
  std::vector<Subgroup> as_projector;         // (1)
  std::vector<Subgroup> as_covering;          // (2)
  std::vector<Subgroup> as_self_dnormalizing; // (3): in N^pi, self-Dnormalizing, property (*)
  bool pairwise_equal = false;
  bool prop2_ok = false;  // projectors are self-Dnormalizing
  bool cor2_ok = false;   // self-Dnormalizing N^pi-members are N^pi-maximal
  bool lem5_ok = false;   // H ∩ G^{N^pi} <= (G^{N^pi})' for projectors H
  bool conclusion = false;
  bool violation = false;
};

inline Theorem2Report verify_theorem2(const Group& g, const PrimeSet& pi) {
  Theorem2Report r;
  r.hypothesis = is_pi_soluble(g, pi.complement());
  r.as_projector = projectors(g, pi);
  r.as_covering = covering_subgroups(g, pi);

  SubgroupLattice lat = all_subgroups(g);
  std::map<IndexVec, bool> npi_max_set;
  for (const Subgroup& m : npi_maximal_subgroups(g, pi)) npi_max_set.emplace(m.elem_indices(), true);
  r.cor2_ok = true;
  for (std::uint32_t i = 0; i < lat.size(); ++i) {
    Subgroup h = lat.at(i);
    if (!in_npi(h, pi).member) continue;
    if (!is_self_dnormalizing(g, h, pi)) continue;
    if (!npi_max_set.count(h.elem_indices())) r.cor2_ok = false;
    if (star_property(g, h, pi)) r.as_self_dnormalizing.push_back(h);
  }

  auto equal_lists = [](const std::vector<Subgroup>& a, const std::vector<Subgroup>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return false;
    return true;
  };
  r.pairwise_equal = equal_lists(r.as_projector, r.as_covering) && equal_lists(r.as_projector, r.as_self_dnormalizing);

  r.prop2_ok = true;
  for (const Subgroup& h : r.as_projector)
    if (!is_self_dnormalizing(g, h, pi)) r.prop2_ok = false;

  Subgroup res = npi_residual(g, pi);
  Subgroup res_derived = derived_subgroup(res);
  r.lem5_ok = true;
  for (const Subgroup& h : r.as_projector)
    if (!res_derived.contains(intersect(h, res))) r.lem5_ok = false;

  r.conclusion = r.pairwise_equal && r.prop2_ok && r.cor2_ok && r.lem5_ok;
  r.violation = r.hypothesis && !r.conclusion;
  return r;
}

}  // namespace hallstone
