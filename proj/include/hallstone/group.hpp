#pragma once

// Exact permutation-group arithmetic.  A Group owns a sorted list of all its
// elements (generated once, capped); a Subgroup is a sorted vector of indices
// into its parent's element list, which makes equality, intersection and
// containment plain vector operations.  Groups are immutable after
// construction; the per-group caches behind them are guarded so concurrent
// readers are safe.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hallstone/errors.hpp"
#include "hallstone/perm.hpp"
#include "hallstone/primes.hpp"

namespace hallstone {

struct Limits {
  std::uint64_t max_order = 10000;  // element-enumeration cap
  std::uint64_t max_lattice = 500;  // max group order for full lattice enumeration
};

using IndexVec = std::vector<std::uint32_t>;

class Group;
class Subgroup;

namespace detail {

using Key = std::vector<std::uint64_t>;
inline constexpr std::uint64_t kKeySep = ~0ull;

enum class Tag : std::uint64_t {
  Gens = 1,
  Normalizer,
  Centralizer,
  Derived,
  Context,
  Quotient,
  Family,        // subgroups of order dividing m
  OPiCore,
  OPiResidual,
  NpiResidual,
  InNpi,
  NpiMax,
  Proj,
  Cov,
  Intermediates,
};

inline Key make_key(Tag tag, const IndexVec& v) {
  Key k;
  k.reserve(v.size() + 1);
  k.push_back(static_cast<std::uint64_t>(tag));
  for (auto i : v) k.push_back(i);
  return k;
}

inline Key make_key(Tag tag, const IndexVec& v, const std::vector<std::uint64_t>& trace) {
  Key k = make_key(tag, v);
  k.push_back(kKeySep);
  for (auto p : trace) k.push_back(p);
  return k;
}

// Full-lattice data kept independent of the Subgroup type; wrapped by the
// public SubgroupLattice.
struct LatticeData {
  std::vector<IndexVec> subgroups;  // canonical order: (size, lexicographic)
  std::map<IndexVec, std::uint32_t> position;
  std::vector<std::vector<std::uint32_t>> classes;  // conjugacy classes of positions
  std::vector<std::uint32_t> class_of;              // position -> class id
};

struct GroupRep;

struct QuotientRep {
  std::shared_ptr<const GroupRep> qrep;
  std::vector<std::uint32_t> elem_map;  // source element index -> quotient element index
};

struct NpiRaw {
  IndexVec pi_part;
  IndexVec pi_prime_part;
  bool member = false;
};

struct GroupRep {
  std::uint32_t degree = 1;
  Limits limits;
  std::vector<Perm> generators;
  std::vector<Perm> elements;  // sorted; elements[0] is the identity
  std::unordered_map<Perm, std::uint32_t, PermHash> index;
  std::vector<std::uint32_t> inverse;
  std::vector<std::uint64_t> elem_order;
  std::vector<std::uint16_t> table;  // multiplication table when order <= kTableLimit
  bool has_table = false;

  mutable std::mutex mu;               // guards all cache maps below
  mutable std::mutex lattice_build_mu; // serializes the expensive builds
  mutable std::mutex normals_build_mu;
  mutable std::shared_ptr<const LatticeData> lattice;
  mutable std::shared_ptr<const std::vector<IndexVec>> normals;
  mutable std::map<Key, IndexVec> ivec_cache;
  mutable std::map<Key, std::shared_ptr<const GroupRep>> context_cache;
  mutable std::map<Key, std::shared_ptr<const QuotientRep>> quotient_cache;
  mutable std::map<Key, std::shared_ptr<const std::vector<IndexVec>>> list_cache;
  mutable std::map<Key, NpiRaw> npi_cache;

  std::uint32_t order_u32() const { return static_cast<std::uint32_t>(elements.size()); }
};

inline constexpr std::uint64_t kTableLimit = 1024;

inline std::uint32_t mul(const GroupRep& r, std::uint32_t i, std::uint32_t j) {
  if (r.has_table) return r.table[static_cast<std::size_t>(i) * r.elements.size() + j];
  return r.index.at(r.elements[i] * r.elements[j]);
}

inline std::uint32_t inv(const GroupRep& r, std::uint32_t i) { return r.inverse[i]; }

inline std::uint32_t conj(const GroupRep& r, std::uint32_t x, std::uint32_t g) {
  return mul(r, mul(r, inv(r, g), x), g);
}

// Subgroup generated by the given element indices (identity is always
// included).  Returns a sorted index vector.
inline IndexVec closure(const GroupRep& r, const IndexVec& gens) {
  const std::uint32_t n = r.order_u32();
  std::vector<char> seen(n, 0);
  IndexVec work;
  seen[0] = 1;
  work.push_back(0);
  for (std::size_t w = 0; w < work.size(); ++w) {
    std::uint32_t x = work[w];
    for (std::uint32_t g : gens) {
      std::uint32_t y = mul(r, x, g);
      if (!seen[y]) {
        seen[y] = 1;
        work.push_back(y);
      }
    }
  }
  std::sort(work.begin(), work.end());
  return work;
}

// Closure that abandons the computation once the result would exceed
// `bound` elements; an empty vector signals the overflow.
inline IndexVec closure_bounded(const GroupRep& r, const IndexVec& gens, std::uint64_t bound) {
  const std::uint32_t n = r.order_u32();
  std::vector<char> seen(n, 0);
  IndexVec work;
  seen[0] = 1;
  work.push_back(0);
  for (std::size_t w = 0; w < work.size(); ++w) {
    std::uint32_t x = work[w];
    for (std::uint32_t g : gens) {
      std::uint32_t y = mul(r, x, g);
      if (!seen[y]) {
        if (work.size() >= bound) return {};
        seen[y] = 1;
        work.push_back(y);
      }
    }
  }
  std::sort(work.begin(), work.end());
  return work;
}

inline IndexVec product_set(const GroupRep& r, const IndexVec& a, const IndexVec& b) {
  const std::uint32_t n = r.order_u32();
  std::vector<char> seen(n, 0);
  for (std::uint32_t x : a)
    for (std::uint32_t y : b) seen[mul(r, x, y)] = 1;
  IndexVec out;
  for (std::uint32_t i = 0; i < n; ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

inline bool set_is_subgroup(const GroupRep& r, const IndexVec& s) {
  if (s.empty() || s[0] != 0) return false;
  std::vector<char> in(r.order_u32(), 0);
  for (std::uint32_t x : s) in[x] = 1;
  for (std::uint32_t x : s)
    for (std::uint32_t y : s)
      if (!in[mul(r, x, y)]) return false;
  return true;
}

inline IndexVec conj_subgroup(const GroupRep& r, const IndexVec& s, std::uint32_t g) {
  IndexVec out;
  out.reserve(s.size());
  for (std::uint32_t x : s) out.push_back(conj(r, x, g));
  std::sort(out.begin(), out.end());
  return out;
}

inline IndexVec intersect_sets(const IndexVec& a, const IndexVec& b) {
  IndexVec out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool subset(const IndexVec& a, const IndexVec& b) {  // a <= b
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Small generating set for a subgroup given by its full element list.
inline IndexVec small_gens_uncached(const GroupRep& r, const IndexVec& s) {
  IndexVec gens;
  IndexVec cur{0};
  for (std::uint32_t x : s) {
    if (std::binary_search(cur.begin(), cur.end(), x)) continue;
    gens.push_back(x);
    cur = closure(r, gens);
    if (cur.size() == s.size()) break;
  }
  return gens;
}

inline const IndexVec& small_gens(const GroupRep& r, const IndexVec& s) {
  Key key = make_key(Tag::Gens, s);
  {
    std::lock_guard<std::mutex> lock(r.mu);
    auto it = r.ivec_cache.find(key);
    if (it != r.ivec_cache.end()) return it->second;
  }
  IndexVec g = small_gens_uncached(r, s);
  std::lock_guard<std::mutex> lock(r.mu);
  return r.ivec_cache.emplace(std::move(key), std::move(g)).first->second;
}

// Normal closure of `start` under conjugation by `conj_gens`.
inline IndexVec normal_closure(const GroupRep& r, IndexVec start, const IndexVec& conj_gens) {
  IndexVec gens = std::move(start);
  IndexVec cur = closure(r, gens);
  for (;;) {
    bool grew = false;
    IndexVec add;
    for (std::uint32_t t : gens) {
      for (std::uint32_t g : conj_gens) {
        std::uint32_t c = conj(r, t, g);
        if (!std::binary_search(cur.begin(), cur.end(), c)) add.push_back(c);
      }
    }
    if (!add.empty()) {
      gens.insert(gens.end(), add.begin(), add.end());
      cur = closure(r, gens);
      grew = true;
    }
    if (!grew) return cur;
  }
}

// All normal subgroups (as sorted index vectors) in canonical order.  Joins
// of elementwise normal closures; no lattice required.
inline const std::vector<IndexVec>& normal_subgroup_sets(const GroupRep& r);

inline std::shared_ptr<const GroupRep> make_rep_from_elements(std::uint32_t degree, std::vector<Perm> gens,
                                                              std::vector<Perm> sorted_elements, Limits limits);

}  // namespace detail

class Group {
public:
  Group() = default;

  // Closure of the generators under composition; throws TooLargeError when
  // the closure exceeds limits.max_order, and Error on degree mismatch.
  static Group generate(std::uint32_t degree, std::vector<Perm> generators, Limits limits = {}) {
    if (degree < 1) throw Error("degree must be positive");
    for (const Perm& g : generators)
      if (g.degree() != degree)
        throw Error("generator degree " + std::to_string(g.degree()) + " does not match group degree " +
                    std::to_string(degree));
    std::unordered_map<Perm, std::uint32_t, PermHash> seen;
    std::vector<Perm> elems{Perm(degree)};
    seen.emplace(elems[0], 0);
    for (std::size_t w = 0; w < elems.size(); ++w) {
      Perm x = elems[w];
      for (const Perm& g : generators) {
        Perm y = x * g;
        if (seen.emplace(y, 0).second) {
          elems.push_back(std::move(y));
          if (elems.size() > limits.max_order) throw TooLargeError("group too large");
        }
      }
    }
    std::sort(elems.begin(), elems.end());
    return Group(detail::make_rep_from_elements(degree, std::move(generators), std::move(elems), limits));
  }

  std::uint32_t degree() const { return rep_->degree; }
  std::uint64_t order() const { return rep_->elements.size(); }
  const std::vector<Perm>& elements() const { return rep_->elements; }
  const std::vector<Perm>& generators() const { return rep_->generators; }
  const Limits& limits() const { return rep_->limits; }

  bool same_rep(const Group& o) const { return rep_ == o.rep_; }

  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const { return detail::mul(*rep_, i, j); }
  std::uint32_t inv(std::uint32_t i) const { return detail::inv(*rep_, i); }
  std::uint32_t conj(std::uint32_t x, std::uint32_t g) const { return detail::conj(*rep_, x, g); }
  std::uint64_t element_order(std::uint32_t i) const { return rep_->elem_order[i]; }

  std::optional<std::uint32_t> find_index(const Perm& p) const {
    auto it = rep_->index.find(p);
    if (it == rep_->index.end()) return std::nullopt;
    return it->second;
  }

  std::uint32_t index_of(const Perm& p) const {
    auto i = find_index(p);
    if (!i) throw MembershipError("not a member: " + p.cycle_string());
    return *i;
  }

  bool contains_perm(const Perm& p) const { return find_index(p).has_value(); }

  Subgroup full_subgroup() const;
  Subgroup trivial_subgroup() const;
  Subgroup subgroup_from_indices(const IndexVec& generator_indices) const;
  // Adopt an already-closed, sorted element set as a Subgroup.
  Subgroup adopt_subgroup(IndexVec sorted_elements) const;

  const std::shared_ptr<const detail::GroupRep>& rep() const { return rep_; }
  explicit Group(std::shared_ptr<const detail::GroupRep> rep) : rep_(std::move(rep)) {}

private:
  std::shared_ptr<const detail::GroupRep> rep_;
};

class Subgroup {
public:
  Subgroup() = default;
  Subgroup(Group parent, IndexVec sorted_elements) : parent_(std::move(parent)), elems_(std::move(sorted_elements)) {}

  const Group& parent() const { return parent_; }
  std::uint64_t order() const { return elems_.size(); }
  const IndexVec& elem_indices() const { return elems_; }

  std::vector<Perm> element_perms() const {
    std::vector<Perm> out;
    out.reserve(elems_.size());
    for (std::uint32_t i : elems_) out.push_back(parent_.elements()[i]);
    return out;
  }

  bool contains_index(std::uint32_t i) const { return std::binary_search(elems_.begin(), elems_.end(), i); }
  bool contains(const Subgroup& other) const {  // other <= this
    return detail::subset(other.elems_, elems_);
  }
  bool is_trivial() const { return elems_.size() == 1; }
  bool is_full() const { return elems_.size() == parent_.order(); }

  // The subgroup as a group in its own right, sharing the permutation
  // domain of the parent (memoized per parent).
  Group as_group() const;

  bool operator==(const Subgroup& o) const { return parent_.same_rep(o.parent_) && elems_ == o.elems_; }
  bool operator!=(const Subgroup& o) const { return !(*this == o); }

private:
  Group parent_;
  IndexVec elems_;
};

// Canonical subgroup order: by order, then lexicographic element list.
inline bool canonical_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elem_indices() < b.elem_indices();
}

inline void require_same_context(const Group& g, const Subgroup& s, const char* what) {
  if (!g.same_rep(s.parent())) throw Error(std::string(what) + ": subgroup belongs to a different group");
}

inline void require_same_context(const Subgroup& a, const Subgroup& b, const char* what) {
  if (!a.parent().same_rep(b.parent())) throw Error(std::string(what) + ": subgroups belong to different groups");
}

namespace detail {

inline std::shared_ptr<const GroupRep> make_rep_from_elements(std::uint32_t degree, std::vector<Perm> gens,
                                                              std::vector<Perm> sorted_elements, Limits limits) {
  auto rep = std::make_shared<GroupRep>();
  rep->degree = degree;
  rep->limits = limits;
  rep->generators = std::move(gens);
  rep->elements = std::move(sorted_elements);
  const std::uint32_t n = rep->order_u32();
  rep->index.reserve(n * 2);
  for (std::uint32_t i = 0; i < n; ++i) rep->index.emplace(rep->elements[i], i);
  rep->inverse.resize(n);
  rep->elem_order.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    rep->inverse[i] = rep->index.at(rep->elements[i].inverse());
    rep->elem_order[i] = rep->elements[i].order();
  }
  if (n <= kTableLimit) {
    rep->table.resize(static_cast<std::size_t>(n) * n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        rep->table[static_cast<std::size_t>(i) * n + j] =
            static_cast<std::uint16_t>(rep->index.at(rep->elements[i] * rep->elements[j]));
    rep->has_table = true;
  }
  return rep;
}

inline const std::vector<IndexVec>& normal_subgroup_sets(const GroupRep& r) {
  {
    std::lock_guard<std::mutex> lock(r.mu);
    if (r.normals) return *r.normals;
  }
  std::lock_guard<std::mutex> build(r.normals_build_mu);
  {
    std::lock_guard<std::mutex> lock(r.mu);
    if (r.normals) return *r.normals;
  }
  const std::uint32_t n = r.order_u32();
  IndexVec all_gens;
  for (const Perm& g : r.generators) all_gens.push_back(r.index.at(g));
  std::sort(all_gens.begin(), all_gens.end());
  all_gens.erase(std::unique(all_gens.begin(), all_gens.end()), all_gens.end());

  // Seeds: distinct normal closures of single elements.
  std::map<IndexVec, bool> seen;
  std::vector<IndexVec> seeds;
  for (std::uint32_t x = 1; x < n; ++x) {
    IndexVec ncl = normal_closure(r, {x}, all_gens);
    if (seen.emplace(ncl, true).second) seeds.push_back(ncl);
  }
  // Every normal subgroup is a join of seeds; products of normal subgroups
  // are already subgroups, so joins are plain set products.
  std::map<IndexVec, bool> found;
  std::vector<IndexVec> work;
  found.emplace(IndexVec{0}, true);
  work.push_back(IndexVec{0});
  for (const auto& s : seeds) {
    if (found.emplace(s, true).second) work.push_back(s);
  }
  for (std::size_t w = 0; w < work.size(); ++w) {
    IndexVec cur = work[w];
    for (const auto& s : seeds) {
      if (subset(s, cur)) continue;
      IndexVec j = product_set(r, cur, s);
      if (found.emplace(j, true).second) work.push_back(j);
    }
  }
  auto result = std::make_shared<std::vector<IndexVec>>();
  for (auto& [k, v] : found) result->push_back(k);
  std::sort(result->begin(), result->end(), [](const IndexVec& a, const IndexVec& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::lock_guard<std::mutex> lock(r.mu);
  if (!r.normals) r.normals = result;
  return *r.normals;
}

}  // namespace detail

inline Subgroup Group::full_subgroup() const {
  IndexVec all(order());
  for (std::uint32_t i = 0; i < order(); ++i) all[i] = i;
  return Subgroup(*this, std::move(all));
}

inline Subgroup Group::trivial_subgroup() const { return Subgroup(*this, IndexVec{0}); }

inline Subgroup Group::subgroup_from_indices(const IndexVec& generator_indices) const {
  return Subgroup(*this, detail::closure(*rep_, generator_indices));
}

inline Subgroup Group::adopt_subgroup(IndexVec sorted_elements) const {
  assert(std::is_sorted(sorted_elements.begin(), sorted_elements.end()));
  return Subgroup(*this, std::move(sorted_elements));
}

inline Group Subgroup::as_group() const {
  if (is_full()) return parent_;
  const auto& rep = *parent_.rep();
  detail::Key key = detail::make_key(detail::Tag::Context, elems_);
  {
    std::lock_guard<std::mutex> lock(rep.mu);
    auto it = rep.context_cache.find(key);
    if (it != rep.context_cache.end()) return Group(it->second);
  }
  const IndexVec& gens = detail::small_gens(rep, elems_);
  std::vector<Perm> gen_perms;
  for (std::uint32_t g : gens) gen_perms.push_back(parent_.elements()[g]);
  auto child = detail::make_rep_from_elements(parent_.degree(), std::move(gen_perms), element_perms(), parent_.limits());
  std::lock_guard<std::mutex> lock(rep.mu);
  auto [it, inserted] = rep.context_cache.emplace(std::move(key), child);
  return Group(it->second);
}

// Maps a subgroup of a promoted context (same permutation domain) back into
// `target`'s index space.  Every element must belong to `target`.
inline Subgroup lift(const Group& target, const Subgroup& s) {
  if (target.same_rep(s.parent())) return s;
  IndexVec out;
  out.reserve(s.order());
  for (const Perm& p : s.element_perms()) out.push_back(target.index_of(p));
  std::sort(out.begin(), out.end());
  return Subgroup(target, std::move(out));
}

// Restriction of a parent subgroup into a promoted context whose elements
// contain it.
inline Subgroup restrict_to(const Group& child, const Subgroup& s) { return lift(child, s); }

// --- named operations -------------------------------------------------------

inline Subgroup subgroup_from(const Group& parent, const std::vector<Perm>& generators) {
  IndexVec idx;
  for (const Perm& p : generators) {
    if (p.degree() != parent.degree())
      throw Error("generator degree does not match group degree");
    idx.push_back(parent.index_of(p));  // throws "not a member"
  }
  return parent.subgroup_from_indices(idx);
}

inline Subgroup normalizer(const Group& g, const Subgroup& h) {
  require_same_context(g, h, "normalizer");
  const auto& rep = *g.rep();
  detail::Key key = detail::make_key(detail::Tag::Normalizer, h.elem_indices());
  {
    std::lock_guard<std::mutex> lock(rep.mu);
    auto it = rep.ivec_cache.find(key);
    if (it != rep.ivec_cache.end()) return Subgroup(g, it->second);
  }
  const IndexVec& gens = detail::small_gens(rep, h.elem_indices());
  IndexVec out;
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (std::uint32_t t : gens) {
      if (!h.contains_index(g.conj(t, x))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  std::lock_guard<std::mutex> lock(rep.mu);
  auto [it, ins] = rep.ivec_cache.emplace(std::move(key), std::move(out));
  return Subgroup(g, it->second);
}

inline Subgroup centralizer(const Group& g, const Subgroup& h) {
  require_same_context(g, h, "centralizer");
  const auto& rep = *g.rep();
  detail::Key key = detail::make_key(detail::Tag::Centralizer, h.elem_indices());
  {
    std::lock_guard<std::mutex> lock(rep.mu);
    auto it = rep.ivec_cache.find(key);
    if (it != rep.ivec_cache.end()) return Subgroup(g, it->second);
  }
  const IndexVec& gens = detail::small_gens(rep, h.elem_indices());
  IndexVec out;
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (std::uint32_t t : gens) {
      if (g.mul(x, t) != g.mul(t, x)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  std::lock_guard<std::mutex> lock(rep.mu);
  auto [it, ins] = rep.ivec_cache.emplace(std::move(key), std::move(out));
  return Subgroup(g, it->second);
}

inline Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  require_same_context(a, b, "intersect");
  return Subgroup(a.parent(), detail::intersect_sets(a.elem_indices(), b.elem_indices()));
}

inline Subgroup join(const Subgroup& a, const Subgroup& b) {
  require_same_context(a, b, "join");
  const auto& rep = *a.parent().rep();
  IndexVec gens = detail::small_gens(rep, a.elem_indices());
  const IndexVec& gb = detail::small_gens(rep, b.elem_indices());
  gens.insert(gens.end(), gb.begin(), gb.end());
  return Subgroup(a.parent(), detail::closure(rep, gens));
}

// N normalized by every element of K (N <= K not required here).
inline bool is_normalized_by(const Subgroup& n, const Subgroup& k) {
  require_same_context(n, k, "is_normalized_by");
  const auto& rep = *n.parent().rep();
  const IndexVec& ngens = detail::small_gens(rep, n.elem_indices());
  const IndexVec& kgens = detail::small_gens(rep, k.elem_indices());
  for (std::uint32_t g : kgens)
    for (std::uint32_t t : ngens)
      if (!n.contains_index(n.parent().conj(t, g))) return false;
  return true;
}

inline bool is_normal_in(const Subgroup& n, const Subgroup& k) { return k.contains(n) && is_normalized_by(n, k); }

inline bool is_normal(const Group& g, const Subgroup& n) {
  require_same_context(g, n, "is_normal");
  return is_normalized_by(n, g.full_subgroup());
}

inline Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b) {
  require_same_context(a, b, "commutator_subgroup");
  const auto& rep = *a.parent().rep();
  const std::uint32_t n = a.parent().order();
  std::vector<char> seen(n, 0);
  IndexVec gens;
  for (std::uint32_t x : a.elem_indices()) {
    for (std::uint32_t y : b.elem_indices()) {
      // [x,y] = x^-1 y^-1 x y
      std::uint32_t c = detail::mul(rep, detail::mul(rep, detail::mul(rep, rep.inverse[x], rep.inverse[y]), x), y);
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  }
  return Subgroup(a.parent(), detail::closure(rep, gens));
}

inline Subgroup derived_subgroup(const Subgroup& h) {
  const auto& rep = *h.parent().rep();
  detail::Key key = detail::make_key(detail::Tag::Derived, h.elem_indices());
  {
    std::lock_guard<std::mutex> lock(rep.mu);
    auto it = rep.ivec_cache.find(key);
    if (it != rep.ivec_cache.end()) return Subgroup(h.parent(), it->second);
  }
  Subgroup d = commutator_subgroup(h, h);
  std::lock_guard<std::mutex> lock(rep.mu);
  auto [it, ins] = rep.ivec_cache.emplace(std::move(key), d.elem_indices());
  return Subgroup(h.parent(), it->second);
}

inline Subgroup derived_subgroup(const Group& g) { return derived_subgroup(g.full_subgroup()); }

inline std::vector<Subgroup> derived_series(const Subgroup& h) {
  std::vector<Subgroup> series{h};
  for (;;) {
    Subgroup next = derived_subgroup(series.back());
    if (next.order() == series.back().order()) return series;
    series.push_back(next);
  }
}

inline bool is_soluble(const Subgroup& h) { return derived_series(h).back().is_trivial(); }
inline bool is_soluble(const Group& g) { return is_soluble(g.full_subgroup()); }

inline bool is_abelian(const Subgroup& h) {
  const auto& rep = *h.parent().rep();
  const IndexVec& gens = detail::small_gens(rep, h.elem_indices());
  for (std::uint32_t a : gens)
    for (std::uint32_t b : gens)
      if (h.parent().mul(a, b) != h.parent().mul(b, a)) return false;
  return true;
}

inline bool is_abelian(const Group& g) { return is_abelian(g.full_subgroup()); }

// Every Sylow subgroup of H is normal in H.  The Sylow p-subgroup is normal
// exactly when the p-elements of H form a subgroup, so it suffices to test
// each p-element set for closure.
inline bool is_nilpotent(const Subgroup& h) {
  const Group& g = h.parent();
  for (std::uint64_t p : prime_divisors(h.order())) {
    IndexVec pelems;
    for (std::uint32_t x : h.elem_indices()) {
      std::uint64_t ord = g.element_order(x);
      bool ppower = true;
      while (ord > 1) {
        if (ord % p != 0) {
          ppower = false;
          break;
        }
        ord /= p;
      }
      if (ppower) pelems.push_back(x);
    }
    for (std::uint32_t a : pelems) {
      for (std::uint32_t b : pelems) {
        std::uint32_t c = g.mul(a, b);
        if (!std::binary_search(pelems.begin(), pelems.end(), c)) return false;
      }
    }
  }
  return true;
}

inline bool is_nilpotent(const Group& g) { return is_nilpotent(g.full_subgroup()); }

// --- quotient groups ---------------------------------------------------------

class Quotient {
public:
  Quotient(Group source, Group quotient, std::shared_ptr<const std::vector<std::uint32_t>> elem_map)
      : src_(std::move(source)), q_(std::move(quotient)), map_(std::move(elem_map)) {}

  const Group& group() const { return q_; }
  const Group& source() const { return src_; }
  std::uint32_t map_index(std::uint32_t gidx) const { return (*map_)[gidx]; }
  const std::vector<std::uint32_t>& element_map() const { return *map_; }

  Perm image_of(const Perm& p) const { return q_.elements()[(*map_)[src_.index_of(p)]]; }

  Subgroup image_of(const Subgroup& s) const {
    require_same_context(src_, s, "quotient image");
    IndexVec out;
    out.reserve(s.order());
    for (std::uint32_t i : s.elem_indices()) out.push_back((*map_)[i]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return Subgroup(q_, std::move(out));
  }

  Subgroup preimage_of(const Subgroup& qs) const {
    require_same_context(q_, qs, "quotient preimage");
    IndexVec out;
    for (std::uint32_t i = 0; i < src_.order(); ++i)
      if (qs.contains_index((*map_)[i])) out.push_back(i);
    return Subgroup(src_, std::move(out));
  }

  Subgroup kernel() const { return preimage_of(q_.trivial_subgroup()); }

private:
  Group src_;
  Group q_;
  std::shared_ptr<const std::vector<std::uint32_t>> map_;
};

// G/K via the right-multiplication action on right cosets of K; coset points
// are numbered in sorted-representative order, so the output is
// deterministic.  Throws NotNormalError when K is not normal.
inline Quotient quotient_group(const Group& g, const Subgroup& k) {
  require_same_context(g, k, "quotient_group");
  if (!is_normal(g, k)) throw NotNormalError("quotient_group: subgroup is not normal");
  const auto& rep = *g.rep();
  detail::Key key = detail::make_key(detail::Tag::Quotient, k.elem_indices());
  {
    std::lock_guard<std::mutex> lock(rep.mu);
    auto it = rep.quotient_cache.find(key);
    if (it != rep.quotient_cache.end()) {
      auto map = std::shared_ptr<const std::vector<std::uint32_t>>(it->second, &it->second->elem_map);
      return Quotient(g, Group(it->second->qrep), map);
    }
  }
  const std::uint32_t n = static_cast<std::uint32_t>(g.order());
  const std::uint32_t m = static_cast<std::uint32_t>(n / k.order());
  constexpr std::uint32_t kUnset = ~0u;
  std::vector<std::uint32_t> coset_of(n, kUnset);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (coset_of[i] != kUnset) continue;
    std::uint32_t id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(i);
    for (std::uint32_t x : k.elem_indices()) coset_of[g.mul(x, i)] = id;
  }
  // Induced permutation of cosets for each element.
  std::vector<Perm> images;
  images.reserve(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    std::vector<std::uint32_t> img(m);
    for (std::uint32_t c = 0; c < m; ++c) img[c] = coset_of[g.mul(reps[c], x)];
    images.push_back(Perm::from_images(std::move(img)));
  }
  std::vector<Perm> qelems = images;
  std::sort(qelems.begin(), qelems.end());
  qelems.erase(std::unique(qelems.begin(), qelems.end()), qelems.end());
  std::vector<Perm> qgens;
  for (const Perm& gp : g.generators()) {
    Perm qi = images[g.index_of(gp)];
    if (!qi.is_identity()) qgens.push_back(qi);
  }
  auto qrep = detail::make_rep_from_elements(std::max(m, 1u), std::move(qgens), std::move(qelems), g.limits());
  auto data = std::make_shared<detail::QuotientRep>();
  data->qrep = qrep;
  data->elem_map.resize(n);
  for (std::uint32_t x = 0; x < n; ++x) data->elem_map[x] = qrep->index.at(images[x]);
  std::lock_guard<std::mutex> lock(rep.mu);
  auto [it, ins] = rep.quotient_cache.emplace(std::move(key), data);
  auto map = std::shared_ptr<const std::vector<std::uint32_t>>(it->second, &it->second->elem_map);
  return Quotient(g, Group(it->second->qrep), map);
}

// --- pi-operators ------------------------------------------------------------

namespace detail {

inline std::vector<std::uint64_t> trace_of(const PrimeSet& pi, std::uint64_t n) {
  return pi.trace(prime_divisors(n));
}

}  // namespace detail

// O_pi(X): the largest normal pi-subgroup, the join of the normal closures
// <x^X> that are pi-groups.
inline Subgroup core_o_pi(const Subgroup& x, const PrimeSet& pi) {
  const Group& g = x.parent();
  const auto& rep = *g.rep();
  detail::Key key = detail::make_key(detail::Tag::OPiCore, x.elem_indices(), detail::trace_of(pi, x.order()));
  {
    std::lock_guard<std::mutex> lock(rep.mu);
    auto it = rep.ivec_cache.find(key);
    if (it != rep.ivec_cache.end()) return Subgroup(g, it->second);
  }
  const IndexVec& xgens = detail::small_gens(rep, x.elem_indices());
  IndexVec result{0};
  std::map<IndexVec, bool> seen;
  for (std::uint32_t e : x.elem_indices()) {
    if (e == 0 || !is_pi_number(g.element_order(e), pi)) continue;
    if (std::binary_search(result.begin(), result.end(), e)) continue;
    IndexVec ncl = detail::normal_closure(rep, {e}, xgens);
    if (!seen.emplace(ncl, true).second) continue;
    if (is_pi_number(ncl.size(), pi)) result = detail::product_set(rep, result, ncl);
  }
  std::lock_guard<std::mutex> lock(rep.mu);
  auto [it, ins] = rep.ivec_cache.emplace(std::move(key), std::move(result));
  return Subgroup(g, it->second);
}

inline Subgroup core_o_pi(const Group& g, const PrimeSet& pi) { return core_o_pi(g.full_subgroup(), pi); }

// O^pi(X): the pi-residual, generated by all pi'-subgroups of X, i.e. by
// every element of pi'-order.
inline Subgroup residual_o_pi(const Subgroup& x, const PrimeSet& pi) {
  const Group& g = x.parent();
  const auto& rep = *g.rep();
  detail::Key key = detail::make_key(detail::Tag::OPiResidual, x.elem_indices(), detail::trace_of(pi, x.order()));
  {
    std::lock_guard<std::mutex> lock(rep.mu);
    auto it = rep.ivec_cache.find(key);
    if (it != rep.ivec_cache.end()) return Subgroup(g, it->second);
  }
  PrimeSet pi_prime = pi.complement();
  IndexVec gens;
  for (std::uint32_t e : x.elem_indices())
    if (is_pi_number(g.element_order(e), pi_prime)) gens.push_back(e);
  IndexVec result = detail::closure(rep, gens);
  std::lock_guard<std::mutex> lock(rep.mu);
  auto [it, ins] = rep.ivec_cache.emplace(std::move(key), std::move(result));
  return Subgroup(g, it->second);
}

inline Subgroup residual_o_pi(const Group& g, const PrimeSet& pi) { return residual_o_pi(g.full_subgroup(), pi); }

// --- composition factors -----------------------------------------------------

struct CompositionFactor {
  std::uint64_t order = 1;
  bool abelian = true;
  bool operator==(const CompositionFactor& o) const { return order == o.order && abelian == o.abelian; }
  bool operator<(const CompositionFactor& o) const {
    return order != o.order ? order < o.order : abelian < o.abelian;
  }
};

namespace detail {

inline void composition_factors_into(const Group& g, std::vector<CompositionFactor>& out) {
  if (g.order() == 1) return;
  const auto& normals = normal_subgroup_sets(*g.rep());
  // Maximal proper normal subgroups; ties broken by the canonical order of
  // the list (smallest element list first).
  const IndexVec* chosen = nullptr;
  for (const auto& n : normals) {
    if (n.size() == g.order()) continue;
    bool maximal = true;
    for (const auto& m : normals) {
      if (m.size() == g.order() || m.size() <= n.size()) continue;
      if (subset(n, m)) {
        maximal = false;
        break;
      }
    }
    if (maximal) {
      chosen = &n;
      break;
    }
  }
  assert(chosen != nullptr);
  Subgroup n_sub(g, *chosen);
  CompositionFactor f;
  f.order = g.order() / chosen->size();
  f.abelian = subset(derived_subgroup(g).elem_indices(), *chosen);
  out.push_back(f);
  composition_factors_into(n_sub.as_group(), out);
}

}  // namespace detail

// Multiset of composition-factor descriptors, canonically sorted.
inline std::vector<CompositionFactor> composition_factors(const Group& g) {
  std::vector<CompositionFactor> out;
  detail::composition_factors_into(g, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hallstone
