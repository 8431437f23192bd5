#pragma once

// Named-group catalog: cyclic, dihedral, symmetric and alternating families,
// SL(2,3), and direct products through the "AxB" name form.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "hallstone/group.hpp"

namespace hallstone {

struct CatalogTags {
  bool soluble = true;
  bool simple = false;
  std::string notes;
};

struct CatalogEntry {
  std::string name;
  std::uint32_t degree = 1;
  std::vector<Perm> generators;
  std::uint64_t expected_order = 1;
  CatalogTags tags;
};

namespace detail {

inline Perm cycle(std::uint32_t degree, std::vector<std::uint32_t> points) {
  return Perm::from_cycles(degree, {std::move(points)});
}

inline Perm n_cycle(std::uint32_t degree, std::uint32_t first, std::uint32_t last) {
  std::vector<std::uint32_t> pts;
  for (std::uint32_t i = first; i <= last; ++i) pts.push_back(i);
  return Perm::from_cycles(degree, {std::move(pts)});
}

inline CatalogEntry cyclic_entry(std::uint32_t n) {
  CatalogEntry e;
  e.name = "C" + std::to_string(n);
  e.degree = n;
  if (n > 1) e.generators.push_back(n_cycle(n, 1, n));
  e.expected_order = n;
  e.tags = CatalogTags{true, is_prime(n), "cyclic group of order " + std::to_string(n)};
  return e;
}

inline CatalogEntry dihedral_entry(std::uint32_t order) {
  CatalogEntry e;
  e.name = "D" + std::to_string(order);
  e.expected_order = order;
  std::uint32_t n = order / 2;
  if (n == 2) {
    // order 4: the Klein group as <(1 2), (3 4)>
    e.degree = 4;
    e.generators = {cycle(4, {1, 2}), cycle(4, {3, 4})};
  } else {
    e.degree = n;
    e.generators.push_back(n_cycle(n, 1, n));
    std::vector<std::uint32_t> img(n);
    img[0] = 0;
    for (std::uint32_t i = 1; i < n; ++i) img[i] = n - i;
    e.generators.push_back(Perm::from_images(std::move(img)));
  }
  e.tags = CatalogTags{true, false, "dihedral group of order " + std::to_string(order)};
  return e;
}

inline CatalogEntry symmetric_entry(std::uint32_t n) {
  CatalogEntry e;
  e.name = "S" + std::to_string(n);
  e.degree = std::max(n, 1u);
  if (n >= 2) e.generators.push_back(cycle(e.degree, {1, 2}));
  if (n >= 3) e.generators.push_back(n_cycle(e.degree, 1, n));
  std::uint64_t fact = 1;
  for (std::uint32_t i = 2; i <= n; ++i) fact *= i;
  e.expected_order = fact;
  e.tags = CatalogTags{n <= 4, n == 2, "symmetric group of degree " + std::to_string(n)};
  return e;
}

inline CatalogEntry alternating_entry(std::uint32_t n) {
  CatalogEntry e;
  e.name = "A" + std::to_string(n);
  e.degree = std::max(n, 1u);
  if (n >= 3) {
    e.generators.push_back(cycle(e.degree, {1, 2, 3}));
    if (n >= 4) {
      if (n % 2 == 1) {
        e.generators.push_back(n_cycle(e.degree, 1, n));
      } else {
        e.generators.push_back(n_cycle(e.degree, 2, n));
      }
    }
  }
  std::uint64_t fact = 1;
  for (std::uint32_t i = 2; i <= n; ++i) fact *= i;
  e.expected_order = n >= 2 ? fact / 2 : 1;
  e.tags = CatalogTags{n <= 4, n == 3 || n >= 5, "alternating group of degree " + std::to_string(n)};
  return e;
}

// SL(2,3) acting on the eight nonzero vectors of F_3^2, listed as
// (0,1),(0,2),(1,0),(1,1),(1,2),(2,0),(2,1),(2,2).  Generators are the shear
// [[1,1],[0,1]] and the rotation [[0,-1],[1,0]].
inline CatalogEntry sl23_entry() {
  CatalogEntry e;
  e.name = "SL(2,3)";
  e.degree = 8;
  e.generators = {Perm::from_cycles(8, {{1, 4, 7}, {2, 8, 5}}), Perm::from_cycles(8, {{1, 6, 2, 3}, {4, 7, 8, 5}})};
  e.expected_order = 24;
  e.tags = CatalogTags{true, false, "special linear group SL(2,3)"};
  return e;
}

inline Perm shift_perm(const Perm& p, std::uint32_t offset, std::uint32_t new_degree) {
  std::vector<std::uint32_t> img(new_degree);
  for (std::uint32_t i = 0; i < new_degree; ++i) img[i] = i;
  for (std::uint32_t i = 0; i < p.degree(); ++i) img[i + offset] = p(i) + offset;
  return Perm::from_images(std::move(img));
}

inline CatalogEntry product_entry(const std::string& name, const std::vector<CatalogEntry>& parts) {
  CatalogEntry e;
  e.name = name;
  e.degree = 0;
  e.expected_order = 1;
  for (const CatalogEntry& part : parts) e.degree += part.degree;
  std::uint32_t offset = 0;
  std::size_t nontrivial = 0;
  const CatalogEntry* last_nontrivial = nullptr;
  for (const CatalogEntry& part : parts) {
    for (const Perm& g : part.generators) e.generators.push_back(shift_perm(g, offset, e.degree));
    offset += part.degree;
    e.expected_order *= part.expected_order;
    e.tags.soluble = e.tags.soluble && part.tags.soluble;
    if (part.expected_order > 1) {
      ++nontrivial;
      last_nontrivial = &part;
    }
  }
  e.tags.simple = nontrivial == 1 && last_nontrivial->tags.simple;
  e.tags.notes = "direct product";
  return e;
}

}  // namespace detail

// The base entries, in canonical listing order.
inline std::vector<CatalogEntry> catalog_entries() {
  std::vector<CatalogEntry> out;
  for (std::uint32_t n = 1; n <= 30; ++n) out.push_back(detail::cyclic_entry(n));
  for (std::uint32_t n = 2; n <= 12; ++n) out.push_back(detail::dihedral_entry(2 * n));
  for (std::uint32_t n = 1; n <= 5; ++n) out.push_back(detail::symmetric_entry(n));
  for (std::uint32_t n = 1; n <= 6; ++n) out.push_back(detail::alternating_entry(n));
  out.push_back(detail::sl23_entry());
  return out;
}

inline CatalogEntry catalog_lookup(const std::string& name) {
  // Direct products via the "AxB" form; no base name contains an 'x'.
  if (name.find('x') != std::string::npos) {
    std::vector<CatalogEntry> parts;
    std::size_t start = 0;
    for (;;) {
      std::size_t pos = name.find('x', start);
      std::string part = name.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
      parts.push_back(catalog_lookup(part));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    return detail::product_entry(name, parts);
  }
  for (const CatalogEntry& e : catalog_entries())
    if (e.name == name) return e;
  throw UnknownNameError("unknown group name \"" + name +
                         "\"; available: C1..C30, D4..D24 (even orders), S1..S5, A1..A6, SL(2,3), "
                         "and direct products like S4xC5");
}

// Materializes the entry and checks the expected order.
inline Group realize(const CatalogEntry& e, Limits limits = {}) {
  Group g = Group::generate(e.degree, e.generators, limits);
  if (g.order() != e.expected_order)
    throw Error("catalog entry " + e.name + " produced order " + std::to_string(g.order()) + ", expected " +
                std::to_string(e.expected_order));
  return g;
}

}  // namespace hallstone
