#pragma once

// Permutations of {1..degree}, stored 0-based.  Products compose left to
// right: (a * b) means "apply a, then b", so that the cycle (1 2 3) maps
// 1 to 2.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "hallstone/errors.hpp"

namespace hallstone {

class Perm {
public:
  // Identity of the given degree.
  explicit Perm(std::uint32_t degree = 1) : img_(degree) {
    std::iota(img_.begin(), img_.end(), 0u);
  }

  // 0-based image vector; validated as a bijection.
  static Perm from_images(std::vector<std::uint32_t> images) {
    std::vector<std::uint32_t> check = images;
    std::sort(check.begin(), check.end());
    for (std::uint32_t i = 0; i < check.size(); ++i)
      if (check[i] != i) throw Error("permutation images are not a bijection");
    Perm p;
    p.img_ = std::move(images);
    return p;
  }

  // Cycles over 1-based points.
  static Perm from_cycles(std::uint32_t degree, const std::vector<std::vector<std::uint32_t>>& cycles) {
    std::vector<std::uint32_t> img(degree);
    std::iota(img.begin(), img.end(), 0u);
    std::vector<bool> seen(degree, false);
    for (const auto& cyc : cycles) {
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        std::uint32_t a = cyc[i];
        std::uint32_t b = cyc[(i + 1) % cyc.size()];
        if (a < 1 || a > degree) throw Error("cycle point " + std::to_string(a) + " out of range");
        if (seen[a - 1]) throw Error("duplicate point " + std::to_string(a) + " in cycles");
        seen[a - 1] = true;
        img[a - 1] = b - 1;
      }
    }
    return from_images(std::move(img));
  }

  std::uint32_t degree() const { return static_cast<std::uint32_t>(img_.size()); }
  std::uint32_t operator()(std::uint32_t x) const { return img_[x]; }
  const std::vector<std::uint32_t>& images() const { return img_; }

  bool is_identity() const {
    for (std::uint32_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  Perm operator*(const Perm& rhs) const {
    Perm out;
    out.img_.resize(img_.size());
    for (std::uint32_t i = 0; i < img_.size(); ++i) out.img_[i] = rhs.img_[img_[i]];
    return out;
  }

  Perm inverse() const {
    Perm out;
    out.img_.resize(img_.size());
    for (std::uint32_t i = 0; i < img_.size(); ++i) out.img_[img_[i]] = i;
    return out;
  }

  // Disjoint cycles over 1-based points; fixed points omitted, each cycle
  // led by its smallest point, cycles ordered by leading point.
  std::vector<std::vector<std::uint32_t>> cycles() const {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<bool> seen(img_.size(), false);
    for (std::uint32_t i = 0; i < img_.size(); ++i) {
      if (seen[i] || img_[i] == i) continue;
      std::vector<std::uint32_t> cyc;
      std::uint32_t j = i;
      while (!seen[j]) {
        seen[j] = true;
        cyc.push_back(j + 1);
        j = img_[j];
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  std::string cycle_string() const {
    auto cs = cycles();
    if (cs.empty()) return "()";
    std::string s;
    for (const auto& cyc : cs) {
      s += "(";
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        if (i) s += " ";
        s += std::to_string(cyc[i]);
      }
      s += ")";
    }
    return s;
  }

  // lcm of cycle lengths.
  std::uint64_t order() const {
    std::uint64_t ord = 1;
    for (const auto& cyc : cycles()) ord = std::lcm(ord, static_cast<std::uint64_t>(cyc.size()));
    return ord;
  }

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

private:
  std::vector<std::uint32_t> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (std::uint32_t v : p.images()) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

} // namespace hallstone
