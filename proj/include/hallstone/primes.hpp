#pragma once

// Prime arithmetic and the PrimeSet type.  A PrimeSet is either a finite set
// of primes or the complement of one, so that sets like P \ {2,3,5} are
// representable exactly.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hallstone/errors.hpp"

namespace hallstone {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::map<std::uint64_t, unsigned> factorize(std::uint64_t n) {
  std::map<std::uint64_t, unsigned> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

// Primes dividing n, ascending.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (const auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

class PrimeSet {
public:
  PrimeSet() = default;

  PrimeSet(std::vector<std::uint64_t> primes, bool cofinite = false)
      : primes_(std::move(primes)), cofinite_(cofinite) {
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
    for (std::uint64_t p : primes_)
      if (!is_prime(p)) throw Error("PrimeSet: " + std::to_string(p) + " is not prime");
  }

  static PrimeSet finite(std::vector<std::uint64_t> primes) { return PrimeSet(std::move(primes), false); }
  static PrimeSet complement_of(std::vector<std::uint64_t> primes) { return PrimeSet(std::move(primes), true); }
  static PrimeSet all() { return PrimeSet({}, true); }
  static PrimeSet empty() { return PrimeSet({}, false); }

  bool cofinite() const { return cofinite_; }
  const std::vector<std::uint64_t>& listed_primes() const { return primes_; }

  bool contains(std::uint64_t p) const {
    bool listed = std::binary_search(primes_.begin(), primes_.end(), p);
    return cofinite_ ? !listed : listed;
  }

  PrimeSet complement() const { return PrimeSet(primes_, !cofinite_); }

  // The set with one more prime.
  PrimeSet with(std::uint64_t p) const {
    std::vector<std::uint64_t> ps = primes_;
    if (cofinite_) {
      ps.erase(std::remove(ps.begin(), ps.end(), p), ps.end());
    } else {
      ps.push_back(p);
    }
    return PrimeSet(std::move(ps), cofinite_);
  }

  // 0, 1, or 2 meaning ">= 2".  A cofinite set is always infinite.
  int size_class() const {
    if (cofinite_) return 2;
    return primes_.size() >= 2 ? 2 : static_cast<int>(primes_.size());
  }

  // Members among the given primes (which must be sorted ascending).
  std::vector<std::uint64_t> trace(const std::vector<std::uint64_t>& universe) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : universe)
      if (contains(p)) out.push_back(p);
    return out;
  }

  bool operator==(const PrimeSet& o) const { return cofinite_ == o.cofinite_ && primes_ == o.primes_; }
  bool operator<(const PrimeSet& o) const {
    if (cofinite_ != o.cofinite_) return !cofinite_;
    return primes_ < o.primes_;
  }

  std::string to_string() const {
    std::string s = cofinite_ ? "P\\{" : "{";
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(primes_[i]);
    }
    s += "}";
    return s;
  }

private:
  std::vector<std::uint64_t> primes_;
  bool cofinite_ = false;
};

// Largest divisor of n whose prime factors all lie in pi.
inline std::uint64_t pi_part(std::uint64_t n, const PrimeSet& pi) {
  std::uint64_t out = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (pi.contains(p)) {
      for (unsigned i = 0; i < e; ++i) out *= p;
    }
  }
  return out;
}

// n != 0 and all prime factors of n lie in pi.
inline bool is_pi_number(std::uint64_t n, const PrimeSet& pi) {
  return n != 0 && pi_part(n, pi) == n;
}

} // namespace hallstone
