// SPDX-License-Identifier: Apache-2.0

#ifndef CUF_AXIOMS_HPP
#define CUF_AXIOMS_HPP

#include "cuf/chain.hpp"
#include "cuf/report.hpp"

namespace cuf {

/// Bounded verification of the ordered-monoid and Cu axioms over the depth
/// grid: partial-order laws, monoid laws, monotone addition, O2 via the chain
/// factory, O3 on grid quadruples, O4 along summed factory chains. Cubic and
/// quartic sweeps above `budget` tuples are deterministically subsampled from
/// `seed`. Table models are checked exhaustively.
CheckReport check_axioms(const SemigroupModel& S, unsigned depth,
                         std::uint64_t budget = 2'000'000, std::uint64_t seed = 1);

/// Semigroup-level pureness predicates (about S itself, no morphism):
/// (m+1)x <= my implies x <= y, and every x' << x admits z with kz <= x and
/// x' <= (k+1)z. These are the reference side of the identity-morphism
/// correspondence.
CheckReport semigroup_almost_unperforated(const SemigroupModel& S, unsigned depth,
                                          unsigned m_max);
CheckReport semigroup_almost_divisible(const SemigroupModel& S, unsigned depth, unsigned k_max);

/// Deterministic 64-bit stream used by every sampled sweep.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

/// Exhaustive-or-sampled index sweep: linear below the budget, seeded random
/// picks above it.
struct Sweep {
  std::uint64_t total;
  std::uint64_t budget;
  SplitMix64 rng;
  bool sampled;

  Sweep(std::uint64_t total, std::uint64_t budget, std::uint64_t seed)
      : total(total), budget(budget), rng(seed), sampled(total > budget) {}

  std::uint64_t count() const { return sampled ? budget : total; }
  std::uint64_t pick(std::uint64_t linear) { return sampled ? rng.next() % total : linear; }
};

}  // namespace cuf

#endif
