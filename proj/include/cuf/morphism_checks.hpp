// SPDX-License-Identifier: Apache-2.0

#ifndef CUF_MORPHISM_CHECKS_HPP
#define CUF_MORPHISM_CHECKS_HPP

#include <set>

#include "cuf/morphism.hpp"
#include "cuf/report.hpp"

namespace cuf {

/// Bounded check over the depth grid: zero preservation, monotonicity,
/// additivity, and sup preservation along the chain-factory families.
CheckReport check_generalized_cu_morphism(const Morphism& f, unsigned depth);

/// check_generalized_cu_morphism plus preservation of way-below on all grid pairs.
CheckReport check_cu_morphism(const Morphism& f, unsigned depth);

/// (m+1)x <= my implies f(x) <= f(y), for grid x, y and 1 <= m <= m_max.
CheckReport check_almost_unperforated(const Morphism& f, unsigned depth, unsigned m_max,
                                      std::uint64_t budget = 2'000'000);

/// For grid pairs x' << x and 1 <= k <= k_max, searches the codomain grid at
/// an enlarged depth for z with kz <= f(x) and f(x') <= (k+1)z. A failed
/// search is a fail only when the downset is provably inside the grid,
/// otherwise the report is inconclusive.
CheckReport check_almost_divisible(const Morphism& f, unsigned depth, unsigned k_max,
                                   std::uint64_t budget = 300'000);

/// q-divisibility (exact division of every grid image by each divisor of q
/// up to depth) and q-unperforation.
CheckReport check_q_rational(const Morphism& f, const std::set<unsigned long>& primes,
                             unsigned depth);

/// Every grid image must be strongly soft in the codomain.
CheckReport check_soft_morphism(const Morphism& f, unsigned depth);

/// Exact division in the codomain: the unique same-shape y with n*y == x, if
/// it exists. Used by the q-rational machinery.
std::optional<Element> divide_exact(const SemigroupModel& S, const Element& x,
                                    const mpz_class& n);

/// True when the codomain admits the closed-form witness z = soft(payload/k)
/// (Z, K_q, the half-line, and products of those).
bool has_closed_form_witness(const Morphism& f);

/// The almost-divisibility witness z with k*z <= f(x) and f(xp) <= (k+1)*z.
/// Closed form preferred; otherwise the first witness in canonical grid order
/// at search_depth. Throws NoWitnessFound when the search bound is exhausted.
Element divisibility_witness(const Morphism& f, const mpz_class& k, const Element& xp,
                             const Element& x, unsigned search_depth = 24);

}  // namespace cuf

#endif
