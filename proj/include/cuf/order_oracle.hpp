// SPDX-License-Identifier: Apache-2.0

#ifndef CUF_ORDER_ORACLE_HPP
#define CUF_ORDER_ORACLE_HPP

#include "cuf/model.hpp"

namespace cuf {

/// Chain-based reference decision for the order, deliberately independent of
/// the closed forms in model.cpp. An element is replaced by its approximant
/// chain, and a <= b holds when every a-term is eventually dominated by a
/// b-term; the only ground comparisons are same-variant payload comparisons
/// (strict across the compact/soft boundary). The depth parameter bounds the
/// chain prefixes as depth^2 + depth + 2.
bool brute_order_oracle(const SemigroupModel& S, const Element& a, const Element& b,
                        unsigned depth);

/// Companion mode: a << b iff for every grid element z whose approximant
/// chain has supremum >= b (including the compact-ramp family for tops),
/// some chain term dominates a.
bool brute_way_below_oracle(const SemigroupModel& S, const Element& a, const Element& b,
                            unsigned depth);

/// Batch form used by the agreement sweeps: full leq and way-below relations
/// on the depth grid, decided purely by the oracle.
struct OrderOracleMatrices {
  std::vector<Element> grid;
  std::vector<std::vector<bool>> leq_m;
  std::vector<std::vector<bool>> wb_m;
};

OrderOracleMatrices brute_order_matrices(const SemigroupModel& S, unsigned depth);

/// The oracle's d-th approximant term, exposed so that graph-based checks can
/// evaluate maps along the same chain families.
Element oracle_approximant(const SemigroupModel& S, const Element& e, unsigned long d);

}  // namespace cuf

#endif
