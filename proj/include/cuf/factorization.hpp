// SPDX-License-Identifier: Apache-2.0

#ifndef CUF_FACTORIZATION_HPP
#define CUF_FACTORIZATION_HPP

#include <set>

#include "cuf/morphism_checks.hpp"
#include "cuf/mu.hpp"

namespace cuf {

/// Candidate factorization data: phi1 almost divisible, phi2 almost
/// unperforated, composable. Role validation happens in the checkers; the
/// constructor only enforces composability.
struct FactorPair {
  Morphism phi1;
  Morphism phi2;

  FactorPair(Morphism p1, Morphism p2);

  const SemigroupModel& domain() const { return phi1.dom; }
  const SemigroupModel& middle() const { return phi1.cod; }
  const SemigroupModel& target() const { return phi2.cod; }
  std::string describe() const { return "(" + phi1.name + "," + phi2.name + ")"; }
};

/// The data of the Phi-supremum construction: fractions k_d/n_d increasing to
/// the target with k_d/n_d < k_{d+1}/(n_{d+1}+1), a way-below increasing
/// domain chain x_d, and witnesses y_d in mu((k_d,n_d), phi1(x_{d-1}),
/// phi1(x_d)).
struct WitnessChain {
  Ext target;
  std::vector<std::pair<mpz_class, mpz_class>> fractions;
  std::vector<Element> xs;
  std::vector<Element> ys;
};

/// Builds and validates the witness chain for (x, t). Throws NoWitnessFound
/// when phi1 cannot supply witnesses and UnsupportedChainForm when the
/// symbolic machinery does not cover phi1's image chains.
WitnessChain build_witness_chain(const FactorPair& p, const Element& x, const Ext& t,
                                 unsigned len = 12);

/// alpha(x, t). Compact t = m gives m * phi2(phi1(x)) directly; soft t runs
/// the witness-chain construction and returns the exact supremum of the
/// mapped chain. t lives in the Z model.
Element alpha_eval(const FactorPair& p, const Element& x, const Element& t);

struct AlphaOracleValue {
  Element value;
  bool exact = false;
};

/// Independent reference for alpha: enumerates the fraction frontier of
/// Phi(t, phi1(x)) directly (no witness chains) and takes the least upper
/// bound over the depth grid extended with the density-limit candidate. The
/// exact flag certifies that the enumeration pinned the limit.
AlphaOracleValue alpha_eval_oracle(const FactorPair& p, const Element& x, const Element& t,
                                   unsigned depth);

/// Bounded bimorphism verification: additivity, monotonicity and
/// sup-preservation of alpha in each variable, the anchor identity
/// alpha(x, compact 1) = phi2(phi1(x)) on the whole grid, and the joint
/// way-below condition when both morphisms are declared Cu-morphisms.
CheckReport verify_alpha_bimorphism(const FactorPair& p, unsigned depth);

/// Extension criterion for glued maps Z -> T: gamma_c on the compact part
/// (a morphism from Nbar, evaluated on the finite grid), gamma_s on the soft
/// part (a morphism from the half-line). Verifies gamma_s(1) <= gamma_c(1)
/// <= gamma_s(1+eps) over the positive grid and that gamma_s is a
/// generalized Cu-morphism, then cross-validates against
/// brute_morphism_check on the glued graph.
CheckReport check_z_extension(const Morphism& gamma_c, const Morphism& gamma_s, unsigned depth);

/// The two conclusions of the mu-comparison lemma for phi2, over grid
/// witnesses: y1 in mu((k1,n1),0,x1) and y2 in mu((k2,n2),x1,x2) force
/// phi2(y1) <= phi2(y2); with a supplied interpolant x1 << x2p << x2 and a
/// declared Cu-morphism, y2 in mu((k2,n2),x2p,x2) forces phi2(y1) << phi2(y2).
CheckReport lemma_almunpf_check(const FactorPair& p, const mpz_class& k1, const mpz_class& n1,
                                const mpz_class& k2, const mpz_class& n2, const Element& x1,
                                const Element& x2, unsigned depth,
                                const std::optional<Element>& x2p = std::nullopt);

/// The unique y = phi2(z) with phi1(x) = n z, for n a divisor of the
/// supernatural number given by `primes`. Uniqueness of the image is probed
/// by exhaustive grid search for a second witness.
Element omega_n_eval(const FactorPair& p, const Element& x, unsigned long n,
                     const std::set<unsigned long>& primes, unsigned depth = 16);

/// Rational variant: for compact t = k/n in lowest terms returns k*omega_n(x),
/// for soft t delegates to alpha_eval. t lives in the Kq(primes) model.
Element alpha_q_eval(const FactorPair& p, const Element& x, const Element& t,
                     const std::set<unsigned long>& primes, unsigned depth = 16);

/// Soft variant: alpha at soft t, with the t = 1 identity
/// alpha(x, soft 1) = phi2(phi1(x)) asserted; SoftnessViolated when phi1 is
/// not actually soft at x.
Element alpha_soft_eval(const FactorPair& p, const Element& x, const Ext& t,
                        unsigned depth = 12);

}  // namespace cuf

#endif
