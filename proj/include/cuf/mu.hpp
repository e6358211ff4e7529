// SPDX-License-Identifier: Apache-2.0

#ifndef CUF_MU_HPP
#define CUF_MU_HPP

#include "cuf/model.hpp"

namespace cuf {

/// Parameters of the witness set mu((k,n), x', x) = {y : ny <= kx and
/// kx' <= (n+1)y}, the divisibility data behind the factorization chain.
struct MuSpec {
  mpz_class k = 1;
  mpz_class n = 1;
  Element x_prime;
  Element x;
};

/// Exact membership test; throws PreconditionViolated on malformed specs
/// (k or n < 1, or x' not below x).
bool mu_contains(const SemigroupModel& S, const MuSpec& spec, const Element& y);

/// All grid elements passing mu_contains, in canonical order (possibly empty).
std::vector<Element> mu_sample(const SemigroupModel& S, const MuSpec& spec, unsigned depth);

}  // namespace cuf

#endif
