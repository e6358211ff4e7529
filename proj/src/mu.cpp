// SPDX-License-Identifier: Apache-2.0

#include "cuf/mu.hpp"

namespace cuf {

bool mu_contains(const SemigroupModel& S, const MuSpec& spec, const Element& y) {
  if (spec.k < 1 || spec.n < 1)
    throw PreconditionViolated("mu_contains: k and n must be >= 1");
  const Element& xp = spec.x_prime;
  const Element& x = spec.x;
  if (!leq(S, xp, x)) throw PreconditionViolated("mu_contains: x' must be below x");
  return leq(S, scalar_mul(S, spec.n, y), scalar_mul(S, spec.k, x)) &&
         leq(S, scalar_mul(S, spec.k, xp), scalar_mul(S, spec.n + 1, y));
}

std::vector<Element> mu_sample(const SemigroupModel& S, const MuSpec& spec, unsigned depth) {
  std::vector<Element> out;
  for (const auto& y : enumerate_grid(S, depth))
    if (mu_contains(S, spec, y)) out.push_back(y);
  return out;
}

}  // namespace cuf
