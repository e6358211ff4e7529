// SPDX-License-Identifier: Apache-2.0

#ifndef CUF_CHAIN_HPP
#define CUF_CHAIN_HPP

#include <variant>

#include "cuf/model.hpp"

namespace cuf {

/// Closed-form generators for increasing chains, indexed by d = 1, 2, ...
/// A leaf chain wraps an exact rational function of d in a fixed element tag;
/// its supremum is the limit of the payload. Eventually-constant chains and
/// pointwise truncations cover the remaining factory families, and tuples are
/// componentwise.
struct LeafChain {
  Tag tag;  // Compact, Soft, or Scalar
  PolyFrac payload;
};

struct EventuallyConst {
  std::vector<Element> prefix;  // values at d = 1 .. prefix.size()
  Element tail;                 // value for every later d
};

struct TruncateTo {
  Element target;  // d-th term is the pointwise minimum of target and d
};

struct Chain {
  std::variant<LeafChain, EventuallyConst, TruncateTo, std::vector<Chain>> gen;

  static Chain leaf(Tag tag, PolyFrac payload) { return Chain{LeafChain{tag, std::move(payload)}}; }
  static Chain constant(Element e) { return Chain{EventuallyConst{{}, std::move(e)}}; }
  static Chain eventually(std::vector<Element> prefix, Element tail) {
    return Chain{EventuallyConst{std::move(prefix), std::move(tail)}};
  }
  static Chain truncate(Element target) { return Chain{TruncateTo{std::move(target)}}; }
  static Chain tuple(std::vector<Chain> parts) { return Chain{std::move(parts)}; }

  /// Canonical d-th term (1-based).
  Element at(const SemigroupModel& S, const mpz_class& d) const;
};

/// The O2 chain factory: a way-below-increasing chain whose supremum is x.
/// Compacts get constant chains, soft payloads the t*d/(d+1) ramp, infinity a
/// linear ramp, Lsc elements the pointwise truncation min(f, d).
Chain approx_chain(const SemigroupModel& S, const Element& x);

/// Exact supremum of a closed-form chain. Terms are verified monotone up to
/// `verify_depth` (NotMonotone otherwise); families with no computable limit
/// raise UnsupportedChainForm.
Element sup_chain(const SemigroupModel& S, const Chain& c, unsigned verify_depth = 32);

/// Termwise sum of two chains, when the closed forms compose (leaf and
/// constant families, tuples componentwise). Nullopt otherwise.
std::optional<Chain> chain_add(const SemigroupModel& S, const Chain& a, const Chain& b);

}  // namespace cuf

#endif
