// SPDX-License-Identifier: Apache-2.0

#ifndef CUF_ELEMENT_HPP
#define CUF_ELEMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cuf/rational.hpp"

namespace cuf {

/// Representation tags for points of the concrete semigroup models.
///
/// Compact carries the compact part of Z (naturals) and of K_q | (0,inf]
/// (supported rationals), plus the finite part of Nbar. Soft carries the soft
/// half-line payloads (and infinity). Scalar is the half-line [0,inf] model.
/// Tuple, Lsc and Table cover products, monotone functions on a finite poset,
/// and finite Cayley-table models.
enum class Tag : std::uint8_t { Compact, Soft, Scalar, Tuple, Lsc, Table };

struct Element {
  Tag tag = Tag::Compact;
  Ext payload;                  // Compact / Soft / Scalar
  std::vector<Element> parts;   // Tuple
  std::vector<Ext> values;      // Lsc: value per poset point, in point order
  std::uint32_t index = 0;      // Table

  static Element compact(Ext p) { return Element{Tag::Compact, std::move(p), {}, {}, 0}; }
  static Element soft(Ext p) { return Element{Tag::Soft, std::move(p), {}, {}, 0}; }
  static Element scalar(Ext p) { return Element{Tag::Scalar, std::move(p), {}, {}, 0}; }
  static Element tuple(std::vector<Element> xs) { return Element{Tag::Tuple, Ext(), std::move(xs), {}, 0}; }
  static Element lsc(std::vector<Ext> vs) { return Element{Tag::Lsc, Ext(), {}, std::move(vs), 0}; }
  static Element table(std::uint32_t i) { return Element{Tag::Table, Ext(), {}, {}, i}; }

  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }

  /// Representation-level rendering ("compact:3", "soft:1/2", "(...,...)").
  /// Model-aware printing lives in model.hpp.
  std::string str() const;
};

/// Canonical enumeration order: ascending denominator, then numerator,
/// compacts before softs, infinity last; composites lexicographic.
/// Witness searches iterate in this order, which makes reports deterministic.
bool canonical_less(const Element& a, const Element& b);

}  // namespace cuf

#endif
