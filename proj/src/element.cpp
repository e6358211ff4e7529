// SPDX-License-Identifier: Apache-2.0

#include "cuf/element.hpp"

#include <tuple>

namespace cuf {

bool Element::operator==(const Element& o) const {
  if (tag != o.tag) return false;
  switch (tag) {
    case Tag::Compact:
    case Tag::Soft:
    case Tag::Scalar:
      return payload == o.payload;
    case Tag::Tuple:
      return parts == o.parts;
    case Tag::Lsc:
      return values == o.values;
    case Tag::Table:
      return index == o.index;
  }
  return false;
}

std::string Element::str() const {
  switch (tag) {
    case Tag::Compact:
      return "compact:" + payload.str();
    case Tag::Soft:
      return "soft:" + payload.str();
    case Tag::Scalar:
      return payload.str();
    case Tag::Tuple: {
      std::string out = "(";
      for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += parts[i].str();
      }
      return out + ")";
    }
    case Tag::Lsc: {
      std::string out = "[";
      for (size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += values[i].str();
      }
      return out + "]";
    }
    case Tag::Table:
      return "#" + std::to_string(index);
  }
  return "?";
}

namespace {

// keys: (inf, den, num, tag-rank); inf sorts last, compacts before softs.
int tag_rank(Tag t) { return t == Tag::Soft ? 1 : 0; }

int leaf_compare(const Element& a, const Element& b) {
  const bool ai = a.payload.is_inf(), bi = b.payload.is_inf();
  if (ai != bi) return ai ? 1 : -1;
  if (!ai) {
    mpz_class ad = a.payload.den(), bd = b.payload.den();
    if (ad != bd) return ad < bd ? -1 : 1;
    mpz_class an = a.payload.num(), bn = b.payload.num();
    if (an != bn) return an < bn ? -1 : 1;
  }
  int ar = tag_rank(a.tag), br = tag_rank(b.tag);
  if (ar != br) return ar < br ? -1 : 1;
  return 0;
}

int compare(const Element& a, const Element& b) {
  if (a.tag == Tag::Table || b.tag == Tag::Table) {
    if (a.index != b.index) return a.index < b.index ? -1 : 1;
    return 0;
  }
  if (a.tag == Tag::Tuple || b.tag == Tag::Tuple) {
    size_t n = std::min(a.parts.size(), b.parts.size());
    for (size_t i = 0; i < n; ++i)
      if (int c = compare(a.parts[i], b.parts[i])) return c;
    if (a.parts.size() != b.parts.size()) return a.parts.size() < b.parts.size() ? -1 : 1;
    return 0;
  }
  if (a.tag == Tag::Lsc || b.tag == Tag::Lsc) {
    size_t n = std::min(a.values.size(), b.values.size());
    for (size_t i = 0; i < n; ++i) {
      const Ext &x = a.values[i], &y = b.values[i];
      if (x != y) {
        if (x.is_inf()) return 1;
        if (y.is_inf()) return -1;
        return x < y ? -1 : 1;
      }
    }
    if (a.values.size() != b.values.size()) return a.values.size() < b.values.size() ? -1 : 1;
    return 0;
  }
  return leaf_compare(a, b);
}

}  // namespace

bool canonical_less(const Element& a, const Element& b) { return compare(a, b) < 0; }

}  // namespace cuf
