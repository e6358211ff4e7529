// SPDX-License-Identifier: Apache-2.0

#include "cuf/chain.hpp"

namespace cuf {

namespace {

Element wrap_leaf(const SemigroupModel& S, Tag tag, const Ext& payload) {
  switch (tag) {
    case Tag::Compact:
      return canonical(S, Element::compact(payload));
    case Tag::Soft:
      return canonical(S, Element::soft(payload));
    case Tag::Scalar:
      return canonical(S, Element::scalar(payload));
    default:
      throw UnsupportedChainForm("leaf chain with composite tag");
  }
}

Ext min_ext(const Ext& a, const Ext& b) { return a <= b ? a : b; }

}  // namespace

Element Chain::at(const SemigroupModel& S, const mpz_class& d) const {
  if (d < 1) throw std::invalid_argument("Chain::at: index must be >= 1");
  if (const auto* leaf = std::get_if<LeafChain>(&gen))
    return wrap_leaf(S, leaf->tag, leaf->payload.eval(d));
  if (const auto* ev = std::get_if<EventuallyConst>(&gen)) {
    if (d <= ev->prefix.size()) return canonical(S, ev->prefix[d.get_ui() - 1]);
    return canonical(S, ev->tail);
  }
  if (const auto* tr = std::get_if<TruncateTo>(&gen)) {
    Element t = canonical(S, tr->target);
    if (S.kind() == ModelKind::Lsc) {
      for (auto& v : t.values) v = min_ext(v, Ext(mpz_class(d)));
      return t;
    }
    throw UnsupportedChainForm("truncation chain outside an Lsc model");
  }
  const auto& parts = std::get<std::vector<Chain>>(gen);
  if (S.kind() != ModelKind::Product || parts.size() != S.parts().size())
    throw ModelMismatch("tuple chain does not match product model");
  std::vector<Element> es;
  for (size_t i = 0; i < parts.size(); ++i) es.push_back(parts[i].at(S.parts()[i], d));
  return Element::tuple(std::move(es));
}

Chain approx_chain(const SemigroupModel& S, const Element& x) {
  const Element e = canonical(S, x);
  switch (S.kind()) {
    case ModelKind::Nbar:
      if (e.tag == Tag::Soft) return Chain::leaf(Tag::Compact, PolyFrac::index());
      return Chain::constant(e);
    case ModelKind::Z:
    case ModelKind::Kq:
      if (e.tag == Tag::Soft) return Chain::leaf(Tag::Soft, PolyFrac::ramp(e.payload));
      return Chain::constant(e);
    case ModelKind::HalfLine:
      if (e.payload.is_zero()) return Chain::constant(e);
      return Chain::leaf(Tag::Scalar, PolyFrac::ramp(e.payload));
    case ModelKind::Product: {
      std::vector<Chain> parts;
      for (size_t i = 0; i < e.parts.size(); ++i)
        parts.push_back(approx_chain(S.parts()[i], e.parts[i]));
      return Chain::tuple(std::move(parts));
    }
    case ModelKind::Lsc:
      return Chain::truncate(e);
    case ModelKind::Table:
      return Chain::constant(e);
  }
  throw std::logic_error("approx_chain: bad kind");
}

std::optional<Chain> chain_add(const SemigroupModel& S, const Chain& a, const Chain& b) {
  auto as_leaf = [](const Chain& c) -> std::optional<LeafChain> {
    if (const auto* leaf = std::get_if<LeafChain>(&c.gen)) return *leaf;
    if (const auto* ev = std::get_if<EventuallyConst>(&c.gen)) {
      if (!ev->prefix.empty()) return std::nullopt;
      const Element& t = ev->tail;
      if (t.tag != Tag::Compact && t.tag != Tag::Soft && t.tag != Tag::Scalar)
        return std::nullopt;
      if (t.payload.is_inf()) return std::nullopt;
      return LeafChain{t.tag, PolyFrac::constant(t.payload)};
    }
    return std::nullopt;
  };
  if (S.kind() == ModelKind::Product) {
    const auto* pa = std::get_if<std::vector<Chain>>(&a.gen);
    const auto* pb = std::get_if<std::vector<Chain>>(&b.gen);
    if (!pa || !pb || pa->size() != pb->size()) return std::nullopt;
    std::vector<Chain> parts;
    for (size_t i = 0; i < pa->size(); ++i) {
      auto part = chain_add(S.parts()[i], (*pa)[i], (*pb)[i]);
      if (!part) return std::nullopt;
      parts.push_back(std::move(*part));
    }
    return Chain::tuple(std::move(parts));
  }
  auto la = as_leaf(a), lb = as_leaf(b);
  if (!la || !lb) return std::nullopt;
  Tag tag = (la->tag == Tag::Soft || lb->tag == Tag::Soft) ? Tag::Soft : la->tag;
  PolyFrac sum{la->payload.num * lb->payload.den + lb->payload.num * la->payload.den,
               la->payload.den * lb->payload.den};
  return Chain::leaf(tag, std::move(sum));
}

Element sup_chain(const SemigroupModel& S, const Chain& c, unsigned verify_depth) {
  for (unsigned d = 1; d < verify_depth; ++d) {
    Element cur = c.at(S, d), next = c.at(S, d + 1);
    if (!leq(S, cur, next))
      throw NotMonotone("chain decreases between d=" + std::to_string(d) + " and d=" +
                        std::to_string(d + 1) + ": " + cur.str() + " vs " + next.str());
  }
  if (const auto* leaf = std::get_if<LeafChain>(&c.gen)) {
    if (leaf->payload.is_constant()) return c.at(S, 1);
    const Ext lim = leaf->payload.limit();
    switch (S.kind()) {
      case ModelKind::Nbar:
      case ModelKind::Z:
      case ModelKind::Kq:
        // A strictly increasing chain never attains its limit, so the
        // supremum lands in the soft part even under a compact tag.
        if (leaf->tag == Tag::Compact && !lim.is_inf() && S.kind() == ModelKind::Nbar)
          throw UnsupportedChainForm("strictly increasing integer chain with a finite limit");
        return canonical(S, Element::soft(lim));
      case ModelKind::HalfLine:
        return canonical(S, Element::scalar(lim));
      default:
        throw UnsupportedChainForm("leaf chain in a composite model");
    }
  }
  if (const auto* ev = std::get_if<EventuallyConst>(&c.gen)) return canonical(S, ev->tail);
  if (const auto* tr = std::get_if<TruncateTo>(&c.gen)) return canonical(S, tr->target);
  const auto& parts = std::get<std::vector<Chain>>(c.gen);
  std::vector<Element> sups;
  for (size_t i = 0; i < parts.size(); ++i)
    sups.push_back(sup_chain(S.parts()[i], parts[i], verify_depth));
  return canonical(S, Element::tuple(std::move(sups)));
}

}  // namespace cuf
