// SPDX-License-Identifier: Apache-2.0

#include "cuf/morphism.hpp"

#include <algorithm>

namespace cuf {

namespace {

bool leaf_soft_kind(const SemigroupModel& S) {
  return S.kind() == ModelKind::Z || S.kind() == ModelKind::Kq;
}

void require(bool cond, const std::string& what) {
  if (!cond) throw ModelMismatch(what);
}

}  // namespace

Morphism Morphism::identity(SemigroupModel S) {
  Morphism f;
  f.kind = MorphismKind::Identity;
  f.dom = S;
  f.cod = std::move(S);
  f.declared_cu = true;
  f.name = "id";
  return f;
}

Morphism Morphism::zero(SemigroupModel dom, SemigroupModel cod) {
  Morphism f;
  f.kind = MorphismKind::Zero;
  f.dom = std::move(dom);
  f.cod = std::move(cod);
  f.declared_cu = true;
  f.name = "zero";
  return f;
}

Morphism Morphism::multiply_by(SemigroupModel S, unsigned long m) {
  Morphism f;
  f.kind = MorphismKind::MultiplyBy;
  f.dom = S;
  f.cod = std::move(S);
  f.mult = m;
  f.declared_cu = true;
  f.name = "mul" + std::to_string(m);
  return f;
}

Morphism Morphism::infinite(SemigroupModel S) {
  Morphism f;
  f.kind = MorphismKind::Infinite;
  f.dom = S;
  f.cod = std::move(S);
  f.declared_cu = false;
  f.name = "infinite";
  return f;
}

Morphism Morphism::sigma(SemigroupModel dom, bool to_half_line) {
  require(leaf_soft_kind(dom), "sigma needs a Z or Kq domain");
  Morphism f;
  f.kind = MorphismKind::Sigma;
  f.cod = to_half_line ? SemigroupModel::half_line() : dom;
  f.dom = std::move(dom);
  f.declared_cu = false;  // compacts lose self-compactness
  f.name = "sigma";
  return f;
}

Morphism Morphism::nat_to_soft() {
  Morphism f;
  f.kind = MorphismKind::NatToSoft;
  f.dom = SemigroupModel::nbar();
  f.cod = SemigroupModel::z();
  f.declared_cu = false;
  f.name = "nat_to_soft";
  return f;
}

Morphism Morphism::nat_embed() {
  Morphism f;
  f.kind = MorphismKind::NatEmbed;
  f.dom = SemigroupModel::nbar();
  f.cod = SemigroupModel::z();
  f.declared_cu = true;
  f.name = "nat_embed";
  return f;
}

Morphism Morphism::soft_incl(SemigroupModel cod) {
  require(leaf_soft_kind(cod), "soft_incl needs a Z or Kq codomain");
  Morphism f;
  f.kind = MorphismKind::SoftIncl;
  f.dom = SemigroupModel::half_line();
  f.cod = std::move(cod);
  f.declared_cu = true;
  f.name = "soft_incl";
  return f;
}

Morphism Morphism::scale(SemigroupModel dom, SemigroupModel cod, mpq_class r) {
  r.canonicalize();
  require(r > 0, "scale needs a positive ratio");
  const bool half = dom.kind() == ModelKind::HalfLine && cod.kind() == ModelKind::HalfLine;
  bool rational_ok = false;
  if (cod.kind() == ModelKind::Kq &&
      (dom.kind() == ModelKind::Z ||
       (dom.kind() == ModelKind::Kq &&
        std::includes(cod.primes().begin(), cod.primes().end(), dom.primes().begin(),
                      dom.primes().end()))))
    rational_ok = supported_denominator(r.get_den(), cod.primes());
  const bool z_ok = dom.kind() == ModelKind::Z && cod.kind() == ModelKind::Z && r.get_den() == 1;
  require(half || rational_ok || z_ok, "scale ratio does not keep compacts in the codomain");
  Morphism f;
  f.kind = MorphismKind::Scale;
  f.dom = std::move(dom);
  f.cod = std::move(cod);
  f.ratio = r;
  f.declared_cu = true;
  f.name = "scale";
  return f;
}

Morphism Morphism::proj(SemigroupModel dom, std::size_t i) {
  require(dom.kind() == ModelKind::Product && i < dom.parts().size(), "proj needs a product domain");
  Morphism f;
  f.kind = MorphismKind::Proj;
  f.cod = dom.parts()[i];
  f.dom = std::move(dom);
  f.index = i;
  f.declared_cu = true;
  f.name = "proj" + std::to_string(i);
  return f;
}

Morphism Morphism::inj(SemigroupModel cod, std::size_t i) {
  require(cod.kind() == ModelKind::Product && i < cod.parts().size(), "inj needs a product codomain");
  Morphism f;
  f.kind = MorphismKind::Inj;
  f.dom = cod.parts()[i];
  f.cod = std::move(cod);
  f.index = i;
  f.declared_cu = true;
  f.name = "inj" + std::to_string(i);
  return f;
}

Morphism Morphism::table_map(SemigroupModel dom, SemigroupModel cod,
                             std::vector<std::pair<Element, Element>> graph, bool declared_cu) {
  Morphism f;
  f.kind = MorphismKind::TableMap;
  for (auto& [k, v] : graph) {
    k = canonical(dom, k);
    v = canonical(cod, v);
  }
  std::sort(graph.begin(), graph.end(),
            [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  f.graph = std::move(graph);
  f.dom = std::move(dom);
  f.cod = std::move(cod);
  f.declared_cu = declared_cu;
  f.name = "table_map";
  return f;
}

std::string Morphism::describe() const {
  return name + ": " + dom.describe() + " -> " + cod.describe();
}

Element apply(const Morphism& f, const Element& a) {
  if (!belongs(f.dom, a))
    throw ModelMismatch(a.str() + " is not an element of " + f.dom.describe());
  const Element& x = a;
  switch (f.kind) {
    case MorphismKind::Identity:
      return x;
    case MorphismKind::Zero:
      return zero_of(f.cod);
    case MorphismKind::MultiplyBy:
      return scalar_mul(f.dom, f.mult, x);
    case MorphismKind::Infinite:
      return mult_inf(f.dom, x);
    case MorphismKind::Sigma: {
      Ext p = x.payload;
      if (f.cod.kind() == ModelKind::HalfLine) return Element::scalar(p);
      return canonical(f.cod, Element::soft(p));
    }
    case MorphismKind::NatToSoft:
      return canonical(f.cod, Element::soft(x.payload));
    case MorphismKind::NatEmbed:
      return canonical(f.cod, x.tag == Tag::Soft ? Element::soft(x.payload)
                                                 : Element::compact(x.payload));
    case MorphismKind::SoftIncl:
      return canonical(f.cod, Element::soft(x.payload));
    case MorphismKind::Scale: {
      Ext p = x.payload * Ext(mpq_class(f.ratio));
      if (f.cod.kind() == ModelKind::HalfLine) return Element::scalar(p);
      return canonical(f.cod, x.tag == Tag::Soft ? Element::soft(p) : Element::compact(p));
    }
    case MorphismKind::Proj:
      return canonical(f.cod, x.parts[f.index]);
    case MorphismKind::Inj: {
      Element out = zero_of(f.cod);
      out.parts[f.index] = x;
      return out;
    }
    case MorphismKind::TableMap: {
      auto it = std::lower_bound(
          f.graph.begin(), f.graph.end(), x,
          [](const auto& entry, const Element& key) { return canonical_less(entry.first, key); });
      if (it == f.graph.end() || !(it->first == x))
        throw ModelMismatch("table_map is not defined at " + x.str());
      return it->second;
    }
    case MorphismKind::Compose: {
      Element cur = x;
      for (const auto& g : f.factors) cur = apply(g, cur);
      return cur;
    }
  }
  throw std::logic_error("apply: bad kind");
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.cod == g.dom))
    throw ModelMismatch("compose: codomain " + f.cod.describe() + " does not match domain " +
                        g.dom.describe());
  Morphism out;
  out.kind = MorphismKind::Compose;
  out.dom = f.dom;
  out.cod = g.cod;
  auto push = [&](const Morphism& m) {
    if (m.kind == MorphismKind::Compose)
      for (const auto& part : m.factors) out.factors.push_back(part);
    else
      out.factors.push_back(m);
  };
  push(f);
  push(g);
  out.declared_cu = f.declared_cu && g.declared_cu;
  out.name = g.name + "." + f.name;
  return out;
}

namespace {

std::optional<Chain> map_eventually(const Morphism& f, const EventuallyConst& ev) {
  try {
    std::vector<Element> prefix;
    for (const auto& e : ev.prefix) prefix.push_back(apply(f, e));
    return Chain::eventually(std::move(prefix), apply(f, ev.tail));
  } catch (const ModelMismatch&) {
    return std::nullopt;  // graph not defined at a chain term
  }
}

}  // namespace

std::optional<Chain> map_chain(const Morphism& f, const Chain& c) {
  if (const auto* ev = std::get_if<EventuallyConst>(&c.gen)) return map_eventually(f, *ev);

  switch (f.kind) {
    case MorphismKind::Identity:
      return c;
    case MorphismKind::Zero:
      return Chain::constant(zero_of(f.cod));
    case MorphismKind::Compose: {
      Chain cur = c;
      for (const auto& g : f.factors) {
        auto next = map_chain(g, cur);
        if (!next) return std::nullopt;
        cur = std::move(*next);
      }
      return cur;
    }
    case MorphismKind::Inj: {
      std::vector<Chain> mapped;
      for (size_t i = 0; i < f.cod.parts().size(); ++i)
        mapped.push_back(i == f.index ? c : Chain::constant(zero_of(f.cod.parts()[i])));
      return Chain::tuple(std::move(mapped));
    }
    default:
      break;
  }

  if (const auto* leaf = std::get_if<LeafChain>(&c.gen)) {
    switch (f.kind) {
      case MorphismKind::MultiplyBy:
        return Chain::leaf(leaf->tag, leaf->payload.scaled(f.mult));
      case MorphismKind::Infinite: {
        if (leaf->payload.num.is_zero()) return Chain::constant(zero_of(f.cod));
        if (leaf->payload.eval(1).is_zero()) return std::nullopt;
        Tag tag = f.cod.kind() == ModelKind::HalfLine ? Tag::Scalar : Tag::Soft;
        Element top = tag == Tag::Scalar ? Element::scalar(Ext::inf()) : Element::soft(Ext::inf());
        return Chain::constant(std::move(top));
      }
      case MorphismKind::Sigma:
        return Chain::leaf(f.cod.kind() == ModelKind::HalfLine ? Tag::Scalar : Tag::Soft,
                           leaf->payload);
      case MorphismKind::NatToSoft:
        return Chain::leaf(Tag::Soft, leaf->payload);
      case MorphismKind::NatEmbed:
        return Chain::leaf(leaf->tag, leaf->payload);
      case MorphismKind::SoftIncl:
        return Chain::leaf(Tag::Soft, leaf->payload);
      case MorphismKind::Scale:
        return Chain::leaf(f.cod.kind() == ModelKind::HalfLine ? Tag::Scalar : leaf->tag,
                           leaf->payload.scaled(f.ratio));
      default:
        return std::nullopt;
    }
  }

  if (const auto* parts = std::get_if<std::vector<Chain>>(&c.gen)) {
    switch (f.kind) {
      case MorphismKind::Proj:
        return (*parts)[f.index];
      case MorphismKind::MultiplyBy:
      case MorphismKind::Infinite: {
        std::vector<Chain> mapped;
        for (size_t i = 0; i < parts->size(); ++i) {
          Morphism comp = f.kind == MorphismKind::MultiplyBy
                              ? Morphism::multiply_by(f.dom.parts()[i], f.mult)
                              : Morphism::infinite(f.dom.parts()[i]);
          auto m = map_chain(comp, (*parts)[i]);
          if (!m) return std::nullopt;
          mapped.push_back(std::move(*m));
        }
        return Chain::tuple(std::move(mapped));
      }
      default:
        return std::nullopt;
    }
  }

  return std::nullopt;
}

}  // namespace cuf
