// SPDX-License-Identifier: Apache-2.0

#include "cuf/order_oracle.hpp"

namespace cuf {

namespace {

Ext ramp_at(const Ext& t, unsigned long d) {
  // t * d / (d + 1), computed directly.
  if (t.is_inf()) return Ext(static_cast<unsigned long>(d));
  mpq_class q = t.value();
  q *= static_cast<unsigned long>(d);
  q /= static_cast<unsigned long>(d + 1);
  return Ext(q);
}

Ext min_ext(const Ext& a, const Ext& b) { return a <= b ? a : b; }

/// d-th term of the oracle's own approximant chain for e.
Element oracle_term(const SemigroupModel& S, const Element& e, unsigned long d) {
  switch (S.kind()) {
    case ModelKind::Nbar:
      if (e.tag == Tag::Soft) return Element::compact(Ext(static_cast<unsigned long>(d)));
      return e;
    case ModelKind::Z:
    case ModelKind::Kq:
      if (e.tag == Tag::Soft) return Element::soft(ramp_at(e.payload, d));
      return e;
    case ModelKind::HalfLine:
      if (e.payload.is_zero()) return e;
      return Element::scalar(ramp_at(e.payload, d));
    case ModelKind::Product: {
      std::vector<Element> parts;
      for (size_t i = 0; i < e.parts.size(); ++i)
        parts.push_back(oracle_term(S.parts()[i], e.parts[i], d));
      return Element::tuple(std::move(parts));
    }
    case ModelKind::Lsc: {
      Element t = e;
      for (auto& v : t.values) v = min_ext(v, Ext(static_cast<unsigned long>(d)));
      return t;
    }
    case ModelKind::Table:
      return e;
  }
  throw std::logic_error("oracle_term: bad kind");
}

/// Alternate chain family for elements with an infinite soft payload: the
/// compact ramp, which shares the supremum. Nullopt when it coincides with
/// the canonical family.
std::optional<Element> alt_term(const SemigroupModel& S, const Element& e, unsigned long d) {
  switch (S.kind()) {
    case ModelKind::Z:
    case ModelKind::Kq:
      if (e.tag == Tag::Soft && e.payload.is_inf())
        return Element::compact(Ext(static_cast<unsigned long>(d)));
      return std::nullopt;
    case ModelKind::Product: {
      bool any = false;
      std::vector<Element> parts;
      for (size_t i = 0; i < e.parts.size(); ++i) {
        if (auto p = alt_term(S.parts()[i], e.parts[i], d)) {
          parts.push_back(std::move(*p));
          any = true;
        } else {
          parts.push_back(oracle_term(S.parts()[i], e.parts[i], d));
        }
      }
      if (!any) return std::nullopt;
      return Element::tuple(std::move(parts));
    }
    default:
      return std::nullopt;
  }
}

/// Ground term comparison: same variant compares payloads, mixed variants
/// compare strictly. The mixed order between the parts is never assumed; it
/// emerges from the chains.
bool term_leq(const SemigroupModel& S, const Element& u, const Element& v) {
  switch (S.kind()) {
    case ModelKind::Nbar:
    case ModelKind::Z:
    case ModelKind::Kq:
      if (u.tag == v.tag) return u.payload <= v.payload;
      return u.payload < v.payload;
    case ModelKind::HalfLine:
      return u.payload <= v.payload;
    case ModelKind::Product: {
      for (size_t i = 0; i < u.parts.size(); ++i)
        if (!term_leq(S.parts()[i], u.parts[i], v.parts[i])) return false;
      return true;
    }
    case ModelKind::Lsc: {
      for (size_t i = 0; i < u.values.size(); ++i)
        if (!(u.values[i] <= v.values[i])) return false;
      return true;
    }
    case ModelKind::Table:
      return S.table_data().leq[u.index][v.index];
  }
  throw std::logic_error("term_leq: bad kind");
}

unsigned long prefix_len(unsigned depth) {
  return static_cast<unsigned long>(depth) * depth + depth + 2;
}

bool chains_leq(const SemigroupModel& S, const std::vector<Element>& ta,
                const std::vector<Element>& tb) {
  size_t e = 0;
  for (size_t d = 0; d < ta.size(); ++d) {
    while (e < tb.size() && !term_leq(S, ta[d], tb[e])) ++e;
    if (e == tb.size()) return false;
  }
  return true;
}

std::vector<Element> terms_of(const SemigroupModel& S, const Element& e, unsigned long len) {
  std::vector<Element> out;
  out.reserve(len);
  for (unsigned long d = 1; d <= len; ++d) out.push_back(oracle_term(S, e, d));
  return out;
}

}  // namespace

bool brute_order_oracle(const SemigroupModel& S, const Element& a, const Element& b,
                        unsigned depth) {
  const Element x = canonical(S, a), y = canonical(S, b);
  const unsigned long len = prefix_len(depth);
  return chains_leq(S, terms_of(S, x, len), terms_of(S, y, len));
}

Element oracle_approximant(const SemigroupModel& S, const Element& e, unsigned long d) {
  return oracle_term(S, canonical(S, e), d);
}

namespace {

/// Does some term of z's family (canonical or alternate) dominate a? Terms
/// increase, so the deepest term decides.
bool dominated_by_family(const SemigroupModel& S, const std::vector<Element>& ta,
                         const Element& z, bool use_alt, unsigned long len) {
  Element deep = use_alt ? *alt_term(S, z, len) : oracle_term(S, z, len);
  return chains_leq(S, ta, terms_of(S, deep, len));
}

}  // namespace

bool brute_way_below_oracle(const SemigroupModel& S, const Element& a, const Element& b,
                            unsigned depth) {
  const Element x = canonical(S, a), y = canonical(S, b);
  const unsigned long len = prefix_len(depth);
  const auto ta = terms_of(S, x, len);
  const auto tb = terms_of(S, y, len);
  for (const auto& z : enumerate_grid(S, depth)) {
    if (!chains_leq(S, tb, terms_of(S, z, len))) continue;  // sup of z-chain < b
    if (!dominated_by_family(S, ta, z, false, len)) return false;
    if (alt_term(S, z, 1) && !dominated_by_family(S, ta, z, true, len)) return false;
  }
  return true;
}

OrderOracleMatrices brute_order_matrices(const SemigroupModel& S, unsigned depth) {
  OrderOracleMatrices out;
  out.grid = enumerate_grid(S, depth);
  const size_t n = out.grid.size();
  const unsigned long len = prefix_len(depth);

  std::vector<std::vector<Element>> terms(n);
  for (size_t i = 0; i < n; ++i) terms[i] = terms_of(S, out.grid[i], len);

  out.leq_m.assign(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out.leq_m[i][j] = chains_leq(S, terms[i], terms[j]);

  // dom[i][z]: some term of z's families dominates grid[i].
  std::vector<std::vector<bool>> dom(n, std::vector<bool>(n, false));
  for (size_t z = 0; z < n; ++z) {
    const auto deep = terms_of(S, oracle_term(S, out.grid[z], len), len);
    const bool has_alt = alt_term(S, out.grid[z], 1).has_value();
    std::vector<Element> deep_alt;
    if (has_alt) deep_alt = terms_of(S, *alt_term(S, out.grid[z], len), len);
    for (size_t i = 0; i < n; ++i) {
      dom[i][z] = chains_leq(S, terms[i], deep);
      if (dom[i][z] && has_alt) dom[i][z] = chains_leq(S, terms[i], deep_alt);
    }
  }

  out.wb_m.assign(n, std::vector<bool>(n, false));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      bool wb = true;
      for (size_t z = 0; z < n && wb; ++z)
        if (out.leq_m[b][z] && !dom[a][z]) wb = false;
      out.wb_m[a][b] = wb;
    }
  return out;
}

}  // namespace cuf
