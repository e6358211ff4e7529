// SPDX-License-Identifier: Apache-2.0

#include "cuf/factorization.hpp"

#include <chrono>
#include <map>

#include "cuf/axioms.hpp"
#include "cuf/oracle.hpp"

namespace cuf {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

const SemigroupModel& z_model() {
  static const SemigroupModel z = SemigroupModel::z();
  return z;
}

/// sigma(v) scaled by t: the soft element with payload t * payload(v),
/// componentwise on tuples.
Element sigma_scaled(const SemigroupModel& S, const Element& v, const Ext& t) {
  switch (S.kind()) {
    case ModelKind::Z:
    case ModelKind::Kq:
      return canonical(S, Element::soft(v.payload * t));
    case ModelKind::HalfLine:
      return Element::scalar(v.payload * t);
    case ModelKind::Product: {
      std::vector<Element> parts;
      for (size_t i = 0; i < v.parts.size(); ++i)
        parts.push_back(sigma_scaled(S.parts()[i], v.parts[i], t));
      return Element::tuple(std::move(parts));
    }
    default:
      throw UnsupportedChainForm("sigma_scaled outside a soft-capable model");
  }
}

/// The soft part's representation tag: the half-line carries its payloads in
/// the scalar variant, Z and Kq in the soft variant.
Tag soft_tag(const SemigroupModel& S) {
  return S.kind() == ModelKind::HalfLine ? Tag::Scalar : Tag::Soft;
}

Element soft_of(const SemigroupModel& S, const Ext& payload) {
  return canonical(S, soft_tag(S) == Tag::Scalar ? Element::scalar(payload)
                                                 : Element::soft(payload));
}

/// Witness image chain: d-th term is the soft element with payload
/// (t * d/(d+1)) * payload(c_d), for a leafy chain c in S2.
std::optional<Chain> witness_image_chain(const SemigroupModel& S2, const Chain& c,
                                         const Ext& t) {
  if (S2.kind() == ModelKind::Product) {
    std::vector<Chain> comp;
    if (const auto* parts = std::get_if<std::vector<Chain>>(&c.gen)) {
      comp = *parts;
    } else if (const auto* ev = std::get_if<EventuallyConst>(&c.gen);
               ev && ev->prefix.empty() && ev->tail.tag == Tag::Tuple) {
      for (const auto& part : ev->tail.parts) comp.push_back(Chain::constant(part));
    } else {
      return std::nullopt;
    }
    std::vector<Chain> mapped;
    for (size_t i = 0; i < comp.size(); ++i) {
      auto m = witness_image_chain(S2.parts()[i], comp[i], t);
      if (!m) return std::nullopt;
      mapped.push_back(std::move(*m));
    }
    return Chain::tuple(std::move(mapped));
  }
  std::optional<PolyFrac> payload;
  if (const auto* leaf = std::get_if<LeafChain>(&c.gen)) payload = leaf->payload;
  if (const auto* ev = std::get_if<EventuallyConst>(&c.gen)) {
    if (!ev->prefix.empty()) return std::nullopt;
    if (ev->tail.payload.is_inf())
      return Chain::constant(soft_of(S2, t.is_zero() ? Ext() : Ext::inf()));
    payload = PolyFrac::constant(ev->tail.payload);
  }
  if (!payload) return std::nullopt;
  if (t.is_inf()) {
    // terms soft(d * p(d)): either identically zero or unbounded
    if (payload->num.is_zero()) return Chain::constant(zero_of(S2));
    return Chain::leaf(soft_tag(S2), PolyFrac::index() * *payload);
  }
  return Chain::leaf(soft_tag(S2), PolyFrac::ramp(t) * *payload);
}

/// alpha(x_d, t) as a family in d for soft t: payload t * payload(c_d).
std::optional<Chain> soft_scale_chain(const SemigroupModel& S2, const Chain& c, const Ext& t) {
  if (const auto* parts = std::get_if<std::vector<Chain>>(&c.gen)) {
    std::vector<Chain> mapped;
    for (size_t i = 0; i < parts->size(); ++i) {
      auto m = soft_scale_chain(S2.parts()[i], (*parts)[i], t);
      if (!m) return std::nullopt;
      mapped.push_back(std::move(*m));
    }
    return Chain::tuple(std::move(mapped));
  }
  if (const auto* ev = std::get_if<EventuallyConst>(&c.gen)) {
    std::vector<Element> prefix;
    for (const auto& e : ev->prefix) prefix.push_back(sigma_scaled(S2, e, t));
    return Chain::eventually(std::move(prefix), sigma_scaled(S2, ev->tail, t));
  }
  const auto* leaf = std::get_if<LeafChain>(&c.gen);
  if (!leaf) return std::nullopt;
  if (t.is_inf()) {
    if (leaf->payload.num.is_zero()) return Chain::constant(zero_of(S2));
    if (leaf->payload.eval(1).is_zero()) return std::nullopt;
    return Chain::constant(soft_of(S2, Ext::inf()));
  }
  return Chain::leaf(soft_tag(S2), leaf->payload.scaled(t.value()));
}

std::optional<Chain> chain_scale(const SemigroupModel& S, const Chain& c, const mpz_class& m) {
  if (m == 0) return Chain::constant(zero_of(S));
  if (const auto* leaf = std::get_if<LeafChain>(&c.gen)) {
    if (m.fits_ulong_p())
      return Chain::leaf(leaf->tag, leaf->payload.scaled(mpq_class(m)));
    return std::nullopt;
  }
  if (const auto* ev = std::get_if<EventuallyConst>(&c.gen)) {
    std::vector<Element> prefix;
    for (const auto& e : ev->prefix) prefix.push_back(scalar_mul(S, m, e));
    return Chain::eventually(std::move(prefix), scalar_mul(S, m, ev->tail));
  }
  if (const auto* parts = std::get_if<std::vector<Chain>>(&c.gen)) {
    std::vector<Chain> mapped;
    for (size_t i = 0; i < parts->size(); ++i) {
      auto p = chain_scale(S.parts()[i], (*parts)[i], m);
      if (!p) return std::nullopt;
      mapped.push_back(std::move(*p));
    }
    return Chain::tuple(std::move(mapped));
  }
  return std::nullopt;
}

/// Fraction schedule of the supremum construction: ratios t*d/(d+1) (or d for
/// t = inf), with numerator and denominator inflated by a common factor so
/// that k_{d+1}/(n_{d+1}+1) stays above k_d/n_d.
std::vector<std::pair<mpz_class, mpz_class>> fraction_schedule(const Ext& t, unsigned len) {
  std::vector<std::pair<mpz_class, mpz_class>> out;
  mpz_class prev_k = 0, prev_n = 1;
  for (unsigned d = 1; d <= len; ++d) {
    mpz_class k0, n0;
    if (t.is_inf()) {
      k0 = d;
      n0 = 1;
    } else {
      k0 = t.num() * d;
      n0 = t.den() * (d + 1);
    }
    mpz_class c = 1;
    if (d > 1) {
      // need c*k0/(c*n0 + 1) > prev_k/prev_n, i.e. c*(k0*prev_n - prev_k*n0) > prev_k
      mpz_class delta = k0 * prev_n - prev_k * n0;
      if (delta <= 0) throw std::logic_error("fraction_schedule: ratios not increasing");
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), prev_k.get_mpz_t(), delta.get_mpz_t());
      c = q + 1;
    }
    prev_k = c * k0;
    prev_n = c * n0;
    out.push_back({prev_k, prev_n});
  }
  return out;
}

}  // namespace

FactorPair::FactorPair(Morphism p1, Morphism p2) : phi1(std::move(p1)), phi2(std::move(p2)) {
  if (!(phi1.cod == phi2.dom))
    throw ModelMismatch("FactorPair: phi1 codomain " + phi1.cod.describe() +
                        " does not match phi2 domain " + phi2.dom.describe());
}

WitnessChain build_witness_chain(const FactorPair& p, const Element& x, const Ext& t,
                                 unsigned len) {
  if (t.is_zero()) throw PreconditionViolated("build_witness_chain: target must be positive");
  WitnessChain wc;
  wc.target = t;
  wc.fractions = fraction_schedule(t, len);

  const SemigroupModel& dom = p.domain();
  const SemigroupModel& mid = p.middle();
  const Element xe = canonical(dom, x);
  const Chain cx = approx_chain(dom, xe);
  Element prev = zero_of(dom);
  for (unsigned d = 1; d <= len; ++d) {
    const auto& [k, n] = wc.fractions[d - 1];
    const Element xd = cx.at(dom, d);
    const Element y =
        divisibility_witness(p.phi1, n, scalar_mul(dom, k, prev), scalar_mul(dom, k, xd));
    MuSpec spec{k, n, apply(p.phi1, prev), apply(p.phi1, xd)};
    if (!mu_contains(mid, spec, y))
      throw std::logic_error("witness chain: y_d escapes its mu-set at d=" + std::to_string(d));
    wc.xs.push_back(xd);
    wc.ys.push_back(y);
    prev = xd;
  }
  // schedule interleaving k_d/n_d < k_{d+1}/(n_{d+1}+1)
  for (size_t d = 0; d + 1 < wc.fractions.size(); ++d) {
    const auto& [k1, n1] = wc.fractions[d];
    const auto& [k2, n2] = wc.fractions[d + 1];
    if (!(mpq_class(k1) / mpq_class(n1) < mpq_class(k2) / mpq_class(n2 + 1)))
      throw std::logic_error("witness chain: schedule interleaving fails");
  }
  return wc;
}

Element alpha_eval(const FactorPair& p, const Element& x, const Element& t) {
  const Element tz = canonical(z_model(), t);
  const SemigroupModel& dom = p.domain();
  const SemigroupModel& T = p.target();
  const Element xe = canonical(dom, x);
  const Element w = apply(p.phi2, apply(p.phi1, xe));

  if (tz.tag == Tag::Compact) return scalar_mul(T, mpz_class(tz.payload.num()), w);

  const Ext tau = tz.payload;
  if (xe == zero_of(dom)) return zero_of(T);

  // The witness chain realizes the construction; its validation is the
  // NoWitnessFound path when phi1 cannot supply witnesses.
  build_witness_chain(p, xe, tau, 4);
  if (!has_closed_form_witness(p.phi1))
    throw UnsupportedChainForm("phi1 has no closed-form witnesses; use alpha_eval_oracle");

  const Chain cx = approx_chain(dom, xe);
  auto c1 = map_chain(p.phi1, cx);
  if (!c1) throw UnsupportedChainForm("phi1 image chain has no closed form");
  auto yc = witness_image_chain(p.middle(), *c1, tau);
  if (!yc) throw UnsupportedChainForm("witness chain has no closed form");
  auto c2 = map_chain(p.phi2, *yc);
  if (!c2) throw UnsupportedChainForm("phi2 has no closed-form chain image");

  const Element result = sup_chain(T, *c2, 16);
  const Element bound =
      tau.is_inf() ? mult_inf(T, w) : scalar_mul(T, mpz_class(tau.ceil().num()), w);
  if (!leq(T, result, bound))
    throw std::logic_error("alpha_eval: supremum exceeds the ceiling bound");
  return result;
}

AlphaOracleValue alpha_eval_oracle(const FactorPair& p, const Element& x, const Element& t,
                                   unsigned depth) {
  const Element tz = canonical(z_model(), t);
  const SemigroupModel& dom = p.domain();
  const SemigroupModel& mid = p.middle();
  const SemigroupModel& T = p.target();
  const Element xe = canonical(dom, x);
  const Element v = apply(p.phi1, xe);

  if (tz.tag == Tag::Compact) {
    const Element w = apply(p.phi2, apply(p.phi1, xe));
    return {scalar_mul(T, mpz_class(tz.payload.num()), w), true};
  }
  const Ext tau = tz.payload;
  if (v == zero_of(mid)) return {zero_of(T), true};

  // Frontier fraction: the largest k/n < tau with k, n <= K.
  std::uint64_t kcap = 64;
  {
    std::uint64_t d = depth;
    kcap += d * d * d * d;
    if (kcap > 200000) kcap = 200000;
  }
  mpz_class best_k = 0, best_n = 1;
  if (tau.is_inf()) {
    best_k = static_cast<unsigned long>(kcap);
    best_n = 1;
  } else {
    const mpz_class a = tau.num(), b = tau.den();
    for (unsigned long n = 1; n <= kcap; ++n) {
      mpz_class k;
      mpz_cdiv_q(k.get_mpz_t(), mpz_class(a * n).get_mpz_t(), b.get_mpz_t());
      k -= 1;  // largest k with k/n < a/b
      if (k < 1) continue;
      if (k > static_cast<long>(kcap)) break;
      if (k * best_n > best_k * n) {
        best_k = k;
        best_n = n;
      }
    }
    if (best_k == 0) return {zero_of(T), false};
  }
  const Ext frontier = Ext::ratio(best_k, best_n);

  auto grid_fallback = [&]() -> AlphaOracleValue {
    std::vector<Element> values{zero_of(T)};
    for (const auto& y : enumerate_grid(mid, depth)) {
      if (!leq(mid, scalar_mul(mid, best_n, y), scalar_mul(mid, best_k, v))) continue;
      try {
        values.push_back(apply(p.phi2, y));
      } catch (const ModelMismatch&) {
      }
    }
    auto universe = enumerate_grid(T, depth);
    auto lub = least_upper_bound_in(T, universe, values);
    return {lub ? *lub : mult_inf(T, apply(p.phi2, v)), false};
  };

  if (!has_closed_form_witness(p.phi1)) return grid_fallback();

  std::vector<Element> witnesses;
  try {
    witnesses.push_back(apply(p.phi2, sigma_scaled(mid, v, frontier)));
  } catch (const ModelMismatch&) {
    return grid_fallback();
  }
  // Boundary compacts: when v is compact and frontier * payload lands exactly
  /// on a compact value, that compact qualifies with equality.
  {
    auto boundary = [&](auto&& self, const SemigroupModel& M, const Element& u)
        -> std::optional<Element> {
      switch (M.kind()) {
        case ModelKind::Z:
        case ModelKind::Kq: {
          if (u.tag != Tag::Compact || u.payload.is_zero()) return std::nullopt;
          Element c = Element::compact(u.payload * frontier);
          return belongs(M, c) ? std::optional<Element>(c) : std::nullopt;
        }
        case ModelKind::HalfLine:
          return std::nullopt;  // no compacts above zero
        case ModelKind::Product: {
          std::vector<Element> parts;
          for (size_t i = 0; i < u.parts.size(); ++i) {
            auto b = self(self, M.parts()[i], u.parts[i]);
            parts.push_back(b ? *b : sigma_scaled(M.parts()[i], u.parts[i], frontier));
          }
          return Element::tuple(std::move(parts));
        }
        default:
          return std::nullopt;
      }
    };
    if (auto b = boundary(boundary, mid, v)) {
      try {
        witnesses.push_back(apply(p.phi2, *b));
      } catch (const ModelMismatch&) {
      }
    }
  }

  Element limit;
  try {
    limit = apply(p.phi2, sigma_scaled(mid, v, tau));
  } catch (const ModelMismatch&) {
    return grid_fallback();
  }
  for (const auto& w : witnesses)
    if (!leq(T, w, limit)) throw std::logic_error("alpha oracle: frontier exceeds the limit");

  // The universe is the grid plus the density-limit candidate; the raw
  // frontier witnesses stay outside so they cannot shadow the limit.
  std::vector<Element> universe = enumerate_grid(T, depth);
  universe.push_back(limit);
  universe.push_back(zero_of(T));
  auto lub = least_upper_bound_in(T, universe, witnesses);
  if (!lub) throw std::logic_error("alpha oracle: no least upper bound in universe");
  return {*lub, *lub == limit};
}

namespace {

std::optional<Chain> alpha_chain_in_x(const FactorPair& p, const Element& x, const Element& tz) {
  const Chain cx = approx_chain(p.domain(), x);
  auto c1 = map_chain(p.phi1, cx);
  if (!c1) return std::nullopt;
  if (tz.tag == Tag::Compact) {
    auto c2 = map_chain(p.phi2, *c1);
    if (!c2) return std::nullopt;
    return chain_scale(p.target(), *c2, mpz_class(tz.payload.num()));
  }
  auto scaled = soft_scale_chain(p.middle(), *c1, tz.payload);
  if (!scaled) return std::nullopt;
  return map_chain(p.phi2, *scaled);
}

std::optional<Chain> alpha_chain_in_t(const FactorPair& p, const Element& x, const Ext& tau) {
  const Element v = apply(p.phi1, canonical(p.domain(), x));
  auto yc = witness_image_chain(p.middle(), Chain::constant(v), tau);
  if (!yc) return std::nullopt;
  return map_chain(p.phi2, *yc);
}

}  // namespace

CheckReport verify_alpha_bimorphism(const FactorPair& p, unsigned depth) {
  const auto t0 = Clock::now();
  CheckReport rep;
  rep.check = "verify-bimorphism";
  rep.target = p.describe();
  rep.set_param("depth", std::uint64_t(depth));

  {
    CheckReport div = check_almost_divisible(p.phi1, depth, 4);
    if (!div.passed()) {
      rep.status = Status::Fail;
      rep.detail = "precondition rejection: phi1 fails almost divisibility";
      rep.counterexample = div.counterexample;
      rep.sub.push_back(std::move(div));
      rep.elapsed_ms = ms_since(t0);
      return rep;
    }
    CheckReport unp = check_almost_unperforated(p.phi2, depth, 4);
    if (!unp.passed()) {
      rep.status = Status::Fail;
      rep.detail = "precondition rejection: phi2 fails almost unperforation";
      rep.counterexample = unp.counterexample;
      rep.sub.push_back(std::move(unp));
      rep.elapsed_ms = ms_since(t0);
      return rep;
    }
  }

  const SemigroupModel& dom = p.domain();
  const SemigroupModel& T = p.target();
  const auto G = enumerate_grid(dom, depth);
  const auto Tg = enumerate_grid(z_model(), depth);
  auto prd = [&](const Element& e) { return print_element(dom, e); };
  auto prz = [&](const Element& e) { return print_element(z_model(), e); };
  auto done = [&]() {
    rep.elapsed_ms = ms_since(t0);
    return rep;
  };

  struct KeyLess {
    bool operator()(const std::pair<Element, Element>& a,
                    const std::pair<Element, Element>& b) const {
      if (canonical_less(a.first, b.first)) return true;
      if (canonical_less(b.first, a.first)) return false;
      return canonical_less(a.second, b.second);
    }
  };
  std::map<std::pair<Element, Element>, Element, KeyLess> memo;
  auto alpha = [&](const Element& x, const Element& t) -> const Element& {
    auto key = std::make_pair(x, t);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(std::move(key), alpha_eval(p, x, t)).first;
    return it->second;
  };

  // Anchor identity on the full grid.
  const Element one = Element::compact(Ext(1L));
  for (const auto& x : G) {
    ++rep.instances;
    if (!(alpha(x, one) == apply(p.phi2, apply(p.phi1, x)))) {
      rep.fail_with({{"law", "anchor"}, {"x", prd(x)}});
      return done();
    }
  }

  const std::uint64_t triple_budget = 10'000;
  const std::uint64_t n = G.size(), m = Tg.size();

  // Additivity and monotonicity in x.
  {
    Sweep sweep(n * n * m, triple_budget, 11);
    if (sweep.sampled) rep.set_param("x-pairs", "sampled");
    for (std::uint64_t i = 0; i < sweep.count(); ++i) {
      std::uint64_t pick = sweep.pick(i);
      const Element &x1 = G[pick % n], &x2 = G[(pick / n) % n];
      const Element& t = Tg[(pick / n / n) % m];
      const Element sum = add(dom, x1, x2);
      ++rep.instances;
      if (!(alpha(sum, t) == add(T, alpha(x1, t), alpha(x2, t)))) {
        rep.fail_with({{"law", "additive-in-x"}, {"x1", prd(x1)}, {"x2", prd(x2)}, {"t", prz(t)}});
        return done();
      }
      if (leq(dom, x1, x2) && !leq(T, alpha(x1, t), alpha(x2, t))) {
        rep.fail_with({{"law", "monotone-in-x"}, {"x1", prd(x1)}, {"x2", prd(x2)}, {"t", prz(t)}});
        return done();
      }
    }
  }

  // Additivity and monotonicity in t.
  {
    Sweep sweep(m * m * n, triple_budget, 12);
    if (sweep.sampled) rep.set_param("t-pairs", "sampled");
    for (std::uint64_t i = 0; i < sweep.count(); ++i) {
      std::uint64_t pick = sweep.pick(i);
      const Element &t1 = Tg[pick % m], &t2 = Tg[(pick / m) % m];
      const Element& x = G[(pick / m / m) % n];
      const Element sum = add(z_model(), t1, t2);
      ++rep.instances;
      if (!(alpha(x, sum) == add(T, alpha(x, t1), alpha(x, t2)))) {
        rep.fail_with({{"law", "additive-in-t"}, {"x", prd(x)}, {"t1", prz(t1)}, {"t2", prz(t2)}});
        return done();
      }
      if (leq(z_model(), t1, t2) && !leq(T, alpha(x, t1), alpha(x, t2))) {
        rep.fail_with({{"law", "monotone-in-t"}, {"x", prd(x)}, {"t1", prz(t1)}, {"t2", prz(t2)}});
        return done();
      }
    }
  }

  // Sup preservation along chain families, in each variable symbolically.
  unsigned sup_skipped = 0;
  {
    Sweep sweep(n * m, 4000, 14);
    if (sweep.sampled) rep.set_param("sup-pairs", "sampled");
    for (std::uint64_t i = 0; i < sweep.count(); ++i) {
      std::uint64_t pick = sweep.pick(i);
      const Element& x = G[pick % n];
      const Element& t = Tg[(pick / n) % m];
      ++rep.instances;
      try {
        if (auto fam = alpha_chain_in_x(p, x, t)) {
          if (!(sup_chain(T, *fam, 16) == alpha(x, t))) {
            rep.fail_with({{"law", "sup-in-x"}, {"x", prd(x)}, {"t", prz(t)}});
            return done();
          }
        } else {
          ++sup_skipped;
        }
        if (t.tag == Tag::Soft) {
          if (auto fam = alpha_chain_in_t(p, x, t.payload)) {
            if (!(sup_chain(T, *fam, 16) == alpha(x, t))) {
              rep.fail_with({{"law", "sup-in-t"}, {"x", prd(x)}, {"t", prz(t)}});
              return done();
            }
          } else {
            ++sup_skipped;
          }
        }
      } catch (const std::exception& e) {
        rep.fail_with({{"law", "sup"}, {"x", prd(x)}, {"t", prz(t)}}, e.what());
        return done();
      }
    }
  }
  if (sup_skipped) rep.set_param("sup-skipped", std::uint64_t(sup_skipped));

  // Joint way-below condition, when both sides are declared Cu-morphisms.
  if (p.phi1.declared_cu && p.phi2.declared_cu) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> wbx, wbt;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        if (way_below(dom, G[i], G[j])) wbx.push_back({i, j});
    for (std::uint32_t i = 0; i < m; ++i)
      for (std::uint32_t j = 0; j < m; ++j)
        if (way_below(z_model(), Tg[i], Tg[j])) wbt.push_back({i, j});
    Sweep sweep(std::uint64_t(wbx.size()) * wbt.size(), 20000, 13);
    if (sweep.sampled) rep.set_param("wb-joint", "sampled");
    for (std::uint64_t i = 0; i < sweep.count(); ++i) {
      std::uint64_t pick = sweep.pick(i);
      auto [xi, xj] = wbx[pick % wbx.size()];
      auto [ti, tj] = wbt[(pick / wbx.size()) % wbt.size()];
      ++rep.instances;
      if (!way_below(T, alpha(G[xi], Tg[ti]), alpha(G[xj], Tg[tj]))) {
        rep.fail_with({{"law", "wb-joint"},
                       {"xp", prd(G[xi])},
                       {"x", prd(G[xj])},
                       {"tp", prz(Tg[ti])},
                       {"t", prz(Tg[tj])}});
        return done();
      }
    }
  } else {
    rep.set_param("wb-joint", "skipped (not declared Cu)");
  }

  return done();
}

CheckReport check_z_extension(const Morphism& gamma_c, const Morphism& gamma_s, unsigned depth) {
  const auto t0 = Clock::now();
  CheckReport rep;
  rep.check = "check-z-extension";
  rep.target = gamma_c.name + "/" + gamma_s.name;
  rep.set_param("depth", std::uint64_t(depth));
  if (gamma_c.dom.kind() != ModelKind::Nbar)
    throw PreconditionViolated("check_z_extension: gamma_c must have domain Nbar");
  if (gamma_s.dom.kind() != ModelKind::HalfLine)
    throw PreconditionViolated("check_z_extension: gamma_s must have domain HalfLine");
  if (!(gamma_c.cod == gamma_s.cod))
    throw PreconditionViolated("check_z_extension: codomains differ");
  const SemigroupModel& T = gamma_c.cod;
  auto done = [&]() {
    rep.elapsed_ms = ms_since(t0);
    return rep;
  };

  // Premise: gamma_c restricted to the compact part is an order-preserving
  // monoid morphism.
  bool verdict = true;
  std::vector<std::pair<std::string, std::string>> why;
  for (unsigned long a = 0; a <= depth && verdict; ++a)
    for (unsigned long b = 0; b <= depth && verdict; ++b) {
      ++rep.instances;
      const Element ea = Element::compact(Ext(a)), eb = Element::compact(Ext(b));
      if (a + b <= 2 * depth &&
          !(apply(gamma_c, add(SemigroupModel::nbar(), ea, eb)) ==
            add(T, apply(gamma_c, ea), apply(gamma_c, eb)))) {
        verdict = false;
        why = {{"law", "gamma-c-additive"}, {"a", std::to_string(a)}, {"b", std::to_string(b)}};
      }
      if (verdict && a <= b && !leq(T, apply(gamma_c, ea), apply(gamma_c, eb))) {
        verdict = false;
        why = {{"law", "gamma-c-monotone"}, {"a", std::to_string(a)}, {"b", std::to_string(b)}};
      }
    }

  // Condition (i): gamma(sigma(1)) <= gamma(1) <= gamma(1 + eps) for grid eps.
  if (verdict) {
    const Element g1 = apply(gamma_c, Element::compact(Ext(1L)));
    const Element gs1 = apply(gamma_s, Element::scalar(Ext(1L)));
    if (!leq(T, gs1, g1)) {
      verdict = false;
      why = {{"law", "extension-i"}, {"side", "gamma(sigma(1)) <= gamma(1)"}};
    }
    if (verdict)
      for (const auto& eps : enumerate_grid(SemigroupModel::half_line(), depth)) {
        if (eps.payload.is_zero() || eps.payload.is_inf()) continue;
        ++rep.instances;
        if (!leq(T, g1, apply(gamma_s, Element::scalar(Ext(1L) + eps.payload)))) {
          verdict = false;
          why = {{"law", "extension-i"}, {"eps", eps.payload.str()}};
          break;
        }
      }
  }

  // Condition (ii): gamma_s is a generalized Cu-morphism.
  if (verdict) {
    CheckReport sub = check_generalized_cu_morphism(gamma_s, depth);
    rep.instances += sub.instances;
    if (!sub.passed()) {
      verdict = false;
      why = {{"law", "extension-ii"}};
      rep.sub.push_back(std::move(sub));
    }
  }

  // Cross-validation against the brute-force check of the glued map.
  MorphismGraph glued = glue_graph(gamma_c, gamma_s, depth);
  CheckReport brute = brute_morphism_check(glued, depth);
  rep.instances += brute.instances;
  if (brute.passed() != verdict) {
    rep.status = Status::Error;
    rep.detail = "extension criterion disagrees with the brute-force verdict";
    rep.sub.push_back(std::move(brute));
    return done();
  }
  if (!verdict) rep.fail_with(std::move(why));
  return done();
}

CheckReport lemma_almunpf_check(const FactorPair& p, const mpz_class& k1, const mpz_class& n1,
                                const mpz_class& k2, const mpz_class& n2, const Element& x1,
                                const Element& x2, unsigned depth,
                                const std::optional<Element>& x2p) {
  const auto t0 = Clock::now();
  if (k1 < 1 || n1 < 1 || k2 < 1 || n2 < 1)
    throw PreconditionViolated("lemma_almunpf_check: fractions must be positive");
  if (!(mpq_class(k1) / mpq_class(n1) < mpq_class(k2) / mpq_class(n2 + 1)))
    throw PreconditionViolated("lemma_almunpf_check: k1/n1 < k2/(n2+1) fails");
  const SemigroupModel& S = p.phi2.dom;
  const SemigroupModel& T = p.target();
  const Element e1 = canonical(S, x1), e2 = canonical(S, x2);
  if (!leq(S, e1, e2)) throw PreconditionViolated("lemma_almunpf_check: x1 <= x2 fails");

  CheckReport rep;
  rep.check = "lemma-almunpf";
  rep.target = p.phi2.name;
  rep.set_param("depth", std::uint64_t(depth));
  rep.set_param("k1/n1", k1.get_str() + "/" + n1.get_str());
  rep.set_param("k2/n2", k2.get_str() + "/" + n2.get_str());

  const auto mu1 = mu_sample(S, MuSpec{k1, n1, zero_of(S), e1}, depth);
  const auto mu2 = mu_sample(S, MuSpec{k2, n2, e1, e2}, depth);
  for (const auto& y1 : mu1)
    for (const auto& y2 : mu2) {
      ++rep.instances;
      if (!leq(T, apply(p.phi2, y1), apply(p.phi2, y2))) {
        rep.fail_with({{"part", "1"},
                       {"y1", print_element(S, y1)},
                       {"y2", print_element(S, y2)}});
        rep.elapsed_ms = ms_since(t0);
        return rep;
      }
    }

  if (x2p && p.phi2.declared_cu) {
    const Element mid = canonical(S, *x2p);
    if (!way_below(S, e1, mid) || !way_below(S, mid, e2))
      throw PreconditionViolated("lemma_almunpf_check: x1 << x2p << x2 fails");
    const auto mu2b = mu_sample(S, MuSpec{k2, n2, mid, e2}, depth);
    for (const auto& y1 : mu1)
      for (const auto& y2 : mu2b) {
        ++rep.instances;
        if (!way_below(T, apply(p.phi2, y1), apply(p.phi2, y2))) {
          rep.fail_with({{"part", "2"},
                         {"y1", print_element(S, y1)},
                         {"y2", print_element(S, y2)}});
          rep.elapsed_ms = ms_since(t0);
          return rep;
        }
      }
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

Element omega_n_eval(const FactorPair& p, const Element& x, unsigned long n,
                     const std::set<unsigned long>& primes, unsigned depth) {
  if (n == 0 || !supported_denominator(mpz_class(n), primes))
    throw NotADivisor(std::to_string(n) + " is not a divisor of the supernatural number");
  const SemigroupModel& mid = p.middle();
  const Element v = apply(p.phi1, canonical(p.domain(), x));
  auto z = divide_exact(mid, v, mpz_class(n));
  if (!z) throw NoWitnessFound("no z with " + std::to_string(n) + "z = phi1(x)");
  const Element y = apply(p.phi2, *z);
  // Uniqueness probe: a second witness must map to the same image.
  for (const auto& zp : enumerate_grid(mid, depth)) {
    if (zp == *z) continue;
    if (scalar_mul(mid, mpz_class(n), zp) == v && !(apply(p.phi2, zp) == y))
      throw UniquenessViolated("omega_n: distinct images for n=" + std::to_string(n));
  }
  return y;
}

Element alpha_q_eval(const FactorPair& p, const Element& x, const Element& t,
                     const std::set<unsigned long>& primes, unsigned depth) {
  const SemigroupModel kq = SemigroupModel::kq(primes);
  const Element tq = canonical(kq, t);
  if (tq.tag == Tag::Soft) return alpha_eval(p, x, Element::soft(tq.payload));
  if (tq.payload.is_zero()) return zero_of(p.target());
  const mpz_class k = tq.payload.num(), n = tq.payload.den();
  const Element w = omega_n_eval(p, x, n.get_ui(), primes, depth);
  return scalar_mul(p.target(), k, w);
}

Element alpha_soft_eval(const FactorPair& p, const Element& x, const Ext& t, unsigned depth) {
  const SemigroupModel& T = p.target();
  if (t.is_zero()) return zero_of(T);
  const Element value = alpha_eval(p, x, Element::soft(t));
  if (t == Ext(1L)) {
    const Element w = apply(p.phi2, apply(p.phi1, canonical(p.domain(), x)));
    if (!(value == w))
      throw SoftnessViolated("alpha(x, soft 1) = " + print_element(T, value) +
                             " differs from phi2(phi1(x)) = " + print_element(T, w) + " at x = " +
                             print_element(p.domain(), x));
  }
  return value;
}

}  // namespace cuf
