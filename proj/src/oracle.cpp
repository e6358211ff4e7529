// SPDX-License-Identifier: Apache-2.0

#include "cuf/oracle.hpp"

#include <algorithm>
#include <chrono>

#include "cuf/axioms.hpp"

namespace cuf {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

bool entry_less(const std::pair<Element, Element>& a, const std::pair<Element, Element>& b) {
  return canonical_less(a.first, b.first);
}

/// Sup-check probe indices: a short prefix for chain sanity plus one deep pin
/// that separates the supremum from every lower grid value.
std::vector<unsigned long> probe_indices(unsigned depth) {
  std::vector<unsigned long> out;
  for (unsigned long d = 1; d <= 8; ++d) out.push_back(d);
  out.push_back(static_cast<unsigned long>(depth) * depth * depth + depth + 4);
  return out;
}

std::vector<Element> graph_domain(const SemigroupModel& S, unsigned depth) {
  std::vector<Element> elems = enumerate_grid(S, depth);
  const size_t base = elems.size();
  for (size_t i = 0; i < base; ++i)
    for (size_t j = i; j < base; ++j) elems.push_back(add(S, elems[i], elems[j]));
  for (size_t i = 0; i < base; ++i)
    for (unsigned long d : probe_indices(depth))
      elems.push_back(oracle_approximant(S, elems[i], d));
  std::sort(elems.begin(), elems.end(), canonical_less);
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return elems;
}

}  // namespace

std::optional<Element> MorphismGraph::lookup(const Element& key) const {
  auto it = std::lower_bound(entries.begin(), entries.end(),
                             std::pair<Element, Element>{key, key}, entry_less);
  if (it != entries.end() && it->first == key) return it->second;
  return std::nullopt;
}

void MorphismGraph::insert(Element key, Element value) {
  entries.push_back({std::move(key), std::move(value)});
}

void MorphismGraph::finalize() {
  std::sort(entries.begin(), entries.end(), entry_less);
  entries.erase(std::unique(entries.begin(), entries.end(),
                            [](const auto& a, const auto& b) { return a.first == b.first; }),
                entries.end());
}

MorphismGraph graph_of(const Morphism& f, unsigned depth) {
  MorphismGraph g;
  g.dom = f.dom;
  g.cod = f.cod;
  for (const auto& e : graph_domain(f.dom, depth)) {
    try {
      g.insert(e, apply(f, e));
    } catch (const ModelMismatch&) {
    }
  }
  g.finalize();
  return g;
}

MorphismGraph glue_graph(const Morphism& gamma_c, const Morphism& gamma_s, unsigned depth) {
  MorphismGraph g;
  g.dom = SemigroupModel::z();
  g.cod = gamma_c.cod;
  auto glue = [&](const Element& e) {
    if (e.tag == Tag::Compact) return apply(gamma_c, Element::compact(e.payload));
    return apply(gamma_s, Element::scalar(e.payload));
  };
  for (const auto& e : graph_domain(g.dom, depth)) g.insert(e, glue(e));
  g.finalize();
  return g;
}

CheckReport brute_morphism_check(const MorphismGraph& g, unsigned depth) {
  const auto t0 = Clock::now();
  CheckReport rep;
  rep.check = "brute-morphism-check";
  rep.set_param("depth", std::uint64_t(depth));
  auto done = [&]() {
    rep.elapsed_ms = ms_since(t0);
    return rep;
  };
  auto pr = [&](const Element& e) { return print_element(g.dom, e); };

  {
    ++rep.instances;
    auto z = g.lookup(zero_of(g.dom));
    if (z && !(*z == zero_of(g.cod))) {
      rep.fail_with({{"law", "zero"}});
      return done();
    }
  }

  std::vector<Element> grid;
  std::vector<Element> image;
  for (const auto& e : enumerate_grid(g.dom, depth)) {
    if (auto v = g.lookup(e)) {
      grid.push_back(e);
      image.push_back(*v);
    }
  }

  for (size_t i = 0; i < grid.size(); ++i)
    for (size_t j = 0; j < grid.size(); ++j) {
      ++rep.instances;
      if (leq(g.dom, grid[i], grid[j]) && !leq(g.cod, image[i], image[j])) {
        rep.fail_with({{"law", "monotone"}, {"a", pr(grid[i])}, {"b", pr(grid[j])}});
        return done();
      }
    }

  for (size_t i = 0; i < grid.size(); ++i)
    for (size_t j = i; j < grid.size(); ++j) {
      auto sum = g.lookup(add(g.dom, grid[i], grid[j]));
      if (!sum) continue;
      ++rep.instances;
      if (!(*sum == add(g.cod, image[i], image[j]))) {
        rep.fail_with({{"law", "additive"}, {"a", pr(grid[i])}, {"b", pr(grid[j])}});
        return done();
      }
    }

  // Sup preservation along the oracle's approximant chains.
  const auto probes = probe_indices(depth);
  for (size_t i = 0; i < grid.size(); ++i) {
    std::vector<Element> images;
    bool complete = true;
    for (unsigned long d : probes) {
      auto v = g.lookup(oracle_approximant(g.dom, grid[i], d));
      if (!v) {
        complete = false;
        break;
      }
      images.push_back(*v);
    }
    if (!complete) continue;
    ++rep.instances;
    std::vector<Element> universe = image;
    universe.push_back(image[i]);
    auto lub = least_upper_bound_in(g.cod, universe, images);
    if (lub && !(*lub == image[i])) {
      rep.fail_with({{"law", "sup"}, {"x", pr(grid[i])}},
                    "chain image lub is " + print_element(g.cod, *lub));
      return done();
    }
  }
  return done();
}

std::vector<SemigroupModel> standard_models() {
  std::vector<SemigroupModel> out;
  out.push_back(SemigroupModel::z());
  out.push_back(SemigroupModel::nbar());
  out.push_back(SemigroupModel::half_line());
  auto k2 = SemigroupModel::kq({2});
  k2.set_name("Kq2");
  out.push_back(k2);
  auto zz = SemigroupModel::product({SemigroupModel::z(), SemigroupModel::z()});
  zz.set_name("ZxZ");
  out.push_back(zz);
  auto lsc = SemigroupModel::lsc(LscPoset::from_edges({"a", "b"}, {{0, 1}}));
  lsc.set_name("Lsc2");
  out.push_back(lsc);
  auto t4 = SemigroupModel::table(table_t4());
  t4.set_name("T4");
  out.push_back(t4);
  return out;
}

namespace {

Morphism named(Morphism m, const std::string& name) {
  m.name = name;
  return m;
}

}  // namespace

std::vector<Morphism> standard_morphisms() {
  const auto z = SemigroupModel::z();
  const auto nbar = SemigroupModel::nbar();
  const auto half = SemigroupModel::half_line();
  auto k2 = SemigroupModel::kq({2});
  k2.set_name("Kq2");
  auto zz = SemigroupModel::product({z, z});
  zz.set_name("ZxZ");
  auto t4 = SemigroupModel::table(table_t4());
  t4.set_name("T4");

  std::vector<Morphism> out;
  out.push_back(named(Morphism::identity(z), "id_Z"));
  out.push_back(named(Morphism::identity(nbar), "id_Nbar"));
  out.push_back(named(Morphism::identity(half), "id_HalfLine"));
  out.push_back(named(Morphism::identity(k2), "id_Kq2"));
  out.push_back(named(Morphism::identity(zz), "id_ZxZ"));
  out.push_back(named(Morphism::identity(t4), "id_T4"));
  out.push_back(named(Morphism::sigma(z), "sigma_Z"));
  out.push_back(named(Morphism::sigma(z, true), "sigma_ZH"));
  out.push_back(named(Morphism::nat_to_soft(), "nat_to_soft"));
  out.push_back(named(Morphism::nat_embed(), "nat_embed"));
  out.push_back(named(Morphism::soft_incl(z), "soft_incl_Z"));
  out.push_back(named(Morphism::soft_incl(k2), "soft_incl_Kq2"));
  out.push_back(named(Morphism::multiply_by(z, 2), "mul2_Z"));
  out.push_back(named(Morphism::multiply_by(half, 2), "mul2_HalfLine"));
  out.push_back(named(Morphism::multiply_by(nbar, 3), "mul3_Nbar"));
  out.push_back(named(Morphism::infinite(z), "inf_Z"));
  out.push_back(named(Morphism::scale(k2, k2, mpq_class(1, 2)), "scale_half_Kq2"));
  out.push_back(named(Morphism::scale(half, half, mpq_class(3, 2)), "scale_3_2_HalfLine"));
  out.push_back(named(Morphism::scale(z, k2, mpq_class(1)), "z_into_Kq2"));
  out.push_back(named(Morphism::proj(zz, 0), "proj0_ZxZ"));
  out.push_back(named(Morphism::proj(zz, 1), "proj1_ZxZ"));
  out.push_back(named(Morphism::inj(zz, 0), "inj0_ZxZ"));
  out.push_back(named(Morphism::zero(z, z), "zero_Z"));
  out.push_back(named(Morphism::zero(nbar, z), "zero_Nbar_Z"));
  return out;
}

std::vector<FactorPair> standard_pairs() {
  auto find = [](const std::vector<Morphism>& ms, const std::string& name) {
    for (const auto& m : ms)
      if (m.name == name) return m;
    throw std::logic_error("standard_pairs: missing " + name);
  };
  const auto ms = standard_morphisms();
  std::vector<FactorPair> out;
  out.push_back(FactorPair(find(ms, "id_Z"), find(ms, "id_Z")));
  out.push_back(FactorPair(find(ms, "nat_to_soft"), find(ms, "id_Z")));
  out.push_back(FactorPair(find(ms, "sigma_Z"), find(ms, "id_Z")));
  out.push_back(FactorPair(find(ms, "id_HalfLine"), find(ms, "id_HalfLine")));
  out.push_back(FactorPair(find(ms, "soft_incl_Z"), find(ms, "id_Z")));
  out.push_back(FactorPair(find(ms, "proj0_ZxZ"), find(ms, "id_Z")));
  out.push_back(FactorPair(find(ms, "id_ZxZ"), find(ms, "proj1_ZxZ")));
  out.push_back(FactorPair(find(ms, "mul2_HalfLine"), find(ms, "id_HalfLine")));
  out.push_back(FactorPair(find(ms, "scale_half_Kq2"), find(ms, "id_Kq2")));
  out.push_back(FactorPair(find(ms, "nat_to_soft"), find(ms, "sigma_Z")));
  return out;
}

namespace {

struct Catalog {
  std::vector<SemigroupModel> models;
  std::vector<Morphism> morphisms;
  std::vector<FactorPair> pairs;
};

Catalog select_catalog(const LemmaSuiteConfig& cfg) {
  Catalog cat;
  auto want = [](const std::optional<std::vector<std::string>>& filter, const std::string& n) {
    if (!filter) return true;
    return std::find(filter->begin(), filter->end(), n) != filter->end();
  };
  for (const auto& m : standard_models())
    if (want(cfg.models, m.name())) cat.models.push_back(m);
  for (const auto& f : standard_morphisms())
    if (want(cfg.morphisms, f.name)) cat.morphisms.push_back(f);
  for (const auto& p : standard_pairs())
    if (want(cfg.morphisms, p.phi1.name) && want(cfg.morphisms, p.phi2.name))
      cat.pairs.push_back(p);
  return cat;
}

Element phi21(const FactorPair& p, const Element& x) {
  return apply(p.phi2, apply(p.phi1, x));
}

}  // namespace

CheckReport lemma_suite(const LemmaSuiteConfig& cfg) {
  const auto t0 = Clock::now();
  CheckReport rep;
  rep.check = "lemma-suite";
  rep.set_param("depth", std::uint64_t(cfg.depth));
  rep.set_param("frac-bound", std::uint64_t(cfg.frac_bound));
  rep.set_param("seed", cfg.seed);

  const Catalog cat = select_catalog(cfg);
  rep.set_param("models", std::uint64_t(cat.models.size()));
  rep.set_param("morphisms", std::uint64_t(cat.morphisms.size()));
  const unsigned depth = cfg.depth;
  const unsigned frac = cfg.frac_bound;
  // The suite sweeps a whole catalog; per-check budgets stay small so the
  // aggregate remains desk-scale.
  const std::uint64_t unp_budget = 150'000, div_budget = 40'000;

  auto add_part = [&](CheckReport part) {
    rep.instances += part.instances;
    if (!part.passed() && rep.passed()) {
      rep.status = part.status;
      rep.counterexample = part.counterexample;
      rep.detail = part.check + (part.detail.empty() ? "" : ": " + part.detail);
    }
    rep.sub.push_back(std::move(part));
  };

  // Identity correspondence: the morphism-level predicates on id_S agree
  // with the semigroup-level ones.
  {
    CheckReport part;
    part.check = "idmult-correspondence";
    for (const auto& S : cat.models) {
      Morphism id = Morphism::identity(S);
      id.name = "id_" + S.name();
      const bool mu = check_almost_unperforated(id, depth, frac, unp_budget).passed();
      const bool su = semigroup_almost_unperforated(S, depth, frac).passed();
      const bool md = check_almost_divisible(id, depth, frac, div_budget).passed();
      const bool sd = semigroup_almost_divisible(S, depth, frac).passed();
      part.instances += 2;
      if (mu != su || md != sd) {
        part.fail_with({{"model", S.name()},
                        {"unperforated", mu == su ? "agree" : "disagree"},
                        {"divisible", md == sd ? "agree" : "disagree"}});
        break;
      }
    }
    add_part(std::move(part));
  }

  // Pureness and Cu status of every catalog morphism, reused below.
  std::vector<bool> pure(cat.morphisms.size(), false), cu(cat.morphisms.size(), false);
  for (size_t i = 0; i < cat.morphisms.size(); ++i) {
    const auto& f = cat.morphisms[i];
    pure[i] = check_almost_unperforated(f, depth, frac, unp_budget).passed() &&
              check_almost_divisible(f, depth, frac, div_budget).passed();
    cu[i] = f.declared_cu && check_cu_morphism(f, depth).passed();
  }

  // Composition permanence, part 1: phi1 pure forces the composite pure.
  {
    CheckReport part;
    part.check = "composition-permanence-1";
    for (size_t i = 0; i < cat.morphisms.size() && part.passed(); ++i) {
      if (!pure[i]) continue;
      for (size_t j = 0; j < cat.morphisms.size() && part.passed(); ++j) {
        if (!(cat.morphisms[i].cod == cat.morphisms[j].dom)) continue;
        const Morphism h = compose(cat.morphisms[j], cat.morphisms[i]);
        ++part.instances;
        if (!check_almost_unperforated(h, depth, frac, unp_budget).passed() ||
            !check_almost_divisible(h, depth, frac, div_budget).passed())
          part.fail_with({{"phi1", cat.morphisms[i].name}, {"phi2", cat.morphisms[j].name}});
      }
    }
    add_part(std::move(part));
  }

  // Part 2: phi1 a Cu-morphism and phi2 pure force the composite pure.
  {
    CheckReport part;
    part.check = "composition-permanence-2";
    for (size_t i = 0; i < cat.morphisms.size() && part.passed(); ++i) {
      if (!cu[i]) continue;
      for (size_t j = 0; j < cat.morphisms.size() && part.passed(); ++j) {
        if (!pure[j] || !(cat.morphisms[i].cod == cat.morphisms[j].dom)) continue;
        const Morphism h = compose(cat.morphisms[j], cat.morphisms[i]);
        ++part.instances;
        if (!check_almost_unperforated(h, depth, frac, unp_budget).passed() ||
            !check_almost_divisible(h, depth, frac, div_budget).passed())
          part.fail_with({{"phi1", cat.morphisms[i].name}, {"phi2", cat.morphisms[j].name}});
      }
    }
    add_part(std::move(part));
  }

  // Part 3: a codomain with strong divisibility (Z, half-line) makes every
  // generalized Cu-morphism into it pure.
  {
    CheckReport part;
    part.check = "composition-permanence-3";
    for (size_t i = 0; i < cat.morphisms.size() && part.passed(); ++i) {
      const auto& f = cat.morphisms[i];
      if (f.cod.kind() != ModelKind::Z && f.cod.kind() != ModelKind::HalfLine) continue;
      if (f.kind == MorphismKind::TableMap) continue;
      ++part.instances;
      if (!pure[i]) part.fail_with({{"morphism", f.name}});
    }
    add_part(std::move(part));
  }

  // The mu-comparison lemma for the almost unperforated catalog maps.
  {
    CheckReport part;
    part.check = "almunpf-lemma";
    SplitMix64 rng(cfg.seed + 5);
    for (size_t i = 0; i < cat.morphisms.size() && part.passed(); ++i) {
      const auto& f = cat.morphisms[i];
      if (!check_almost_unperforated(f, depth, frac, unp_budget).passed()) continue;
      if (f.dom.kind() == ModelKind::Table) continue;
      const auto grid = enumerate_grid(f.dom, depth);
      const FactorPair lemma_pair(Morphism::identity(f.dom), f);
      for (unsigned trial = 0; trial < 24 && part.passed(); ++trial) {
        const mpz_class k1 = 1 + rng.below(frac), n1 = 1 + rng.below(frac);
        const mpz_class k2 = 1 + rng.below(frac), n2 = 1 + rng.below(frac);
        if (!(mpq_class(k1) / mpq_class(n1) < mpq_class(k2) / mpq_class(n2 + 1)))
          continue;
        const Element& x1 = grid[rng.below(grid.size())];
        const Element& x2 = grid[rng.below(grid.size())];
        if (!leq(f.dom, x1, x2)) continue;
        std::optional<Element> x2p;
        if (cu[i]) {
          const Element& mid = grid[rng.below(grid.size())];
          if (way_below(f.dom, x1, mid) && way_below(f.dom, mid, x2)) x2p = mid;
        }
        CheckReport one = lemma_almunpf_check(lemma_pair, k1, n1, k2, n2, x1, x2, depth, x2p);
        part.instances += one.instances + 1;
        if (!one.passed()) {
          part.status = one.status;
          part.counterexample = one.counterexample;
          part.counterexample.push_back({"phi", f.name});
        }
      }
    }
    add_part(std::move(part));
  }

  // Ceiling bound on alpha over the validated pairs.
  {
    CheckReport part;
    part.check = "alpha-ceiling-bound";
    SplitMix64 rng(cfg.seed + 6);
    for (const auto& p : cat.pairs) {
      if (!part.passed()) break;
      const auto G = enumerate_grid(p.domain(), depth);
      const auto Tg = enumerate_grid(SemigroupModel::z(), frac);
      Sweep sweep(std::uint64_t(G.size()) * Tg.size(), 600, cfg.seed + 7);
      for (std::uint64_t i = 0; i < sweep.count() && part.passed(); ++i) {
        const std::uint64_t pick = sweep.pick(i);
        const Element& x = G[pick % G.size()];
        const Element& t = Tg[(pick / G.size()) % Tg.size()];
        if (t.tag != Tag::Soft) continue;
        ++part.instances;
        try {
          const Element a = alpha_eval(p, x, t);
          const Element w = phi21(p, x);
          const Element bound = t.payload.is_inf()
                                    ? mult_inf(p.target(), w)
                                    : scalar_mul(p.target(), mpz_class(t.payload.ceil().num()), w);
          if (!leq(p.target(), a, bound))
            part.fail_with({{"pair", p.describe()},
                            {"x", print_element(p.domain(), x)},
                            {"t", print_element(SemigroupModel::z(), t)}});
        } catch (const UnsupportedChainForm&) {
        }
      }
    }
    add_part(std::move(part));
  }

  // mu-set nesting in every model.
  {
    CheckReport part;
    part.check = "mu-nesting";
    SplitMix64 rng(cfg.seed + 8);
    for (const auto& S : cat.models) {
      if (!part.passed()) break;
      const auto grid = enumerate_grid(S, std::min(depth, 5u));
      for (unsigned trial = 0; trial < 40 && part.passed(); ++trial) {
        const mpz_class k = 1 + rng.below(frac), n = 1 + rng.below(frac);
        const Element& xp = grid[rng.below(grid.size())];
        const Element& xpp = grid[rng.below(grid.size())];
        const Element& x = grid[rng.below(grid.size())];
        if (!leq(S, xp, xpp) || !leq(S, xpp, x)) continue;
        ++part.instances;
        const auto inner = mu_sample(S, MuSpec{k, n, xpp, x}, std::min(depth, 5u));
        const auto mid = mu_sample(S, MuSpec{k, n, xp, x}, std::min(depth, 5u));
        const auto outer = mu_sample(S, MuSpec{k, n, zero_of(S), x}, std::min(depth, 5u));
        auto subset = [](const std::vector<Element>& a, const std::vector<Element>& b) {
          for (const auto& e : a)
            if (std::find(b.begin(), b.end(), e) == b.end()) return false;
          return true;
        };
        if (!subset(inner, mid) || !subset(mid, outer))
          part.fail_with({{"model", S.name()},
                          {"k", k.get_str()},
                          {"n", n.get_str()},
                          {"x", print_element(S, x)}});
      }
    }
    add_part(std::move(part));
  }

  // Anchor identity alpha(x, 1) = phi2(phi1(x)) over the validated pairs.
  {
    CheckReport part;
    part.check = "anchor-identity";
    const Element one = Element::compact(Ext(1L));
    for (const auto& p : cat.pairs) {
      if (!part.passed()) break;
      const auto G = enumerate_grid(p.domain(), depth);
      Sweep sweep(G.size(), 400, cfg.seed + 9);
      for (std::uint64_t i = 0; i < sweep.count() && part.passed(); ++i) {
        const Element& x = G[sweep.pick(i)];
        ++part.instances;
        if (!(alpha_eval(p, x, one) == phi21(p, x)))
          part.fail_with({{"pair", p.describe()}, {"x", print_element(p.domain(), x)}});
      }
    }
    add_part(std::move(part));
  }

  // Negative controls: these must fail, in exactly the expected place.
  {
    CheckReport part;
    part.check = "negative-controls";
    auto model_selected = [&](const std::string& name) {
      for (const auto& S : cat.models)
        if (S.name() == name) return true;
      return false;
    };
    auto morphism_selected = [&](const std::string& name) {
      for (const auto& f : cat.morphisms)
        if (f.name == name) return true;
      return false;
    };
    auto expect_fail_at = [&](const std::string& control, const CheckReport& r,
                              const std::vector<std::pair<std::string, std::string>>& want) {
      ++part.instances;
      if (!part.passed()) return;
      if (r.status != Status::Fail) {
        part.fail_with({{"control", control}, {"status", status_str(r.status)}},
                       "expected failure did not reproduce");
        return;
      }
      for (const auto& [k, v] : want) {
        bool ok = false;
        for (const auto& [ck, cv] : r.counterexample)
          if (ck == k && cv == v) ok = true;
        if (!ok) {
          part.fail_with({{"control", control}, {"missing", k + "=" + v}},
                         "failure reproduced at an unexpected point");
          return;
        }
      }
    };
    if (model_selected("Nbar")) {
      Morphism id = Morphism::identity(SemigroupModel::nbar());
      expect_fail_at("nbar-divisibility", check_almost_divisible(id, 4, 2),
                     {{"x", "1"}, {"k", "2"}});
    }
    if (model_selected("T4")) {
      auto t4 = SemigroupModel::table(table_t4());
      t4.set_name("T4");
      expect_fail_at("t4-unperforation", check_almost_unperforated(Morphism::identity(t4), 4, 3),
                     {{"x", "x"}, {"y", "y"}, {"m", "2"}});
      auto bad = SemigroupModel::table(table_t4_bad());
      bad.set_name("T4bad");
      expect_fail_at("t4-seeded-fault", check_axioms(bad, 4), {});
    }
    if (morphism_selected("nat_to_soft")) {
      expect_fail_at("nat-to-soft-wb", check_cu_morphism(Morphism::nat_to_soft(), depth),
                     {{"law", "way-below"}, {"a", "1"}, {"b", "1"}});
    }
    add_part(std::move(part));
  }

  rep.elapsed_ms = ms_since(t0);
  return rep;
}

}  // namespace cuf
