// SPDX-License-Identifier: Apache-2.0

#include "cuf/morphism_checks.hpp"

#include <chrono>

#include "cuf/axioms.hpp"

namespace cuf {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

CheckReport make_report(const std::string& check, const Morphism& f, unsigned depth) {
  CheckReport rep;
  rep.check = check;
  rep.target = f.name;
  rep.set_param("depth", std::uint64_t(depth));
  rep.set_param("morphism", f.describe());
  rep.exhaustive = f.dom.kind() == ModelKind::Table && f.cod.kind() == ModelKind::Table;
  return rep;
}

/// Supremum of the image chain by coordinatewise stabilization, for Lsc
/// codomains where no symbolic image exists. Sound for grid targets because
/// every finite value is below the probe depth.
std::optional<Element> stabilized_sup(const SemigroupModel& cod, const Morphism& f,
                                      const Chain& c, const SemigroupModel& dom, unsigned probe) {
  if (cod.kind() != ModelKind::Lsc) return std::nullopt;
  try {
    Element u1 = apply(f, c.at(dom, probe));
    Element u2 = apply(f, c.at(dom, probe + 1));
    for (size_t i = 0; i < u1.values.size(); ++i)
      if (!(u1.values[i] == u2.values[i])) u1.values[i] = Ext::inf();
    return canonical(cod, u1);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

CheckReport check_generalized_cu_morphism(const Morphism& f, unsigned depth) {
  const auto t0 = Clock::now();
  CheckReport rep = make_report("check-generalized-cu-morphism", f, depth);
  const auto grid = enumerate_grid(f.dom, depth);
  auto prd = [&](const Element& e) { return print_element(f.dom, e); };
  auto done = [&]() {
    rep.elapsed_ms = ms_since(t0);
    return rep;
  };

  try {
    ++rep.instances;
    if (!(apply(f, zero_of(f.dom)) == zero_of(f.cod))) {
      rep.fail_with({{"law", "zero"}});
      return done();
    }
  } catch (const ModelMismatch& e) {
    rep.fail_with({{"law", "zero"}}, e.what());
    return done();
  }

  std::vector<Element> image(grid.size());
  std::vector<bool> have(grid.size(), false);
  for (size_t i = 0; i < grid.size(); ++i) {
    try {
      image[i] = apply(f, grid[i]);
      have[i] = true;
    } catch (const ModelMismatch&) {
      // table_map graphs may be partial off their declared support
    }
  }

  for (size_t i = 0; i < grid.size(); ++i)
    for (size_t j = 0; j < grid.size(); ++j) {
      if (!have[i] || !have[j]) continue;
      ++rep.instances;
      if (leq(f.dom, grid[i], grid[j]) && !leq(f.cod, image[i], image[j])) {
        rep.fail_with({{"law", "monotone"}, {"a", prd(grid[i])}, {"b", prd(grid[j])}});
        return done();
      }
    }

  for (size_t i = 0; i < grid.size(); ++i)
    for (size_t j = i; j < grid.size(); ++j) {
      if (!have[i] || !have[j]) continue;
      ++rep.instances;
      try {
        const Element sum = add(f.dom, grid[i], grid[j]);
        if (!(apply(f, sum) == add(f.cod, image[i], image[j]))) {
          rep.fail_with({{"law", "additive"}, {"a", prd(grid[i])}, {"b", prd(grid[j])}});
          return done();
        }
      } catch (const ModelMismatch&) {
        // sum escapes a partial graph; skip the pair
      }
    }

  const unsigned probe = 2 * depth + 4;
  unsigned skipped_sup = 0;
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!have[i]) continue;
    ++rep.instances;
    const Chain c = approx_chain(f.dom, grid[i]);
    try {
      std::optional<Element> sup;
      if (auto mc = map_chain(f, c)) {
        sup = sup_chain(f.cod, *mc, std::max(16u, probe));
      } else if (auto st = stabilized_sup(f.cod, f, c, f.dom, probe)) {
        sup = st;
      }
      if (!sup) {
        ++skipped_sup;
        continue;
      }
      if (!(*sup == image[i])) {
        rep.fail_with({{"law", "sup"}, {"x", prd(grid[i])}},
                      "sup of image chain is " + print_element(f.cod, *sup));
        return done();
      }
    } catch (const std::exception& e) {
      rep.fail_with({{"law", "sup"}, {"x", prd(grid[i])}}, e.what());
      return done();
    }
  }
  if (skipped_sup) rep.set_param("sup-skipped", std::uint64_t(skipped_sup));
  return done();
}

CheckReport check_cu_morphism(const Morphism& f, unsigned depth) {
  const auto t0 = Clock::now();
  CheckReport rep = check_generalized_cu_morphism(f, depth);
  rep.check = "check-cu-morphism";
  if (!rep.passed()) {
    rep.elapsed_ms = ms_since(t0);
    return rep;
  }
  const auto grid = enumerate_grid(f.dom, depth);
  for (const auto& a : grid)
    for (const auto& b : grid) {
      ++rep.instances;
      try {
        if (way_below(f.dom, a, b) && !way_below(f.cod, apply(f, a), apply(f, b))) {
          rep.fail_with({{"law", "way-below"},
                         {"a", print_element(f.dom, a)},
                         {"b", print_element(f.dom, b)}});
          rep.elapsed_ms = ms_since(t0);
          return rep;
        }
      } catch (const ModelMismatch&) {
      }
    }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

CheckReport check_almost_unperforated(const Morphism& f, unsigned depth, unsigned m_max,
                                      std::uint64_t budget) {
  const auto t0 = Clock::now();
  CheckReport rep = make_report("check-almost-unperforated", f, depth);
  rep.set_param("m-max", std::uint64_t(m_max));
  const auto grid = enumerate_grid(f.dom, depth);
  const std::uint64_t n = grid.size();
  Sweep sweep(n * n * m_max, budget, 17);
  if (sweep.sampled) rep.set_param("pairs", "sampled");
  for (std::uint64_t i = 0; i < sweep.count(); ++i) {
    const std::uint64_t pick = sweep.pick(i);
    const Element &x = grid[pick % n], &y = grid[(pick / n) % n];
    const unsigned m = 1 + static_cast<unsigned>((pick / n / n) % m_max);
    ++rep.instances;
    try {
      if (leq(f.dom, scalar_mul(f.dom, m + 1, x), scalar_mul(f.dom, m, y)) &&
          !leq(f.cod, apply(f, x), apply(f, y))) {
        rep.fail_with({{"x", print_element(f.dom, x)},
                       {"y", print_element(f.dom, y)},
                       {"m", std::to_string(m)}});
        rep.elapsed_ms = ms_since(t0);
        return rep;
      }
    } catch (const ModelMismatch&) {
    }
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

CheckReport check_almost_divisible(const Morphism& f, unsigned depth, unsigned k_max,
                                   std::uint64_t budget) {
  const auto t0 = Clock::now();
  CheckReport rep = make_report("check-almost-divisible", f, depth);
  rep.set_param("k-max", std::uint64_t(k_max));
  const unsigned enlarged = std::min(depth * (k_max + 1), std::max(depth, 64u));
  rep.set_param("witness-depth", std::uint64_t(enlarged));
  const auto grid = enumerate_grid(f.dom, depth);
  const bool closed = has_closed_form_witness(f);
  std::vector<Element> candidates;  // grid scan is the fallback path only

  std::vector<std::pair<std::uint32_t, std::uint32_t>> wb_pairs;
  for (std::uint32_t i = 0; i < grid.size(); ++i)
    for (std::uint32_t j = 0; j < grid.size(); ++j)
      if (way_below(f.dom, grid[i], grid[j])) wb_pairs.push_back({i, j});

  bool inconclusive = false;
  std::vector<std::pair<std::string, std::string>> first_open;
  std::string witness_example;
  Sweep sweep(std::uint64_t(wb_pairs.size()) * k_max, budget, 18);
  if (sweep.sampled) rep.set_param("pairs", "sampled");
  for (std::uint64_t it = 0; it < sweep.count(); ++it) {
    const std::uint64_t pick = sweep.pick(it);
    const auto& [pi, xi] = wb_pairs[pick % wb_pairs.size()];
    const Element &xp = grid[pi], &x = grid[xi];
    const unsigned k = 1 + static_cast<unsigned>((pick / wb_pairs.size()) % k_max);
    {
      {
        ++rep.instances;
        Element v, vp;
        try {
          v = apply(f, x);
          vp = apply(f, xp);
        } catch (const ModelMismatch&) {
          continue;
        }
        auto accept = [&](const Element& z) {
          return leq(f.cod, scalar_mul(f.cod, k, z), v) &&
                 leq(f.cod, vp, scalar_mul(f.cod, k + 1, z));
        };
        bool found = false;
        Element witness;
        if (closed) {
          try {
            witness = divisibility_witness(f, k, xp, x, 1);
            found = true;
          } catch (const NoWitnessFound&) {
          }
        }
        if (!found) {
          if (candidates.empty()) candidates = enumerate_grid(f.cod, enlarged);
          for (const auto& z : candidates)
            if (accept(z)) {
              witness = z;
              found = true;
              break;
            }
        }
        if (found) {
          if (witness_example.empty())
            witness_example = "x=" + print_element(f.dom, x) + " k=" + std::to_string(k) +
                              " z=" + print_element(f.cod, witness);
          continue;
        }
        std::vector<std::pair<std::string, std::string>> ce{
            {"x", print_element(f.dom, x)},
            {"xp", print_element(f.dom, xp)},
            {"k", std::to_string(k)}};
        if (downset_grid_complete(f.cod, v, enlarged)) {
          rep.fail_with(std::move(ce));
          rep.elapsed_ms = ms_since(t0);
          return rep;
        }
        if (!inconclusive) first_open = std::move(ce);
        inconclusive = true;
      }
    }
  }
  if (inconclusive) {
    rep.status = Status::Inconclusive;
    rep.counterexample = first_open;
    rep.detail = "witness search bound exhausted without certainty";
  } else if (!witness_example.empty()) {
    rep.detail = "witness " + witness_example;
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

std::optional<Element> divide_exact(const SemigroupModel& S, const Element& x,
                                    const mpz_class& n) {
  if (n <= 0) return std::nullopt;
  switch (S.kind()) {
    case ModelKind::Nbar:
    case ModelKind::Z:
    case ModelKind::Kq:
    case ModelKind::HalfLine: {
      Element y = x;
      y.payload = x.payload.div(n);
      // the tag is forced: n * soft is soft and n * compact is compact
      return belongs(S, y) ? std::optional<Element>(canonical(S, y)) : std::nullopt;
    }
    case ModelKind::Product: {
      std::vector<Element> parts;
      for (size_t i = 0; i < x.parts.size(); ++i) {
        auto p = divide_exact(S.parts()[i], x.parts[i], n);
        if (!p) return std::nullopt;
        parts.push_back(std::move(*p));
      }
      return Element::tuple(std::move(parts));
    }
    case ModelKind::Lsc: {
      Element y = x;
      for (auto& v : y.values) {
        v = v.div(n);
        if (!v.is_inf() && !v.is_integer()) return std::nullopt;
      }
      return y;
    }
    case ModelKind::Table: {
      for (std::uint32_t i = 0; i < S.table_data().size(); ++i) {
        Element y = Element::table(i);
        if (scalar_mul(S, n, y) == x) return y;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

CheckReport check_q_rational(const Morphism& f, const std::set<unsigned long>& primes,
                             unsigned depth) {
  const auto t0 = Clock::now();
  CheckReport rep = make_report("check-q-rational", f, depth);
  if (primes.empty()) throw PreconditionViolated("check_q_rational: empty prime set");
  std::string ps;
  for (auto p : primes) ps += (ps.empty() ? "" : ",") + std::to_string(p);
  rep.set_param("primes", ps);

  std::vector<unsigned long> divisors;
  for (unsigned long n = 2; n <= depth; ++n)
    if (supported_denominator(mpz_class(n), primes)) divisors.push_back(n);

  const auto grid = enumerate_grid(f.dom, depth);
  for (const auto& x : grid) {
    Element v;
    try {
      v = apply(f, x);
    } catch (const ModelMismatch&) {
      continue;
    }
    for (auto n : divisors) {
      ++rep.instances;
      if (!divide_exact(f.cod, v, mpz_class(n))) {
        rep.fail_with({{"law", "q-divisible"},
                       {"x", print_element(f.dom, x)},
                       {"n", std::to_string(n)}});
        rep.elapsed_ms = ms_since(t0);
        return rep;
      }
    }
  }

  for (const auto& x : grid)
    for (const auto& y : grid)
      for (auto n : divisors) {
        ++rep.instances;
        try {
          if (leq(f.dom, scalar_mul(f.dom, n, x), scalar_mul(f.dom, n, y)) &&
              !leq(f.cod, apply(f, x), apply(f, y))) {
            rep.fail_with({{"law", "q-unperforated"},
                           {"x", print_element(f.dom, x)},
                           {"y", print_element(f.dom, y)},
                           {"n", std::to_string(n)}});
            rep.elapsed_ms = ms_since(t0);
            return rep;
          }
        } catch (const ModelMismatch&) {
        }
      }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

CheckReport check_soft_morphism(const Morphism& f, unsigned depth) {
  const auto t0 = Clock::now();
  CheckReport rep = make_report("check-soft-morphism", f, depth);
  for (const auto& x : enumerate_grid(f.dom, depth)) {
    ++rep.instances;
    try {
      if (!is_strongly_soft(f.cod, apply(f, x), depth)) {
        rep.fail_with({{"x", print_element(f.dom, x)}});
        rep.elapsed_ms = ms_since(t0);
        return rep;
      }
    } catch (const ModelMismatch&) {
    }
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

bool has_closed_form_witness(const Morphism& f) {
  auto soft_capable = [](auto&& self, const SemigroupModel& S) -> bool {
    switch (S.kind()) {
      case ModelKind::Z:
      case ModelKind::Kq:
      case ModelKind::HalfLine:
        return true;
      case ModelKind::Product:
        for (const auto& p : S.parts())
          if (!self(self, p)) return false;
        return true;
      default:
        return false;
    }
  };
  return soft_capable(soft_capable, f.cod);
}

namespace {

/// sigma(v) / k: the soft element with payload(v)/k, componentwise on tuples.
Element soft_scale_down(const SemigroupModel& S, const Element& v, const mpz_class& k) {
  switch (S.kind()) {
    case ModelKind::Z:
    case ModelKind::Kq:
      return canonical(S, Element::soft(v.payload.div(k)));
    case ModelKind::HalfLine:
      return Element::scalar(v.payload.div(k));
    case ModelKind::Product: {
      std::vector<Element> parts;
      for (size_t i = 0; i < v.parts.size(); ++i)
        parts.push_back(soft_scale_down(S.parts()[i], v.parts[i], k));
      return Element::tuple(std::move(parts));
    }
    default:
      throw UnsupportedChainForm("soft_scale_down outside a soft-capable model");
  }
}

}  // namespace

Element divisibility_witness(const Morphism& f, const mpz_class& k, const Element& xp,
                             const Element& x, unsigned search_depth) {
  if (k < 1) throw PreconditionViolated("divisibility_witness: k must be >= 1");
  if (!way_below(f.dom, xp, x))
    throw PreconditionViolated("divisibility_witness: xp is not way below x");
  const Element v = apply(f, x), vp = apply(f, xp);
  auto valid = [&](const Element& z) {
    return leq(f.cod, scalar_mul(f.cod, k, z), v) &&
           leq(f.cod, vp, scalar_mul(f.cod, k + 1, z));
  };
  if (has_closed_form_witness(f)) {
    Element z = soft_scale_down(f.cod, v, k);
    if (valid(z)) return z;
  }
  for (const auto& z : enumerate_grid(f.cod, search_depth))
    if (valid(z)) return z;
  throw NoWitnessFound("no divisibility witness for k=" + k.get_str() + " at x=" +
                       print_element(f.dom, x));
}

}  // namespace cuf
