// SPDX-License-Identifier: Apache-2.0

#include "cuf/runner.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "cuf/axioms.hpp"

namespace cuf {

namespace {

mpq_class parse_ratio(const std::string& s, unsigned line) {
  auto v = Ext::parse(s);
  if (!v || v->is_inf() || v->is_zero())
    throw ScenarioError("SyntaxError", line, "bad ratio '" + s + "'");
  return v->value();
}

SemigroupModel build_model(const Scenario& sc, const std::string& name,
                           std::map<std::string, SemigroupModel>& done,
                           std::map<std::string, int>& state);

SemigroupModel build_model_decl(const Scenario& sc, const ModelDecl& md,
                                std::map<std::string, SemigroupModel>& done,
                                std::map<std::string, int>& state) {
  if (md.kind == "Z") return SemigroupModel::z();
  if (md.kind == "Nbar") return SemigroupModel::nbar();
  if (md.kind == "HalfLine") return SemigroupModel::half_line();
  if (md.kind == "Kq") {
    if (md.primes.empty())
      throw ScenarioError("SyntaxError", md.line, "Kq model needs primes=");
    return SemigroupModel::kq({md.primes.begin(), md.primes.end()});
  }
  if (md.kind == "Product") {
    std::vector<SemigroupModel> parts;
    for (const auto& p : md.parts) parts.push_back(build_model(sc, p, done, state));
    if (parts.empty()) throw ScenarioError("SyntaxError", md.line, "Product needs parts=");
    return SemigroupModel::product(std::move(parts));
  }
  if (md.kind == "Lsc") {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    auto index_of = [&](const std::string& p) -> std::uint32_t {
      for (std::uint32_t i = 0; i < md.points.size(); ++i)
        if (md.points[i] == p) return i;
      throw ScenarioError("SyntaxError", md.line, "unknown poset point '" + p + "'");
    };
    for (const auto& [lo, hi] : md.covers) edges.push_back({index_of(lo), index_of(hi)});
    try {
      return SemigroupModel::lsc(LscPoset::from_edges(md.points, std::move(edges)));
    } catch (const std::invalid_argument& e) {
      throw ScenarioError("SyntaxError", md.line, e.what());
    }
  }
  if (md.kind == "Table") {
    TableData t;
    t.names = md.elements;
    const auto n = t.names.size();
    if (n == 0) throw ScenarioError("SyntaxError", md.line, "Table needs elements");
    auto index_of = [&](const std::string& e) -> std::uint32_t {
      auto idx = t.index_of(e);
      if (!idx) throw ScenarioError("SyntaxError", md.line, "unknown table element '" + e + "'");
      return *idx;
    };
    t.zero = md.bottom.empty() ? 0 : index_of(md.bottom);
    constexpr std::uint32_t kUnset = 0xFFFFFFFF;
    t.add.assign(n, std::vector<std::uint32_t>(n, kUnset));
    for (std::uint32_t i = 0; i < n; ++i) {
      t.add[t.zero][i] = i;
      t.add[i][t.zero] = i;
    }
    for (const auto& a : md.adds) {
      const auto i = index_of(a[0]), j = index_of(a[1]), k = index_of(a[2]);
      t.add[i][j] = k;
      t.add[j][i] = k;
    }
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        if (t.add[i][j] == kUnset)
          throw ScenarioError("SyntaxError", md.line,
                              "incomplete addition table at " + t.names[i] + "+" + t.names[j]);
    t.leq.assign(n, std::vector<bool>(n, false));
    for (std::uint32_t i = 0; i < n; ++i) {
      t.leq[i][i] = true;
      t.leq[t.zero][i] = true;
    }
    for (const auto& [a, b] : md.orders) t.leq[index_of(a)][index_of(b)] = true;
    for (std::uint32_t k = 0; k < n; ++k)
      for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
          if (t.leq[i][k] && t.leq[k][j]) t.leq[i][j] = true;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        if (i != j && t.leq[i][j] && t.leq[j][i])
          throw ScenarioError("SyntaxError", md.line, "table order is not antisymmetric");
    return SemigroupModel::table(std::move(t));
  }
  throw ScenarioError("UnknownModelKind", md.line, "'" + md.kind + "'");
}

SemigroupModel build_model(const Scenario& sc, const std::string& name,
                           std::map<std::string, SemigroupModel>& done,
                           std::map<std::string, int>& state) {
  if (auto it = done.find(name); it != done.end()) return it->second;
  const ModelDecl* md = nullptr;
  for (const auto& m : sc.models)
    if (m.name == name) md = &m;
  if (!md) throw ScenarioError("UndeclaredName", 0, "model '" + name + "'");
  if (state[name] == 1)
    throw ScenarioError("CyclicComposition", md->line, "model '" + name + "' contains itself");
  state[name] = 1;
  SemigroupModel m = build_model_decl(sc, *md, done, state);
  state[name] = 2;
  m.set_name(name);
  done.emplace(name, m);
  return m;
}

Morphism build_morphism(const Scenario& sc, const std::string& name, const Registry& reg,
                        std::map<std::string, Morphism>& done);

Morphism build_morphism_decl(const Scenario& sc, const MorphismDecl& fd, const Registry& reg,
                             std::map<std::string, Morphism>& done) {
  auto model = [&](const std::string& n) -> const SemigroupModel& {
    auto it = reg.models.find(n);
    if (it == reg.models.end())
      throw ScenarioError("UndeclaredName", fd.line, "model '" + n + "'");
    return it->second;
  };
  try {
    if (fd.kind == "identity") {
      Morphism f = Morphism::identity(model(fd.dom));
      if (!fd.cod.empty() && !(f.cod == model(fd.cod)))
        throw ScenarioError("SyntaxError", fd.line, "identity needs cod == dom");
      return f;
    }
    if (fd.kind == "zero") return Morphism::zero(model(fd.dom), model(fd.cod));
    if (fd.kind == "multiply_by") return Morphism::multiply_by(model(fd.dom), fd.m);
    if (fd.kind == "infinite") return Morphism::infinite(model(fd.dom));
    if (fd.kind == "sigma") {
      const bool to_half =
          !fd.cod.empty() && model(fd.cod).kind() == ModelKind::HalfLine;
      return Morphism::sigma(model(fd.dom), to_half);
    }
    if (fd.kind == "nat_to_soft") return Morphism::nat_to_soft();
    if (fd.kind == "nat_embed") return Morphism::nat_embed();
    if (fd.kind == "soft_incl") return Morphism::soft_incl(model(fd.cod));
    if (fd.kind == "scale")
      return Morphism::scale(model(fd.dom), model(fd.cod), parse_ratio(fd.ratio, fd.line));
    if (fd.kind == "proj") return Morphism::proj(model(fd.dom), fd.index);
    if (fd.kind == "inj") return Morphism::inj(model(fd.cod), fd.index);
    if (fd.kind == "table_map") {
      const auto& dom = model(fd.dom);
      const auto& cod = model(fd.cod);
      std::vector<std::pair<Element, Element>> graph;
      for (const auto& [ks, vs] : fd.graph) {
        auto k = parse_element(dom, ks);
        auto v = parse_element(cod, vs);
        if (!k || !v)
          throw ScenarioError("SyntaxError", fd.line,
                              "bad table_map entry '" + ks + " -> " + vs + "'");
        graph.push_back({*k, *v});
      }
      return Morphism::table_map(dom, cod, std::move(graph), fd.cu.value_or(false));
    }
    if (fd.kind == "compose") {
      Morphism acc = build_morphism(sc, fd.of[0], reg, done);
      for (size_t i = 1; i < fd.of.size(); ++i)
        acc = compose(build_morphism(sc, fd.of[i], reg, done), acc);
      return acc;
    }
  } catch (const ModelMismatch& e) {
    throw ScenarioError("SyntaxError", fd.line, e.what());
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("SyntaxError", fd.line, e.what());
  }
  throw ScenarioError("UnknownMorphismKind", fd.line, "'" + fd.kind + "'");
}

Morphism build_morphism(const Scenario& sc, const std::string& name, const Registry& reg,
                        std::map<std::string, Morphism>& done) {
  if (auto it = done.find(name); it != done.end()) return it->second;
  const MorphismDecl* fd = nullptr;
  for (const auto& f : sc.morphisms)
    if (f.name == name) fd = &f;
  if (!fd) throw ScenarioError("UndeclaredName", 0, "morphism '" + name + "'");
  Morphism f = build_morphism_decl(sc, *fd, reg, done);
  f.name = name;
  if (fd->cu) f.declared_cu = *fd->cu;
  done.emplace(name, f);
  return f;
}

}  // namespace

Registry build_registry(const Scenario& sc) {
  Registry reg;
  std::map<std::string, int> state;
  for (const auto& m : sc.models) build_model(sc, m.name, reg.models, state);
  std::map<std::string, Morphism> done;
  for (const auto& f : sc.morphisms) reg.morphisms.emplace(f.name, build_morphism(sc, f.name, reg, done));
  return reg;
}

namespace {

struct CommandCtx {
  const Scenario& sc;
  const Registry& reg;
  unsigned depth;
  unsigned frac;
  std::uint64_t seed;

  const SemigroupModel& model(const CommandDecl& c, const std::string& key) const {
    return reg.models.at(c.args.at(key));
  }
  const Morphism& morphism(const CommandDecl& c, const std::string& key) const {
    return reg.morphisms.at(c.args.at(key));
  }
  unsigned arg_u(const CommandDecl& c, const std::string& key, unsigned dflt) const {
    auto it = c.args.find(key);
    return it == c.args.end() ? dflt : static_cast<unsigned>(std::stoul(it->second));
  }
  std::set<unsigned long> primes(const CommandDecl& c) const {
    std::set<unsigned long> out;
    auto it = c.args.find("primes");
    if (it == c.args.end()) return out;
    std::string cur;
    for (char ch : it->second + ",") {
      if (ch == ',') {
        if (!cur.empty()) out.insert(std::stoul(cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    return out;
  }
};

Element parse_element_or_throw(const SemigroupModel& S, const std::string& text) {
  auto e = parse_element(S, text);
  if (!e)
    throw ModelMismatch("cannot parse '" + text + "' as an element of " + S.describe());
  return *e;
}

CheckReport run_compute(const CommandCtx& ctx, const CommandDecl& c) {
  CheckReport rep;
  rep.check = c.verb;
  const FactorPair pair(ctx.morphism(c, "phi1"), ctx.morphism(c, "phi2"));
  rep.target = pair.describe();
  const Element x = parse_element_or_throw(pair.domain(), c.args.at("x"));
  rep.set_param("x", c.args.at("x"));
  Element value = zero_of(pair.target());
  if (c.verb == "compute-alpha") {
    const Element t = parse_element_or_throw(SemigroupModel::z(), c.args.at("t"));
    rep.set_param("t", c.args.at("t"));
    value = alpha_eval(pair, x, t);
  } else if (c.verb == "compute-alpha-q") {
    const auto primes = ctx.primes(c);
    if (primes.empty()) throw PreconditionViolated("compute-alpha-q needs primes=");
    const SemigroupModel kq = SemigroupModel::kq(primes);
    const Element t = parse_element_or_throw(kq, c.args.at("t"));
    rep.set_param("t", c.args.at("t"));
    value = alpha_q_eval(pair, x, t, primes, ctx.depth);
  } else {  // compute-alpha-soft
    auto t = Ext::parse(c.args.at("t"));
    if (!t) throw ModelMismatch("bad soft parameter '" + c.args.at("t") + "'");
    rep.set_param("t", c.args.at("t"));
    value = alpha_soft_eval(pair, x, *t, ctx.depth);
  }
  const std::string printed = print_element(pair.target(), value);
  rep.set_param("value", printed);
  ++rep.instances;
  if (auto it = c.args.find("expect-value"); it != c.args.end()) {
    const Element want = parse_element_or_throw(pair.target(), it->second);
    if (!(want == value))
      rep.fail_with({{"value", printed}, {"expected", it->second}}, "value mismatch");
  }
  return rep;
}

CheckReport run_command(const CommandCtx& ctx, const CommandDecl& c) {
  const unsigned depth = ctx.arg_u(c, "depth", ctx.depth);
  if (c.verb == "check-axioms") return check_axioms(ctx.model(c, "model"), depth, 2'000'000, ctx.seed);
  if (c.verb == "check-morphism") {
    const bool cu = c.args.count("cu") && c.args.at("cu") == "true";
    return cu ? check_cu_morphism(ctx.morphism(c, "morphism"), depth)
              : check_generalized_cu_morphism(ctx.morphism(c, "morphism"), depth);
  }
  if (c.verb == "check-pure") {
    const auto& f = ctx.morphism(c, "morphism");
    CheckReport rep;
    rep.check = "check-pure";
    rep.target = f.name;
    rep.set_param("depth", std::uint64_t(depth));
    CheckReport unp = check_almost_unperforated(f, depth, ctx.arg_u(c, "m-max", ctx.frac));
    CheckReport div = check_almost_divisible(f, depth, ctx.arg_u(c, "k-max", ctx.frac));
    rep.instances = unp.instances + div.instances;
    rep.exhaustive = unp.exhaustive && div.exhaustive;
    if (!unp.passed()) {
      rep.status = unp.status;
      rep.counterexample = unp.counterexample;
      rep.detail = "almost unperforation fails";
    } else if (!div.passed()) {
      rep.status = div.status;
      rep.counterexample = div.counterexample;
      rep.detail = "almost divisibility fails";
    }
    rep.sub.push_back(std::move(unp));
    rep.sub.push_back(std::move(div));
    return rep;
  }
  if (c.verb == "check-q-rational")
    return check_q_rational(ctx.morphism(c, "morphism"), ctx.primes(c), depth);
  if (c.verb == "check-soft") return check_soft_morphism(ctx.morphism(c, "morphism"), depth);
  if (c.verb == "verify-bimorphism")
    return verify_alpha_bimorphism(
        FactorPair(ctx.morphism(c, "phi1"), ctx.morphism(c, "phi2")), depth);
  if (c.verb == "lemma-suite") {
    LemmaSuiteConfig cfg;
    cfg.depth = depth;
    cfg.frac_bound = ctx.arg_u(c, "frac-bound", ctx.frac);
    cfg.seed = c.args.count("seed") ? std::stoull(c.args.at("seed")) : ctx.seed;
    if (auto it = c.args.find("models"); it != c.args.end()) {
      std::vector<std::string> names;
      std::string curtok;
      for (char ch : it->second + ",") {
        if (ch == ',') {
          if (!curtok.empty()) names.push_back(curtok);
          curtok.clear();
        } else
          curtok += ch;
      }
      cfg.models = std::move(names);
    }
    if (auto it = c.args.find("morphisms"); it != c.args.end()) {
      std::vector<std::string> names;
      std::string curtok;
      for (char ch : it->second + ",") {
        if (ch == ',') {
          if (!curtok.empty()) names.push_back(curtok);
          curtok.clear();
        } else
          curtok += ch;
      }
      cfg.morphisms = std::move(names);
    }
    return lemma_suite(cfg);
  }
  return run_compute(ctx, c);
}

std::string expected_outcome(const CommandDecl& c) {
  if (c.args.count("expect-error")) return "error:" + c.args.at("expect-error");
  auto it = c.args.find("expect");
  return it == c.args.end() ? "pass" : it->second;
}

}  // namespace

RunResult run_scenario(const Scenario& sc, const RunOptions& opt) {
  RunResult result;
  const Registry reg = build_registry(sc);
  CommandCtx ctx{sc,
                 reg,
                 opt.depth.value_or(sc.settings.depth),
                 opt.frac_bound.value_or(sc.settings.frac_bound),
                 opt.seed.value_or(sc.settings.seed)};

  for (const auto& c : sc.commands) {
    CheckReport rep;
    std::string error_kind;
    try {
      rep = run_command(ctx, c);
    } catch (const SoftnessViolated& e) {
      error_kind = "SoftnessViolated";
      rep.detail = e.what();
    } catch (const NoWitnessFound& e) {
      error_kind = "NoWitnessFound";
      rep.detail = e.what();
    } catch (const NotADivisor& e) {
      error_kind = "NotADivisor";
      rep.detail = e.what();
    } catch (const UnsupportedChainForm& e) {
      error_kind = "UnsupportedChainForm";
      rep.detail = e.what();
    } catch (const NotMonotone& e) {
      error_kind = "NotMonotone";
      rep.detail = e.what();
    } catch (const PreconditionViolated& e) {
      error_kind = "PreconditionViolated";
      rep.detail = e.what();
    } catch (const ModelMismatch& e) {
      error_kind = "ModelMismatch";
      rep.detail = e.what();
    } catch (const std::exception& e) {
      error_kind = "Error";
      rep.detail = e.what();
    }
    if (!error_kind.empty()) {
      rep.check = c.verb;
      rep.status = Status::Error;
      rep.set_param("error", error_kind);
    }
    const std::string want = expected_outcome(c);
    bool ok;
    if (want.rfind("error:", 0) == 0)
      ok = rep.status == Status::Error && error_kind == want.substr(6);
    else
      ok = status_str(rep.status) == want;
    result.matched.push_back(ok);
    rep.set_param("expect", want);
    if (!ok) rep.set_param("unexpected", "true");
    result.reports.push_back(std::move(rep));
  }
  result.exit_status =
      std::all_of(result.matched.begin(), result.matched.end(), [](bool b) { return b; }) ? 0 : 1;

  const std::string out_dir = opt.out_dir.value_or(sc.settings.out);
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    auto write = [&](const std::string& name, const std::string& content) {
      std::ofstream f(out_dir + "/" + name);
      if (!f) throw std::runtime_error("IoError: cannot write " + out_dir + "/" + name);
      f << content;
      if (!f.good()) throw std::runtime_error("IoError: short write to " + out_dir + "/" + name);
    };
    write("report.txt", reports_text(result.reports));
    write("report.json", reports_json(result.reports));
  }
  if (!opt.quiet) {
    const std::string fmt = opt.format.value_or(sc.settings.format);
    std::cout << (fmt == "machine" ? reports_json(result.reports)
                                   : reports_text(result.reports));
  }
  return result;
}

std::string reports_text(const std::vector<CheckReport>& reports, bool stable) {
  std::string out;
  for (const auto& r : reports) {
    out += (r.passed() ? "[PASS] " : r.status == Status::Fail ? "[FAIL] " : "[" + status_str(r.status) + "] ");
    out += r.to_text(stable) + "\n";
  }
  return out;
}

namespace {

nlohmann::json report_json(const CheckReport& r, bool stable) {
  nlohmann::json j;
  j["check"] = r.check;
  if (!r.target.empty()) j["target"] = r.target;
  j["status"] = status_str(r.status);
  nlohmann::json ce = nlohmann::json::object();
  for (const auto& [k, v] : r.counterexample) ce[k] = v;
  j["counterexample"] = ce;
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  if (r.params.count("depth")) j["depth"] = std::stoul(r.params.at("depth"));
  j["exact"] = r.exhaustive ? "exhaustive" : "bounded";
  j["instances"] = r.instances;
  j["elapsed_ms"] = stable ? 0 : r.elapsed_ms;
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (!r.sub.empty()) {
    j["sub"] = nlohmann::json::array();
    for (const auto& s : r.sub) j["sub"].push_back(report_json(s, stable));
  }
  return j;
}

}  // namespace

std::string reports_json(const std::vector<CheckReport>& reports, bool stable) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(report_json(r, stable));
  return arr.dump(2) + "\n";
}

bool replay_counterexample(const Scenario& sc, std::size_t index, const CheckReport& persisted) {
  if (index >= sc.commands.size()) return false;
  Scenario targeted = sc;
  targeted.commands = {sc.commands[index]};
  targeted.settings.out.clear();
  RunOptions opt;
  opt.quiet = true;
  const RunResult result = run_scenario(targeted, opt);
  if (result.reports.size() != 1) return false;
  const CheckReport& fresh = result.reports[0];
  return fresh.status == persisted.status && fresh.counterexample == persisted.counterexample;
}

}  // namespace cuf
