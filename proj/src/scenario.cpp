// SPDX-License-Identifier: Apache-2.0

#include "cuf/scenario.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cuf {

namespace {

const std::set<std::string> kModelKinds = {"Z",       "Nbar", "HalfLine", "Kq",
                                           "Product", "Lsc",  "Table"};
const std::set<std::string> kMorphismKinds = {
    "identity", "zero",      "multiply_by", "infinite", "sigma",     "nat_to_soft",
    "nat_embed", "soft_incl", "scale",       "proj",     "inj",       "table_map",
    "compose"};
const std::set<std::string> kVerbs = {
    "check-axioms",     "check-morphism",     "check-pure",        "check-q-rational",
    "check-soft",       "compute-alpha",      "compute-alpha-q",   "compute-alpha-soft",
    "verify-bimorphism", "lemma-suite"};

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct Cursor {
  std::vector<std::string> lines;
  size_t pos = 0;

  bool done() const { return pos >= lines.size(); }
  unsigned lineno() const { return static_cast<unsigned>(pos + 1); }
  std::string next() { return lines[pos++]; }
};

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

unsigned long parse_ulong(const std::string& s, const std::string& what, unsigned line) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ScenarioError("SyntaxError", line, what + " expects a natural number, got '" + s + "'");
  return std::stoul(s);
}

/// key=value arguments after the leading tokens.
std::map<std::string, std::string> parse_args(const std::vector<std::string>& toks, size_t from,
                                              unsigned line) {
  std::map<std::string, std::string> args;
  for (size_t i = from; i < toks.size(); ++i) {
    if (toks[i] == "{") break;
    auto eq = toks[i].find('=');
    if (eq == std::string::npos || eq == 0)
      throw ScenarioError("SyntaxError", line, "expected key=value, got '" + toks[i] + "'");
    args[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
  }
  return args;
}

bool opens_block(const std::vector<std::string>& toks) {
  return !toks.empty() && toks.back() == "{";
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario sc;
  Cursor cur;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) cur.lines.push_back(line);
  }

  while (!cur.done()) {
    const unsigned line = cur.lineno();
    const std::string raw = strip_comment(cur.next());
    const auto toks = split_ws(raw);
    if (toks.empty()) continue;
    const std::string& head = toks[0];

    if (head == "settings") {
      auto args = parse_args(toks, 1, line);
      for (const auto& [k, v] : args) {
        if (k == "depth")
          sc.settings.depth = static_cast<unsigned>(parse_ulong(v, "depth", line));
        else if (k == "frac-bound")
          sc.settings.frac_bound = static_cast<unsigned>(parse_ulong(v, "frac-bound", line));
        else if (k == "seed")
          sc.settings.seed = parse_ulong(v, "seed", line);
        else if (k == "format") {
          if (v != "text" && v != "machine")
            throw ScenarioError("SyntaxError", line, "format must be text or machine");
          sc.settings.format = v;
        } else if (k == "out")
          sc.settings.out = v;
        else if (k == "jobs")
          sc.settings.jobs = static_cast<unsigned>(parse_ulong(v, "jobs", line));
        else
          throw ScenarioError("SyntaxError", line, "unknown setting '" + k + "'");
      }
      continue;
    }

    if (head == "model") {
      if (toks.size() < 2) throw ScenarioError("SyntaxError", line, "model needs a name");
      ModelDecl md;
      md.name = toks[1];
      md.line = line;
      auto args = parse_args(toks, 2, line);
      if (!args.count("kind")) throw ScenarioError("SyntaxError", line, "model needs kind=");
      md.kind = args["kind"];
      if (!kModelKinds.count(md.kind))
        throw ScenarioError("UnknownModelKind", line, "'" + md.kind + "'");
      if (args.count("primes"))
        for (const auto& p : split_commas(args["primes"]))
          md.primes.push_back(parse_ulong(p, "prime", line));
      if (args.count("parts")) md.parts = split_commas(args["parts"]);
      if (opens_block(toks)) {
        while (true) {
          if (cur.done()) throw ScenarioError("SyntaxError", line, "unterminated model block");
          const unsigned bline = cur.lineno();
          const auto btoks = split_ws(strip_comment(cur.next()));
          if (btoks.empty()) continue;
          if (btoks[0] == "}") break;
          if (btoks[0] == "point" && btoks.size() == 2)
            md.points.push_back(btoks[1]);
          else if (btoks[0] == "cover" && btoks.size() == 3)
            md.covers.push_back({btoks[1], btoks[2]});
          else if (btoks[0] == "elements")
            md.elements.assign(btoks.begin() + 1, btoks.end());
          else if (btoks[0] == "bottom" && btoks.size() == 2)
            md.bottom = btoks[1];
          else if (btoks[0] == "add" && btoks.size() == 4)
            md.adds.push_back({btoks[1], btoks[2], btoks[3]});
          else if (btoks[0] == "order" && btoks.size() == 3)
            md.orders.push_back({btoks[1], btoks[2]});
          else
            throw ScenarioError("SyntaxError", bline, "bad model block entry '" + btoks[0] + "'");
        }
      }
      sc.models.push_back(std::move(md));
      continue;
    }

    if (head == "morphism") {
      if (toks.size() < 2) throw ScenarioError("SyntaxError", line, "morphism needs a name");
      MorphismDecl fd;
      fd.name = toks[1];
      fd.line = line;
      auto args = parse_args(toks, 2, line);
      if (!args.count("kind")) throw ScenarioError("SyntaxError", line, "morphism needs kind=");
      fd.kind = args["kind"];
      if (!kMorphismKinds.count(fd.kind))
        throw ScenarioError("UnknownMorphismKind", line, "'" + fd.kind + "'");
      if (args.count("dom")) fd.dom = args["dom"];
      if (args.count("cod")) fd.cod = args["cod"];
      if (args.count("m")) fd.m = parse_ulong(args["m"], "m", line);
      if (args.count("r")) fd.ratio = args["r"];
      if (args.count("index")) fd.index = parse_ulong(args["index"], "index", line);
      if (args.count("of")) fd.of = split_commas(args["of"]);
      if (args.count("cu")) {
        if (args["cu"] != "true" && args["cu"] != "false")
          throw ScenarioError("SyntaxError", line, "cu must be true or false");
        fd.cu = args["cu"] == "true";
      }
      if (opens_block(toks)) {
        while (true) {
          if (cur.done()) throw ScenarioError("SyntaxError", line, "unterminated morphism block");
          const unsigned bline = cur.lineno();
          const auto btoks = split_ws(strip_comment(cur.next()));
          if (btoks.empty()) continue;
          if (btoks[0] == "}") break;
          if (btoks[0] == "map" && btoks.size() == 3)
            fd.graph.push_back({btoks[1], btoks[2]});
          else
            throw ScenarioError("SyntaxError", bline, "bad morphism block entry");
        }
      }
      sc.morphisms.push_back(std::move(fd));
      continue;
    }

    if (kVerbs.count(head)) {
      CommandDecl cd;
      cd.verb = head;
      cd.line = line;
      cd.args = parse_args(toks, 1, line);
      sc.commands.push_back(std::move(cd));
      continue;
    }

    throw ScenarioError("SyntaxError", line, "unrecognized directive '" + head + "'");
  }

  // Name resolution.
  std::set<std::string> model_names, morphism_names;
  for (const auto& m : sc.models) {
    if (!model_names.insert(m.name).second)
      throw ScenarioError("SyntaxError", m.line, "duplicate model '" + m.name + "'");
  }
  for (const auto& f : sc.morphisms) {
    if (!morphism_names.insert(f.name).second)
      throw ScenarioError("SyntaxError", f.line, "duplicate morphism '" + f.name + "'");
  }
  auto need_model = [&](const std::string& n, unsigned line) {
    if (!model_names.count(n)) throw ScenarioError("UndeclaredName", line, "model '" + n + "'");
  };
  auto need_morphism = [&](const std::string& n, unsigned line) {
    if (!morphism_names.count(n))
      throw ScenarioError("UndeclaredName", line, "morphism '" + n + "'");
  };
  for (const auto& m : sc.models)
    for (const auto& p : m.parts) need_model(p, m.line);
  for (const auto& f : sc.morphisms) {
    if (f.kind == "compose") {
      if (f.of.empty())
        throw ScenarioError("SyntaxError", f.line, "compose needs of=f1,f2,...");
      for (const auto& n : f.of) need_morphism(n, f.line);
      continue;
    }
    const bool implied = f.kind == "nat_to_soft" || f.kind == "nat_embed";
    const bool cod_optional = implied || f.kind == "identity" || f.kind == "multiply_by" ||
                              f.kind == "infinite" || f.kind == "sigma";
    if (!implied && f.dom.empty())
      throw ScenarioError("SyntaxError", f.line, "morphism needs dom=");
    if (!cod_optional && f.cod.empty())
      throw ScenarioError("SyntaxError", f.line, "morphism needs cod=");
    if (!f.dom.empty()) need_model(f.dom, f.line);
    if (!f.cod.empty()) need_model(f.cod, f.line);
  }
  for (const auto& c : sc.commands) {
    for (const auto& key : {"model"})
      if (c.args.count(key)) need_model(c.args.at(key), c.line);
    for (const auto& key : {"morphism", "phi1", "phi2", "gamma-c", "gamma-s"})
      if (c.args.count(key)) need_morphism(c.args.at(key), c.line);
  }

  // Cycle detection over compose references.
  {
    std::map<std::string, const MorphismDecl*> by_name;
    for (const auto& f : sc.morphisms) by_name[f.name] = &f;
    std::map<std::string, int> state;  // 0 new, 1 visiting, 2 done
    auto dfs = [&](auto&& self, const MorphismDecl& f) -> void {
      state[f.name] = 1;
      if (f.kind == "compose")
        for (const auto& n : f.of) {
          const auto* g = by_name[n];
          if (state[g->name] == 1)
            throw ScenarioError("CyclicComposition", f.line,
                                "'" + f.name + "' depends on itself through '" + n + "'");
          if (state[g->name] == 0) self(self, *g);
        }
      state[f.name] = 2;
    };
    for (const auto& f : sc.morphisms)
      if (state[f.name] == 0) dfs(dfs, f);
  }
  return sc;
}

std::string serialize_scenario(const Scenario& sc) {
  std::ostringstream out;
  const Settings def;
  out << "settings depth=" << sc.settings.depth << " frac-bound=" << sc.settings.frac_bound
      << " seed=" << sc.settings.seed << " format=" << sc.settings.format;
  if (!sc.settings.out.empty()) out << " out=" << sc.settings.out;
  if (sc.settings.jobs != def.jobs) out << " jobs=" << sc.settings.jobs;
  out << "\n";
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
  };
  for (const auto& m : sc.models) {
    out << "model " << m.name << " kind=" << m.kind;
    if (!m.primes.empty()) {
      out << " primes=";
      for (size_t i = 0; i < m.primes.size(); ++i) out << (i ? "," : "") << m.primes[i];
    }
    if (!m.parts.empty()) out << " parts=" << join(m.parts);
    const bool block = !m.points.empty() || !m.elements.empty();
    if (block) {
      out << " {\n";
      for (const auto& p : m.points) out << "  point " << p << "\n";
      for (const auto& [a, b] : m.covers) out << "  cover " << a << " " << b << "\n";
      if (!m.elements.empty()) {
        out << "  elements";
        for (const auto& e : m.elements) out << " " << e;
        out << "\n";
      }
      if (!m.bottom.empty()) out << "  bottom " << m.bottom << "\n";
      for (const auto& a : m.adds) out << "  add " << a[0] << " " << a[1] << " " << a[2] << "\n";
      for (const auto& [a, b] : m.orders) out << "  order " << a << " " << b << "\n";
      out << "}";
    }
    out << "\n";
  }
  for (const auto& f : sc.morphisms) {
    out << "morphism " << f.name << " kind=" << f.kind;
    if (!f.dom.empty()) out << " dom=" << f.dom;
    if (!f.cod.empty()) out << " cod=" << f.cod;
    if (f.m != 1) out << " m=" << f.m;
    if (!f.ratio.empty()) out << " r=" << f.ratio;
    if (f.index != 0) out << " index=" << f.index;
    if (!f.of.empty()) out << " of=" << join(f.of);
    if (f.cu) out << " cu=" << (*f.cu ? "true" : "false");
    if (!f.graph.empty()) {
      out << " {\n";
      for (const auto& [k, v] : f.graph) out << "  map " << k << " " << v << "\n";
      out << "}";
    }
    out << "\n";
  }
  for (const auto& c : sc.commands) {
    out << c.verb;
    for (const auto& [k, v] : c.args) out << " " << k << "=" << v;
    out << "\n";
  }
  return out.str();
}

}  // namespace cuf
