// SPDX-License-Identifier: Apache-2.0

#ifndef CUF_SCENARIO_HPP
#define CUF_SCENARIO_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cuf {

/// Parse-time diagnostic. `kind` is one of SyntaxError, UnknownModelKind,
/// UnknownMorphismKind, UndeclaredName, CyclicComposition.
struct ScenarioError : std::runtime_error {
  std::string kind;
  unsigned line;
  ScenarioError(std::string kind_, unsigned line_, const std::string& what)
      : std::runtime_error(kind_ + " (line " + std::to_string(line_) + "): " + what),
        kind(std::move(kind_)),
        line(line_) {}
};

struct ModelDecl {
  std::string name;
  std::string kind;
  std::vector<unsigned long> primes;
  std::vector<std::string> parts;
  std::vector<std::string> points;
  std::vector<std::pair<std::string, std::string>> covers;
  std::vector<std::string> elements;
  std::string bottom;
  std::vector<std::array<std::string, 3>> adds;
  std::vector<std::pair<std::string, std::string>> orders;
  unsigned line = 0;

  friend bool operator==(const ModelDecl& a, const ModelDecl& b) {
    return a.name == b.name && a.kind == b.kind && a.primes == b.primes && a.parts == b.parts &&
           a.points == b.points && a.covers == b.covers && a.elements == b.elements &&
           a.bottom == b.bottom && a.adds == b.adds && a.orders == b.orders;
  }
};

struct MorphismDecl {
  std::string name;
  std::string kind;
  std::string dom;
  std::string cod;
  unsigned long m = 1;
  std::string ratio;
  std::size_t index = 0;
  std::vector<std::string> of;
  std::optional<bool> cu;
  std::vector<std::pair<std::string, std::string>> graph;
  unsigned line = 0;

  friend bool operator==(const MorphismDecl& a, const MorphismDecl& b) {
    return a.name == b.name && a.kind == b.kind && a.dom == b.dom && a.cod == b.cod &&
           a.m == b.m && a.ratio == b.ratio && a.index == b.index && a.of == b.of &&
           a.cu == b.cu && a.graph == b.graph;
  }
};

struct CommandDecl {
  std::string verb;
  std::map<std::string, std::string> args;
  unsigned line = 0;

  friend bool operator==(const CommandDecl& a, const CommandDecl& b) {
    return a.verb == b.verb && a.args == b.args;
  }
};

struct Settings {
  unsigned depth = 6;
  unsigned frac_bound = 6;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string out;
  unsigned jobs = 1;

  friend bool operator==(const Settings&, const Settings&) = default;
};

struct Scenario {
  Settings settings;
  std::vector<ModelDecl> models;
  std::vector<MorphismDecl> morphisms;
  std::vector<CommandDecl> commands;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Total parser: returns a validated scenario or throws ScenarioError with a
/// line diagnostic. Names may be referenced before declaration; compositions
/// must be acyclic.
Scenario parse_scenario(const std::string& text);

/// Canonical rendering; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& s);

}  // namespace cuf

#endif
