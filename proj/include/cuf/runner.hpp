// SPDX-License-Identifier: Apache-2.0

#ifndef CUF_RUNNER_HPP
#define CUF_RUNNER_HPP

#include "cuf/oracle.hpp"
#include "cuf/scenario.hpp"

namespace cuf {

/// Declared models and morphisms, resolved to live objects.
struct Registry {
  std::map<std::string, SemigroupModel> models;
  std::map<std::string, Morphism> morphisms;
};

/// Semantic resolution of a parsed scenario; throws ScenarioError with the
/// declaration line on malformed tables, ratios, or kind mismatches.
Registry build_registry(const Scenario& s);

struct RunOptions {
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
  std::optional<unsigned> depth;
  std::optional<unsigned> frac_bound;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
  bool quiet = true;
};

struct RunResult {
  std::vector<CheckReport> reports;
  std::vector<bool> matched;  // per command: outcome met its expectation
  int exit_status = 0;
};

/// Executes the commands in declaration order. Individual failures and errors
/// never abort the run; the exit status is 0 iff every command met its
/// expectation (expect=pass by default, negative controls declare
/// expect=fail or expect-error=...).
RunResult run_scenario(const Scenario& s, const RunOptions& opt = {});

std::string reports_text(const std::vector<CheckReport>& reports, bool stable = false);
std::string reports_json(const std::vector<CheckReport>& reports, bool stable = false);

/// Targeted replay: re-runs command `index` of the scenario alone and checks
/// that the persisted status and counterexample reproduce bit-exactly.
bool replay_counterexample(const Scenario& s, std::size_t index, const CheckReport& persisted);

}  // namespace cuf

#endif
