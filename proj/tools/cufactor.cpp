// SPDX-License-Identifier: Apache-2.0
//
// cufactor: scenario-driven checks for the concrete Cu-semigroup models.
//
//   cufactor run --input scenario.scn [--out DIR] [--depth N] [--format machine]
//   cufactor validate --input scenario.scn

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cuf/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("IoError: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-order checks for concrete Cu-semigroup models"};
  app.require_subcommand(1);

  std::string input, out_dir, format;
  unsigned depth = 0, frac = 0, jobs = 0;
  std::uint64_t seed = 0;
  bool have_seed = false;

  auto* run = app.add_subcommand("run", "execute a scenario file");
  run->add_option("--input", input, "scenario file")->required();
  run->add_option("--out", out_dir, "report output directory");
  run->add_option("--depth", depth, "grid depth override");
  run->add_option("--frac-bound", frac, "fraction bound override");
  auto* seed_opt = run->add_option("--seed", seed, "sweep seed override");
  run->add_option("--format", format, "stdout format: text|machine")
      ->check(CLI::IsMember({"text", "machine"}));
  run->add_option("--jobs", jobs, "parallelism cap (CU_FACTOR_JOBS mirrors this)");

  auto* validate = app.add_subcommand("validate", "parse and validate a scenario file");
  validate->add_option("--input", input, "scenario file")->required();

  CLI11_PARSE(app, argc, argv);
  have_seed = seed_opt->count() > 0;

  try {
    const cuf::Scenario sc = cuf::parse_scenario(read_file(input));
    if (validate->parsed()) {
      std::cout << "ok: " << sc.models.size() << " models, " << sc.morphisms.size()
                << " morphisms, " << sc.commands.size() << " commands\n";
      return 0;
    }
    cuf::RunOptions opt;
    opt.quiet = false;
    if (!out_dir.empty()) opt.out_dir = out_dir;
    if (!format.empty()) opt.format = format;
    if (depth) opt.depth = depth;
    if (frac) opt.frac_bound = frac;
    if (have_seed) opt.seed = seed;
    if (jobs)
      opt.jobs = jobs;
    else if (const char* env = std::getenv("CU_FACTOR_JOBS"))
      opt.jobs = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    return cuf::run_scenario(sc, opt).exit_status;
  } catch (const cuf::ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
