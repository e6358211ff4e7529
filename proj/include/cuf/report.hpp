// SPDX-License-Identifier: Apache-2.0

#ifndef CUF_REPORT_HPP
#define CUF_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cuf {

enum class Status : std::uint8_t { Pass, Fail, Inconclusive, Error };

std::string status_str(Status s);

/// Outcome of a predicate or lemma check. A fail always carries a
/// counterexample replayable through the public operations; bounded searches
/// that neither find a witness nor certify absence report Inconclusive.
struct CheckReport {
  std::string check;
  std::string target;
  Status status = Status::Pass;
  std::vector<std::pair<std::string, std::string>> counterexample;
  std::map<std::string, std::string> params;
  bool exhaustive = false;  // exhaustive (finite carrier) vs depth-bounded
  std::uint64_t instances = 0;
  std::int64_t elapsed_ms = 0;
  std::string detail;
  std::vector<CheckReport> sub;

  bool passed() const { return status == Status::Pass; }

  void fail_with(std::vector<std::pair<std::string, std::string>> ce, std::string note = "") {
    status = Status::Fail;
    counterexample = std::move(ce);
    if (!note.empty()) detail = std::move(note);
  }

  void set_param(const std::string& key, const std::string& value) { params[key] = value; }
  void set_param(const std::string& key, std::uint64_t value) {
    params[key] = std::to_string(value);
  }

  /// One-line human rendering; `stable` drops the elapsed time so that
  /// identical runs serialize byte-identically.
  std::string to_text(bool stable = false) const;
};

}  // namespace cuf

#endif
