// SPDX-License-Identifier: Apache-2.0

#include "cuf/report.hpp"

namespace cuf {

std::string status_str(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Inconclusive:
      return "inconclusive";
    case Status::Error:
      return "error";
  }
  return "?";
}

std::string CheckReport::to_text(bool stable) const {
  std::string out = check;
  if (!target.empty()) out += " target=" + target;
  for (const auto& [k, v] : params) out += " " + k + "=" + v;
  out += " status=" + status_str(status);
  out += exhaustive ? " exact=exhaustive" : " exact=bounded";
  if (instances) out += " instances=" + std::to_string(instances);
  if (!counterexample.empty()) {
    out += " counterexample[";
    for (size_t i = 0; i < counterexample.size(); ++i) {
      if (i) out += " ";
      out += counterexample[i].first + "=" + counterexample[i].second;
    }
    out += "]";
  }
  if (!detail.empty()) out += " note=\"" + detail + "\"";
  if (!stable) out += " elapsed-ms=" + std::to_string(elapsed_ms);
  for (const auto& s : sub) out += "\n  " + s.to_text(stable);
  return out;
}

}  // namespace cuf
