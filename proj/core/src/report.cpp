// SPDX-License-Identifier: Apache-2.0
#include "wsim/report.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "wsim/types.hpp"

namespace wsim {

bool SuiteReport::overall() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

void SuiteReport::sort_checks() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
}

std::string SuiteReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = schema_version;
  j["suite"] = suite;
  j["environment"] = {{"seed", environment.seed},
                      {"truncation", environment.truncation},
                      {"tol_structural", format_significant(environment.tol_structural)},
                      {"tol_assert", format_significant(environment.tol_assert)}};
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json jc;
    jc["id"] = c.id;
    jc["claim"] = c.claim;
    jc["expected"] = format_significant(c.expected);
    jc["observed"] = format_significant(c.observed);
    jc["tolerance"] = format_significant(c.tolerance);
    jc["pass"] = c.pass;
    if (!c.note.empty()) jc["note"] = c.note;
    j["checks"].push_back(jc);
  }
  j["overall"] = overall() ? "pass" : "fail";
  return j.dump(2) + "\n";
}

std::string SuiteReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << "  " << c.claim
       << "  expected " << format_significant(c.expected, 12) << ", observed "
       << format_significant(c.observed, 12) << ", tol "
       << format_significant(c.tolerance, 3);
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << "\n";
  }
  os << "suite " << suite << ": " << (overall() ? "PASS" : "FAIL") << " ("
     << checks.size() << " checks)\n";
  return os.str();
}

}  // namespace wsim
