// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wsim {

struct CheckResult {
  std::string id;
  std::string claim;     // the physics statement being checked
  double expected = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;      // optional context (chosen conventions, extra figures)
};

struct VerifyParams {
  std::uint64_t seed = 0;
  int truncation = 6;
  double tol_structural = 1e-10;
  double tol_assert = 1e-12;
};

struct SuiteReport {
  int schema_version = 1;
  std::string suite;
  VerifyParams environment;
  std::vector<CheckResult> checks;  // sorted by id before serialization

  bool overall() const;
  void sort_checks();
  std::string to_json() const;  // canonical, diffable
  std::string to_text() const;  // one line per check
};

}  // namespace wsim
