// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "wsim/report.hpp"

namespace wsim::verify {

SuiteReport states_suite(const VerifyParams& params);
SuiteReport entanglement_suite(const VerifyParams& params);
SuiteReport optics_suite(const VerifyParams& params);
SuiteReport dynamics_suite(const VerifyParams& params);
SuiteReport protocols_suite(const VerifyParams& params);

// Union of all suites, check ids prefixed by their suite.
SuiteReport all_suites(const VerifyParams& params);

// Named lookup: states, entanglement, optics, dynamics, protocols, all.
SuiteReport run_suite(const std::string& name, const VerifyParams& params);

}  // namespace wsim::verify
