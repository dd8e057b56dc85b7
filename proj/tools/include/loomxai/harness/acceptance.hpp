// Copyright 2026 The loomxai Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "loomxai/value.hpp"

namespace loomxai::harness {

struct CriterionResult {
    int number = 0;
    std::string id;
    bool pass = false;
    Value measured;

    /// {"criterion","id","measured","pass"} in canonical encoding.
    std::string report_line() const;
};

struct AcceptOptions {
    std::uint64_t seed = 1;
};

/// Suite names: dp1 dp2 convergence callbacks echo wire geometry projector
/// e2e, or all. Throws Error{UnknownSuite}.
std::vector<CriterionResult> run_suite(const std::string& suite, const AcceptOptions& options = {});
const std::vector<std::string>& suite_names();

/// Writes one report line per result; returns true iff all passed.
bool write_report(const std::vector<CriterionResult>& results, std::ostream& out);

CriterionResult check_dp1_isolation(const AcceptOptions& options);
CriterionResult check_dp2_oracle(const AcceptOptions& options);
CriterionResult check_convergence(const AcceptOptions& options);
CriterionResult check_exactly_once(const AcceptOptions& options);
CriterionResult check_no_echo(const AcceptOptions& options);
CriterionResult check_wire(const AcceptOptions& options);
CriterionResult check_geometry(const AcceptOptions& options);
CriterionResult check_projector(const AcceptOptions& options);
CriterionResult check_end_to_end(const AcceptOptions& options);

}  // namespace loomxai::harness
