// Copyright 2026 The NLA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace nla {

enum class ValidationGrid { kSmall, kFull };

struct CheckResult {
    std::string name;
    double max_error;
    double tolerance;
    bool passed;
    int cases;
    double seconds;
};

/// Runs the identity, unitarity and closed-form-vs-oracle suites. When
/// `tol_override` is set it replaces every tolerance.
std::vector<CheckResult> run_validation(ValidationGrid grid, std::optional<double> tol_override,
                                        int jobs = 1);

}  // namespace nla
