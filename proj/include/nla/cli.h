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

#include <iosfwd>
#include <string>
#include <vector>

namespace nla::cli {

inline constexpr const char *kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
    kOk = 0,
    kValidationFailed = 1,
    kInvalidFlags = 2,
    kNumericalFailure = 3,
};

/// Runs one CLI invocation. `args` excludes the program name. Data goes to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Fixed 15-significant-digit rendering used for every emitted number.
std::string format_number(double x);

}  // namespace nla::cli
