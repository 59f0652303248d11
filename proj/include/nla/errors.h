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

#include <stdexcept>
#include <string>

namespace nla {

/// A computation could not produce a finite, trustworthy result (divergent
/// series, unreachable target, search cap exhausted).
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace nla
