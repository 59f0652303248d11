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

#include <cmath>
#include <span>

namespace nla {

/// Neumaier's variant of Kahan summation. Tracks the rounding error of every
/// addition in a separate compensation term.
class CompensatedSum {
  public:
    CompensatedSum() = default;
    explicit CompensatedSum(double initial) : sum_(initial) {}

    CompensatedSum &operator+=(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    CompensatedSum &operator-=(double x) { return *this += -x; }

    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
    CompensatedSum s;
    for (double x : xs) {
        s += x;
    }
    return s.value();
}

}  // namespace nla
