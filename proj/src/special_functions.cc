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

#include "nla/special_functions.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nla/summation.h"

namespace nla {

namespace {

constexpr double kDirectExpLimit = 700.0;
constexpr int kLogBinomialThreshold = 500;

void check_gamma_args(int a, double x, const char *fn) {
    if (a < 1 || !(x >= 0.0) || std::isinf(x)) {
        throw std::domain_error(std::string(fn) + ": requires integer a >= 1 and finite x >= 0 (a=" +
                                std::to_string(a) + ", x=" + std::to_string(x) + ")");
    }
}

double log_poisson_term(int k, double x) {
    if (x == 0.0) {
        return k == 0 ? 0.0 : -INFINITY;
    }
    return -x + k * std::log(x) - std::lgamma(k + 1.0);
}

// log of sum_{k=lo}^{hi} e^{-x} x^k / k!, with hi < 0 meaning unbounded.
// Sums relative to the largest term, walking outward with the ratio
// recurrence.
double log_poisson_window(int lo, int hi, double x) {
    if (x == 0.0) {
        return lo == 0 ? 0.0 : -INFINITY;
    }
    long peak = static_cast<long>(std::floor(x));
    peak = std::max<long>(peak, lo);
    if (hi >= 0) {
        peak = std::min<long>(peak, hi);
    }
    const int m = static_cast<int>(peak);
    CompensatedSum rel(1.0);
    double term = 1.0;
    for (int k = m; k > lo; --k) {
        term *= k / x;
        rel += term;
        if (term < 1e-18) {
            break;
        }
    }
    term = 1.0;
    for (long k = m + 1; hi < 0 || k <= hi; ++k) {
        term *= x / static_cast<double>(k);
        rel += term;
        if (term < 1e-18 && k > x) {
            break;
        }
    }
    return log_poisson_term(m, x) + std::log(rel.value());
}

}  // namespace

double reg_gamma_q(int a, double x) {
    check_gamma_args(a, x, "reg_gamma_q");
    if (x > kDirectExpLimit) {
        return std::exp(log_poisson_window(0, a - 1, x));
    }
    double term = std::exp(-x);
    CompensatedSum sum(term);
    for (int k = 1; k < a; ++k) {
        term *= x / k;
        sum += term;
    }
    return std::min(1.0, sum.value());
}

double reg_gamma_p(int a, double x) {
    check_gamma_args(a, x, "reg_gamma_p");
    if (x >= a) {
        return std::max(0.0, 1.0 - reg_gamma_q(a, x));
    }
    // x < a <= kDirectExpLimit is not guaranteed for huge a; the log path
    // handles any size.
    if (x > kDirectExpLimit) {
        return std::exp(log_poisson_window(a, -1, x));
    }
    double term = std::exp(-x);
    for (int k = 1; k <= a; ++k) {
        term *= x / k;
    }
    CompensatedSum sum(term);
    for (int k = a + 1; term > 0.0; ++k) {
        term *= x / k;
        sum += term;
        if (term < 1e-18 * sum.value()) {
            break;
        }
    }
    return std::min(1.0, sum.value());
}

double log_reg_gamma_q(int a, double x) {
    check_gamma_args(a, x, "log_reg_gamma_q");
    if (x <= kDirectExpLimit) {
        double q = reg_gamma_q(a, x);
        if (q > 1e-300) {
            return std::log(q);
        }
    }
    return log_poisson_window(0, a - 1, x);
}

double binomial(int n, int k) {
    if (n < 0) {
        throw std::domain_error("binomial: n must be nonnegative");
    }
    if (k < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    if (n > kLogBinomialThreshold) {
        return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
    }
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

double reg_beta_i(double x, int a, int b) {
    if (!(x >= 0.0 && x <= 1.0) || a < 1 || b < 1) {
        throw std::domain_error("reg_beta_i: requires 0 <= x <= 1 and integers a, b >= 1 (x=" +
                                std::to_string(x) + ", a=" + std::to_string(a) +
                                ", b=" + std::to_string(b) + ")");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (x == 1.0) {
        return 1.0;
    }
    const int n = a + b - 1;
    CompensatedSum sum;
    if (n > kLogBinomialThreshold) {
        const double lx = std::log(x);
        const double l1x = std::log1p(-x);
        const double lgn = std::lgamma(n + 1.0);
        for (int t = a; t <= n; ++t) {
            sum += std::exp(lgn - std::lgamma(t + 1.0) - std::lgamma(n - t + 1.0) + t * lx +
                            (n - t) * l1x);
        }
    } else {
        double c = binomial(n, a);
        for (int t = a; t <= n; ++t) {
            sum += c * std::pow(x, t) * std::pow(1.0 - x, n - t);
            c = c * (n - t) / (t + 1);
        }
    }
    return std::clamp(sum.value(), 0.0, 1.0);
}

}  // namespace nla
