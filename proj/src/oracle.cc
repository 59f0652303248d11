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

#include "nla/oracle.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "nla/epr.h"
#include "nla/errors.h"
#include "nla/summation.h"

namespace nla {

namespace {

constexpr double kAllowedTail = 1e-13;

// Upper bound on sum_{n > n_max} e^{-m} m^n / n!, valid once n_max + 2 > m.
double poisson_tail_bound(double mean, int n_max) {
    if (mean == 0.0) {
        return 0.0;
    }
    double log_term = -mean + (n_max + 1) * std::log(mean) - std::lgamma(n_max + 2.0);
    double ratio = mean / (n_max + 2.0);
    if (ratio >= 1.0) {
        return INFINITY;
    }
    return std::exp(log_term) / (1.0 - ratio);
}

void check_tail(const OracleConfig &cfg, const char *fn) {
    if (!(cfg.tail_bound <= kAllowedTail)) {
        throw NumericalError(std::string(fn) + ": truncation tail bound " +
                             std::to_string(cfg.tail_bound) + " exceeds " +
                             std::to_string(kAllowedTail) + " at n_max=" +
                             std::to_string(cfg.n_max));
    }
}

}  // namespace

OracleConfig coherent_oracle_config(double alpha_mag, double g, int min_n_max, double max_tail) {
    const double x = alpha_mag * alpha_mag;
    auto bound = [&](int n) {
        // Probability sum: Poisson(x) tail. Overlap sum: e^{-(g-1)^2 x / 2}
        // times the Poisson(g x) tail.
        return std::max(poisson_tail_bound(x, n),
                        std::exp(-0.5 * (g - 1.0) * (g - 1.0) * x) * poisson_tail_bound(g * x, n));
    };
    int n = std::max(min_n_max, 1);
    while (!(bound(n) <= max_tail) && n < 100000) {
        ++n;
    }
    return {n, bound(n)};
}

OracleConfig epr_oracle_config(double chi_prime, int min_n_max, double max_tail) {
    if (!(chi_prime >= 0.0 && chi_prime < 1.0)) {
        throw NumericalError("epr_oracle_config: chi' >= 1, no finite truncation converges");
    }
    const double c2 = chi_prime * chi_prime;
    auto bound = [&](int n) { return c2 == 0.0 ? 0.0 : std::pow(c2, n + 1) / (1.0 - c2); };
    int n = std::max(min_n_max, 1);
    while (!(bound(n) <= max_tail)) {
        ++n;
    }
    return {n, bound(n)};
}

OracleValues oracle_coherent(double alpha_mag, const AmplifierSpec &spec, const OracleConfig &cfg) {
    check_tail(cfg, "oracle_coherent");
    CoherentState in = make_coherent(alpha_mag, cfg.n_max);
    CoherentState target = make_coherent(spec.gain * alpha_mag, cfg.n_max);
    FockVector out = apply_diag(make_ms(spec, cfg.n_max), in.state);
    const double p = out.norm_sq();
    const double f = std::norm(inner(target.state, out)) / p;
    return {p, f};
}

OracleValues oracle_epr(double chi, double eta, const AmplifierSpec &spec, const OracleConfig &cfg) {
    check_tail(cfg, "oracle_epr");
    const double g = spec.gain;
    const double f = std::sqrt(1.0 - eta + eta * g * g);
    const double chi_prime = f * chi;
    if (chi_prime >= 1.0) {
        throw NumericalError("oracle_epr: chi' = " + std::to_string(chi_prime) + " >= 1");
    }
    const double eta_prime = std::min(1.0, g * g * eta / (f * f));
    ThreeModeVector in = make_lossy_epr(LossyEprParams(chi, eta), cfg.n_max);
    ThreeModeVector target = make_lossy_epr(LossyEprParams(chi_prime, eta_prime), cfg.n_max);
    ThreeModeVector out = apply_diag(make_ms(spec, cfg.n_max), in, Mode::kSecond);
    const double p = out.norm_sq();
    return {p, std::norm(inner(target, out)) / p};
}

double oracle_transform_fidelity(double chi, double eta, double g, int n_max) {
    const double f = std::sqrt(1.0 - eta + eta * g * g);
    ThreeModeVector amplified = lossy_epr_coefficients(chi, eta, n_max);
    for (int n = 0; n <= n_max; ++n) {
        for (int t = 0; t <= n; ++t) {
            amplified.at(n, t) *= std::pow(g, t);
        }
    }
    ThreeModeVector target =
        lossy_epr_coefficients(f * chi, std::min(1.0, g * g * eta / (f * f)), n_max);
    return normalized_fidelity(amplified, target);
}

}  // namespace nla
