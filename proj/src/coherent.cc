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

#include "nla/coherent.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nla/errors.h"
#include "nla/parallel.h"
#include "nla/special_functions.h"

namespace nla {

namespace {

// Beyond this exponent the e^{(g^2-1)|a|^2} prefactor is combined with Q in
// the log domain.
constexpr double kLogDomainExponent = 300.0;

void check_alpha(double alpha_mag) {
    if (!(alpha_mag >= 0.0) || std::isinf(alpha_mag)) {
        throw std::domain_error("coherent: |alpha| must be finite and >= 0");
    }
}

// g^{-k N} e^{c x} Q(N+1, y), for k in {1, 2} and x = |alpha|^2.
double scaled_q(const AmplifierSpec &spec, int power, double exponent, double y) {
    const int a = spec.cutoff + 1;
    if (exponent <= kLogDomainExponent) {
        return std::pow(spec.gain, -power * spec.cutoff) * std::exp(exponent) * reg_gamma_q(a, y);
    }
    return std::exp(-power * spec.cutoff * std::log(spec.gain) + exponent + log_reg_gamma_q(a, y));
}

}  // namespace

double prob_coherent(double alpha_mag, const AmplifierSpec &spec) {
    check_alpha(alpha_mag);
    const double x = alpha_mag * alpha_mag;
    const double g2 = spec.gain * spec.gain;
    const int a = spec.cutoff + 1;
    double p = reg_gamma_p(a, x) + scaled_q(spec, 2, (g2 - 1.0) * x, g2 * x);
    return std::min(p, 1.0);
}

double fidelity_coherent(double alpha_mag, const AmplifierSpec &spec) {
    check_alpha(alpha_mag);
    const double x = alpha_mag * alpha_mag;
    const double g = spec.gain;
    const int a = spec.cutoff + 1;
    // e^{-(1+g^2)x/2} (g^{-N} sum_{n<=N} (g^2 x)^n/n! + sum_{n>N} (g x)^n/n!)
    double overlap = scaled_q(spec, 1, 0.5 * (g * g - 1.0) * x, g * g * x) +
                     std::exp(-0.5 * (g - 1.0) * (g - 1.0) * x) * reg_gamma_p(a, g * x);
    return overlap * overlap / prob_coherent(alpha_mag, spec);
}

CoherentResult evaluate_coherent(double alpha_mag, const AmplifierSpec &spec) {
    return {spec.gain, spec.cutoff, alpha_mag, prob_coherent(alpha_mag, spec),
            fidelity_coherent(alpha_mag, spec)};
}

int min_cutoff_for_fidelity(double alpha_mag, double g, double f_min) {
    if (!(f_min > 0.0 && f_min < 1.0)) {
        throw std::domain_error("min_cutoff_for_fidelity: f_min must lie in (0, 1)");
    }
    for (int n = 1; n <= kMaxCoherentCutoff; ++n) {
        if (fidelity_coherent(alpha_mag, AmplifierSpec(g, n)) >= f_min) {
            return n;
        }
    }
    throw NumericalError("min_cutoff_for_fidelity: no cutoff up to " +
                         std::to_string(kMaxCoherentCutoff) + " reaches fidelity " +
                         std::to_string(f_min) + " at |alpha|=" + std::to_string(alpha_mag) +
                         ", g=" + std::to_string(g));
}

std::vector<CoherentResult> sweep_coherent(double alpha_mag, std::span<const double> g_grid,
                                           double f_min, int jobs) {
    for (size_t i = 0; i < g_grid.size(); ++i) {
        if (!(g_grid[i] >= 1.0) || (i > 0 && g_grid[i] < g_grid[i - 1])) {
            throw std::invalid_argument("sweep_coherent: gain grid must be ascending and >= 1");
        }
    }
    std::vector<CoherentResult> out(g_grid.size());
    parallel_for(g_grid.size(), jobs, [&](size_t i) {
        int n = min_cutoff_for_fidelity(alpha_mag, g_grid[i], f_min);
        out[i] = evaluate_coherent(alpha_mag, AmplifierSpec(g_grid[i], n));
    });
    return out;
}

}  // namespace nla
