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

#include "nla/epr.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nla/errors.h"
#include "nla/special_functions.h"
#include "nla/summation.h"

namespace nla {

LossyEprParams::LossyEprParams(double chi, double eta) : chi(chi), eta(eta) {
    if (!(chi >= 0.0 && chi < 1.0)) {
        throw std::invalid_argument("LossyEprParams: chi must lie in [0, 1), got " +
                                    std::to_string(chi));
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("LossyEprParams: eta must lie in [0, 1], got " +
                                    std::to_string(eta));
    }
}

ThreeModeVector lossy_epr_coefficients(double chi, double eta, int n_max) {
    if (!(chi >= 0.0) || !(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("lossy_epr_coefficients: need chi >= 0 and eta in [0, 1]");
    }
    ThreeModeVector psi(n_max);
    // Row n is chi^n times the square root of a Binomial(n, eta) pmf; build
    // each row by the ratio recurrence from t = 0 using pow for the endpoints.
    double chi_n = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        double binom = 1.0;
        for (int t = 0; t <= n; ++t) {
            double w = binom * std::pow(eta, t) * std::pow(1.0 - eta, n - t);
            psi.at(n, t) = chi_n * std::sqrt(w);
            binom = binom * (n - t) / (t + 1);
        }
        chi_n *= chi;
    }
    return psi;
}

ThreeModeVector make_lossy_epr(const LossyEprParams &params, int n_max) {
    ThreeModeVector psi = lossy_epr_coefficients(params.chi, params.eta, n_max);
    const double norm = std::sqrt(1.0 - params.chi * params.chi);
    for (int n = 0; n <= n_max; ++n) {
        for (int t = 0; t <= n; ++t) {
            psi.at(n, t) *= norm;
        }
    }
    return psi;
}

TransformedParams transform_params(const LossyEprParams &params, double g) {
    if (!(g >= 1.0)) {
        throw std::invalid_argument("transform_params: gain must be >= 1");
    }
    const double f = std::sqrt(1.0 - params.eta + params.eta * g * g);
    return {f * params.chi, std::min(1.0, g * g * params.eta / (f * f)), f};
}

double chi_for_target(double chi_prime, double eta, double g) {
    if (!(chi_prime >= 0.0 && chi_prime < 1.0) || !(g >= 1.0) || !(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("chi_for_target: need 0 <= chi' < 1, eta in [0, 1], g >= 1");
    }
    const double chi = chi_prime / std::sqrt(1.0 - eta + eta * g * g);
    if (chi >= 1.0) {
        throw NumericalError("chi_for_target: target chi'=" + std::to_string(chi_prime) +
                             " unreachable at eta=" + std::to_string(eta) +
                             ", g=" + std::to_string(g));
    }
    return chi;
}

double epr_criterion(double chi, double eta) {
    const double v = 1.0 - 2.0 * chi * chi * eta / (1.0 + chi * chi);
    return v * v;
}

int series_terms(double chi_prime) {
    if (!(chi_prime >= 0.0 && chi_prime < 1.0)) {
        throw NumericalError("series_terms: chi'=" + std::to_string(chi_prime) +
                             " >= 1, series diverges");
    }
    if (chi_prime == 0.0) {
        return 0;
    }
    const double c2 = chi_prime * chi_prime;
    int n = static_cast<int>(std::ceil(std::log(1e-15 * (1.0 - c2)) / std::log(c2)));
    while (std::pow(c2, n) >= 1e-15 * (1.0 - c2)) {
        ++n;
    }
    return n;
}

namespace {

struct Prepared {
    double chi;
    double eta;
    double g;
    int cutoff;
    TransformedParams out;
    int last;  // inclusive upper index of the correction series
};

Prepared prepare(double chi, double eta, const AmplifierSpec &spec, std::optional<int> n_terms) {
    LossyEprParams params(chi, eta);
    TransformedParams out = transform_params(params, spec.gain);
    if (out.chi_prime >= 1.0) {
        throw NumericalError("EPR amplification diverges: chi' = f chi = " +
                             std::to_string(out.chi_prime) + " >= 1");
    }
    int last = n_terms ? *n_terms : series_terms(out.chi_prime);
    last = std::max(last, spec.cutoff + 1);
    return {chi, eta, spec.gain, spec.cutoff, out, last};
}

}  // namespace

double prob_epr(double chi, double eta, const AmplifierSpec &spec, std::optional<int> n_terms) {
    const Prepared p = prepare(chi, eta, spec, n_terms);
    const double cp2 = p.out.chi_prime * p.out.chi_prime;
    const double g2n = std::pow(p.g, -2.0 * p.cutoff);
    CompensatedSum series;
    for (int n = p.cutoff + 1; n <= p.last; ++n) {
        const int a = p.cutoff + 1;
        const int b = n - p.cutoff;
        series += std::pow(p.chi, 2 * n) * reg_beta_i(p.eta, a, b);
        series -= g2n * std::pow(cp2, n) * reg_beta_i(p.out.eta_prime, a, b);
    }
    const double total = (1.0 - p.chi * p.chi) * (g2n / (1.0 - cp2) + series.value());
    return std::clamp(total, 0.0, 1.0);
}

double epr_overlap(double chi, double eta, const AmplifierSpec &spec, std::optional<int> n_terms) {
    const Prepared p = prepare(chi, eta, spec, n_terms);
    const double f = p.out.f;
    const double cc = p.chi * p.out.chi_prime;
    const double gn = std::pow(p.g, -static_cast<double>(p.cutoff));
    // eta1 = sqrt(eta eta') + sqrt((1-eta)(1-eta')), eta2 = g sqrt(eta eta') + ... = f.
    const double root = p.g * p.eta / f;  // sqrt(eta eta')
    const double eta1 = (1.0 - p.eta + p.g * p.eta) / f;
    const double eta2 = f;
    const double x1 = std::clamp(root / eta1, 0.0, 1.0);
    const double x2 = std::clamp(p.g * root / eta2, 0.0, 1.0);
    CompensatedSum series;
    for (int n = p.cutoff + 1; n <= p.last; ++n) {
        const int a = p.cutoff + 1;
        const int b = n - p.cutoff;
        series += std::pow(cc * eta1, n) * reg_beta_i(x1, a, b);
        series -= gn * std::pow(cc * eta2, n) * reg_beta_i(x2, a, b);
    }
    const double norm = std::sqrt((1.0 - p.chi * p.chi) *
                                  (1.0 - p.out.chi_prime * p.out.chi_prime));
    return norm * (gn / (1.0 - eta2 * cc) + series.value());
}

double fidelity_epr_lower_bound(double chi, double eta, const AmplifierSpec &spec,
                                std::optional<int> n_terms) {
    const double amp = epr_overlap(chi, eta, spec, n_terms);
    return amp * amp / prob_epr(chi, eta, spec, n_terms);
}

EprResult evaluate_epr(double chi, double eta, const AmplifierSpec &spec) {
    TransformedParams out = transform_params(LossyEprParams(chi, eta), spec.gain);
    double p = prob_epr(chi, eta, spec);
    double amp = epr_overlap(chi, eta, spec);
    return {chi, p, amp * amp / p, epr_criterion(out.chi_prime, out.eta_prime), out};
}

EprResult evaluate_epr_for_target(double chi_prime, double eta, const AmplifierSpec &spec) {
    return evaluate_epr(chi_for_target(chi_prime, eta, spec.gain), eta, spec);
}

EprAsymptotics asymptotics(double chi_prime, const AmplifierSpec &spec) {
    if (!(chi_prime >= 0.0 && chi_prime < 1.0)) {
        throw std::invalid_argument("asymptotics: chi' must lie in [0, 1)");
    }
    const double c2 = chi_prime * chi_prime;
    const double floor_term = std::pow(c2, spec.cutoff + 1);
    return {std::pow(spec.gain, -2.0 * spec.cutoff) * (1.0 - floor_term) / (1.0 - c2),
            1.0 - floor_term};
}

CutoffBound max_cutoff(double f_min, double chi_prime) {
    if (!(f_min > 0.0 && f_min < 1.0) || !(chi_prime >= 0.0 && chi_prime < 1.0)) {
        throw std::invalid_argument("max_cutoff: need 0 < f_min < 1 and 0 <= chi' < 1");
    }
    if (chi_prime == 0.0) {
        return {kMaxCutoffCap, true, false};
    }
    const double bound = std::log(1.0 - f_min) / (2.0 * std::log(chi_prime)) - 1.0;
    if (bound < 0.0) {
        return {0, false, true};
    }
    if (bound >= kMaxCutoffCap) {
        return {kMaxCutoffCap, true, false};
    }
    return {static_cast<int>(std::floor(bound)), false, false};
}

}  // namespace nla
