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

#include "nla/fock.h"

namespace nla {

/// Squeezing chi in [0, 1) and one-sided transmission eta in [0, 1].
struct LossyEprParams {
    LossyEprParams(double chi, double eta);

    double chi;
    double eta;
};

/// Parameters of the lossy EPR state produced by ideal amplification.
struct TransformedParams {
    double chi_prime;
    double eta_prime;
    double f;  // sqrt(1 - eta + eta g^2)
};

/// Unnormalized coefficients chi^n sqrt(C(n,t) eta^t (1-eta)^{n-t}) on
/// |n, t, n-t>. Accepts any chi >= 0, including values where the infinite
/// state would not be normalizable.
ThreeModeVector lossy_epr_coefficients(double chi, double eta, int n_max);

/// sqrt(1-chi^2) * lossy_epr_coefficients(chi, eta, n_max). Mode 1 is the
/// lossless arm, mode 2 the transmitted arm, mode 3 the loss mode.
ThreeModeVector make_lossy_epr(const LossyEprParams &params, int n_max);

TransformedParams transform_params(const LossyEprParams &params, double g);

/// Input squeezing that lands on chi_prime after gain g. Throws
/// NumericalError if the required chi is >= 1.
double chi_for_target(double chi_prime, double eta, double g);

/// (1 - 2 chi^2 eta / (1 + chi^2))^2.
double epr_criterion(double chi, double eta);
inline double epr_criterion(const LossyEprParams &p) { return epr_criterion(p.chi, p.eta); }

/// Number of series terms: the first n with chi'^{2n} < 1e-15 (1 - chi'^2).
int series_terms(double chi_prime);

/// Heralding probability for the amplifier acting on the transmitted arm.
/// `n_terms` overrides series_terms(chi'). Throws NumericalError when
/// chi' = f chi >= 1.
double prob_epr(double chi, double eta, const AmplifierSpec &spec,
                std::optional<int> n_terms = std::nullopt);

/// sqrt(F P) = <EPR'(chi', eta')| M_S |EPR(chi, eta)>, the purified overlap.
double epr_overlap(double chi, double eta, const AmplifierSpec &spec,
                   std::optional<int> n_terms = std::nullopt);

/// Fidelity lower bound overlap^2 / P.
double fidelity_epr_lower_bound(double chi, double eta, const AmplifierSpec &spec,
                                std::optional<int> n_terms = std::nullopt);

struct EprResult {
    double chi_in;
    double p_success;
    double fidelity_lower_bound;
    double epsilon_epr;  // criterion of the target (chi', eta') state
    TransformedParams params_out;
};

EprResult evaluate_epr(double chi, double eta, const AmplifierSpec &spec);

/// Evaluates at the input chi that reaches `chi_prime` for this gain.
EprResult evaluate_epr_for_target(double chi_prime, double eta, const AmplifierSpec &spec);

struct EprAsymptotics {
    double p_leading;  // g^{-2N} (1 - chi'^{2N+2}) / (1 - chi'^2)
    double f_limit;    // 1 - chi'^{2N+2}
};

EprAsymptotics asymptotics(double chi_prime, const AmplifierSpec &spec);

inline constexpr int kMaxCutoffCap = 200;

struct CutoffBound {
    int n;
    bool capped;     // bound diverged or exceeded kMaxCutoffCap
    bool violated;   // even N = 0 misses f_min; n is 0
};

/// floor(log(1 - f_min) / (2 log chi') - 1).
CutoffBound max_cutoff(double f_min, double chi_prime);

}  // namespace nla
