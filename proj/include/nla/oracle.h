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

#include "nla/fock.h"

namespace nla {

// Brute-force evaluation by explicit truncated Fock-basis summation. Nothing
// here touches the special-function closed forms; the results are the ground
// truth those closed forms are checked against.

struct OracleConfig {
    int n_max;
    double tail_bound;  // analytic upper bound on the neglected contribution
};

/// n_max of at least `min_n_max` with a Poisson-tail bound for the coherent
/// probability and overlap sums.
OracleConfig coherent_oracle_config(double alpha_mag, double g, int min_n_max,
                                    double max_tail = 1e-13);

/// n_max of at least `min_n_max` with a geometric-tail bound in chi'^2.
OracleConfig epr_oracle_config(double chi_prime, int min_n_max, double max_tail = 1e-13);

struct OracleValues {
    double p;
    double f;
};

/// Sums ||M_S alpha||^2 and |<g alpha|M_S|alpha>|^2 / P term by term.
/// Throws NumericalError if cfg.tail_bound exceeds 1e-13.
OracleValues oracle_coherent(double alpha_mag, const AmplifierSpec &spec, const OracleConfig &cfg);

/// Builds |EPR_l(chi, eta)> and |EPR_l(chi', eta')> explicitly, weights mode 2
/// by min(g^{t-N}, 1) and returns (norm^2, |overlap|^2 / norm^2).
OracleValues oracle_epr(double chi, double eta, const AmplifierSpec &spec, const OracleConfig &cfg);

/// Fidelity between the g^t-weighted (chi, eta) coefficients and the
/// (chi', eta') coefficients, both truncated at n_max and normalized.
double oracle_transform_fidelity(double chi, double eta, double g, int n_max);

}  // namespace nla
