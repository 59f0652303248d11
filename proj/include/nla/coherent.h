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

#include <span>
#include <vector>

#include "nla/fock.h"

namespace nla {

struct CoherentResult {
    double g;
    int n_used;
    double alpha_mag;
    double p_success;
    double fidelity;
};

/// Success probability for a coherent input |alpha>:
///   P(N+1, |a|^2) + g^{-2N} e^{(g^2-1)|a|^2} Q(N+1, g^2 |a|^2).
double prob_coherent(double alpha_mag, const AmplifierSpec &spec);

/// Fidelity of the heralded output with the normalized target |g alpha>.
double fidelity_coherent(double alpha_mag, const AmplifierSpec &spec);

CoherentResult evaluate_coherent(double alpha_mag, const AmplifierSpec &spec);

inline constexpr int kMaxCoherentCutoff = 200;

/// Smallest N >= 1 reaching fidelity >= f_min. Throws NumericalError when no
/// N <= kMaxCoherentCutoff qualifies.
int min_cutoff_for_fidelity(double alpha_mag, double g, double f_min);

/// Per gain point: the minimal cutoff and the resulting (P, F). Points are
/// evaluated on up to `jobs` threads; output order follows g_grid.
std::vector<CoherentResult> sweep_coherent(double alpha_mag, std::span<const double> g_grid,
                                           double f_min, int jobs = 1);

}  // namespace nla
