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
#include <span>
#include <string>
#include <vector>

namespace nla {

struct ConstraintSet {
    ConstraintSet(double f_min, double p_min, double chi_prime, double eta);

    double f_min;
    double p_min;
    double chi_prime;  // target output squeezing
    double eta;
};

enum class Binding { kFidelity, kProbability, kGainCap, kNone };

std::string to_string(Binding b);

inline constexpr double kGainCap = 1e4;
inline constexpr double kGainTolerance = 1e-9;

struct GainSearch {
    double g;
    Binding binding;
};

/// Fidelity lower bound and probability at gain g for cutoff n, with the input
/// squeezing chosen so the output lands on constraints.chi_prime.
struct OperatingPoint {
    double chi_in;
    double fidelity;
    double probability;
};

OperatingPoint operating_point(int n, double g, const ConstraintSet &constraints);

bool feasible(const OperatingPoint &op, const ConstraintSet &constraints);

/// Largest g in [1, kGainCap] meeting both constraints at cutoff n, by
/// bisection to kGainTolerance. Returns the feasible end of the final bracket.
GainSearch max_feasible_gain(int n, const ConstraintSet &constraints);

struct OptimizationResult {
    int n_star;
    double g_star;
    double chi_in;
    double epsilon;
    double fidelity;
    double probability;
    Binding binding;
};

/// Minimizes the EPR criterion of the (chi', eta'(g)) output over N in
/// [1, max_cutoff + 2] and the feasible gain at each N.
OptimizationResult optimize_epr(const ConstraintSet &constraints);

struct EtaSweepPoint {
    double eta;
    std::optional<OptimizationResult> result;
    std::string error;
    double eps_no_amplification;   // criterion of (chi', eta)
    double eps_infinite_squeezing; // (1 - eta)^2
};

/// optimize_epr at each eta of the grid (ascending, within (0, 1]).
/// Failures are recorded per point.
std::vector<EtaSweepPoint> sweep_eta(double f_min, double p_min, double chi_prime,
                                     std::span<const double> eta_grid, int jobs = 1);

struct GridScanResult {
    int n_best;
    double g_grid;          // best feasible grid point
    double epsilon_grid;
    double g_refined;       // grid bracket refined by bisection
    double epsilon_refined;
    bool reentry;           // a feasible point was found past the first infeasible one
    bool walk_capped;       // still feasible at g_walk_max
};

/// Exhaustive scan over N = 1..n_last and g = 1, 1 + g_step, ... up to the
/// first infeasible point (then `margin` further to detect re-entry). The
/// last feasible bracket of the best N is refined to kGainTolerance.
GridScanResult grid_scan_epr(const ConstraintSet &constraints, int n_last, double g_step = 1e-3,
                             double margin = 1.0, double g_walk_max = 200.0);

}  // namespace nla
