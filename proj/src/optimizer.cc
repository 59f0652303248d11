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

#include "nla/optimizer.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nla/epr.h"
#include "nla/fock.h"
#include "nla/parallel.h"

namespace nla {

ConstraintSet::ConstraintSet(double f_min, double p_min, double chi_prime, double eta)
    : f_min(f_min), p_min(p_min), chi_prime(chi_prime), eta(eta) {
    if (!(f_min > 0.0 && f_min < 1.0)) {
        throw std::invalid_argument("ConstraintSet: f_min must lie in (0, 1)");
    }
    if (!(p_min > 0.0 && p_min <= 1.0)) {
        throw std::invalid_argument("ConstraintSet: p_min must lie in (0, 1]");
    }
    if (!(chi_prime > 0.0 && chi_prime < 1.0)) {
        throw std::invalid_argument("ConstraintSet: chi' must lie in (0, 1)");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("ConstraintSet: eta must lie in [0, 1]");
    }
}

std::string to_string(Binding b) {
    switch (b) {
        case Binding::kFidelity:
            return "FIDELITY";
        case Binding::kProbability:
            return "PROBABILITY";
        case Binding::kGainCap:
            return "GAIN_CAP";
        case Binding::kNone:
            return "NONE";
    }
    return "NONE";
}

OperatingPoint operating_point(int n, double g, const ConstraintSet &c) {
    AmplifierSpec spec(g, n);
    double chi = chi_for_target(c.chi_prime, c.eta, g);
    double p = prob_epr(chi, c.eta, spec);
    double amp = epr_overlap(chi, c.eta, spec);
    return {chi, amp * amp / p, p};
}

bool feasible(const OperatingPoint &op, const ConstraintSet &c) {
    return op.fidelity >= c.f_min && op.probability >= c.p_min;
}

GainSearch max_feasible_gain(int n, const ConstraintSet &c) {
    if (n < 1) {
        throw std::invalid_argument("max_feasible_gain: cutoff must be >= 1");
    }
    // g = 1 is the identity: F = P = 1 meets any constraint set.
    if (feasible(operating_point(n, kGainCap, c), c)) {
        return {kGainCap, Binding::kGainCap};
    }
    double lo = 1.0;
    double hi = kGainCap;
    OperatingPoint at_hi = operating_point(n, hi, c);
    while (hi - lo > kGainTolerance) {
        double mid = 0.5 * (lo + hi);
        OperatingPoint op = operating_point(n, mid, c);
        if (feasible(op, c)) {
            lo = mid;
        } else {
            hi = mid;
            at_hi = op;
        }
    }
    const bool f_fails = at_hi.fidelity < c.f_min;
    const bool p_fails = at_hi.probability < c.p_min;
    Binding binding;
    if (f_fails && !p_fails) {
        binding = Binding::kFidelity;
    } else if (p_fails && !f_fails) {
        binding = Binding::kProbability;
    } else {
        OperatingPoint at_lo = operating_point(n, lo, c);
        binding = std::abs(at_lo.fidelity - c.f_min) <= std::abs(at_lo.probability - c.p_min)
                      ? Binding::kFidelity
                      : Binding::kProbability;
    }
    return {lo, binding};
}

OptimizationResult optimize_epr(const ConstraintSet &c) {
    CutoffBound bound = max_cutoff(c.f_min, c.chi_prime);
    // The bound uses the g -> infinity fidelity floor; finite gains sit above
    // it, so a couple of larger cutoffs can still be feasible.
    const int n_last = std::max(bound.n, 0) + 2;
    std::optional<OptimizationResult> best;
    for (int n = 1; n <= n_last; ++n) {
        GainSearch s = max_feasible_gain(n, c);
        TransformedParams out =
            transform_params(LossyEprParams(chi_for_target(c.chi_prime, c.eta, s.g), c.eta), s.g);
        double eps = epr_criterion(c.chi_prime, out.eta_prime);
        if (!best || eps < best->epsilon) {
            OperatingPoint op = operating_point(n, s.g, c);
            best = OptimizationResult{n, s.g, op.chi_in, eps, op.fidelity, op.probability, s.binding};
        }
    }
    return *best;
}

std::vector<EtaSweepPoint> sweep_eta(double f_min, double p_min, double chi_prime,
                                     std::span<const double> eta_grid, int jobs) {
    for (size_t i = 0; i < eta_grid.size(); ++i) {
        if (!(eta_grid[i] > 0.0 && eta_grid[i] <= 1.0) || (i > 0 && eta_grid[i] < eta_grid[i - 1])) {
            throw std::invalid_argument("sweep_eta: eta grid must be ascending within (0, 1]");
        }
    }
    std::vector<EtaSweepPoint> out(eta_grid.size());
    parallel_for(eta_grid.size(), jobs, [&](size_t i) {
        const double eta = eta_grid[i];
        EtaSweepPoint &pt = out[i];
        pt.eta = eta;
        pt.eps_no_amplification = epr_criterion(chi_prime, eta);
        pt.eps_infinite_squeezing = (1.0 - eta) * (1.0 - eta);
        try {
            pt.result = optimize_epr(ConstraintSet(f_min, p_min, chi_prime, eta));
        } catch (const std::exception &e) {
            pt.error = e.what();
        }
    });
    return out;
}

GridScanResult grid_scan_epr(const ConstraintSet &c, int n_last, double g_step, double margin,
                             double g_walk_max) {
    if (n_last < 1 || !(g_step > 0.0)) {
        throw std::invalid_argument("grid_scan_epr: need n_last >= 1 and g_step > 0");
    }
    auto eps_at = [&](double g) {
        double chi = chi_for_target(c.chi_prime, c.eta, g);
        return epr_criterion(c.chi_prime, transform_params(LossyEprParams(chi, c.eta), g).eta_prime);
    };
    GridScanResult best{};
    best.epsilon_grid = std::numeric_limits<double>::infinity();
    bool any_reentry = false;
    bool any_capped = false;
    for (int n = 1; n <= n_last; ++n) {
        double last_ok = 1.0;
        double first_bad = 0.0;
        double best_eps = std::numeric_limits<double>::infinity();
        double best_g = 1.0;
        bool reentry = false;
        bool capped = false;
        for (long k = 0;; ++k) {
            const double g = 1.0 + static_cast<double>(k) * g_step;
            if (g > g_walk_max) {
                capped = first_bad == 0.0;
                break;
            }
            if (first_bad > 0.0 && g > first_bad + margin) {
                break;
            }
            if (feasible(operating_point(n, g, c), c)) {
                if (first_bad > 0.0) {
                    reentry = true;
                    first_bad = 0.0;
                }
                last_ok = g;
                double e = eps_at(g);
                if (e < best_eps) {
                    best_eps = e;
                    best_g = g;
                }
            } else if (first_bad == 0.0) {
                first_bad = g;
            }
        }
        if (best_eps < best.epsilon_grid) {
            double lo = last_ok;
            double hi = first_bad > 0.0 ? first_bad : last_ok;
            while (hi - lo > kGainTolerance) {
                double mid = 0.5 * (lo + hi);
                (feasible(operating_point(n, mid, c), c) ? lo : hi) = mid;
            }
            best = {n, best_g, best_eps, lo, std::min(best_eps, eps_at(lo)), false, false};
        }
        any_reentry = any_reentry || reentry;
        any_capped = any_capped || capped;
    }
    best.reentry = any_reentry;
    best.walk_capped = any_capped;
    return best;
}

}  // namespace nla
