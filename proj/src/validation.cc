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

#include "nla/validation.h"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>

#include "nla/coherent.h"
#include "nla/epr.h"
#include "nla/fock.h"
#include "nla/oracle.h"
#include "nla/parallel.h"

namespace nla {

namespace {

struct Grids {
    std::vector<double> op_gains;
    std::vector<int> op_cutoffs;
    std::vector<double> alphas;
    std::vector<double> coherent_gains;
    std::vector<int> coherent_cutoffs;
    std::vector<double> chi_primes;
    std::vector<double> etas;
    std::vector<double> epr_gains;
    std::vector<int> epr_cutoffs;
};

Grids make_grids(ValidationGrid grid) {
    if (grid == ValidationGrid::kSmall) {
        return {{1.0, 2.0}, {0, 1, 3}, {0.1, 0.8}, {1.0, 2.0, 4.0}, {1, 3},
                {0.5}, {0.3, 1.0}, {1.0, 2.5}, {1, 2}};
    }
    return {{1.0, 1.5, 2.0, 3.0},
            {0, 1, 2, 3},
            {0.1, 0.3, 0.8, 1.5},
            {1.0, 1.5, 2.0, 3.0, 4.0},
            {1, 2, 3, 4, 5},
            {0.3, 0.5, 0.8},
            {0.1, 0.3, 0.7, 1.0},
            {1.0, 1.5, 2.5, 4.0},
            {1, 2, 3, 4}};
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

CheckResult timed(const std::string &name, double tol, const std::function<std::pair<double, int>()> &body) {
    auto start = std::chrono::steady_clock::now();
    auto [err, cases] = body();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {name, err, tol, err <= tol, cases, secs};
}

}  // namespace

std::vector<CheckResult> run_validation(ValidationGrid grid, std::optional<double> tol_override,
                                        int jobs) {
    const Grids g = make_grids(grid);
    auto tol = [&](double t) { return tol_override.value_or(t); };
    constexpr int kOpNMax = 20;
    std::vector<CheckResult> out;

    out.push_back(timed("completeness", tol(1e-12), [&] {
        double worst = 0.0;
        int cases = 0;
        for (double gain : g.op_gains) {
            for (int n : g.op_cutoffs) {
                AmplifierSpec spec(gain, n);
                auto ms = make_ms(spec, kOpNMax);
                auto mf = make_mf(spec, kOpNMax);
                for (size_t i = 0; i < ms.entries.size(); ++i) {
                    worst = std::max(worst, std::abs(ms.entries[i] * ms.entries[i] +
                                                     mf.entries[i] * mf.entries[i] - 1.0));
                }
                ++cases;
            }
        }
        return std::pair{worst, cases};
    }));

    out.push_back(timed("unitarity", tol(1e-12), [&] {
        double worst = 0.0;
        int cases = 0;
        for (double gain : g.op_gains) {
            for (int n : g.op_cutoffs) {
                Eigen::MatrixXd u = build_joint_unitary(AmplifierSpec(gain, n), kOpNMax).dense();
                Eigen::MatrixXd d = u.transpose() * u - Eigen::MatrixXd::Identity(u.rows(), u.cols());
                worst = std::max(worst, d.cwiseAbs().maxCoeff());
                ++cases;
            }
        }
        return std::pair{worst, cases};
    }));

    out.push_back(timed("n1_decomposition", tol(1e-12), [&] {
        double worst = 0.0;
        for (double gain : {1.0, 2.0, 10.0}) {
            worst = std::max(worst, verify_n1_decomposition(gain));
        }
        return std::pair{worst, 3};
    }));

    out.push_back(timed("hamiltonian_generation", tol(1e-12), [&] {
        double worst = 0.0;
        int cases = 0;
        for (double gain : g.op_gains) {
            for (int n : g.op_cutoffs) {
                AmplifierSpec spec(gain, n);
                auto u = build_joint_unitary(spec, kOpNMax);
                auto theta = hamiltonian_phase(spec, kOpNMax);
                for (size_t k = 0; k < theta.size(); ++k) {
                    worst = std::max(worst,
                                     (rotation_from_phase(theta[k]) - u.blocks[k]).cwiseAbs().maxCoeff());
                }
                ++cases;
            }
        }
        return std::pair{worst, cases};
    }));

    out.push_back(timed("coherent_closed_form_vs_oracle", tol(1e-9), [&] {
        std::vector<std::array<double, 3>> pts;
        for (double a : g.alphas)
            for (double gain : g.coherent_gains)
                for (int n : g.coherent_cutoffs) pts.push_back({a, gain, double(n)});
        std::vector<double> errs(pts.size());
        parallel_for(pts.size(), jobs, [&](size_t i) {
            AmplifierSpec spec(pts[i][1], static_cast<int>(pts[i][2]));
            auto cfg = coherent_oracle_config(pts[i][0], spec.gain, 60);
            auto ref = oracle_coherent(pts[i][0], spec, cfg);
            errs[i] = std::max(rel_err(prob_coherent(pts[i][0], spec), ref.p),
                               rel_err(fidelity_coherent(pts[i][0], spec), ref.f));
        });
        return std::pair{*std::max_element(errs.begin(), errs.end()), int(pts.size())};
    }));

    out.push_back(timed("epr_transform_identity", tol(1e-10), [&] {
        double worst = 0.0;
        int cases = 0;
        for (double chi : {0.2, 0.5})
            for (double eta : {0.25, 0.7})
                for (double gain : {1.5, 2.5}) {
                    worst = std::max(worst, 1.0 - oracle_transform_fidelity(chi, eta, gain, 60));
                    ++cases;
                }
        return std::pair{worst, cases};
    }));

    std::vector<std::array<double, 4>> epr_pts;
    for (double cp : g.chi_primes)
        for (double eta : g.etas)
            for (double gain : g.epr_gains)
                for (int n : g.epr_cutoffs) epr_pts.push_back({cp, eta, gain, double(n)});

    std::vector<double> epr_errs(epr_pts.size()), floor_gaps(epr_pts.size());
    auto epr_check = timed("epr_closed_form_vs_oracle", tol(1e-8), [&] {
        parallel_for(epr_pts.size(), jobs, [&](size_t i) {
            auto [cp, eta, gain, nd] = epr_pts[i];
            AmplifierSpec spec(gain, static_cast<int>(nd));
            double chi = chi_for_target(cp, eta, gain);
            auto ref = oracle_epr(chi, eta, spec, epr_oracle_config(cp, 80));
            double p = prob_epr(chi, eta, spec);
            double amp = epr_overlap(chi, eta, spec);
            epr_errs[i] = std::max(rel_err(p, ref.p), rel_err(amp * amp, ref.f * ref.p));
            floor_gaps[i] = (1.0 - std::pow(cp, 2 * nd + 2)) - amp * amp / p;
        });
        return std::pair{*std::max_element(epr_errs.begin(), epr_errs.end()), int(epr_pts.size())};
    });
    out.push_back(epr_check);

    // Violation beyond 1e-9 below the asymptotic floor counts as error.
    double worst_gap = *std::max_element(floor_gaps.begin(), floor_gaps.end());
    out.push_back({"epr_fidelity_floor", std::max(0.0, worst_gap), tol(1e-9),
                   worst_gap <= tol(1e-9), int(epr_pts.size()), 0.0});
    return out;
}

}  // namespace nla
