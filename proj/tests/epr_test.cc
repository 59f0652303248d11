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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nla/errors.h"
#include "nla/oracle.h"

using namespace nla;

TEST(LossyEpr, construction) {
    auto vac = make_lossy_epr(LossyEprParams(0.0, 0.4), 5);
    EXPECT_EQ(vac.at(0, 0), Complex(1.0));
    EXPECT_NEAR(vac.norm_sq(), 1.0, 1e-15);

    auto pure = make_lossy_epr(LossyEprParams(0.5, 1.0), 20);
    for (int n = 0; n <= 20; ++n) {
        for (int t = 0; t <= n; ++t) {
            double expected = t == n ? std::sqrt(0.75) * std::pow(0.5, n) : 0.0;
            EXPECT_NEAR(pure.at(n, t).real(), expected, 1e-16);
        }
    }

    auto lossy = make_lossy_epr(LossyEprParams(0.5, 0.3), 40);
    EXPECT_NEAR(lossy.norm_sq(), 1.0 - std::pow(0.5, 82), 1e-12);
    auto short_state = make_lossy_epr(LossyEprParams(0.5, 0.3), 4);
    EXPECT_NEAR(short_state.norm_sq(), 1.0 - std::pow(0.5, 10), 1e-12);

    EXPECT_THROW(LossyEprParams(1.0, 0.5), std::invalid_argument);
    EXPECT_THROW(LossyEprParams(0.5, 1.5), std::invalid_argument);
}

TEST(TransformParams, examples) {
    auto id = transform_params(LossyEprParams(0.3, 0.6), 1.0);
    EXPECT_EQ(id.f, 1.0);
    EXPECT_EQ(id.chi_prime, 0.3);
    EXPECT_NEAR(id.eta_prime, 0.6, 1e-16);

    auto t = transform_params(LossyEprParams(0.2, 0.25), 2.0);
    EXPECT_NEAR(t.f, std::sqrt(1.75), 1e-15);
    EXPECT_NEAR(t.chi_prime, 0.264575131106459, 1e-12);
    EXPECT_NEAR(t.eta_prime, 0.571428571428571, 1e-12);

    auto pure = transform_params(LossyEprParams(0.2, 1.0), 3.0);
    EXPECT_NEAR(pure.chi_prime, 0.6, 1e-15);
    EXPECT_EQ(pure.eta_prime, 1.0);
}

TEST(TransformParams, invariants_random) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u;
    for (int i = 0; i < 1000; ++i) {
        double chi = 0.99 * u(rng);
        double eta = u(rng);
        double g = 1.0 + 9.0 * u(rng);
        auto t = transform_params(LossyEprParams(chi, eta), g);
        EXPECT_GE(t.f, 1.0);
        EXPECT_GE(t.eta_prime, eta - 1e-15);
        EXPECT_LE(t.eta_prime, 1.0);
        EXPECT_GE(t.chi_prime, chi);
        if (t.chi_prime < 1.0) {
            double back = chi_for_target(t.chi_prime, eta, g);
            EXPECT_NEAR(back, chi, 1e-12);
            EXPECT_NEAR(transform_params(LossyEprParams(back, eta), g).chi_prime, t.chi_prime, 1e-12);
        }
    }
}

TEST(ChiForTarget, examples) {
    EXPECT_EQ(chi_for_target(0.4, 0.3, 1.0), 0.4);
    EXPECT_NEAR(chi_for_target(0.5, 0.25, 2.0), 0.377964473009227, 1e-12);
    EXPECT_NEAR(chi_for_target(0.5, 1.0, 3.0), 0.5 / 3.0, 1e-15);
    EXPECT_THROW(chi_for_target(1.0, 0.5, 2.0), std::invalid_argument);
}

TEST(EprCriterion, examples) {
    EXPECT_EQ(epr_criterion(0.0, 0.7), 1.0);
    EXPECT_NEAR(epr_criterion(1.0 - 1e-12, 0.25), 0.5625, 1e-10);
    EXPECT_NEAR(epr_criterion(LossyEprParams(0.5, 0.25)), 0.81, 1e-15);
}

TEST(EprCriterion, amplified_crossing_of_infinite_squeezing_line) {
    // chi' = 0.5, eta = 0.25: criterion (1 - 0.4 eta')^2 meets (1 - eta)^2 at
    // eta' = 0.625, i.e. g^2 = 5.
    const double g = std::sqrt(5.0);
    auto t = transform_params(LossyEprParams(chi_for_target(0.5, 0.25, g), 0.25), g);
    EXPECT_NEAR(t.eta_prime, 0.625, 1e-15);
    EXPECT_NEAR(epr_criterion(0.5, t.eta_prime), 0.5625, 1e-15);
}

TEST(SeriesTerms, rule) {
    for (double cp : {0.1, 0.5, 0.8, 0.95}) {
        int n = series_terms(cp);
        double c2 = cp * cp;
        EXPECT_LT(std::pow(c2, n), 1e-15 * (1 - c2));
        EXPECT_GE(std::pow(c2, n - 1), 1e-15 * (1 - c2));
    }
    EXPECT_EQ(series_terms(0.0), 0);
    EXPECT_THROW(series_terms(1.0), NumericalError);
}

TEST(ProbEpr, examples) {
    for (double eta : {0.0, 0.3, 1.0}) {
        EXPECT_NEAR(prob_epr(0.4, eta, AmplifierSpec(1.0, 2)), 1.0, 1e-14);
    }
    // eta = 0: the amplified arm is vacuum, weighted by g^{-N}.
    for (int n : {1, 3}) {
        AmplifierSpec spec(2.0, n);
        EXPECT_NEAR(prob_epr(0.6, 0.0, spec), std::pow(2.0, -2 * n), 1e-15);
        auto ref = oracle_epr(0.6, 0.0, spec, epr_oracle_config(0.6, 80));
        EXPECT_NEAR(ref.p, std::pow(2.0, -2 * n), 1e-14);
    }
    double chi = chi_for_target(0.5, 0.3, 2.0);
    EXPECT_NEAR(prob_epr(chi, 0.3, AmplifierSpec(2.0, 2)), 0.072069943289224953, 1e-14);
    EXPECT_NEAR(prob_epr(chi, 0.3, AmplifierSpec(2.0, 1)), 0.28260869565217391, 1e-14);
}

TEST(ProbEpr, pure_state_reduces_to_two_mode_sum) {
    AmplifierSpec spec(1.7, 2);
    double chi = 0.4;
    double sum = 0.0;
    for (int n = 0; n < 400; ++n) {
        double w = std::min(std::pow(1.7, n - 2), 1.0);
        sum += w * w * std::pow(chi, 2 * n);
    }
    EXPECT_NEAR(prob_epr(chi, 1.0, spec), (1 - chi * chi) * sum, 1e-14);
}

TEST(ProbEpr, divergence) {
    EXPECT_THROW(prob_epr(0.6, 1.0, AmplifierSpec(2.0, 1)), NumericalError);
    EXPECT_THROW(fidelity_epr_lower_bound(0.6, 1.0, AmplifierSpec(2.0, 1)), NumericalError);
    EXPECT_THROW(oracle_epr(0.6, 1.0, AmplifierSpec(2.0, 1), OracleConfig{80, 0.0}), NumericalError);
}

TEST(FidelityEpr, examples) {
    EXPECT_NEAR(fidelity_epr_lower_bound(0.4, 0.3, AmplifierSpec(1.0, 1)), 1.0, 1e-14);
    double chi = chi_for_target(0.5, 0.3, 100.0);
    EXPECT_NEAR(fidelity_epr_lower_bound(chi, 0.3, AmplifierSpec(100.0, 1)), 0.9375, 1e-2);
    chi = chi_for_target(0.5, 0.3, 2.0);
    EXPECT_NEAR(fidelity_epr_lower_bound(chi, 0.3, AmplifierSpec(2.0, 3)), 0.99971540776873492, 1e-13);
    EXPECT_NEAR(fidelity_epr_lower_bound(chi, 0.3, AmplifierSpec(2.0, 1)), 0.99064151859182915, 1e-13);
}

TEST(EprClosedForms, match_oracle_grid) {
    for (double cp : {0.3, 0.5, 0.8}) {
        for (double eta : {0.1, 0.3, 0.7, 1.0}) {
            for (double g : {1.0, 1.5, 2.5, 4.0}) {
                for (int n = 1; n <= 4; ++n) {
                    AmplifierSpec spec(g, n);
                    double chi = chi_for_target(cp, eta, g);
                    auto ref = oracle_epr(chi, eta, spec, epr_oracle_config(cp, 80));
                    double p = prob_epr(chi, eta, spec);
                    double amp = epr_overlap(chi, eta, spec);
                    EXPECT_NEAR(p, ref.p, 1e-8 * ref.p);
                    EXPECT_NEAR(amp * amp, ref.f * ref.p, 1e-8 * ref.f * ref.p);
                    double fl = amp * amp / p;
                    EXPECT_GE(fl, 1.0 - std::pow(cp, 2 * n + 2) - 1e-9);
                    EXPECT_LE(fl, 1.0 + 1e-12);
                    EXPECT_GE(p, std::pow(g, -2 * n) - 1e-15);
                }
            }
        }
    }
}

TEST(EprClosedForms, transform_identity) {
    for (double chi : {0.2, 0.5}) {
        for (double eta : {0.25, 0.7}) {
            for (double g : {1.5, 2.5}) {
                EXPECT_GE(oracle_transform_fidelity(chi, eta, g, 60), 1.0 - 1e-10);
            }
        }
    }
}

TEST(EprClosedForms, monotone_in_gain_at_fixed_target) {
    for (double cp : {0.3, 0.5, 0.8}) {
        for (double eta : {0.1, 0.5, 0.9}) {
            for (int n = 1; n <= 3; ++n) {
                double prev_eps = 2.0;
                double prev_p = 2.0;
                for (double g = 1.0; g <= 6.0; g += 0.1) {
                    auto r = evaluate_epr_for_target(cp, eta, AmplifierSpec(g, n));
                    EXPECT_LT(r.epsilon_epr, prev_eps);
                    EXPECT_LT(r.p_success, prev_p);
                    prev_eps = r.epsilon_epr;
                    prev_p = r.p_success;
                }
            }
        }
    }
}

TEST(Asymptotics, examples) {
    EXPECT_EQ(asymptotics(0.0, AmplifierSpec(3.0, 2)).f_limit, 1.0);
    EXPECT_NEAR(asymptotics(0.5, AmplifierSpec(3.0, 1)).f_limit, 0.9375, 1e-15);
    AmplifierSpec spec(100.0, 1);
    auto a = asymptotics(0.5, spec);
    double p = prob_epr(chi_for_target(0.5, 0.3, 100.0), 0.3, spec);
    EXPECT_LE(std::abs(p / a.p_leading - 1.0), 0.05);
    EXPECT_NEAR(a.p_leading * 1e4, (1 - std::pow(0.5, 4)) / (1 - 0.25), 1e-12);
}

TEST(MaxCutoff, examples) {
    auto a = max_cutoff(0.99, 0.5);
    EXPECT_EQ(a.n, 2);
    EXPECT_FALSE(a.capped);
    EXPECT_EQ(max_cutoff(0.99, 0.8).n, 9);
    EXPECT_TRUE(max_cutoff(0.99, 0.0).capped);
    EXPECT_EQ(max_cutoff(0.99, 0.0).n, kMaxCutoffCap);
    EXPECT_TRUE(max_cutoff(0.99, 1e-3).violated);
    auto big = max_cutoff(0.999999, 0.9999);
    EXPECT_EQ(big.n, kMaxCutoffCap);
    EXPECT_TRUE(big.capped);
    auto none = max_cutoff(0.3, 0.8);
    EXPECT_EQ(none.n, 0);
    EXPECT_TRUE(none.violated);
    EXPECT_EQ(max_cutoff(0.5, 0.8).n, 0);
    EXPECT_FALSE(max_cutoff(0.5, 0.8).violated);
    for (double f : {0.9, 0.99, 0.999}) {
        for (double cp : {0.2, 0.5, 0.8, 0.95}) {
            auto b = max_cutoff(f, cp);
            if (b.violated) {
                EXPECT_GT(1.0 - cp * cp, f);
                continue;
            }
            EXPECT_LE(1.0 - std::pow(cp, 2 * b.n + 2), f);
            EXPECT_GT(1.0 - std::pow(cp, 2 * b.n + 4), f);
        }
    }
}
