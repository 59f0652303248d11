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

namespace nla {

// Regularized incomplete gamma and beta functions restricted to integer
// parameters, evaluated through their finite Poisson and binomial tail sums.
// All functions throw std::domain_error outside their domain.

/// Q(a, x) = e^{-x} sum_{k=0}^{a-1} x^k / k!, the upper regularized
/// incomplete gamma function (Poisson CDF at a-1 with mean x).
double reg_gamma_q(int a, double x);

/// P(a, x) = 1 - Q(a, x). Evaluated as the complementary Poisson tail when
/// x < a so that small values keep full relative precision.
double reg_gamma_p(int a, double x);

/// log Q(a, x); stays finite where Q itself underflows.
double log_reg_gamma_q(int a, double x);

/// I_x(a, b) = sum_{t=a}^{a+b-1} C(a+b-1, t) x^t (1-x)^{a+b-1-t}.
double reg_beta_i(double x, int a, int b);

/// Binomial coefficient as a double. Exact up to 2^53; uses lgamma above
/// n = 500.
double binomial(int n, int k);

}  // namespace nla
