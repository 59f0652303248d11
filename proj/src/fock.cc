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

#include "nla/fock.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nla/summation.h"

namespace nla {

AmplifierSpec::AmplifierSpec(double gain, int cutoff) : gain(gain), cutoff(cutoff) {
    if (!(gain >= 1.0) || std::isinf(gain)) {
        throw std::invalid_argument("AmplifierSpec: gain must be finite and >= 1, got " +
                                    std::to_string(gain));
    }
    if (cutoff < 0) {
        throw std::invalid_argument("AmplifierSpec: cutoff must be >= 0, got " +
                                    std::to_string(cutoff));
    }
}

FockVector::FockVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) {
        throw std::invalid_argument("FockVector: needs at least one amplitude");
    }
}

double FockVector::norm_sq() const {
    CompensatedSum s;
    for (const Complex &c : amps_) {
        s += std::norm(c);
    }
    return s.value();
}

Complex inner(const FockVector &a, const FockVector &b) {
    if (a.n_max() != b.n_max()) {
        throw std::invalid_argument("inner: truncation mismatch");
    }
    CompensatedSum re, im;
    for (int n = 0; n <= a.n_max(); ++n) {
        Complex p = std::conj(a[n]) * b[n];
        re += p.real();
        im += p.imag();
    }
    return {re.value(), im.value()};
}

ThreeModeVector::ThreeModeVector(int n_max)
    : n_max_(n_max), amps_(static_cast<size_t>(n_max + 1) * static_cast<size_t>(n_max + 2) / 2) {
    if (n_max < 0) {
        throw std::invalid_argument("ThreeModeVector: n_max must be >= 0");
    }
}

size_t ThreeModeVector::index(int n, int t) const {
    if (n < 0 || n > n_max_ || t < 0 || t > n) {
        throw std::out_of_range("ThreeModeVector: index (" + std::to_string(n) + ", " +
                                std::to_string(t) + ") outside 0 <= t <= n <= n_max");
    }
    return static_cast<size_t>(n) * static_cast<size_t>(n + 1) / 2 + static_cast<size_t>(t);
}

double ThreeModeVector::norm_sq() const {
    CompensatedSum s;
    for (const Complex &c : amps_) {
        s += std::norm(c);
    }
    return s.value();
}

Complex inner(const ThreeModeVector &a, const ThreeModeVector &b) {
    if (a.n_max() != b.n_max()) {
        throw std::invalid_argument("inner: truncation mismatch");
    }
    CompensatedSum re, im;
    auto ra = a.raw();
    auto rb = b.raw();
    for (size_t i = 0; i < ra.size(); ++i) {
        Complex p = std::conj(ra[i]) * rb[i];
        re += p.real();
        im += p.imag();
    }
    return {re.value(), im.value()};
}

double normalized_fidelity(const ThreeModeVector &a, const ThreeModeVector &b) {
    return std::norm(inner(a, b)) / (a.norm_sq() * b.norm_sq());
}

CoherentState make_coherent(Complex alpha, int n_max) {
    if (n_max < 1) {
        throw std::invalid_argument("make_coherent: n_max must be >= 1");
    }
    const double mean = std::norm(alpha);
    std::vector<Complex> amps(static_cast<size_t>(n_max) + 1);
    amps[0] = std::exp(-mean / 2.0);
    for (int n = 1; n <= n_max; ++n) {
        amps[static_cast<size_t>(n)] = amps[static_cast<size_t>(n) - 1] * alpha / std::sqrt(double(n));
    }
    // Remaining Poisson mass, summed forward from n_max + 1.
    CompensatedSum tail;
    double p = std::norm(amps.back());
    for (int n = n_max + 1; p > 0.0; ++n) {
        p *= mean / n;
        tail += p;
        if (n > mean && p < 1e-30) {
            break;
        }
    }
    return {FockVector(std::move(amps)), tail.value()};
}

int poisson_n_max(double mean, double tail) {
    if (!(mean >= 0.0) || !(tail > 0.0)) {
        throw std::invalid_argument("poisson_n_max: need mean >= 0 and tail > 0");
    }
    if (mean == 0.0) {
        return 1;
    }
    // Walk the Poisson pmf and stop once the bounded remainder is small.
    double p = std::exp(-mean);
    for (int n = 1; n < 100000; ++n) {
        p *= mean / n;
        double next = p * mean / (n + 1);
        if (n + 2 > mean) {
            double remainder = next / (1.0 - mean / (n + 2));
            if (remainder < tail) {
                return std::max(n, 1);
            }
        }
    }
    throw std::invalid_argument("poisson_n_max: mean too large");
}

int geometric_n_max(double ratio, double tail) {
    if (!(ratio >= 0.0 && ratio < 1.0) || !(tail > 0.0)) {
        throw std::invalid_argument("geometric_n_max: need 0 <= ratio < 1 and tail > 0");
    }
    if (ratio == 0.0) {
        return 1;
    }
    int n = static_cast<int>(std::ceil(std::log(tail) / std::log(ratio))) - 1;
    return std::max(n, 1);
}

namespace {

void check_n_max(const AmplifierSpec &spec, int n_max, const char *fn) {
    if (n_max < spec.cutoff) {
        throw std::invalid_argument(std::string(fn) + ": n_max (" + std::to_string(n_max) +
                                    ") below cutoff N (" + std::to_string(spec.cutoff) + ")");
    }
}

double ramp(const AmplifierSpec &spec, int n) {
    return n >= spec.cutoff ? 1.0 : std::pow(spec.gain, n - spec.cutoff);
}

}  // namespace

DiagonalOperator make_ms(const AmplifierSpec &spec, int n_max) {
    check_n_max(spec, n_max, "make_ms");
    DiagonalOperator op;
    op.entries.resize(static_cast<size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        op.entries[static_cast<size_t>(n)] = ramp(spec, n);
    }
    return op;
}

DiagonalOperator make_mf(const AmplifierSpec &spec, int n_max) {
    check_n_max(spec, n_max, "make_mf");
    DiagonalOperator op;
    op.entries.resize(static_cast<size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        double d = ramp(spec, n);
        op.entries[static_cast<size_t>(n)] = n >= spec.cutoff ? 0.0 : std::sqrt(1.0 - d * d);
    }
    return op;
}

FockVector apply_diag(const DiagonalOperator &op, const FockVector &psi) {
    if (op.n_max() != psi.n_max()) {
        throw std::invalid_argument("apply_diag: operator n_max " + std::to_string(op.n_max()) +
                                    " != state n_max " + std::to_string(psi.n_max()));
    }
    std::vector<Complex> out(psi.amplitudes().begin(), psi.amplitudes().end());
    for (size_t n = 0; n < out.size(); ++n) {
        out[n] *= op.entries[n];
    }
    return FockVector(std::move(out));
}

ThreeModeVector apply_diag(const DiagonalOperator &op, const ThreeModeVector &psi, Mode mode) {
    if (op.n_max() != psi.n_max()) {
        throw std::invalid_argument("apply_diag: operator n_max " + std::to_string(op.n_max()) +
                                    " != state n_max " + std::to_string(psi.n_max()));
    }
    ThreeModeVector out = psi;
    for (int n = 0; n <= psi.n_max(); ++n) {
        for (int t = 0; t <= n; ++t) {
            int occ = mode == Mode::kFirst ? n : mode == Mode::kSecond ? t : n - t;
            out.at(n, t) *= op.entries[static_cast<size_t>(occ)];
        }
    }
    return out;
}

Eigen::MatrixXd JointUnitary::dense() const {
    const Eigen::Index dim = 2 * static_cast<Eigen::Index>(blocks.size());
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(dim, dim);
    for (size_t n = 0; n < blocks.size(); ++n) {
        u.block<2, 2>(2 * static_cast<Eigen::Index>(n), 2 * static_cast<Eigen::Index>(n)) = blocks[n];
    }
    return u;
}

JointUnitary build_joint_unitary(const AmplifierSpec &spec, int n_max) {
    check_n_max(spec, n_max, "build_joint_unitary");
    JointUnitary u;
    u.blocks.reserve(static_cast<size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        Eigen::Matrix2d r;
        if (n >= spec.cutoff) {
            r << 0.0, 1.0, -1.0, 0.0;
        } else {
            double gn = ramp(spec, n);
            double c = std::sqrt(1.0 - gn * gn);
            r << c, gn, -gn, c;
        }
        u.blocks.push_back(r);
    }
    return u;
}

HeraldedBranches apply_joint(const JointUnitary &u, const FockVector &psi) {
    if (u.n_max() != psi.n_max()) {
        throw std::invalid_argument("apply_joint: truncation mismatch");
    }
    std::vector<Complex> s(static_cast<size_t>(psi.n_max()) + 1);
    std::vector<Complex> f(s.size());
    for (int n = 0; n <= psi.n_max(); ++n) {
        const auto &r = u.blocks[static_cast<size_t>(n)];
        s[static_cast<size_t>(n)] = r(kSuccess, kFailure) * psi[n];
        f[static_cast<size_t>(n)] = r(kFailure, kFailure) * psi[n];
    }
    return {FockVector(std::move(s)), FockVector(std::move(f))};
}

std::vector<double> hamiltonian_phase(const AmplifierSpec &spec, int n_max) {
    check_n_max(spec, n_max, "hamiltonian_phase");
    std::vector<double> theta(static_cast<size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        theta[static_cast<size_t>(n)] =
            n >= spec.cutoff ? std::numbers::pi / 2.0 : std::asin(ramp(spec, n));
    }
    return theta;
}

Eigen::Matrix2d rotation_from_phase(double theta) {
    // i Y = [[0, 1], [-1, 0]] squares to -I.
    Eigen::Matrix2d r;
    r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    return r;
}

Eigen::Matrix4d n1_unitary(double g) {
    AmplifierSpec spec(g, 1);
    JointUnitary u = build_joint_unitary(spec, 1);
    return u.dense();
}

Eigen::Matrix4d n1_gate_sequence(double theta) {
    Eigen::Matrix2d x, z, id, ry, p0, p1;
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    id.setIdentity();
    ry << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
    p0 << 1, 0, 0, 0;
    p1 << 0, 0, 0, 1;
    auto kron = [](const Eigen::Matrix2d &a, const Eigen::Matrix2d &b) {
        Eigen::Matrix4d k;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
            }
        }
        return k;
    };
    Eigen::Matrix4d controlled = kron(p0, id) + kron(p1, ry);
    return -kron(x, x) * kron(id, z) * controlled * kron(x, id);
}

double n1_rotation_angle(double g) {
    if (!(g >= 1.0)) {
        throw std::invalid_argument("n1_rotation_angle: gain must be >= 1");
    }
    return 2.0 * std::acos(1.0 / g);
}

double verify_n1_decomposition(double g) {
    return (n1_unitary(g) - n1_gate_sequence(n1_rotation_angle(g))).cwiseAbs().maxCoeff();
}

}  // namespace nla
