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

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

namespace nla {

using Complex = std::complex<double>;

/// Gain g >= 1 and Fock cutoff N >= 0 of one amplifier instance.
struct AmplifierSpec {
    AmplifierSpec(double gain, int cutoff);

    double gain;
    int cutoff;
};

/// Single-mode state amplitudes over occupation numbers 0..n_max.
class FockVector {
  public:
    explicit FockVector(std::vector<Complex> amplitudes);

    int n_max() const { return static_cast<int>(amps_.size()) - 1; }
    std::span<const Complex> amplitudes() const { return amps_; }
    Complex operator[](int n) const { return amps_[static_cast<size_t>(n)]; }
    double norm_sq() const;

  private:
    std::vector<Complex> amps_;
};

/// <a|b> with the conjugate on the left. Sizes must agree.
Complex inner(const FockVector &a, const FockVector &b);

/// Three-mode amplitudes on |n, t, n-t>, 0 <= t <= n <= n_max. The third
/// occupation is implied by the first two, so storage is triangular.
class ThreeModeVector {
  public:
    explicit ThreeModeVector(int n_max);

    int n_max() const { return n_max_; }
    Complex &at(int n, int t) { return amps_[index(n, t)]; }
    Complex at(int n, int t) const { return amps_[index(n, t)]; }
    std::span<const Complex> raw() const { return amps_; }
    double norm_sq() const;

  private:
    size_t index(int n, int t) const;

    int n_max_;
    std::vector<Complex> amps_;
};

Complex inner(const ThreeModeVector &a, const ThreeModeVector &b);

/// |<a|b>|^2 / (<a|a><b|b>).
double normalized_fidelity(const ThreeModeVector &a, const ThreeModeVector &b);

/// Which occupation number a diagonal operator contracts with on a
/// three-mode vector: n (first), t (second) or n-t (third).
enum class Mode { kFirst, kSecond, kThird };

/// Real diagonal operator d_n on a single mode, n = 0..n_max.
struct DiagonalOperator {
    std::vector<double> entries;

    int n_max() const { return static_cast<int>(entries.size()) - 1; }
};

struct CoherentState {
    FockVector state;
    double tail_mass;  // sum_{n > n_max} |c_n|^2
};

CoherentState make_coherent(Complex alpha, int n_max);

/// Smallest n_max whose Poisson tail of mean `mean` is below `tail`.
int poisson_n_max(double mean, double tail = 1e-14);

/// Smallest n_max with ratio^{n_max+1} below `tail`.
int geometric_n_max(double ratio, double tail = 1e-14);

/// Success operator: g^{n-N} for n <= N, 1 above.
DiagonalOperator make_ms(const AmplifierSpec &spec, int n_max);

/// Failure operator: sqrt(1 - g^{2(n-N)}) for n <= N, 0 above.
DiagonalOperator make_mf(const AmplifierSpec &spec, int n_max);

FockVector apply_diag(const DiagonalOperator &op, const FockVector &psi);
ThreeModeVector apply_diag(const DiagonalOperator &op, const ThreeModeVector &psi, Mode mode);

// Apparatus basis ordering inside every 2x2 block.
inline constexpr int kSuccess = 0;
inline constexpr int kFailure = 1;

/// U = sum_n |n><n| (x) R_n, with
///   R_n = [[sqrt(1-G_n^2), G_n], [-G_n, sqrt(1-G_n^2)]],  G_n = min(1, g^{n-N})
/// in the (S, F) apparatus basis. Column F is the action on the prepared
/// apparatus: <S|R_n|F> = M_S(n), <F|R_n|F> = M_F(n), and the S column carries
/// B_1 = -M_S, B_2 = M_F.
struct JointUnitary {
    std::vector<Eigen::Matrix2d> blocks;

    int n_max() const { return static_cast<int>(blocks.size()) - 1; }

    /// Dense (2(n_max+1))^2 matrix, row/column index 2n + apparatus.
    Eigen::MatrixXd dense() const;
};

JointUnitary build_joint_unitary(const AmplifierSpec &spec, int n_max);

/// System branches of U (psi (x) |F>): the unnormalized states left behind
/// when the apparatus reads S and F respectively.
struct HeraldedBranches {
    FockVector success;
    FockVector failure;
};

HeraldedBranches apply_joint(const JointUnitary &u, const FockVector &psi);

/// theta_n = arcsin(min(1, g^{n-N})), the per-block product H tau / hbar.
std::vector<double> hamiltonian_phase(const AmplifierSpec &spec, int n_max);

/// exp(i theta Y) = [[cos, sin], [-sin, cos]] in closed form.
Eigen::Matrix2d rotation_from_phase(double theta);

/// The N = 1 unitary restricted to span{|0>, |1>} (x) {S, F}.
Eigen::Matrix4d n1_unitary(double g);

/// -(X (x) X)(I (x) Z) C(R_y(theta)) (X (x) I), control on the system qubit,
/// R_y(theta) = exp(-i theta Y / 2).
Eigen::Matrix4d n1_gate_sequence(double theta);

/// Controlled-rotation angle for which the gate sequence reproduces the N = 1
/// unitary: 2 arccos(1/g).
double n1_rotation_angle(double g);

/// Max absolute entry difference between n1_unitary(g) and
/// n1_gate_sequence(n1_rotation_angle(g)).
double verify_n1_decomposition(double g);

}  // namespace nla
