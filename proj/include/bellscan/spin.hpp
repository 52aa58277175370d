// Copyright 2026 The bellscan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace bellscan {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Exact-algebra tolerance and the looser one used after eigendecomposition.
inline constexpr double kExactTol = 1e-12;
inline constexpr double kEigenTol = 1e-10;

/// Largest spin the default configuration accepts (N = 13).
inline constexpr int kMaxTwiceSpin = 12;

/// Spin quantum number, stored as 2s so half-integers are exact.
class Spin {
  public:
    explicit Spin(int twice_s);

    /// Parses "1/2", "3/2", "1", "2", "2.5".
    static Spin parse(std::string_view text);

    [[nodiscard]] int twice() const noexcept { return twice_; }
    [[nodiscard]] int dim() const noexcept { return twice_ + 1; }
    [[nodiscard]] double value() const noexcept { return 0.5 * twice_; }

    /// Magnetic quantum number of basis index i (i = 0 is m = +s).
    [[nodiscard]] double m_at(int index) const noexcept {
        return 0.5 * (twice_ - 2 * index);
    }
    /// Basis index of 2m; throws DomainError when 2m is not in {-2s, ..., 2s}
    /// with matching parity.
    [[nodiscard]] int index_of(int twice_m) const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(Spin, Spin) = default;

  private:
    int twice_;
};

/// Direction on the unit sphere.
struct Axis {
    double polar = 0.0;
    double azimuth = 0.0;

    [[nodiscard]] Eigen::Vector3d unit() const;

    static Axis z() { return {0.0, 0.0}; }
    static Axis x();
    static Axis y();
    /// Axis in the x-z plane at angle `angle` from +z towards +x.
    static Axis in_plane(double angle);
    static Axis from_vector(const Eigen::Vector3d &v);
};

/// Dense Hermitian matrix. Construction checks the Hermiticity invariant.
class HermitianOperator {
  public:
    explicit HermitianOperator(ComplexMatrix m);

    static HermitianOperator identity(int dim);

    [[nodiscard]] int dim() const noexcept {
        return static_cast<int>(m_.rows());
    }
    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return m_; }
    [[nodiscard]] Complex operator()(int i, int j) const { return m_(i, j); }

    /// Ascending real spectrum.
    [[nodiscard]] Eigen::VectorXd eigenvalues() const;

    [[nodiscard]] HermitianOperator operator+(const HermitianOperator &o) const;
    [[nodiscard]] HermitianOperator operator-(const HermitianOperator &o) const;
    [[nodiscard]] HermitianOperator operator*(double a) const;
    /// Product of two Hermitian operators is Hermitian only when they commute;
    /// this checks.
    [[nodiscard]] HermitianOperator commuting_product(const HermitianOperator &o) const;

  private:
    ComplexMatrix m_;
};

struct SpinMatrices {
    HermitianOperator x;
    HermitianOperator y;
    HermitianOperator z;
};

/// Eigenbasis of S.a with columns ordered m = s, s-1, ..., -s.
struct AxisEigenbasis {
    Spin spin;
    ComplexMatrix vectors;
};

/// S_x, S_y, S_z in the S_z eigenbasis ordered m = s down to -s.
SpinMatrices spin_matrices(Spin s);

/// a_x S_x + a_y S_y + a_z S_z, divided by s when `normalized`.
HermitianOperator axis_component(Spin s, const Axis &axis, bool normalized);

AxisEigenbasis eigenbasis(Spin s, const Axis &axis);

/// Rank-1 projector onto the eigenvector of S.a with eigenvalue m = twice_m/2.
HermitianOperator projector(Spin s, const Axis &axis, int twice_m);

/// Matrix power, k <= 8.
HermitianOperator operator_power(const HermitianOperator &op, int k);

/// |<m(a)|m'(b)>|^2 indexed by (m, m') in the shared ordering.
Eigen::MatrixXd transition_probabilities(Spin s, const Axis &a, const Axis &b);

} // namespace bellscan
