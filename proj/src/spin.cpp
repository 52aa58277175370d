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
#include "bellscan/spin.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bellscan/errors.hpp"

namespace bellscan {

Spin::Spin(int twice_s) : twice_(twice_s) {
    if (twice_s < 1) {
        throw DomainError("spin must be at least 1/2");
    }
    if (twice_s > kMaxTwiceSpin) {
        throw DomainError("spin above 6 is not supported");
    }
}

Spin Spin::parse(std::string_view text) {
    auto to_int = [&](std::string_view part) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc{} || ptr != part.data() + part.size()) {
            throw DomainError("cannot parse spin '" + std::string(text) + "'");
        }
        return v;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const int num = to_int(text.substr(0, slash));
        if (to_int(text.substr(slash + 1)) != 2) {
            throw DomainError("spin fractions must have denominator 2");
        }
        return Spin(num);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto frac = text.substr(dot + 1);
        const int whole = to_int(text.substr(0, dot));
        if (frac == "5") {
            return Spin(2 * whole + 1);
        }
        if (frac == "0") {
            return Spin(2 * whole);
        }
        throw DomainError("spin must be a multiple of 1/2: '" + std::string(text) + "'");
    }
    return Spin(2 * to_int(text));
}

int Spin::index_of(int twice_m) const {
    if (twice_m > twice_ || twice_m < -twice_ || ((twice_ - twice_m) % 2) != 0) {
        throw DomainError("m = " + std::to_string(twice_m) + "/2 is not a projection of spin " +
                          to_string());
    }
    return (twice_ - twice_m) / 2;
}

std::string Spin::to_string() const {
    if (twice_ % 2 == 0) {
        return std::to_string(twice_ / 2);
    }
    return std::to_string(twice_) + "/2";
}

Eigen::Vector3d Axis::unit() const {
    return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
            std::cos(polar)};
}

Axis Axis::x() { return {std::numbers::pi / 2, 0.0}; }
Axis Axis::y() { return {std::numbers::pi / 2, std::numbers::pi / 2}; }

Axis Axis::in_plane(double angle) {
    // (sin angle, 0, cos angle)
    double a = std::fmod(angle, 2 * std::numbers::pi);
    if (a < 0) {
        a += 2 * std::numbers::pi;
    }
    if (a <= std::numbers::pi) {
        return {a, 0.0};
    }
    return {2 * std::numbers::pi - a, std::numbers::pi};
}

Axis Axis::from_vector(const Eigen::Vector3d &v) {
    const double n = v.norm();
    if (!(n > 0)) {
        throw DomainError("axis vector must be nonzero");
    }
    const Eigen::Vector3d u = v / n;
    return {std::acos(std::clamp(u.z(), -1.0, 1.0)), std::atan2(u.y(), u.x())};
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw DomainError("operator must be square");
    }
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    const double defect = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (defect > kExactTol * scale) {
        std::ostringstream os;
        os << "operator is not Hermitian (defect " << defect << ")";
        throw NumericalConsistencyError(os.str());
    }
}

HermitianOperator HermitianOperator::identity(int dim) {
    return HermitianOperator(ComplexMatrix::Identity(dim, dim));
}

Eigen::VectorXd HermitianOperator::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator &o) const {
    return HermitianOperator(m_ + o.m_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator &o) const {
    return HermitianOperator(m_ - o.m_);
}

HermitianOperator HermitianOperator::operator*(double a) const {
    return HermitianOperator(m_ * a);
}

HermitianOperator HermitianOperator::commuting_product(const HermitianOperator &o) const {
    return HermitianOperator(m_ * o.m_);
}

SpinMatrices spin_matrices(Spin s) {
    const int n = s.dim();
    const double sv = s.value();
    ComplexMatrix raise = ComplexMatrix::Zero(n, n);
    ComplexMatrix sz = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double m = s.m_at(i);
        sz(i, i) = m;
        // <m+1|S+|m> sits one row above the diagonal.
        if (i > 0) {
            raise(i - 1, i) = std::sqrt(sv * (sv + 1) - m * (m + 1));
        }
    }
    const ComplexMatrix lower = raise.adjoint();
    return {HermitianOperator(0.5 * (raise + lower)),
            HermitianOperator((raise - lower) / (2.0 * Complex(0.0, 1.0))),
            HermitianOperator(sz)};
}

HermitianOperator axis_component(Spin s, const Axis &axis, bool normalized) {
    const auto [sx, sy, sz] = spin_matrices(s);
    const Eigen::Vector3d u = axis.unit();
    ComplexMatrix m = u.x() * sx.matrix() + u.y() * sy.matrix() + u.z() * sz.matrix();
    if (normalized) {
        m /= s.value();
    }
    // Kill rounding-level anti-Hermitian parts from the sum.
    return HermitianOperator(0.5 * (m + m.adjoint()));
}

AxisEigenbasis eigenbasis(Spin s, const Axis &axis) {
    const auto op = axis_component(s, axis, false);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(op.matrix());
    if (es.info() != Eigen::Success) {
        throw NumericalConsistencyError("eigendecomposition failed");
    }
    const int n = s.dim();
    ComplexMatrix vecs(n, n);
    // Eigenvalues come out ascending and are m = -s..s (spacing 1), so reverse.
    for (int i = 0; i < n; ++i) {
        const int src = n - 1 - i;
        if (std::abs(es.eigenvalues()(src) - s.m_at(i)) > kEigenTol) {
            throw NumericalConsistencyError("S.a spectrum does not match m labels");
        }
        vecs.col(i) = es.eigenvectors().col(src);
    }
    return {s, std::move(vecs)};
}

HermitianOperator projector(Spin s, const Axis &axis, int twice_m) {
    const int idx = s.index_of(twice_m);
    const auto basis = eigenbasis(s, axis);
    const Eigen::VectorXcd v = basis.vectors.col(idx);
    const ComplexMatrix p = v * v.adjoint();
    return HermitianOperator(0.5 * (p + p.adjoint()));
}

HermitianOperator operator_power(const HermitianOperator &op, int k) {
    if (k < 0 || k > 8) {
        throw DomainError("operator power must be in [0, 8]");
    }
    ComplexMatrix acc = ComplexMatrix::Identity(op.dim(), op.dim());
    for (int i = 0; i < k; ++i) {
        acc = acc * op.matrix();
    }
    return HermitianOperator(0.5 * (acc + acc.adjoint()));
}

Eigen::MatrixXd transition_probabilities(Spin s, const Axis &a, const Axis &b) {
    const auto ua = eigenbasis(s, a);
    const auto ub = eigenbasis(s, b);
    return (ua.vectors.adjoint() * ub.vectors).cwiseAbs2();
}

} // namespace bellscan
