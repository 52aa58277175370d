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
#include "bellscan/state.hpp"

#include <cmath>
#include <sstream>

#include "bellscan/errors.hpp"

namespace bellscan {

BipartiteState::BipartiteState(Spin s, ComplexMatrix amplitudes)
    : spin_(s), amp_(std::move(amplitudes)) {
    if (amp_.rows() != s.dim() || amp_.cols() != s.dim()) {
        throw DomainError("amplitude matrix must be N x N");
    }
    if (std::abs(amp_.norm() - 1.0) > kExactTol) {
        throw NumericalConsistencyError("bipartite state is not normalized");
    }
}

Complex BipartiteState::flat(int index) const {
    const int n = spin_.dim();
    return amp_(index / n, index % n);
}

BipartiteState singlet(Spin s) {
    const int n = s.dim();
    ComplexMatrix amp = ComplexMatrix::Zero(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    // (-1)^s (-1)^m divided by its value at m = s leaves (-1)^(s - m) = (-1)^i.
    for (int i = 0; i < n; ++i) {
        amp(i, n - 1 - i) = (i % 2 == 0 ? scale : -scale);
    }
    return {s, std::move(amp)};
}

double expectation(const BipartiteState &state, const HermitianOperator &a,
                   const HermitianOperator &b) {
    const int n = state.spin().dim();
    if (a.dim() != n || b.dim() != n) {
        throw DomainError("operator dimension does not match the state");
    }
    const ComplexMatrix &psi = state.amplitudes();
    // sum_ij conj(psi_ij) (A psi B^T)_ij
    const Complex value = (psi.conjugate().cwiseProduct(a.matrix() * psi * b.matrix().transpose())).sum();
    if (std::abs(value.imag()) > kEigenTol) {
        std::ostringstream os;
        os << "expectation value has imaginary part " << value.imag();
        throw NumericalConsistencyError(os.str());
    }
    return value.real();
}

Eigen::MatrixXd outcome_probabilities(const BipartiteState &state, const AxisEigenbasis &a,
                                      const AxisEigenbasis &b) {
    if (a.spin != state.spin() || b.spin != state.spin()) {
        throw DomainError("measurement basis spin does not match the state");
    }
    // <u_i (x) v_j | psi> = (U^dagger Psi conj(V))_ij
    return (a.vectors.adjoint() * state.amplitudes() * b.vectors.conjugate()).cwiseAbs2();
}

} // namespace bellscan
