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

#include "bellscan/spin.hpp"

namespace bellscan {

/// Pure state of two spin-s particles. Amplitudes are kept as an N x N
/// matrix whose (i, j) entry multiplies |m_i> (x) |m_j>.
class BipartiteState {
  public:
    BipartiteState(Spin s, ComplexMatrix amplitudes);

    [[nodiscard]] Spin spin() const noexcept { return spin_; }
    [[nodiscard]] const ComplexMatrix &amplitudes() const noexcept { return amp_; }
    /// Amplitude at flat index i * N + j.
    [[nodiscard]] Complex flat(int index) const;
    [[nodiscard]] double norm() const { return amp_.norm(); }

  private:
    Spin spin_;
    ComplexMatrix amp_;
};

/// Total-spin-zero state of two spin-s particles, global phase fixed so the
/// |s, -s> amplitude is real positive.
BipartiteState singlet(Spin s);

/// <state| A (x) B |state>, contracted without forming the N^2 x N^2 operator.
/// Throws NumericalConsistencyError if the imaginary part exceeds 1e-10.
double expectation(const BipartiteState &state, const HermitianOperator &a,
                   const HermitianOperator &b);

/// Born probabilities of the joint outcome (m_A along basis A, m_B along
/// basis B), indexed in the shared m ordering.
Eigen::MatrixXd outcome_probabilities(const BipartiteState &state, const AxisEigenbasis &a,
                                      const AxisEigenbasis &b);

} // namespace bellscan
