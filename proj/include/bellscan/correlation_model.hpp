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

#include <span>
#include <vector>

#include "bellscan/spin.hpp"

namespace bellscan {

/// Singlet correlators of polynomial observables as Legendre series in
/// cos(theta).
///
/// By isotropy, <(Sigma.a)^l (x) (Sigma.b)^l'> on the singlet is a polynomial
/// of degree <= min(l, l') in cos(theta_ab). The model projects every such
/// moment onto P_0..P_K once (Gauss-Legendre quadrature over outcome
/// probabilities in the two measurement eigenbases), after which any
/// correlator of degree <= K observables is a short Legendre series.
///
/// This path never forms the observable matrices, so it is independent of
/// correlate().
class CorrelationModel {
  public:
    CorrelationModel(Spin s, int max_degree);

    [[nodiscard]] Spin spin() const noexcept { return spin_; }
    [[nodiscard]] int max_degree() const noexcept { return degree_; }

    /// Coefficient of P_j in <(Sigma.a)^l (x) (Sigma.b)^lp>.
    [[nodiscard]] double moment(int l, int lp, int j) const {
        const int k1 = degree_ + 1;
        return moments_[(static_cast<std::size_t>(l) * k1 + lp) * k1 + j];
    }

    /// Legendre coefficients beta_0..beta_K of C(theta) for coefficient
    /// vectors ca, cb (normalized convention, length <= K + 1).
    [[nodiscard]] std::vector<double> series(std::span<const double> ca,
                                             std::span<const double> cb) const;

    /// C at angle theta between the axes.
    [[nodiscard]] double correlation(std::span<const double> ca, std::span<const double> cb,
                                     double theta) const;

  private:
    Spin spin_;
    int degree_;
    std::vector<double> moments_;
};

} // namespace bellscan
