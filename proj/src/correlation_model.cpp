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
#include "bellscan/correlation_model.hpp"

#include <cmath>

#include "bellscan/errors.hpp"
#include "bellscan/legendre.hpp"
#include "bellscan/state.hpp"

namespace bellscan {

CorrelationModel::CorrelationModel(Spin s, int max_degree) : spin_(s), degree_(max_degree) {
    if (max_degree < 0 || max_degree > s.twice()) {
        throw DegreeError("model degree must lie in [0, 2s]");
    }
    const int n = s.dim();
    const int k1 = degree_ + 1;
    // Moments have degree <= K in x; products with P_j stay below 2K + 3.
    const auto rule = gauss_legendre(degree_ + 2);
    const auto state = singlet(s);
    const auto basis_a = eigenbasis(s, Axis::z());

    // powers[i][l] = (m_i / s)^l
    std::vector<double> powers(static_cast<std::size_t>(n) * k1);
    for (int i = 0; i < n; ++i) {
        double p = 1.0;
        for (int l = 0; l < k1; ++l) {
            powers[i * k1 + l] = p;
            p *= s.m_at(i) / s.value();
        }
    }

    moments_.assign(static_cast<std::size_t>(k1) * k1 * k1, 0.0);
    std::vector<double> pj(k1);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double x = rule.nodes[q];
        const auto basis_b = eigenbasis(s, Axis::in_plane(std::acos(x)));
        const Eigen::MatrixXd prob = outcome_probabilities(state, basis_a, basis_b);
        legendre_all(x, pj);
        for (int l = 0; l < k1; ++l) {
            for (int lp = 0; lp < k1; ++lp) {
                double t = 0.0;
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j) {
                        t += powers[i * k1 + l] * powers[j * k1 + lp] * prob(i, j);
                    }
                }
                for (int jj = 0; jj < k1; ++jj) {
                    moments_[(static_cast<std::size_t>(l) * k1 + lp) * k1 + jj] +=
                        0.5 * (2 * jj + 1) * rule.weights[q] * t * pj[jj];
                }
            }
        }
    }
}

std::vector<double> CorrelationModel::series(std::span<const double> ca,
                                             std::span<const double> cb) const {
    if (static_cast<int>(ca.size()) > degree_ + 1 || static_cast<int>(cb.size()) > degree_ + 1) {
        throw DegreeError("observable degree exceeds the correlation model");
    }
    std::vector<double> out(degree_ + 1, 0.0);
    for (std::size_t l = 0; l < ca.size(); ++l) {
        for (std::size_t lp = 0; lp < cb.size(); ++lp) {
            const double w = ca[l] * cb[lp];
            if (w == 0.0) {
                continue;
            }
            for (int j = 0; j <= degree_; ++j) {
                out[j] += w * moment(static_cast<int>(l), static_cast<int>(lp), j);
            }
        }
    }
    return out;
}

double CorrelationModel::correlation(std::span<const double> ca, std::span<const double> cb,
                                     double theta) const {
    const auto beta = series(ca, cb);
    return legendre_series_value(beta, std::cos(theta));
}

} // namespace bellscan
