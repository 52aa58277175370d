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

#include <cstdint>
#include <string>

#include "bellscan/observable.hpp"
#include "bellscan/spin.hpp"

namespace bellscan {

using CountMatrix = Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Joint projective outcome counts, indexed by (m_A, m_B) in basis order.
struct CountRecord {
    Spin spin;
    Axis axis_a;
    Axis axis_b;
    CountMatrix counts;
    std::uint64_t total = 0;
    std::uint64_t seed = 0;
    int shards = 1;
    std::string generator;
};

/// Correlator estimate with its plug-in multinomial standard error.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// p(m_A, m_B) = |<m_A(a), m_B(b) | 0_s>|^2.
Eigen::MatrixXd joint_probabilities(Spin s, const Axis &a, const Axis &b);

inline constexpr int kDefaultShards = 4;

/// Multinomial draw of `shots` joint outcomes. Shots are split over `shards`
/// independent streams with seeds derived from `seed`; the record depends on
/// (seed, shards) only, not on how many threads run them.
CountRecord sample_counts(Spin s, const Axis &a, const Axis &b, std::uint64_t shots,
                          std::uint64_t seed, int shards = kDefaultShards);

/// -1/3 + 4 N_00 / N for spin 1 with O = 2(Sigma.a)^2 - 1 on both sides.
Estimate estimate_quad_corr_s1(const CountRecord &rec);

/// sum p_A(m_A/s) p_B(m_B/s) counts / N. Valid because both observables are
/// diagonal in the measured bases.
Estimate estimate_general_corr(const CountRecord &rec, const PolyObservable &obs_a,
                               const PolyObservable &obs_b);
Estimate estimate_general_corr(const CountRecord &rec, const PolyObservable &obs);

/// The same estimator applied to exact probabilities (infinite-shot limit).
double exact_general_corr(const Eigen::MatrixXd &probabilities, const PolyObservable &obs_a,
                          const PolyObservable &obs_b);

} // namespace bellscan
