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
#include "bellscan/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bellscan/errors.hpp"
#include "bellscan/parallel.hpp"
#include "bellscan/rng.hpp"
#include "bellscan/state.hpp"

namespace bellscan {

Eigen::MatrixXd joint_probabilities(Spin s, const Axis &a, const Axis &b) {
    return outcome_probabilities(singlet(s), eigenbasis(s, a), eigenbasis(s, b));
}

CountRecord sample_counts(Spin s, const Axis &a, const Axis &b, std::uint64_t shots,
                          std::uint64_t seed, int shards) {
    if (shots < 1) {
        throw DomainError("shots must be at least 1");
    }
    if (shards < 1) {
        throw DomainError("shards must be at least 1");
    }
    const Eigen::MatrixXd prob = joint_probabilities(s, a, b);
    const int n = s.dim();
    const auto cells = static_cast<std::size_t>(n) * n;

    // Row-major cumulative distribution.
    std::vector<double> cdf(cells);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            acc += prob(i, j);
            cdf[static_cast<std::size_t>(i) * n + j] = acc;
        }
    }
    for (double &c : cdf) {
        c /= acc;
    }
    cdf.back() = 1.0;

    std::vector<std::vector<std::uint64_t>> shard_counts(shards,
                                                         std::vector<std::uint64_t>(cells, 0));
    const auto nshards = static_cast<std::uint64_t>(shards);
    parallel_for(static_cast<std::size_t>(shards), [&](std::size_t begin, std::size_t end) {
        for (std::size_t sh = begin; sh < end; ++sh) {
            const std::uint64_t quota = shots / nshards + (sh < shots % nshards ? 1 : 0);
            Rng rng(derive_seed(seed, sh));
            auto &out = shard_counts[sh];
            for (std::uint64_t t = 0; t < quota; ++t) {
                const double u = uniform01(rng);
                const auto cell = static_cast<std::size_t>(
                    std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
                ++out[std::min(cell, cells - 1)];
            }
        }
    });

    CountRecord rec{s, a, b, CountMatrix::Zero(n, n), shots, seed, shards, kRngName};
    for (const auto &part : shard_counts) {
        for (std::size_t c = 0; c < cells; ++c) {
            rec.counts(static_cast<int>(c / n), static_cast<int>(c % n)) += part[c];
        }
    }
    return rec;
}

Estimate estimate_quad_corr_s1(const CountRecord &rec) {
    if (rec.spin.twice() != 2) {
        throw DomainError("the coincidence-rate estimator is defined for spin 1");
    }
    if (rec.total == 0) {
        throw DomainError("count record is empty");
    }
    const double total = static_cast<double>(rec.total);
    const double p00 = static_cast<double>(rec.counts(1, 1)) / total;
    return {-1.0 / 3.0 + 4.0 * p00, 4.0 * std::sqrt(p00 * (1.0 - p00) / total)};
}

Estimate estimate_general_corr(const CountRecord &rec, const PolyObservable &obs_a,
                               const PolyObservable &obs_b) {
    if (obs_a.spin() != rec.spin || obs_b.spin() != rec.spin) {
        throw DomainError("observable spin does not match the count record");
    }
    if (rec.total == 0) {
        throw DomainError("count record is empty");
    }
    const auto fa = obs_a.spectrum();
    const auto fb = obs_b.spectrum();
    const double total = static_cast<double>(rec.total);
    double mean = 0.0;
    double second = 0.0;
    for (int i = 0; i < rec.spin.dim(); ++i) {
        for (int j = 0; j < rec.spin.dim(); ++j) {
            const double v = fa[i] * fb[j];
            const double f = static_cast<double>(rec.counts(i, j)) / total;
            mean += v * f;
            second += v * v * f;
        }
    }
    const double var = std::max(0.0, second - mean * mean);
    return {mean, std::sqrt(var / total)};
}

Estimate estimate_general_corr(const CountRecord &rec, const PolyObservable &obs) {
    return estimate_general_corr(rec, obs, obs);
}

double exact_general_corr(const Eigen::MatrixXd &probabilities, const PolyObservable &obs_a,
                          const PolyObservable &obs_b) {
    const auto fa = obs_a.spectrum();
    const auto fb = obs_b.spectrum();
    double mean = 0.0;
    for (int i = 0; i < probabilities.rows(); ++i) {
        for (int j = 0; j < probabilities.cols(); ++j) {
            mean += fa[i] * fb[j] * probabilities(i, j);
        }
    }
    return mean;
}

} // namespace bellscan
