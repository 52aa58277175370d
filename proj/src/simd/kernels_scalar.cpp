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
#include <algorithm>
#include <cmath>

#include "bellscan/simd/kernels.hpp"

namespace bellscan::simd {
namespace {

void accumulate_rows(std::span<const double> weights, std::span<const double> rows,
                     std::size_t stride, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t j = 0; j < weights.size(); ++j) {
        const double w = weights[j];
        if (w == 0.0) {
            continue;
        }
        const double *row = rows.data() + j * stride;
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += w * row[i];
        }
    }
}

void chsh_combine(std::span<const double> ab, std::span<const double> ab2,
                  std::span<const double> a2b, std::span<const double> a2b2,
                  std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::abs(ab[i] - ab2[i]) + std::abs(a2b[i] + a2b2[i]);
    }
}

void chsh_planar(std::span<const double> c1, std::span<const double> c3, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::abs(c1[i] - c3[i]) + 2.0 * std::abs(c1[i]);
    }
}

ExcessStats excess_stats(std::span<const double> values, std::span<const double> weights,
                         double threshold) {
    ExcessStats st;
    if (values.empty()) {
        return st;
    }
    st.max_value = values[0];
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        st.weighted_total += weights[i] * v;
        if (v > threshold) {
            st.weighted_excess += weights[i] * (v - threshold);
            ++st.count_above;
        }
        if (v > st.max_value) {
            st.max_value = v;
            st.argmax = i;
        }
    }
    return st;
}

double max_abs_poly(std::span<const double> coeffs, std::span<const double> nodes) {
    double best = 0.0;
    for (double x : nodes) {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            acc = acc * x + *it;
        }
        best = std::max(best, std::abs(acc));
    }
    return best;
}

} // namespace

const KernelTable &scalar_kernels() {
    static const KernelTable table{Isa::scalar, accumulate_rows, chsh_combine, chsh_planar,
                                   excess_stats, max_abs_poly};
    return table;
}

} // namespace bellscan::simd
