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
// Compiled with -mavx2 -mfma; only reached after a CPUID check.

#include <immintrin.h>

#include <algorithm>
#include <bit>
#include <cmath>

#include "bellscan/simd/kernels.hpp"

namespace bellscan::simd {
namespace {

inline __m256d abs_pd(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d m = _mm_max_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

void accumulate_rows(std::span<const double> weights, std::span<const double> rows,
                     std::size_t stride, std::span<double> out) {
    const std::size_t n = out.size();
    const std::size_t nw = weights.size();
    std::size_t i = 0;
    // Two output registers per step; each row is streamed once per block.
    for (; i + 8 <= n; i += 8) {
        __m256d acc0 = _mm256_setzero_pd();
        __m256d acc1 = _mm256_setzero_pd();
        for (std::size_t j = 0; j < nw; ++j) {
            const __m256d w = _mm256_set1_pd(weights[j]);
            const double *row = rows.data() + j * stride + i;
            acc0 = _mm256_fmadd_pd(w, _mm256_loadu_pd(row), acc0);
            acc1 = _mm256_fmadd_pd(w, _mm256_loadu_pd(row + 4), acc1);
        }
        _mm256_storeu_pd(out.data() + i, acc0);
        _mm256_storeu_pd(out.data() + i + 4, acc1);
    }
    for (; i + 4 <= n; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < nw; ++j) {
            acc = _mm256_fmadd_pd(_mm256_set1_pd(weights[j]),
                                  _mm256_loadu_pd(rows.data() + j * stride + i), acc);
        }
        _mm256_storeu_pd(out.data() + i, acc);
    }
    for (; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < nw; ++j) {
            acc = std::fma(weights[j], rows[j * stride + i], acc);
        }
        out[i] = acc;
    }
}

void chsh_combine(std::span<const double> ab, std::span<const double> ab2,
                  std::span<const double> a2b, std::span<const double> a2b2,
                  std::span<double> out) {
    const std::size_t n = out.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(&ab[i]), _mm256_loadu_pd(&ab2[i]));
        const __m256d s = _mm256_add_pd(_mm256_loadu_pd(&a2b[i]), _mm256_loadu_pd(&a2b2[i]));
        _mm256_storeu_pd(&out[i], _mm256_add_pd(abs_pd(d), abs_pd(s)));
    }
    for (; i < n; ++i) {
        out[i] = std::abs(ab[i] - ab2[i]) + std::abs(a2b[i] + a2b2[i]);
    }
}

void chsh_planar(std::span<const double> c1, std::span<const double> c3, std::span<double> out) {
    const std::size_t n = out.size();
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(&c1[i]);
        const __m256d d = _mm256_sub_pd(a, _mm256_loadu_pd(&c3[i]));
        _mm256_storeu_pd(&out[i], _mm256_add_pd(abs_pd(d), _mm256_mul_pd(two, abs_pd(a))));
    }
    for (; i < n; ++i) {
        out[i] = std::abs(c1[i] - c3[i]) + 2.0 * std::abs(c1[i]);
    }
}

ExcessStats excess_stats(std::span<const double> values, std::span<const double> weights,
                         double threshold) {
    ExcessStats st;
    const std::size_t n = values.size();
    if (n == 0) {
        return st;
    }
    const __m256d thr = _mm256_set1_pd(threshold);
    const __m256d zero = _mm256_setzero_pd();
    __m256d total = zero;
    __m256d excess = zero;
    __m256d vmax = _mm256_set1_pd(values[0]);
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(&values[i]);
        const __m256d w = _mm256_loadu_pd(&weights[i]);
        total = _mm256_fmadd_pd(w, v, total);
        const __m256d above = _mm256_cmp_pd(v, thr, _CMP_GT_OQ);
        excess = _mm256_fmadd_pd(w, _mm256_max_pd(_mm256_sub_pd(v, thr), zero), excess);
        count += static_cast<std::size_t>(std::popcount(
            static_cast<unsigned>(_mm256_movemask_pd(above))));
        vmax = _mm256_max_pd(vmax, v);
    }
    st.weighted_total = hsum(total);
    st.weighted_excess = hsum(excess);
    double best = hmax(vmax);
    for (; i < n; ++i) {
        const double v = values[i];
        st.weighted_total += weights[i] * v;
        if (v > threshold) {
            st.weighted_excess += weights[i] * (v - threshold);
            ++count;
        }
        best = std::max(best, v);
    }
    st.count_above = count;
    st.max_value = best;
    st.argmax = static_cast<std::size_t>(
        std::find(values.begin(), values.end(), best) - values.begin());
    return st;
}

double max_abs_poly(std::span<const double> coeffs, std::span<const double> nodes) {
    const std::size_t n = nodes.size();
    __m256d vbest = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d x = _mm256_loadu_pd(&nodes[j]);
        __m256d acc = _mm256_setzero_pd();
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            acc = _mm256_fmadd_pd(acc, x, _mm256_set1_pd(*it));
        }
        vbest = _mm256_max_pd(vbest, abs_pd(acc));
    }
    double best = hmax(vbest);
    for (; j < n; ++j) {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            acc = std::fma(acc, nodes[j], *it);
        }
        best = std::max(best, std::abs(acc));
    }
    return best;
}

} // namespace

const KernelTable &avx2_kernel_table() {
    static const KernelTable table{Isa::avx2, accumulate_rows, chsh_combine, chsh_planar,
                                   excess_stats, max_abs_poly};
    return table;
}

} // namespace bellscan::simd
