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

// Data-parallel inner loops used by the Bell scans and coefficient searches.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2+FMA variant. The variant is picked once at runtime from CPUID;
// setting BELLSCAN_SIMD=scalar in the environment forces the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace bellscan::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// Reduction over a sampled Bell function B_i with quadrature weights w_i.
struct ExcessStats {
    double weighted_total = 0.0;  ///< sum_i w_i B_i
    double weighted_excess = 0.0; ///< sum_i w_i max(B_i - threshold, 0)
    std::size_t count_above = 0;  ///< #{i : B_i > threshold}
    double max_value = 0.0;
    std::size_t argmax = 0; ///< first index attaining max_value
};

struct KernelTable {
    Isa isa;

    /// out[i] = sum_j weights[j] * rows[j * stride + i] for i < out.size().
    void (*accumulate_rows)(std::span<const double> weights, std::span<const double> rows,
                            std::size_t stride, std::span<double> out);

    /// out[i] = |ab[i] - ab2[i]| + |a2b[i] + a2b2[i]|
    void (*chsh_combine)(std::span<const double> ab, std::span<const double> ab2,
                         std::span<const double> a2b, std::span<const double> a2b2,
                         std::span<double> out);

    /// Planar specialisation (a'b = a'b' = ab): out[i] = |c1[i] - c3[i]| + 2|c1[i]|
    void (*chsh_planar)(std::span<const double> c1, std::span<const double> c3,
                        std::span<double> out);

    ExcessStats (*excess_stats)(std::span<const double> values, std::span<const double> weights,
                                double threshold);

    /// max_j |sum_l coeffs[l] * nodes[j]^l|
    double (*max_abs_poly)(std::span<const double> coeffs, std::span<const double> nodes);
};

const KernelTable &scalar_kernels();

/// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable *avx2_kernels();

/// Kernel table chosen for this process.
const KernelTable &active_kernels();

} // namespace bellscan::simd
