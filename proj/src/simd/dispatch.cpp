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
#include <cstdlib>
#include <string_view>

#include "bellscan/simd/kernels.hpp"

namespace bellscan::simd {

#if defined(BELLSCAN_HAVE_AVX2)
const KernelTable &avx2_kernel_table();
#endif

std::string_view to_string(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    }
    return "?";
}

const KernelTable *avx2_kernels() {
#if defined(BELLSCAN_HAVE_AVX2)
    static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    }();
    return supported ? &avx2_kernel_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable &active_kernels() {
    static const KernelTable *table = [] {
        const char *forced = std::getenv("BELLSCAN_SIMD");
        if (forced != nullptr && std::string_view(forced) == "scalar") {
            return &scalar_kernels();
        }
        if (const auto *avx = avx2_kernels()) {
            return avx;
        }
        return &scalar_kernels();
    }();
    return *table;
}

} // namespace bellscan::simd
