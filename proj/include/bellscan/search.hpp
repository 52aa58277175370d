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
#include <span>
#include <string_view>
#include <vector>

#include "bellscan/bell.hpp"
#include "bellscan/observable.hpp"

namespace bellscan {

/// sign * sum_l C_l (m/s)^l <= 1
struct Halfspace {
    std::vector<double> normal;
    double bound = 1.0;
    int twice_m = 0;
    int sign = 1;
};

/// Coefficient vectors (C_0..C_k) of degree-k observables obeying the
/// unit-norm bound: 2(2s+1) halfspaces in k+1 unknowns.
struct ConstraintPolytope {
    Spin spin;
    int degree;
    std::vector<Halfspace> halfspaces;

    [[nodiscard]] bool contains(std::span<const double> c, double tol = kUnitNormSlack) const;
    /// Number of halfspaces active (within tol) at c.
    [[nodiscard]] int active_count(std::span<const double> c, double tol = 1e-8) const;
    /// Spectral nodes m/s in basis order.
    [[nodiscard]] std::vector<double> nodes() const;
};

ConstraintPolytope build_polytope(Spin s, int degree);

/// Every vertex of the polytope: (k+1)-subsets of boundary hyperplanes solved
/// exactly, kept when feasible within 1e-9, deduplicated within 1e-8, and
/// returned in lexicographic order.
std::vector<std::vector<double>> enumerate_vertices(const ConstraintPolytope &p);

enum class SearchMethod { grid, vertex };
std::string_view to_string(SearchMethod m);

struct SearchResult {
    std::vector<double> best_coeffs;
    double b_max = 0.0;
    PlanarConfig config_at_max;
    SearchMethod method = SearchMethod::grid;
    /// Planar scans performed.
    std::size_t samples_evaluated = 0;
    /// Feasible candidates (lattice points or vertices) considered.
    std::size_t feasible_points = 0;
};

struct GridSearchOptions {
    double bounds = 5.0;
    double step = 0.5;
    int scan_points = 1001;
    Parity parity = Parity::any;
    /// Second pass on a finer lattice around the incumbent.
    bool refine = true;
    double refine_step = 0.25;
};

/// Lattice points of [-bounds, bounds]^{k+1} at spacing `step`, in
/// lexicographic order, that lie in the polytope and match the parity.
std::vector<std::vector<double>> feasible_lattice(const ConstraintPolytope &p, double bounds,
                                                  double step, Parity parity = Parity::any);

/// Both subsystems use the same coefficient vector. Ties in b_max (within
/// 1e-9) go to the lexicographically smallest vector.
SearchResult grid_search(const ConstraintPolytope &p, const GridSearchOptions &options);

SearchResult vertex_search(const ConstraintPolytope &p, int scan_points,
                           Parity parity = Parity::any);

struct ClassicalLimitRow {
    Spin spin;
    double b_max;
    std::vector<double> best_coeffs;
    bool violates;
};

/// vertex_search at fixed degree k for s = k/2, k/2 + 1/2, ..., s_max.
std::vector<ClassicalLimitRow> weak_classical_sweep(int degree, Spin s_max, int scan_points,
                                                    Parity parity = Parity::any);

/// Distribution of B over every feasible lattice point and every grid angle.
struct BellHistogram {
    double lo = 0.0;
    double hi = 3.0;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
    std::uint64_t violating = 0;
    std::size_t lattice_points = 0;
    std::size_t violating_points = 0;

    [[nodiscard]] double violating_share() const {
        return total == 0 ? 0.0 : static_cast<double>(violating) / static_cast<double>(total);
    }
};

BellHistogram bell_histogram(const ConstraintPolytope &p, const GridSearchOptions &options,
                             int bins);

} // namespace bellscan
