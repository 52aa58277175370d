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
#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "bellscan/errors.hpp"
#include "bellscan/search.hpp"

using namespace bellscan;
using Catch::Matchers::WithinAbs;

namespace {

bool same_up_to_sign(const std::vector<double> &a, const std::vector<double> &b, double tol) {
    if (a.size() != b.size()) {
        return false;
    }
    bool plus = true;
    bool minus = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        plus = plus && std::abs(a[i] - b[i]) <= tol;
        minus = minus && std::abs(a[i] + b[i]) <= tol;
    }
    return plus || minus;
}

} // namespace

TEST_CASE("polytope construction") {
    const auto p = build_polytope(Spin(3), 2);
    CHECK(p.halfspaces.size() == 8);
    CHECK(p.nodes().size() == 4);
    CHECK(p.contains(std::vector<double>{-1.25, 0.0, 2.25}));
    CHECK_FALSE(p.contains(std::vector<double>{-1.25, 0.0, 2.3}));
    CHECK(p.active_count(std::vector<double>{-1.25, 0.0, 2.25}) == 4);
    CHECK_THROWS_AS(build_polytope(Spin(2), 3), DegreeError);
    CHECK_THROWS_AS(build_polytope(Spin(2), 0), DegreeError);
}

TEST_CASE("vertices are feasible, active and sorted") {
    for (int twice = 1; twice <= 6; ++twice) {
        for (int k = 1; k <= std::min(twice, 4); ++k) {
            const auto p = build_polytope(Spin(twice), k);
            const auto v = enumerate_vertices(p);
            REQUIRE_FALSE(v.empty());
            CHECK(std::is_sorted(v.begin(), v.end()));
            for (const auto &c : v) {
                CHECK(p.contains(c, 1e-9));
                CHECK(p.active_count(c) >= k + 1);
            }
            for (std::size_t i = 1; i < v.size(); ++i) {
                double d = 0.0;
                for (int l = 0; l <= k; ++l) {
                    d = std::max(d, std::abs(v[i][l] - v[i - 1][l]));
                }
                CHECK(d > 1e-8);
            }
        }
    }
}

TEST_CASE("spin-1/2 linear polytope is a square") {
    const auto v = enumerate_vertices(build_polytope(Spin(1), 1));
    REQUIRE(v.size() == 4);
    CHECK(v[0] == std::vector<double>{-1.0, 0.0});
    CHECK(v[3] == std::vector<double>{1.0, 0.0});
}

TEST_CASE("feasible lattice") {
    const auto p = build_polytope(Spin(2), 2);
    const auto pts = feasible_lattice(p, 5.0, 0.5);
    CHECK(std::is_sorted(pts.begin(), pts.end()));
    for (const auto &c : pts) {
        CHECK(p.contains(c));
    }
    CHECK(std::find(pts.begin(), pts.end(), std::vector<double>{-1.0, 0.0, 2.0}) != pts.end());
    const auto even = feasible_lattice(p, 5.0, 0.5, Parity::even);
    for (const auto &c : even) {
        CHECK(c[1] == 0.0);
    }
    CHECK(even.size() < pts.size());
    CHECK_THROWS_AS(feasible_lattice(p, 5.0, 0.0), DomainError);
}

TEST_CASE("grid search recovers the quadratic optima") {
    GridSearchOptions opt;
    opt.scan_points = 501;
    const auto r1 = grid_search(build_polytope(Spin(2), 2), opt);
    CHECK(r1.method == SearchMethod::grid);
    CHECK(same_up_to_sign(r1.best_coeffs, {-1.0, 0.0, 2.0}, 1e-12));
    CHECK_THAT(r1.b_max, WithinAbs(2.5523, 1e-3));
    CHECK(r1.feasible_points > 0);

    const auto r32 = grid_search(build_polytope(Spin(3), 2), opt);
    CHECK(same_up_to_sign(r32.best_coeffs, {-1.25, 0.0, 2.25}, 1e-12));

    opt.refine = false;
    const auto coarse = grid_search(build_polytope(Spin(3), 2), opt);
    CHECK(coarse.b_max < r32.b_max);
}

TEST_CASE("vertex search") {
    const auto r = vertex_search(build_polytope(Spin(3), 3), 501, Parity::odd);
    CHECK(r.method == SearchMethod::vertex);
    CHECK(same_up_to_sign(r.best_coeffs, {0.0, -3.5, 0.0, 4.5}, 1e-9));
    const auto any = vertex_search(build_polytope(Spin(4), 3), 501);
    CHECK(any.b_max >= vertex_search(build_polytope(Spin(4), 3), 501, Parity::odd).b_max - 1e-12);
}

TEST_CASE("ties go to the lexicographically smallest vector") {
    // Global sign flips leave B unchanged.
    const auto r = vertex_search(build_polytope(Spin(1), 1), 501);
    CHECK(r.best_coeffs == std::vector<double>{0.0, -1.0});
}

TEST_CASE("weak classical sweep") {
    const auto rows = weak_classical_sweep(2, Spin(6), 501);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].spin == Spin(2));
    CHECK(rows[0].violates);
    CHECK(rows[1].violates);
    for (std::size_t i = 2; i < rows.size(); ++i) {
        CHECK_FALSE(rows[i].violates);
        CHECK(rows[i].b_max <= kLocalBound + kViolationTol);
    }
    CHECK_THROWS_AS(weak_classical_sweep(5, Spin(6), 501), DegreeError);
}

TEST_CASE("histogram counts every lattice point and angle") {
    GridSearchOptions opt;
    opt.scan_points = 201;
    const auto h = bell_histogram(build_polytope(Spin(2), 2), opt, 30);
    std::uint64_t sum = 0;
    for (auto c : h.counts) {
        sum += c;
    }
    CHECK(sum == h.total);
    CHECK(h.total == h.lattice_points * 201);
    CHECK(h.violating > 0);
    CHECK(h.violating_points > 0);
    CHECK(h.violating_share() < 0.2);
}
