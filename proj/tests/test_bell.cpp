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

#include <cmath>
#include <numbers>

#include "bellscan/bell.hpp"
#include "bellscan/errors.hpp"
#include "oracle/wigner.hpp"

using namespace bellscan;
using Catch::Matchers::WithinAbs;

namespace {

double oracle_planar(int twice, const std::vector<double> &c, double theta) {
    const double c1 = oracle::singlet_correlator(twice, c, c, theta);
    const double c3 = oracle::singlet_correlator(twice, c, c, 3 * theta);
    return std::abs(c1 - c3) + 2 * std::abs(c1);
}

} // namespace

TEST_CASE("planar axes") {
    const auto axes = planar_axes(0.4);
    CHECK_THAT(axes[0].unit().dot(axes[2].unit()), WithinAbs(std::cos(0.4), 1e-14));
    CHECK_THAT(axes[1].unit().dot(axes[2].unit()), WithinAbs(std::cos(0.4), 1e-14));
    CHECK_THAT(axes[1].unit().dot(axes[3].unit()), WithinAbs(std::cos(0.4), 1e-14));
    CHECK_THAT(axes[0].unit().dot(axes[3].unit()), WithinAbs(std::cos(1.2), 1e-14));
}

TEST_CASE("bell value from four correlators matches the oracle") {
    const CorrelatorSpec spec(named_observable(ObservableTag::quad_s1));
    for (double t : {0.1, 0.39, 1.0, 2.2}) {
        CHECK_THAT(bell_value_planar(spec, t), WithinAbs(oracle_planar(2, {-1, 0, 2}, t), 1e-10));
    }
}

TEST_CASE("scanner agrees with the operator path") {
    for (auto tag : {ObservableTag::linear, ObservableTag::quad_s1, ObservableTag::quad_s32,
                     ObservableTag::cubic_s32, ObservableTag::quartic_s2}) {
        const auto obs = named_observable(tag);
        const PlanarScanner scanner(obs.spin(), obs.degree(), 101);
        std::vector<double> grid(101);
        scanner.bell_on_grid(obs.coeffs(), obs.coeffs(), grid);
        const CorrelatorSpec spec(obs);
        for (int i = 0; i < 101; i += 7) {
            CHECK_THAT(grid[i], WithinAbs(bell_value_planar(spec, scanner.theta()[i]), 1e-10));
        }
        const auto series = scanner.model().series(obs.coeffs(), obs.coeffs());
        CHECK_THAT(PlanarScanner::bell_at(series, 0.77), WithinAbs(bell_value_planar(spec, 0.77), 1e-10));
    }
}

TEST_CASE("two-qubit maximum") {
    const auto r = planar_scan(CorrelatorSpec(named_observable(ObservableTag::linear)), 1001);
    CHECK_THAT(r.b_max, WithinAbs(2 * std::numbers::sqrt2, 1e-9));
    CHECK_THAT(r.theta_at_max, WithinAbs(std::numbers::pi / 4, 1e-5));
    CHECK(r.theta.size() == 1001);
    CHECK(r.theta.front() == 0.0);
    CHECK(r.theta.back() == std::numbers::pi);
}

TEST_CASE("named scans") {
    const auto q1 = planar_scan(CorrelatorSpec(named_observable(ObservableTag::quad_s1)), 2001);
    CHECK_THAT(q1.b_max, WithinAbs(2.5523, 1e-4));
    CHECK_THAT(q1.theta_at_max, WithinAbs(std::numbers::pi / 8, 1e-4));
    REQUIRE(q1.stats.intervals_theta.size() == 2);
    // B(0) = 2 exactly, so the interval opens just after 0.
    CHECK_THAT(q1.stats.intervals_theta[0].lo, WithinAbs(0.0, 1e-6));
    CHECK_THAT(q1.stats.intervals_theta[0].hi, WithinAbs(0.598, 1e-3));
    CHECK_THAT(q1.stats.intervals_theta[1].lo, WithinAbs(2.544, 1e-3));
    CHECK_THAT(q1.stats.intervals_3theta[0].hi, WithinAbs(3 * q1.stats.intervals_theta[0].hi, 1e-15));

    const auto q32 = planar_scan(CorrelatorSpec(named_observable(ObservableTag::quad_s32)), 2001);
    CHECK_THAT(q32.b_max, WithinAbs(2.6213, 1e-4));
    const auto q52 = planar_scan(CorrelatorSpec(named_observable(ObservableTag::quad, Spin(5))), 1001);
    CHECK(q52.b_max <= kLocalBound);
    CHECK(q52.stats.intervals_theta.empty());
    CHECK(q52.stats.fraction == 0.0);
}

TEST_CASE("violation statistics on a synthetic curve") {
    BellScanResult r;
    const int n = 2001;
    for (int i = 0; i < n; ++i) {
        const double t = std::numbers::pi * i / (n - 1);
        r.theta.push_back(t);
        r.bell.push_back(2.0 + std::cos(2 * t)); // above 2 on [0, pi/4) and (3pi/4, pi]
    }
    const auto st = violation_stats(r);
    REQUIRE(st.intervals_theta.size() == 2);
    CHECK_THAT(st.intervals_theta[0].hi, WithinAbs(std::numbers::pi / 4, 1e-6));
    CHECK_THAT(st.intervals_theta[1].lo, WithinAbs(3 * std::numbers::pi / 4, 1e-6));
    CHECK_THAT(st.measure_fraction, WithinAbs(0.5, 1e-6));
    // excess area 1, total area 2 pi
    CHECK_THAT(st.fraction, WithinAbs(1.0 / (2 * std::numbers::pi), 1e-6));
}

TEST_CASE("scan preconditions") {
    const CorrelatorSpec spec(named_observable(ObservableTag::linear));
    CHECK_THROWS_AS(planar_scan(spec, 50), DomainError);
}

TEST_CASE("four-angle search is deterministic and bounded") {
    const CorrelatorSpec spec(named_observable(ObservableTag::linear));
    const auto a = general_planar_search(spec, 8, 42);
    const auto b = general_planar_search(spec, 8, 42);
    CHECK(a.value == b.value);
    CHECK(a.config.alpha_b == b.config.alpha_b);
    CHECK_THAT(a.value, WithinAbs(2 * std::numbers::sqrt2, 1e-8));
    const CorrelatorSpec quad(named_observable(ObservableTag::quad_s1));
    const auto q = general_planar_search(quad, 8, 7);
    CHECK(q.value >= planar_scan(quad, 1001).b_max - 1e-12);
    CHECK(q.value <= 2 * std::numbers::sqrt2 + 1e-9);
    CHECK_THROWS_AS(general_planar_search(spec, 0, 1), DomainError);
}
