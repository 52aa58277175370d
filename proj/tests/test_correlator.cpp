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

#include "bellscan/correlation_model.hpp"
#include "bellscan/correlator.hpp"
#include "bellscan/errors.hpp"
#include "bellscan/legendre.hpp"
#include "oracle/wigner.hpp"

using namespace bellscan;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kOracleTol = 1e-10;

std::vector<double> theta_grid(int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) {
        t[i] = std::numbers::pi * i / (n - 1);
    }
    return t;
}

} // namespace

TEST_CASE("matrix oracle agrees with the Wigner-d reference") {
    const std::vector<std::pair<int, std::vector<double>>> cases = {
        {1, {0.0, 1.0}},
        {2, {-1.0, 0.0, 2.0}},
        {3, {-1.25, 0.0, 2.25}},
        {3, {0.0, -3.5, 0.0, 4.5}},
        {4, {0.0, -3.0, 0.0, 4.0}},
        {4, {-1.0, 0.0, 0.0, 0.0, 2.0}},
        {5, {0.2, 0.3, -0.1}},
        {12, {0.0, 1.0}},
    };
    for (const auto &[twice, c] : cases) {
        const CorrelatorSpec spec(PolyObservable(Spin(twice), c));
        for (double t : theta_grid(25)) {
            CHECK_THAT(correlate(spec, Axis::z(), Axis::in_plane(t)),
                       WithinAbs(oracle::singlet_correlator(twice, c, c, t), kOracleTol));
        }
    }
}

TEST_CASE("distinct observables on the two sides") {
    const Spin s(4);
    const std::vector<double> ca{0.0, -3.0, 0.0, 4.0};
    const std::vector<double> cb{-1.0, 0.0, 2.0};
    const CorrelatorSpec spec(PolyObservable(s, ca), PolyObservable(s, cb));
    CHECK(spec.max_degree() == 3);
    CHECK_FALSE(closed_form_for(spec));
    for (double t : {0.0, 0.5, 2.0}) {
        CHECK_THAT(correlate(spec, Axis::z(), Axis::in_plane(t)),
                   WithinAbs(oracle::singlet_correlator(4, ca, cb, t), kOracleTol));
    }
    CHECK_THROWS_AS(CorrelatorSpec(PolyObservable(Spin(2), {0.0, 1.0}),
                                   PolyObservable(Spin(3), {0.0, 1.0})),
                    DomainError);
}

TEST_CASE("closed forms agree with the matrix oracle") {
    const auto grid = theta_grid(100);
    for (int twice = 1; twice <= 12; ++twice) {
        const CorrelatorSpec spec(PolyObservable(Spin(twice), {0.0, 1.0}));
        for (double t : grid) {
            CHECK_THAT(closed_linear(Spin(twice), t),
                       WithinAbs(correlate(spec, Axis::z(), Axis::in_plane(t)), kOracleTol));
        }
    }
    for (int twice : {2, 3, 4, 5}) {
        const CorrelatorSpec spec(named_observable(ObservableTag::quad, Spin(twice)));
        const auto ref = closed_form_for(spec);
        REQUIRE(ref);
        CHECK(ref->trusted);
        for (double t : grid) {
            CHECK_THAT(closed_quadratic(Spin(twice), t),
                       WithinAbs(correlate(spec, Axis::z(), Axis::in_plane(t)), kOracleTol));
        }
    }
    const CorrelatorSpec p2(named_observable(ObservableTag::quad_s32));
    for (double t : grid) {
        CHECK_THAT(closed_legendre_s32(t),
                   WithinAbs(correlate(p2, Axis::z(), Axis::in_plane(t)), kOracleTol));
    }
}

TEST_CASE("spin-1 quadratic correlator") {
    const Spin s(2);
    for (double t : {0.0, 0.3, 1.0, 2.5}) {
        const double c = std::cos(t);
        CHECK_THAT(closed_quadratic(s, t), WithinAbs(4.0 / 3.0 * c * c - 1.0 / 3.0, 1e-14));
    }
}

TEST_CASE("printed quartic form is flagged and inconsistent") {
    const CorrelatorSpec spec(named_observable(ObservableTag::quartic_s2));
    const auto ref = closed_form_for(spec);
    REQUIRE(ref);
    CHECK_FALSE(ref->trusted);
    STATIC_CHECK_FALSE(UnverifiedClosedForm::verified);
    CHECK_THAT(correlate(spec, Axis::z(), Axis::z()), WithinAbs(0.90625, 1e-12));
    CHECK_THAT(closed_quartic_s2(0.0).value, WithinAbs(2.29375, 1e-12));
    // A correlator of two unit-norm observables cannot exceed 1.
    CHECK(closed_quartic_s2(0.0).value > 1.0);
}

TEST_CASE("scaling factors") {
    const auto f1 = scaling_factors(Spin(2));
    CHECK_THAT(f1.F, WithinAbs(1.0 / 3.0, 1e-15));
    CHECK_THAT(f1.G, WithinAbs(1.0 / 3.0, 1e-15));
    CHECK_THROWS_AS(scaling_factors(Spin(1)), DomainError);
    double prev_f = 1.0;
    double prev_g = 1.0;
    for (int twice = 2; twice <= 12; ++twice) {
        const auto f = scaling_factors(Spin(twice));
        CHECK(f.F < prev_f);
        CHECK(f.G < prev_g);
        CHECK(f.F > 1.0 / 15.0);
        CHECK(f.G > 2.0 / 15.0);
        prev_f = f.F;
        prev_g = f.G;
    }
    const auto big = scaling_factors_at(1e6);
    CHECK_THAT(big.F, WithinAbs(1.0 / 15.0, 1e-6));
    CHECK_THAT(big.G, WithinAbs(2.0 / 15.0, 1e-6));
}

TEST_CASE("scaling factors match the fourth moments") {
    // <(Sigma.a)^2 (Sigma.b)^2> = F + G cos^2 theta
    for (int twice = 2; twice <= 8; ++twice) {
        const Spin s(twice);
        const auto [F, G] = scaling_factors(s);
        const std::vector<double> sq{0.0, 0.0, 1.0};
        for (double t : {0.0, 0.8, 1.9}) {
            const double c = std::cos(t);
            CHECK_THAT(oracle::singlet_correlator(twice, sq, sq, t),
                       WithinAbs(F + G * c * c, 1e-12));
        }
    }
}

TEST_CASE("legendre helpers") {
    std::vector<double> p(6);
    legendre_all(0.3, p);
    CHECK_THAT(p[2], WithinAbs(0.5 * (3 * 0.09 - 1), 1e-15));
    CHECK_THAT(p[3], WithinAbs(0.5 * (5 * 0.027 - 3 * 0.3), 1e-15));
    for (int d = 0; d < 6; ++d) {
        CHECK_THAT(legendre_p(d, 0.3), WithinAbs(p[d], 1e-15));
    }
    const std::vector<double> series{0.5, -1.0, 0.25, 2.0};
    double direct = 0.0;
    for (std::size_t j = 0; j < series.size(); ++j) {
        direct += series[j] * p[j];
    }
    CHECK_THAT(legendre_series_value(series, 0.3), WithinAbs(direct, 1e-14));

    for (int n : {1, 2, 5, 10}) {
        const auto rule = gauss_legendre(n);
        // Exact for polynomials of degree 2n - 1.
        for (int d = 0; d < 2 * n; ++d) {
            double sum = 0.0;
            for (int i = 0; i < n; ++i) {
                sum += rule.weights[i] * std::pow(rule.nodes[i], d);
            }
            const double exact = d % 2 == 0 ? 2.0 / (d + 1) : 0.0;
            CHECK_THAT(sum, WithinAbs(exact, 1e-13));
        }
    }
}

TEST_CASE("correlation model reproduces the oracle") {
    for (int twice = 1; twice <= 8; ++twice) {
        const Spin s(twice);
        const int k = std::min(twice, 4);
        const CorrelationModel model(s, k);
        std::vector<double> ca(k + 1);
        std::vector<double> cb(k + 1);
        for (int l = 0; l <= k; ++l) {
            ca[l] = std::sin(1.0 + l);
            cb[l] = std::cos(2.0 * l);
        }
        for (double t : theta_grid(17)) {
            CHECK_THAT(model.correlation(ca, cb, t),
                       WithinAbs(oracle::singlet_correlator(twice, ca, cb, t), 1e-11));
        }
        const auto series = model.series(ca, cb);
        CHECK(static_cast<int>(series.size()) == k + 1);
    }
    CHECK_THROWS_AS(CorrelationModel(Spin(2), 3), DegreeError);
}
