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
#include "bellscan/correlator.hpp"

#include <cmath>

#include "bellscan/errors.hpp"
#include "bellscan/legendre.hpp"

namespace bellscan {

CorrelatorSpec::CorrelatorSpec(PolyObservable a, PolyObservable b)
    : a_(std::move(a)), b_(std::move(b)) {
    if (a_.spin() != b_.spin()) {
        throw DomainError("both observables must act on the same spin");
    }
}

double correlate(const CorrelatorSpec &spec, const Axis &a, const Axis &b) {
    const auto state = singlet(spec.spin());
    return expectation(state, materialize(spec.a(), a), materialize(spec.b(), b));
}

ScalingFactors scaling_factors_at(double s) {
    if (s < 1.0) {
        throw DomainError("scaling factors are defined for s >= 1");
    }
    const double s3 = 30.0 * s * s * s;
    return {(2 * s * s * s + 4 * s * s + 3 * s + 1) / s3, (4 * s * s * s + 8 * s * s + s - 3) / s3};
}

ScalingFactors scaling_factors(Spin s) { return scaling_factors_at(s.value()); }

double closed_linear(Spin s, double theta) {
    const double sv = s.value();
    return -(sv + 1) / (3 * sv) * std::cos(theta);
}

double closed_quadratic(Spin s, double theta) {
    const auto [F, G] = scaling_factors(s);
    const double sv = s.value();
    const double c = std::cos(theta);
    return 4 * (F + G * c * c) - 4.0 / 3.0 * (sv + 1) / sv + 1;
}

double closed_legendre_s32(double theta) { return legendre_p(2, std::cos(theta)); }

UnverifiedClosedForm closed_quartic_s2(double theta) {
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = std::sin(theta) * std::sin(theta);
    return {7.0 / 10 + 45.0 / 32 * s2 * c2 + 39.0 / 640 * s2 * s2 + 51.0 / 32 * c2 * c2};
}

namespace {

bool coeffs_equal(const std::vector<double> &c, std::initializer_list<double> ref) {
    if (c.size() != ref.size()) {
        return false;
    }
    auto it = ref.begin();
    for (double v : c) {
        if (std::abs(v - *it++) > 1e-12) {
            return false;
        }
    }
    return true;
}

} // namespace

std::optional<ClosedFormRef> closed_form_for(const CorrelatorSpec &spec) {
    const auto &ca = spec.a().coeffs();
    if (ca != spec.b().coeffs()) {
        return std::nullopt;
    }
    const int twice = spec.spin().twice();
    if (coeffs_equal(ca, {0.0, 1.0})) {
        return ClosedFormRef{"linear", true, closed_linear};
    }
    if (coeffs_equal(ca, {-1.0, 0.0, 2.0}) && twice >= 2) {
        return ClosedFormRef{"quadratic", true, closed_quadratic};
    }
    if (coeffs_equal(ca, {-1.25, 0.0, 2.25}) && twice == 3) {
        return ClosedFormRef{"legendre_p2", true,
                             [](Spin, double theta) { return closed_legendre_s32(theta); }};
    }
    if (coeffs_equal(ca, {-1.0, 0.0, 0.0, 0.0, 2.0}) && twice == 4) {
        return ClosedFormRef{"quartic_printed", false,
                             [](Spin, double theta) { return closed_quartic_s2(theta).value; }};
    }
    return std::nullopt;
}

} // namespace bellscan
