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

#include <optional>
#include <string>

#include "bellscan/observable.hpp"
#include "bellscan/state.hpp"

namespace bellscan {

/// Pair of same-order observables measured on the two halves of the singlet.
class CorrelatorSpec {
  public:
    CorrelatorSpec(PolyObservable a, PolyObservable b);
    /// Same observable on both sides.
    explicit CorrelatorSpec(const PolyObservable &both) : CorrelatorSpec(both, both) {}

    [[nodiscard]] Spin spin() const noexcept { return a_.spin(); }
    [[nodiscard]] const PolyObservable &a() const noexcept { return a_; }
    [[nodiscard]] const PolyObservable &b() const noexcept { return b_; }
    [[nodiscard]] int max_degree() const noexcept { return std::max(a_.degree(), b_.degree()); }

  private:
    PolyObservable a_;
    PolyObservable b_;
};

/// <0_s| O_A(a) O_B(b) |0_s> through explicit operator matrices. This is the
/// reference every faster path is checked against.
double correlate(const CorrelatorSpec &spec, const Axis &a, const Axis &b);

/// F(s), G(s) in <(Sigma.a)^2 (Sigma.b)^2> = F + G cos^2(theta).
struct ScalingFactors {
    double F;
    double G;
};

ScalingFactors scaling_factors(Spin s);
/// Same formula at a real-valued s; used for large-s limits.
ScalingFactors scaling_factors_at(double s);

/// -(s+1)/(3s) cos(theta) for O = Sigma.a.
double closed_linear(Spin s, double theta);

/// Correlator of O = 2(Sigma.a)^2 - 1 on both sides, s >= 1.
double closed_quadratic(Spin s, double theta);

/// P_2(cos theta): the s = 3/2 optimum (9/4 Sigma^2 - 5/4).
double closed_legendre_s32(double theta);

/// Value of a printed closed form that does not agree with the operator
/// calculation. Kept for comparison only.
struct UnverifiedClosedForm {
    double value;
    static constexpr bool verified = false;
};

/// Printed quartic s = 2 correlator for O = 2(Sigma.a)^4 - 1. It exceeds 1 at
/// theta = 0, so it cannot be the correlator of a unit-norm observable.
UnverifiedClosedForm closed_quartic_s2(double theta);

/// Closed form matching a spec, if one is known.
struct ClosedFormRef {
    std::string name;
    bool trusted;
    double (*evaluate)(Spin, double);
};

std::optional<ClosedFormRef> closed_form_for(const CorrelatorSpec &spec);

} // namespace bellscan
