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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bellscan/spin.hpp"

namespace bellscan {

/// Slack on the unit-norm bound; optimal coefficient sets sit on its boundary.
inline constexpr double kUnitNormSlack = 1e-9;

enum class Parity { any, even, odd };

/// Outcome of checking -1 <= p(m/s) <= 1 over all m.
struct UnitNormReport {
    bool ok = true;
    /// 2m of every violating projection, in basis order.
    std::vector<int> violating_twice_m;
    /// max_m |p(m/s)|
    double max_abs = 0.0;
};

/// Polynomial observable sum_l C_l (Sigma.a)^l with Sigma = S/s.
///
/// Coefficients are always held in the normalized convention. The invariants
/// (degree <= 2s, unit-norm bound) are checked on construction.
class PolyObservable {
  public:
    PolyObservable(Spin s, std::vector<double> coeffs);

    [[nodiscard]] Spin spin() const noexcept { return spin_; }
    [[nodiscard]] const std::vector<double> &coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    /// p(x) = sum_l C_l x^l
    [[nodiscard]] double value_at(double x) const;
    /// p(m/s) for every basis index (m = s first).
    [[nodiscard]] std::vector<double> spectrum() const;

    /// Coefficients of the same operator written in powers of S.a:
    /// C_l / s^l.
    [[nodiscard]] std::vector<double> raw_coeffs() const;

  private:
    Spin spin_;
    std::vector<double> coeffs_;
};

double poly_value(std::span<const double> coeffs, double x);

UnitNormReport check_unit_norm(Spin s, std::span<const double> coeffs);

/// Parity of the coefficient pattern (even: only even powers, odd: only odd).
bool has_parity(std::span<const double> coeffs, Parity parity, double tol = 0.0);

/// sum_l C_l (Sigma.a)^l. Eigenvalues are {p(m/s)}.
HermitianOperator materialize(const PolyObservable &obs, const Axis &axis);

/// Pi_{3/2} + Pi_{-3/2} - Pi_{1/2} - Pi_{-1/2} for s = 3/2. Equal to the
/// quad_s32 observable.
HermitianOperator projector_form_s32(const Axis &axis);

enum class ObservableTag { linear, quad, quad_s1, quad_s32, cubic_s32, cubic_s2, quartic_s2 };

/// Table of named observables. `quad` is 2 Sigma^2 - 1 at an arbitrary spin
/// (default s = 1); the other tags carry their own spin.
PolyObservable named_observable(ObservableTag tag);
PolyObservable named_observable(ObservableTag tag, Spin s);
std::vector<double> named_coefficients(ObservableTag tag);
/// Spin at which the tag is defined in the summary table.
Spin default_spin(ObservableTag tag);

std::optional<ObservableTag> parse_observable_tag(std::string_view name);
std::string_view to_string(ObservableTag tag);
std::string_view to_string(Parity p);
std::optional<Parity> parse_parity(std::string_view name);

} // namespace bellscan
