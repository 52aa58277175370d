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
#include "bellscan/observable.hpp"

#include <cmath>
#include <sstream>

#include "bellscan/errors.hpp"

namespace bellscan {

double poly_value(std::span<const double> coeffs, double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

UnitNormReport check_unit_norm(Spin s, std::span<const double> coeffs) {
    UnitNormReport report;
    for (int i = 0; i < s.dim(); ++i) {
        const double v = poly_value(coeffs, s.m_at(i) / s.value());
        report.max_abs = std::max(report.max_abs, std::abs(v));
        if (std::abs(v) > 1.0 + kUnitNormSlack) {
            report.ok = false;
            report.violating_twice_m.push_back(s.twice() - 2 * i);
        }
    }
    return report;
}

bool has_parity(std::span<const double> coeffs, Parity parity, double tol) {
    if (parity == Parity::any) {
        return true;
    }
    const std::size_t skip = parity == Parity::even ? 1 : 0;
    for (std::size_t l = skip; l < coeffs.size(); l += 2) {
        if (std::abs(coeffs[l]) > tol) {
            return false;
        }
    }
    return true;
}

PolyObservable::PolyObservable(Spin s, std::vector<double> coeffs)
    : spin_(s), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        throw DomainError("observable needs at least one coefficient");
    }
    if (degree() > s.twice()) {
        throw DegreeError("degree " + std::to_string(degree()) + " exceeds 2s = " +
                          std::to_string(s.twice()));
    }
    const auto report = check_unit_norm(s, coeffs_);
    if (!report.ok) {
        std::ostringstream os;
        os << "coefficients break the unit-norm bound (max |p(m/s)| = " << report.max_abs
           << ") at 2m =";
        for (int tm : report.violating_twice_m) {
            os << ' ' << tm;
        }
        throw ConstraintError(os.str());
    }
}

double PolyObservable::value_at(double x) const { return poly_value(coeffs_, x); }

std::vector<double> PolyObservable::spectrum() const {
    std::vector<double> out(spin_.dim());
    for (int i = 0; i < spin_.dim(); ++i) {
        out[i] = value_at(spin_.m_at(i) / spin_.value());
    }
    return out;
}

std::vector<double> PolyObservable::raw_coeffs() const {
    std::vector<double> out(coeffs_.size());
    double scale = 1.0;
    for (std::size_t l = 0; l < coeffs_.size(); ++l) {
        out[l] = coeffs_[l] / scale;
        scale *= spin_.value();
    }
    return out;
}

HermitianOperator materialize(const PolyObservable &obs, const Axis &axis) {
    const auto sigma = axis_component(obs.spin(), axis, true);
    const int n = obs.spin().dim();
    const auto &c = obs.coeffs();
    // Horner in the operator.
    ComplexMatrix acc = ComplexMatrix::Identity(n, n) * c.back();
    for (auto it = c.rbegin() + 1; it != c.rend(); ++it) {
        acc = acc * sigma.matrix() + ComplexMatrix::Identity(n, n) * (*it);
    }
    return HermitianOperator(0.5 * (acc + acc.adjoint()));
}

HermitianOperator projector_form_s32(const Axis &axis) {
    const Spin s(3);
    return projector(s, axis, 3) + projector(s, axis, -3) - projector(s, axis, 1) -
           projector(s, axis, -1);
}

std::vector<double> named_coefficients(ObservableTag tag) {
    switch (tag) {
    case ObservableTag::linear:
        return {0.0, 1.0};
    case ObservableTag::quad:
    case ObservableTag::quad_s1:
        return {-1.0, 0.0, 2.0};
    case ObservableTag::quad_s32:
        return {-1.25, 0.0, 2.25};
    case ObservableTag::cubic_s32:
        return {0.0, -3.5, 0.0, 4.5};
    case ObservableTag::cubic_s2:
        return {0.0, -3.0, 0.0, 4.0};
    case ObservableTag::quartic_s2:
        return {-1.0, 0.0, 0.0, 0.0, 2.0};
    }
    throw DomainError("unknown observable tag");
}

Spin default_spin(ObservableTag tag) {
    switch (tag) {
    case ObservableTag::linear:
        return Spin(1);
    case ObservableTag::quad:
    case ObservableTag::quad_s1:
        return Spin(2);
    case ObservableTag::quad_s32:
    case ObservableTag::cubic_s32:
        return Spin(3);
    case ObservableTag::cubic_s2:
    case ObservableTag::quartic_s2:
        return Spin(4);
    }
    throw DomainError("unknown observable tag");
}

PolyObservable named_observable(ObservableTag tag) {
    return {default_spin(tag), named_coefficients(tag)};
}

PolyObservable named_observable(ObservableTag tag, Spin s) {
    return {s, named_coefficients(tag)};
}

namespace {
struct TagName {
    ObservableTag tag;
    std::string_view name;
};
constexpr TagName kTagNames[] = {
    {ObservableTag::linear, "linear"},       {ObservableTag::quad, "quad"},
    {ObservableTag::quad_s1, "quad_s1"},     {ObservableTag::quad_s32, "quad_s32"},
    {ObservableTag::cubic_s32, "cubic_s32"}, {ObservableTag::cubic_s2, "cubic_s2"},
    {ObservableTag::quartic_s2, "quartic_s2"},
};
} // namespace

std::optional<ObservableTag> parse_observable_tag(std::string_view name) {
    for (const auto &t : kTagNames) {
        if (t.name == name) {
            return t.tag;
        }
    }
    return std::nullopt;
}

std::string_view to_string(ObservableTag tag) {
    for (const auto &t : kTagNames) {
        if (t.tag == tag) {
            return t.name;
        }
    }
    return "?";
}

std::string_view to_string(Parity p) {
    switch (p) {
    case Parity::any:
        return "any";
    case Parity::even:
        return "even";
    case Parity::odd:
        return "odd";
    }
    return "?";
}

std::optional<Parity> parse_parity(std::string_view name) {
    if (name == "any") {
        return Parity::any;
    }
    if (name == "even") {
        return Parity::even;
    }
    if (name == "odd") {
        return Parity::odd;
    }
    return std::nullopt;
}

} // namespace bellscan
