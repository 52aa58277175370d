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

#include <cmath>
#include <span>
#include <vector>

namespace bellscan {

/// P_0(x) .. P_{out.size()-1}(x) by the three-term recurrence.
inline void legendre_all(double x, std::span<double> out) {
    if (out.empty()) {
        return;
    }
    out[0] = 1.0;
    if (out.size() > 1) {
        out[1] = x;
    }
    for (std::size_t j = 2; j < out.size(); ++j) {
        const double jj = static_cast<double>(j);
        out[j] = ((2 * jj - 1) * x * out[j - 1] - (jj - 1) * out[j - 2]) / jj;
    }
}

inline double legendre_p(int degree, double x) {
    double p0 = 1.0;
    if (degree == 0) {
        return p0;
    }
    double p1 = x;
    for (int j = 2; j <= degree; ++j) {
        const double p2 = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

/// sum_j series[j] P_j(x), Clenshaw.
inline double legendre_series_value(std::span<const double> series, double x) {
    double b1 = 0.0;
    double b2 = 0.0;
    for (std::size_t k = series.size(); k-- > 0;) {
        const double kk = static_cast<double>(k);
        const double alpha = (2 * kk + 1) / (kk + 1) * x;
        const double beta = -(kk + 1) / (kk + 2);
        const double b0 = series[k] + alpha * b1 + beta * b2;
        b2 = b1;
        b1 = b0;
    }
    return b1;
}

struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], exact for polynomials of degree
/// 2n - 1.
inline GaussLegendreRule gauss_legendre(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    constexpr double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (int j = 2; j <= n; ++j) {
            const double p2 = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

} // namespace bellscan
