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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bellscan/correlation_model.hpp"
#include "bellscan/correlator.hpp"

namespace bellscan {

/// Local-realistic bound on the Bell function.
inline constexpr double kLocalBound = 2.0;
/// B must exceed kLocalBound by more than this to count as a violation.
inline constexpr double kViolationTol = 1e-9;

/// One-parameter coplanar family: theta_ab = theta_a'b = theta_a'b' = theta,
/// theta_ab' = 3 theta.
struct PlanarConfig {
    double theta = 0.0;
};

/// Axes (a, a', b, b') of the planar family, all in the x-z plane:
/// a at 0, b at theta, a' at 2 theta, b' at 3 theta.
std::array<Axis, 4> planar_axes(double theta);

/// Four free coplanar axis angles.
struct GeneralPlanarConfig {
    double alpha_a = 0.0;
    double alpha_a2 = 0.0;
    double alpha_b = 0.0;
    double alpha_b2 = 0.0;
};

struct Interval {
    double lo;
    double hi;
};

struct ViolationStats {
    /// Excess area over total area: int (B - 2)_+ dtheta / int B dtheta.
    double fraction = 0.0;
    /// Lebesgue measure of {theta : B > 2} divided by the scanned length.
    double measure_fraction = 0.0;
    std::vector<Interval> intervals_theta;
    /// Same intervals in the theta_ab' = 3 theta variable.
    std::vector<Interval> intervals_3theta;
};

struct BellScanResult {
    std::vector<double> theta;
    std::vector<double> bell;
    double b_max = 0.0;
    double theta_at_max = 0.0;
    ViolationStats stats;
};

/// |C(a,b) - C(a,b')| + |C(a',b) + C(a',b')| with correlate() for each term.
double bell_value(const CorrelatorSpec &spec, const Axis &a, const Axis &a2, const Axis &b,
                  const Axis &b2);

/// bell_value on the planar family at theta.
double bell_value_planar(const CorrelatorSpec &spec, double theta);

/// Grid scanner over the planar family, reusable across coefficient vectors
/// of one spin. Grid tables P_j(cos theta_i), P_j(cos 3 theta_i) are built
/// once; each scan is then a few SIMD passes.
class PlanarScanner {
  public:
    PlanarScanner(Spin s, int max_degree, int grid_points);

    [[nodiscard]] const CorrelationModel &model() const noexcept { return model_; }
    [[nodiscard]] std::span<const double> theta() const noexcept { return theta_; }
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
    [[nodiscard]] int grid_points() const noexcept { return static_cast<int>(theta_.size()); }

    /// B on the grid.
    void bell_on_grid(std::span<const double> ca, std::span<const double> cb,
                      std::span<double> out) const;

    /// B at an arbitrary theta from a precomputed Legendre series.
    [[nodiscard]] static double bell_at(std::span<const double> series, double theta);

    struct Peak {
        double b_max;
        double theta;
    };
    /// Grid maximum refined by golden-section search in the neighbouring
    /// cells. Ties go to the smallest theta.
    [[nodiscard]] Peak peak(std::span<const double> ca, std::span<const double> cb) const;

    [[nodiscard]] BellScanResult scan(std::span<const double> ca, std::span<const double> cb) const;

  private:
    CorrelationModel model_;
    std::vector<double> theta_;
    std::vector<double> weights_;
    std::vector<double> rows1_;
    std::vector<double> rows3_;
};

/// Scan of the planar family over theta in [0, pi]; grid_points >= 100.
BellScanResult planar_scan(const CorrelatorSpec &spec, int grid_points);

/// Intervals and fractions from a sampled scan (piecewise-linear in theta).
ViolationStats violation_stats(const BellScanResult &result);

struct GeneralSearchResult {
    GeneralPlanarConfig config;
    double value = 0.0;
};

/// Multi-start compass search over four coplanar axis angles. Deterministic
/// for a fixed seed; restarts use seeds derived from it.
GeneralSearchResult general_planar_search(const CorrelatorSpec &spec, int restarts,
                                          std::uint64_t seed);

} // namespace bellscan
