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
#include "bellscan/bell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bellscan/errors.hpp"
#include "bellscan/legendre.hpp"
#include "bellscan/parallel.hpp"
#include "bellscan/rng.hpp"
#include "bellscan/simd/kernels.hpp"

namespace bellscan {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kGolden = 0.6180339887498949;

/// Golden-section maximization of f on [lo, hi].
template <class F> std::pair<double, double> golden_max(F &&f, double lo, double hi, double tol) {
    double x1 = hi - kGolden * (hi - lo);
    double x2 = lo + kGolden * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = f(x2);
        }
    }
    const double x = 0.5 * (lo + hi);
    return {x, f(x)};
}
} // namespace

std::array<Axis, 4> planar_axes(double theta) {
    return {Axis::in_plane(0.0), Axis::in_plane(2 * theta), Axis::in_plane(theta),
            Axis::in_plane(3 * theta)};
}

double bell_value(const CorrelatorSpec &spec, const Axis &a, const Axis &a2, const Axis &b,
                  const Axis &b2) {
    return std::abs(correlate(spec, a, b) - correlate(spec, a, b2)) +
           std::abs(correlate(spec, a2, b) + correlate(spec, a2, b2));
}

double bell_value_planar(const CorrelatorSpec &spec, double theta) {
    const auto [a, a2, b, b2] = planar_axes(theta);
    return bell_value(spec, a, a2, b, b2);
}

PlanarScanner::PlanarScanner(Spin s, int max_degree, int grid_points)
    : model_(s, max_degree) {
    if (grid_points < 2) {
        throw DomainError("planar scan needs at least two grid points");
    }
    const auto n = static_cast<std::size_t>(grid_points);
    const int k1 = max_degree + 1;
    theta_.resize(n);
    weights_.resize(n);
    rows1_.resize(n * k1);
    rows3_.resize(n * k1);
    const double h = kPi / static_cast<double>(n - 1);
    std::vector<double> p1(k1);
    std::vector<double> p3(k1);
    for (std::size_t i = 0; i < n; ++i) {
        theta_[i] = (i + 1 == n) ? kPi : h * static_cast<double>(i);
        weights_[i] = (i == 0 || i + 1 == n) ? 0.5 * h : h;
        legendre_all(std::cos(theta_[i]), p1);
        legendre_all(std::cos(3 * theta_[i]), p3);
        for (int j = 0; j < k1; ++j) {
            rows1_[j * n + i] = p1[j];
            rows3_[j * n + i] = p3[j];
        }
    }
}

void PlanarScanner::bell_on_grid(std::span<const double> ca, std::span<const double> cb,
                                 std::span<double> out) const {
    const auto &k = simd::active_kernels();
    const auto beta = model_.series(ca, cb);
    const std::size_t n = theta_.size();
    std::vector<double> c1(n);
    std::vector<double> c3(n);
    k.accumulate_rows(beta, rows1_, n, c1);
    k.accumulate_rows(beta, rows3_, n, c3);
    k.chsh_planar(c1, c3, out);
}

double PlanarScanner::bell_at(std::span<const double> series, double theta) {
    const double c1 = legendre_series_value(series, std::cos(theta));
    const double c3 = legendre_series_value(series, std::cos(3 * theta));
    return std::abs(c1 - c3) + 2 * std::abs(c1);
}

PlanarScanner::Peak PlanarScanner::peak(std::span<const double> ca,
                                        std::span<const double> cb) const {
    const std::size_t n = theta_.size();
    std::vector<double> b(n);
    bell_on_grid(ca, cb, b);
    const auto st = simd::active_kernels().excess_stats(b, weights_, kLocalBound);
    // First grid point within rounding of the maximum; symmetric curves
    // otherwise pick a mirror image at random.
    const double tie = 1e-12 * std::max(1.0, std::abs(st.max_value));
    std::size_t i = st.argmax;
    for (std::size_t j = 0; j < i; ++j) {
        if (b[j] >= st.max_value - tie) {
            i = j;
            break;
        }
    }
    const double lo = theta_[i == 0 ? 0 : i - 1];
    const double hi = theta_[i + 1 == n ? n - 1 : i + 1];
    const auto beta = model_.series(ca, cb);
    const auto [x, fx] = golden_max([&](double t) { return bell_at(beta, t); }, lo, hi, 1e-10);
    if (fx > b[i]) {
        return {fx, x};
    }
    return {b[i], theta_[i]};
}

BellScanResult PlanarScanner::scan(std::span<const double> ca, std::span<const double> cb) const {
    BellScanResult r;
    r.theta = theta_;
    r.bell.resize(theta_.size());
    bell_on_grid(ca, cb, r.bell);
    const auto p = peak(ca, cb);
    r.b_max = p.b_max;
    r.theta_at_max = p.theta;
    r.stats = violation_stats(r);
    return r;
}

BellScanResult planar_scan(const CorrelatorSpec &spec, int grid_points) {
    if (grid_points < 100) {
        throw DomainError("planar scan needs at least 100 grid points");
    }
    const PlanarScanner scanner(spec.spin(), spec.max_degree(), grid_points);
    return scanner.scan(spec.a().coeffs(), spec.b().coeffs());
}

ViolationStats violation_stats(const BellScanResult &result) {
    ViolationStats st;
    const auto &t = result.theta;
    const auto &b = result.bell;
    const std::size_t n = t.size();
    if (n < 2) {
        return st;
    }
    const double thr = kLocalBound + kViolationTol;
    double total = 0.0;
    double excess = 0.0;
    double measure = 0.0;
    bool inside = b[0] > thr;
    double start = t[0];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = t[i + 1] - t[i];
        const double b0 = b[i];
        const double b1 = b[i + 1];
        total += 0.5 * h * (b0 + b1);
        // Excess area of the linear interpolant above kLocalBound.
        const double e0 = b0 - kLocalBound;
        const double e1 = b1 - kLocalBound;
        if (e0 >= 0 && e1 >= 0) {
            excess += 0.5 * h * (e0 + e1);
        } else if (e0 > 0 || e1 > 0) {
            const double pos = std::max(e0, e1);
            excess += 0.5 * h * pos * pos / (std::abs(e0) + std::abs(e1));
        }
        const bool next_inside = b1 > thr;
        if (next_inside != inside) {
            const double cross = t[i] + h * (thr - b0) / (b1 - b0);
            if (next_inside) {
                start = cross;
            } else {
                st.intervals_theta.push_back({start, cross});
                measure += cross - start;
            }
            inside = next_inside;
        }
    }
    if (inside) {
        st.intervals_theta.push_back({start, t[n - 1]});
        measure += t[n - 1] - start;
    }
    for (const auto &iv : st.intervals_theta) {
        st.intervals_3theta.push_back({3 * iv.lo, 3 * iv.hi});
    }
    st.fraction = total > 0 ? excess / total : 0.0;
    st.measure_fraction = measure / (t[n - 1] - t[0]);
    return st;
}

namespace {

double general_objective(std::span<const double> beta, const GeneralPlanarConfig &c) {
    auto corr = [&](double x, double y) { return legendre_series_value(beta, std::cos(x - y)); };
    return std::abs(corr(c.alpha_a, c.alpha_b) - corr(c.alpha_a, c.alpha_b2)) +
           std::abs(corr(c.alpha_a2, c.alpha_b) + corr(c.alpha_a2, c.alpha_b2));
}

double wrap_angle(double a) {
    a = std::fmod(a, 2 * kPi);
    return a < 0 ? a + 2 * kPi : a;
}

GeneralSearchResult compass_search(std::span<const double> beta, GeneralPlanarConfig start) {
    std::array<double *, 4> coord{&start.alpha_a, &start.alpha_a2, &start.alpha_b,
                                  &start.alpha_b2};
    double best = general_objective(beta, start);
    double step = 0.4;
    while (step > 1e-10) {
        bool improved = false;
        for (double *x : coord) {
            for (double dir : {1.0, -1.0}) {
                const double old = *x;
                *x = old + dir * step;
                const double v = general_objective(beta, start);
                if (v > best + 1e-15) {
                    best = v;
                    improved = true;
                    break;
                }
                *x = old;
            }
        }
        if (!improved) {
            step *= 0.5;
        }
    }
    for (double *x : coord) {
        *x = wrap_angle(*x);
    }
    return {start, best};
}

} // namespace

GeneralSearchResult general_planar_search(const CorrelatorSpec &spec, int restarts,
                                          std::uint64_t seed) {
    if (restarts < 1) {
        throw DomainError("general planar search needs at least one restart");
    }
    const CorrelationModel model(spec.spin(), spec.max_degree());
    const auto beta = model.series(spec.a().coeffs(), spec.b().coeffs());
    // Restart 0 starts from the planar optimum, so the result never falls
    // below the one-parameter family.
    const auto planar = PlanarScanner(spec.spin(), spec.max_degree(), 1001)
                            .peak(spec.a().coeffs(), spec.b().coeffs());
    std::vector<GeneralSearchResult> results(restarts);
    parallel_for(static_cast<std::size_t>(restarts), [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            Rng rng(derive_seed(seed, r));
            GeneralPlanarConfig c{2 * kPi * uniform01(rng), 2 * kPi * uniform01(rng),
                                  2 * kPi * uniform01(rng), 2 * kPi * uniform01(rng)};
            if (r == 0) {
                c = {0.0, 2 * planar.theta, planar.theta, 3 * planar.theta};
            }
            results[r] = compass_search(beta, c);
        }
    });
    GeneralSearchResult best = results[0];
    for (const auto &r : results) {
        if (r.value > best.value) {
            best = r;
        }
    }
    return best;
}

} // namespace bellscan
