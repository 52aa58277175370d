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
#include "bellscan/search.hpp"

#include <algorithm>
#include <cmath>

#include "bellscan/errors.hpp"
#include "bellscan/parallel.hpp"
#include "bellscan/simd/kernels.hpp"

namespace bellscan {

bool ConstraintPolytope::contains(std::span<const double> c, double tol) const {
    for (const auto &h : halfspaces) {
        double v = 0.0;
        for (std::size_t l = 0; l < c.size() && l < h.normal.size(); ++l) {
            v += h.normal[l] * c[l];
        }
        if (v > h.bound + tol) {
            return false;
        }
    }
    return true;
}

int ConstraintPolytope::active_count(std::span<const double> c, double tol) const {
    int active = 0;
    for (const auto &h : halfspaces) {
        double v = 0.0;
        for (std::size_t l = 0; l < c.size() && l < h.normal.size(); ++l) {
            v += h.normal[l] * c[l];
        }
        if (std::abs(v - h.bound) <= tol) {
            ++active;
        }
    }
    return active;
}

std::vector<double> ConstraintPolytope::nodes() const {
    std::vector<double> x(spin.dim());
    for (int i = 0; i < spin.dim(); ++i) {
        x[i] = spin.m_at(i) / spin.value();
    }
    return x;
}

ConstraintPolytope build_polytope(Spin s, int degree) {
    if (degree < 1) {
        throw DegreeError("polytope degree must be at least 1");
    }
    if (degree > s.twice()) {
        throw DegreeError("degree " + std::to_string(degree) + " exceeds 2s = " +
                          std::to_string(s.twice()));
    }
    ConstraintPolytope p{s, degree, {}};
    for (int i = 0; i < s.dim(); ++i) {
        const double x = s.m_at(i) / s.value();
        std::vector<double> row(degree + 1);
        double pw = 1.0;
        for (int l = 0; l <= degree; ++l) {
            row[l] = pw;
            pw *= x;
        }
        for (int sign : {1, -1}) {
            Halfspace h;
            h.normal = row;
            if (sign < 0) {
                for (double &v : h.normal) {
                    v = -v;
                }
            }
            h.twice_m = s.twice() - 2 * i;
            h.sign = sign;
            p.halfspaces.push_back(std::move(h));
        }
    }
    return p;
}

std::vector<std::vector<double>> enumerate_vertices(const ConstraintPolytope &p) {
    const int k1 = p.degree + 1;
    if (k1 > 5) {
        throw DegreeError("vertex enumeration supports degree <= 4");
    }
    const int nh = static_cast<int>(p.halfspaces.size());
    std::vector<std::vector<double>> out;
    std::vector<int> pick(k1);
    for (int i = 0; i < k1; ++i) {
        pick[i] = i;
    }
    Eigen::MatrixXd a(k1, k1);
    Eigen::VectorXd rhs(k1);
    auto consider = [&] {
        for (int r = 0; r < k1; ++r) {
            const auto &h = p.halfspaces[pick[r]];
            for (int c = 0; c < k1; ++c) {
                a(r, c) = h.normal[c];
            }
            rhs(r) = h.bound;
        }
        const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
        if (lu.rank() < k1) {
            return;
        }
        const Eigen::VectorXd x = lu.solve(rhs);
        std::vector<double> v(x.data(), x.data() + k1);
        for (double &c : v) {
            if (std::abs(c) < 1e-12) {
                c = 0.0;
            }
        }
        if (!p.contains(v, 1e-9)) {
            return;
        }
        for (const auto &o : out) {
            bool same = true;
            for (int c = 0; c < k1 && same; ++c) {
                same = std::abs(o[c] - v[c]) <= 1e-8;
            }
            if (same) {
                return;
            }
        }
        out.push_back(std::move(v));
    };
    // Walk all k1-subsets of halfspace indices.
    while (true) {
        consider();
        int i = k1 - 1;
        while (i >= 0 && pick[i] == nh - k1 + i) {
            --i;
        }
        if (i < 0) {
            break;
        }
        ++pick[i];
        for (int j = i + 1; j < k1; ++j) {
            pick[j] = pick[j - 1] + 1;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string_view to_string(SearchMethod m) {
    return m == SearchMethod::grid ? "grid" : "vertex";
}

namespace {

std::vector<double> lattice_values(double bounds, double step) {
    if (!(step > 0) || !(bounds > 0)) {
        throw DomainError("lattice bounds and step must be positive");
    }
    const double ratio = bounds / step;
    std::vector<double> v;
    if (std::abs(ratio - std::round(ratio)) < 1e-9) {
        const long half = std::lround(ratio);
        for (long i = -half; i <= half; ++i) {
            v.push_back(static_cast<double>(i) * step);
        }
    } else {
        for (double x = -bounds; x <= bounds + 1e-12; x += step) {
            v.push_back(x);
        }
    }
    return v;
}

struct Candidate {
    std::vector<double> coeffs;
    double b_max;
    double theta;
};

/// Replace incumbent when strictly better, or tied and lexicographically
/// smaller.
bool better(const Candidate &c, const Candidate &incumbent) {
    if (c.b_max > incumbent.b_max + kViolationTol) {
        return true;
    }
    if (c.b_max >= incumbent.b_max - kViolationTol) {
        return c.coeffs < incumbent.coeffs;
    }
    return false;
}

std::vector<Candidate> evaluate_all(const PlanarScanner &scanner,
                                    const std::vector<std::vector<double>> &points) {
    std::vector<Candidate> out(points.size());
    parallel_for(points.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto pk = scanner.peak(points[i], points[i]);
            out[i] = {points[i], pk.b_max, pk.theta};
        }
    });
    return out;
}

Candidate reduce_best(const std::vector<Candidate> &cands) {
    Candidate best = cands.front();
    for (const auto &c : cands) {
        if (better(c, best)) {
            best = c;
        }
    }
    return best;
}

bool feasible(const simd::KernelTable &k, std::span<const double> c,
              std::span<const double> nodes) {
    return k.max_abs_poly(c, nodes) <= 1.0 + kUnitNormSlack;
}

} // namespace

std::vector<std::vector<double>> feasible_lattice(const ConstraintPolytope &p, double bounds,
                                                  double step, Parity parity) {
    const auto values = lattice_values(bounds, step);
    const auto nodes = p.nodes();
    const int k1 = p.degree + 1;
    const std::size_t m = values.size();
    std::size_t total = 1;
    for (int i = 0; i < k1; ++i) {
        total *= m;
    }
    const auto &kern = simd::active_kernels();
    // Split the flat index range, keep per-chunk results, concatenate in order.
    const std::size_t chunks = 64;
    std::vector<std::vector<std::vector<double>>> parts(chunks);
    parallel_for(chunks, [&](std::size_t cb, std::size_t ce) {
        std::vector<double> c(k1);
        for (std::size_t ch = cb; ch < ce; ++ch) {
            const std::size_t lo = total * ch / chunks;
            const std::size_t hi = total * (ch + 1) / chunks;
            for (std::size_t flat = lo; flat < hi; ++flat) {
                std::size_t rem = flat;
                for (int l = k1 - 1; l >= 0; --l) {
                    c[l] = values[rem % m];
                    rem /= m;
                }
                if (!has_parity(c, parity) || !feasible(kern, c, nodes)) {
                    continue;
                }
                parts[ch].push_back(c);
            }
        }
    });
    std::vector<std::vector<double>> out;
    for (auto &part : parts) {
        for (auto &c : part) {
            out.push_back(std::move(c));
        }
    }
    return out;
}

SearchResult grid_search(const ConstraintPolytope &p, const GridSearchOptions &options) {
    const auto points = feasible_lattice(p, options.bounds, options.step, options.parity);
    if (points.empty()) {
        throw DomainError("no feasible lattice point");
    }
    const PlanarScanner scanner(p.spin, p.degree, options.scan_points);
    SearchResult result;
    result.method = SearchMethod::grid;
    result.feasible_points = points.size();
    result.samples_evaluated = points.size();
    Candidate best = reduce_best(evaluate_all(scanner, points));

    if (options.refine) {
        const auto nodes = p.nodes();
        const auto &kern = simd::active_kernels();
        const int k1 = p.degree + 1;
        for (int iter = 0; iter < 100; ++iter) {
            std::vector<std::vector<double>> hood;
            std::size_t combos = 1;
            for (int l = 0; l < k1; ++l) {
                combos *= 5;
            }
            std::vector<double> c(k1);
            for (std::size_t flat = 0; flat < combos; ++flat) {
                std::size_t rem = flat;
                bool inside = true;
                for (int l = k1 - 1; l >= 0; --l) {
                    const int offset = static_cast<int>(rem % 5) - 2;
                    rem /= 5;
                    c[l] = best.coeffs[l] + offset * options.refine_step;
                    if (std::abs(c[l]) < 1e-12) {
                        c[l] = 0.0;
                    }
                    inside = inside && std::abs(c[l]) <= options.bounds + 1e-12;
                }
                if (inside && c != best.coeffs && has_parity(c, options.parity) &&
                    feasible(kern, c, nodes)) {
                    hood.push_back(c);
                }
            }
            result.feasible_points += hood.size();
            result.samples_evaluated += hood.size();
            if (hood.empty()) {
                break;
            }
            const Candidate local = reduce_best(evaluate_all(scanner, hood));
            if (!better(local, best)) {
                break;
            }
            best = local;
        }
    }
    result.best_coeffs = best.coeffs;
    result.b_max = best.b_max;
    result.config_at_max = {best.theta};
    return result;
}

SearchResult vertex_search(const ConstraintPolytope &p, int scan_points, Parity parity) {
    std::vector<std::vector<double>> verts;
    for (auto &v : enumerate_vertices(p)) {
        if (has_parity(v, parity, 1e-9)) {
            verts.push_back(std::move(v));
        }
    }
    if (verts.empty()) {
        throw DomainError("no polytope vertex has the requested parity");
    }
    const PlanarScanner scanner(p.spin, p.degree, scan_points);
    const Candidate best = reduce_best(evaluate_all(scanner, verts));
    SearchResult result;
    result.method = SearchMethod::vertex;
    result.best_coeffs = best.coeffs;
    result.b_max = best.b_max;
    result.config_at_max = {best.theta};
    result.samples_evaluated = verts.size();
    result.feasible_points = verts.size();
    return result;
}

std::vector<ClassicalLimitRow> weak_classical_sweep(int degree, Spin s_max, int scan_points,
                                                    Parity parity) {
    if (degree < 1 || degree > 4) {
        throw DegreeError("classical-limit sweep supports degree 1..4");
    }
    std::vector<ClassicalLimitRow> rows;
    for (int twice = degree; twice <= s_max.twice(); ++twice) {
        const Spin s(twice);
        const auto r = vertex_search(build_polytope(s, degree), scan_points, parity);
        rows.push_back({s, r.b_max, r.best_coeffs, r.b_max > kLocalBound + kViolationTol});
    }
    return rows;
}

BellHistogram bell_histogram(const ConstraintPolytope &p, const GridSearchOptions &options,
                             int bins) {
    if (bins < 1) {
        throw DomainError("histogram needs at least one bin");
    }
    const auto points = feasible_lattice(p, options.bounds, options.step, options.parity);
    const PlanarScanner scanner(p.spin, p.degree, options.scan_points);
    const auto n = static_cast<std::size_t>(scanner.grid_points());
    BellHistogram h;
    h.hi = 3.0;
    h.counts.assign(bins, 0);
    h.lattice_points = points.size();
    const auto &kern = simd::active_kernels();
    std::vector<double> b(n);
    for (const auto &c : points) {
        scanner.bell_on_grid(c, c, b);
        const auto st = kern.excess_stats(b, scanner.weights(), kLocalBound + kViolationTol);
        h.violating += st.count_above;
        h.violating_points += st.count_above > 0 ? 1 : 0;
        h.total += n;
        for (double v : b) {
            auto bin = static_cast<long>((v - h.lo) / (h.hi - h.lo) * bins);
            bin = std::clamp<long>(bin, 0, bins - 1);
            ++h.counts[bin];
        }
    }
    return h;
}

} // namespace bellscan
