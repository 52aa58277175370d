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
#include "bellscan/report.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace bellscan {

using nlohmann::json;

json coeffs_json(std::span<const double> coeffs) {
    return {{"convention", "normalized"}, {"values", std::vector<double>(coeffs.begin(), coeffs.end())}};
}

json intervals_json(const std::vector<Interval> &intervals) {
    json out = json::array();
    for (const auto &iv : intervals) {
        out.push_back({iv.lo, iv.hi});
    }
    return out;
}

json to_json(const BellScanResult &result, bool include_grid) {
    json j;
    j["b_max"] = result.b_max;
    j["theta_at_max"] = result.theta_at_max;
    j["violation_fraction"] = result.stats.fraction;
    j["violation_fraction_convention"] = "excess area over total area of B(theta) on [0, pi]";
    j["measure_fraction"] = result.stats.measure_fraction;
    j["intervals_theta"] = intervals_json(result.stats.intervals_theta);
    j["intervals_3theta"] = intervals_json(result.stats.intervals_3theta);
    if (include_grid) {
        json grid = json::array();
        for (std::size_t i = 0; i < result.theta.size(); ++i) {
            grid.push_back({{"theta", result.theta[i]}, {"B", result.bell[i]}});
        }
        j["grid"] = std::move(grid);
    }
    return j;
}

json to_json(const SearchResult &result) {
    return {{"best_coeffs", coeffs_json(result.best_coeffs)},
            {"b_max", result.b_max},
            {"theta_at_max", result.config_at_max.theta},
            {"method", to_string(result.method)},
            {"samples_evaluated", result.samples_evaluated},
            {"feasible_points", result.feasible_points}};
}

json to_json(const CountRecord &record) {
    json counts = json::array();
    for (int i = 0; i < record.counts.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < record.counts.cols(); ++j) {
            row.push_back(record.counts(i, j));
        }
        counts.push_back(std::move(row));
    }
    auto axis = [](const Axis &a) { return json{{"polar", a.polar}, {"azimuth", a.azimuth}}; };
    return {{"spin", record.spin.to_string()},
            {"axes", {{"a", axis(record.axis_a)}, {"b", axis(record.axis_b)}}},
            {"counts", std::move(counts)},
            {"total", record.total},
            {"seed", record.seed},
            {"shards", record.shards},
            {"generator", record.generator}};
}

json to_json(const BellHistogram &h) {
    return {{"range", {h.lo, h.hi}},
            {"counts", h.counts},
            {"total", h.total},
            {"violating", h.violating},
            {"violating_share", h.violating_share()},
            {"lattice_points", h.lattice_points},
            {"violating_points", h.violating_points}};
}

void write_scan_csv(std::ostream &os, const BellScanResult &result, const std::string &spec_tag) {
    os << "theta,B,spec\n" << std::setprecision(17);
    for (std::size_t i = 0; i < result.theta.size(); ++i) {
        os << result.theta[i] << ',' << result.bell[i] << ',' << spec_tag << '\n';
    }
}

void write_scatter_csv(std::ostream &os, const std::vector<std::vector<double>> &points,
                       const std::vector<double> &b_max) {
    if (points.empty()) {
        return;
    }
    for (std::size_t l = 0; l < points.front().size(); ++l) {
        os << 'C' << l << ',';
    }
    os << "b_max\n" << std::setprecision(17);
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (double c : points[i]) {
            os << c << ',';
        }
        os << b_max[i] << '\n';
    }
}

CorrelatorGrid correlator_grid(const CorrelatorSpec &spec, int points) {
    CorrelatorGrid grid;
    const auto closed = closed_form_for(spec);
    if (closed) {
        grid.closed_form = closed->name;
        grid.closed_trusted = closed->trusted;
    }
    for (int i = 0; i < points; ++i) {
        const double theta =
            points == 1 ? 0.0 : std::numbers::pi * static_cast<double>(i) / (points - 1);
        CorrelatorGridRow row{theta, correlate(spec, Axis::z(), Axis::in_plane(theta)), {}};
        if (closed) {
            row.closed = closed->evaluate(spec.spin(), theta);
            grid.max_abs_discrepancy =
                std::max(grid.max_abs_discrepancy, std::abs(*row.closed - row.oracle));
        }
        grid.rows.push_back(row);
    }
    return grid;
}

void write_correlator_csv(std::ostream &os, const CorrelatorGrid &grid,
                          const std::string &spec_tag) {
    os << "theta,value,method,spec\n" << std::setprecision(17);
    for (const auto &r : grid.rows) {
        os << r.theta << ',' << r.oracle << ",oracle," << spec_tag << '\n';
        if (r.closed) {
            os << r.theta << ',' << *r.closed << ",closed," << spec_tag << '\n';
        }
    }
}

std::vector<SummaryRow> summary_table(int scan_points) {
    struct Published {
        ObservableTag tag;
        int degree;
        const char *label;
        double b_max;
        double area;
    };
    const Published published[] = {
        {ObservableTag::linear, 1, "2*sqrt(2)", 2 * std::numbers::sqrt2, 16.32},
        {ObservableTag::quad_s1, 2, "2.55", 2.55, 14.7},
        {ObservableTag::quad_s32, 2, "2.62", 2.62, 7.85},
        {ObservableTag::cubic_s32, 3, "2.45", 2.45, 6.67},
        {ObservableTag::cubic_s2, 3, "2.03", 2.03, 0.1},
        {ObservableTag::quartic_s2, 4, "2.371", 2.371, 2.522},
    };
    std::vector<SummaryRow> rows;
    for (const auto &p : published) {
        const auto obs = named_observable(p.tag);
        const Parity parity = p.degree == 3 ? Parity::odd : Parity::any;
        auto scan = planar_scan(CorrelatorSpec(obs), scan_points);
        auto vertex = vertex_search(build_polytope(obs.spin(), p.degree), scan_points, parity);
        rows.push_back({obs.spin(), p.degree, p.tag, p.label, p.b_max, p.area, std::move(scan),
                        parity, std::move(vertex)});
    }
    return rows;
}

json to_json(const SummaryRow &row) {
    const auto obs = named_observable(row.tag);
    return {{"spin", row.spin.to_string()},
            {"degree", row.degree},
            {"observable", to_string(row.tag)},
            {"coeffs", coeffs_json(obs.coeffs())},
            {"raw_coeffs", obs.raw_coeffs()},
            {"b_max", row.scan.b_max},
            {"theta_at_max", row.scan.theta_at_max},
            {"published_b_max", row.published_b_max_label},
            {"b_max_deviation", row.scan.b_max - row.published_b_max},
            {"violation_percent", 100.0 * row.scan.stats.fraction},
            {"published_violation_percent", row.published_area_percent},
            {"measure_percent", 100.0 * row.scan.stats.measure_fraction},
            {"intervals_theta", intervals_json(row.scan.stats.intervals_theta)},
            {"intervals_3theta", intervals_json(row.scan.stats.intervals_3theta)},
            {"search_parity", to_string(row.search_parity)},
            {"best_vertex", to_json(row.vertex)}};
}

std::string summary_markdown(const std::vector<SummaryRow> &rows) {
    std::ostringstream os;
    os << std::fixed;
    os << "| s | k | observable | B_max | published | deviation | % violation | published % | "
          "best vertex (parity) | vertex B_max |\n";
    os << "|---|---|---|---|---|---|---|---|---|---|\n";
    for (const auto &r : rows) {
        os << "| " << r.spin.to_string() << " | " << r.degree << " | " << to_string(r.tag)
           << " | " << std::setprecision(4) << r.scan.b_max << " | " << r.published_b_max_label
           << " | " << std::showpos << r.scan.b_max - r.published_b_max << std::noshowpos << " | "
           << std::setprecision(2) << 100.0 * r.scan.stats.fraction << " | "
           << r.published_area_percent << " | (";
        for (std::size_t l = 0; l < r.vertex.best_coeffs.size(); ++l) {
            os << (l ? ", " : "") << std::setprecision(4) << r.vertex.best_coeffs[l];
        }
        os << ") (" << to_string(r.search_parity) << ") | " << std::setprecision(4)
           << r.vertex.b_max << " |\n";
    }
    return os.str();
}

} // namespace bellscan
