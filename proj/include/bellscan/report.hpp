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
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bellscan/bell.hpp"
#include "bellscan/measurement.hpp"
#include "bellscan/search.hpp"

namespace bellscan {

inline constexpr int kSchemaVersion = 1;

/// {"convention": "normalized", "values": [C_0, ..., C_k]}
nlohmann::json coeffs_json(std::span<const double> coeffs);
nlohmann::json intervals_json(const std::vector<Interval> &intervals);

nlohmann::json to_json(const BellScanResult &result, bool include_grid = true);
nlohmann::json to_json(const SearchResult &result);
nlohmann::json to_json(const CountRecord &record);
nlohmann::json to_json(const BellHistogram &histogram);

/// theta,B,spec rows.
void write_scan_csv(std::ostream &os, const BellScanResult &result, const std::string &spec_tag);
/// C_0,...,C_k,b_max rows for feasible lattice points.
void write_scatter_csv(std::ostream &os, const std::vector<std::vector<double>> &points,
                       const std::vector<double> &b_max);

struct CorrelatorGridRow {
    double theta;
    double oracle;
    std::optional<double> closed;
};

/// Matrix-oracle correlator sampled on theta in [0, pi] next to the matching
/// closed form, if any.
struct CorrelatorGrid {
    std::vector<CorrelatorGridRow> rows;
    std::optional<std::string> closed_form;
    bool closed_trusted = false;
    double max_abs_discrepancy = 0.0;
};

CorrelatorGrid correlator_grid(const CorrelatorSpec &spec, int points);

/// Long-format CSV: theta,value,method,spec with method in {oracle, closed}.
void write_correlator_csv(std::ostream &os, const CorrelatorGrid &grid,
                          const std::string &spec_tag);

/// One row of the summary table: a named observable scanned on the planar
/// family, next to the published numbers, plus the best polytope vertex.
struct SummaryRow {
    Spin spin;
    int degree;
    ObservableTag tag;
    std::string published_b_max_label;
    double published_b_max;
    double published_area_percent;
    BellScanResult scan;
    Parity search_parity;
    SearchResult vertex;
};

std::vector<SummaryRow> summary_table(int scan_points);

nlohmann::json to_json(const SummaryRow &row);
std::string summary_markdown(const std::vector<SummaryRow> &rows);

} // namespace bellscan
