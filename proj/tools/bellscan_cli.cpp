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
// bellscan command-line driver.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellscan/bell.hpp"
#include "bellscan/correlator.hpp"
#include "bellscan/errors.hpp"
#include "bellscan/measurement.hpp"
#include "bellscan/parallel.hpp"
#include "bellscan/report.hpp"
#include "bellscan/search.hpp"
#include "bellscan/simd/kernels.hpp"

namespace {

using namespace bellscan;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitBadArgs = 2;
constexpr int kExitDiscrepancy = 3;
constexpr int kExitNumerical = 4;

constexpr double kTrustedTol = 1e-8;

/// Thrown for argument combinations CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string spin;
    std::string observable;
    std::string coeffs;
    int degree = 0;
    int grid_points = 0;
    double bounds = 5.0;
    double step = 0.5;
    std::string method = "grid";
    std::string parity = "any";
    std::string scatter;
    std::uint64_t shots = 100000;
    std::uint64_t seed = 1;
    int shards = kDefaultShards;
    double theta = std::numbers::pi / 4;
    std::string s_max = "4";
    int restarts = 0;
    std::string out;
    std::string format = "json";
};

std::vector<double> parse_coeffs(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception &) {
            throw UsageError("bad coefficient '" + item + "'");
        }
        if (used != item.size() || !std::isfinite(v)) {
            throw UsageError("bad coefficient '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw UsageError("--coeffs needs at least one value");
    }
    return out;
}

Parity require_parity(const std::string &name) {
    auto p = parse_parity(name);
    if (!p) {
        throw UsageError("unknown parity '" + name + "'");
    }
    return *p;
}

void require_format(const Options &o, std::initializer_list<const char *> allowed) {
    for (const char *f : allowed) {
        if (o.format == f) {
            return;
        }
    }
    throw UsageError("format '" + o.format + "' not available for this command");
}

/// Observable from --observable / --coeffs / --spin. Spin-specific tags
/// refuse a different --spin.
PolyObservable resolve_observable(const Options &o, std::optional<ObservableTag> fallback) {
    if (!o.coeffs.empty() && !o.observable.empty()) {
        throw UsageError("--observable and --coeffs are mutually exclusive");
    }
    if (!o.coeffs.empty()) {
        if (o.spin.empty()) {
            throw UsageError("--coeffs needs --spin");
        }
        return {Spin::parse(o.spin), parse_coeffs(o.coeffs)};
    }
    std::optional<ObservableTag> tag = fallback;
    if (!o.observable.empty()) {
        tag = parse_observable_tag(o.observable);
        if (!tag) {
            throw UsageError("unknown observable '" + o.observable + "'");
        }
    }
    if (!tag) {
        throw UsageError("need --observable or --coeffs");
    }
    if (o.spin.empty()) {
        return named_observable(*tag);
    }
    const Spin s = Spin::parse(o.spin);
    const bool spin_free = *tag == ObservableTag::linear || *tag == ObservableTag::quad;
    if (!spin_free && !(s == default_spin(*tag))) {
        throw UsageError("observable '" + std::string(to_string(*tag)) + "' is defined at s = " +
                         default_spin(*tag).to_string());
    }
    return named_observable(*tag, s);
}

std::string observable_label(const Options &o, const PolyObservable &obs) {
    if (!o.observable.empty()) {
        return o.observable;
    }
    std::string label = "poly";
    for (double c : obs.coeffs()) {
        std::ostringstream os;
        os << c;
        label += ":" + os.str();
    }
    return label;
}

json base_config(const char *command, const Options &o) {
    return {{"command", command},
            {"format", o.format},
            {"threads", worker_count()},
            {"simd", std::string(to_string(simd::active_kernels().isa))}};
}

json envelope(json config, json result) {
    return {{"schema_version", kSchemaVersion},
            {"config", std::move(config)},
            {"result", std::move(result)}};
}

void emit(const Options &o, const std::string &text) {
    if (o.out.empty() || o.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open '" + o.out + "' for writing");
    }
    f << text;
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

int cmd_correlate(const Options &o) {
    require_format(o, {"json", "csv"});
    const auto obs = resolve_observable(o, std::nullopt);
    const CorrelatorSpec spec(obs);
    const int points = o.grid_points > 0 ? o.grid_points : 101;
    if (points < 2) {
        throw UsageError("--grid-points must be at least 2");
    }
    const auto grid = correlator_grid(spec, points);
    const std::string tag = observable_label(o, obs);

    int code = kExitOk;
    std::string warning;
    if (grid.closed_form) {
        if (grid.closed_trusted && grid.max_abs_discrepancy > kTrustedTol) {
            code = kExitDiscrepancy;
            warning = "trusted closed form '" + *grid.closed_form +
                      "' disagrees with the operator oracle";
        } else if (!grid.closed_trusted && grid.max_abs_discrepancy > kTrustedTol) {
            warning = "closed form '" + *grid.closed_form +
                      "' is known to be unverified and disagrees with the operator oracle";
        }
    }
    if (!warning.empty()) {
        std::cerr << "warning: " << warning << " (max |diff| = " << grid.max_abs_discrepancy
                  << ")\n";
    }

    if (o.format == "csv") {
        std::ostringstream os;
        write_correlator_csv(os, grid, tag);
        emit(o, os.str());
        return code;
    }
    json config = base_config("correlate", o);
    config["spin"] = obs.spin().to_string();
    config["observable"] = tag;
    config["coeffs"] = coeffs_json(obs.coeffs());
    config["grid_points"] = points;

    json rows = json::array();
    for (const auto &r : grid.rows) {
        json row = {{"theta", r.theta}, {"oracle", r.oracle}};
        if (r.closed) {
            row["closed"] = *r.closed;
            row["discrepancy"] = *r.closed - r.oracle;
        }
        rows.push_back(std::move(row));
    }
    json result = {{"grid", std::move(rows)},
                   {"closed_form", grid.closed_form ? json(*grid.closed_form) : json(nullptr)},
                   {"closed_trusted", grid.closed_trusted},
                   {"max_abs_discrepancy", grid.max_abs_discrepancy},
                   {"warning", warning.empty() ? json(nullptr) : json(warning)}};
    emit(o, dump(envelope(std::move(config), std::move(result))));
    return code;
}

int cmd_scan(const Options &o) {
    require_format(o, {"json", "csv"});
    const auto obs = resolve_observable(o, std::nullopt);
    const CorrelatorSpec spec(obs);
    const int points = o.grid_points > 0 ? o.grid_points : 1001;
    if (points < 100) {
        throw UsageError("--grid-points must be at least 100");
    }
    const auto result = planar_scan(spec, points);
    const std::string tag = observable_label(o, obs);
    if (o.format == "csv") {
        std::ostringstream os;
        write_scan_csv(os, result, tag);
        emit(o, os.str());
        return kExitOk;
    }
    json config = base_config("scan", o);
    config["spin"] = obs.spin().to_string();
    config["observable"] = tag;
    config["coeffs"] = coeffs_json(obs.coeffs());
    config["grid_points"] = points;
    json body = to_json(result);
    body["spec"] = {{"spin", obs.spin().to_string()}, {"coeffs", coeffs_json(obs.coeffs())}};
    if (o.restarts > 0) {
        const auto general = general_planar_search(spec, o.restarts, o.seed);
        config["restarts"] = o.restarts;
        config["seed"] = o.seed;
        body["general_search"] = {{"b_max", general.value},
                                  {"alpha_a", general.config.alpha_a},
                                  {"alpha_a2", general.config.alpha_a2},
                                  {"alpha_b", general.config.alpha_b},
                                  {"alpha_b2", general.config.alpha_b2}};
    }
    emit(o, dump(envelope(std::move(config), std::move(body))));
    return kExitOk;
}

std::string scatter_csv(const ConstraintPolytope &p, const Options &o, Parity parity,
                        int scan_points) {
    const auto points = feasible_lattice(p, o.bounds, o.step, parity);
    const PlanarScanner scanner(p.spin, p.degree, scan_points);
    std::vector<double> b_max(points.size());
    parallel_for(points.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            b_max[i] = scanner.peak(points[i], points[i]).b_max;
        }
    });
    std::ostringstream os;
    write_scatter_csv(os, points, b_max);
    return os.str();
}

int cmd_search(const Options &o) {
    require_format(o, {"json", "csv"});
    if (o.spin.empty() || o.degree <= 0) {
        throw UsageError("search needs --spin and --degree");
    }
    if (o.method != "grid" && o.method != "vertex") {
        throw UsageError("--method must be grid or vertex");
    }
    if (!(o.bounds > 0.0) || !(o.step > 0.0)) {
        throw UsageError("--bounds and --step must be positive");
    }
    const Spin s = Spin::parse(o.spin);
    const Parity parity = require_parity(o.parity);
    const int points = o.grid_points > 0 ? o.grid_points : 1001;
    if (points < 100) {
        throw UsageError("--grid-points must be at least 100");
    }
    const auto polytope = build_polytope(s, o.degree);

    if (o.format == "csv") {
        emit(o, scatter_csv(polytope, o, parity, points));
        return kExitOk;
    }
    SearchResult result;
    if (o.method == "vertex") {
        result = vertex_search(polytope, points, parity);
    } else {
        GridSearchOptions opts;
        opts.bounds = o.bounds;
        opts.step = o.step;
        opts.scan_points = points;
        opts.parity = parity;
        result = grid_search(polytope, opts);
    }
    const auto scan = planar_scan(CorrelatorSpec(PolyObservable(s, result.best_coeffs)), points);

    json config = base_config("search", o);
    config["spin"] = s.to_string();
    config["degree"] = o.degree;
    config["method"] = o.method;
    config["parity"] = std::string(to_string(parity));
    config["grid_points"] = points;
    if (o.method == "grid") {
        config["bounds"] = o.bounds;
        config["step"] = o.step;
    }
    json body = to_json(result);
    body["record"] = {{"spin", s.to_string()},
                      {"degree", o.degree},
                      {"coeffs", coeffs_json(result.best_coeffs)},
                      {"b_max", result.b_max},
                      {"violation_fraction", scan.stats.fraction},
                      {"measure_fraction", scan.stats.measure_fraction}};
    if (!o.scatter.empty()) {
        Options so = o;
        so.out = o.scatter;
        emit(so, scatter_csv(polytope, o, parity, points));
        body["scatter_csv"] = o.scatter;
    }
    emit(o, dump(envelope(std::move(config), std::move(body))));
    return kExitOk;
}

int cmd_table1(const Options &o) {
    require_format(o, {"json", "md"});
    const int points = o.grid_points > 0 ? o.grid_points : 2001;
    if (points < 100) {
        throw UsageError("--grid-points must be at least 100");
    }
    const auto rows = summary_table(points);
    if (o.format == "md") {
        emit(o, summary_markdown(rows));
        return kExitOk;
    }
    json config = base_config("table1", o);
    config["grid_points"] = points;
    json body = json::array();
    for (const auto &r : rows) {
        body.push_back(to_json(r));
    }
    emit(o, dump(envelope(std::move(config), {{"rows", std::move(body)}})));
    return kExitOk;
}

int cmd_simulate(const Options &o) {
    require_format(o, {"json"});
    const Spin s = o.spin.empty() ? Spin(2) : Spin::parse(o.spin);
    Options resolved = o;
    resolved.spin = s.to_string();
    const auto obs = resolve_observable(
        resolved, s == Spin(2) ? std::optional(ObservableTag::quad_s1) : std::nullopt);
    if (o.shards < 1) {
        throw UsageError("--shards must be positive");
    }
    const Axis a = Axis::z();
    const Axis b = Axis::in_plane(o.theta);
    const CorrelatorSpec spec(obs);
    const double exact = correlate(spec, a, b);
    const bool quad_s1 = s == Spin(2) && obs.coeffs() == named_coefficients(ObservableTag::quad_s1);

    json config = base_config("simulate", o);
    config["spin"] = s.to_string();
    config["observable"] =
        o.observable.empty() && o.coeffs.empty() ? "quad_s1" : observable_label(o, obs);
    config["coeffs"] = coeffs_json(obs.coeffs());
    config["theta"] = o.theta;
    config["shots"] = o.shots;
    config["seed"] = o.seed;
    config["shards"] = o.shards;

    json body;
    body["exact"] = exact;
    if (o.shots == 0) {
        const double value = exact_general_corr(joint_probabilities(s, a, b), obs, obs);
        body["mode"] = "exact";
        body["estimate"] = value;
        body["std_error"] = 0.0;
        body["z_score"] = 0.0;
        body["estimator"] = "exact_probabilities";
        body["deviation_from_oracle"] = value - exact;
    } else {
        const auto rec = sample_counts(s, a, b, o.shots, o.seed, o.shards);
        const Estimate est = quad_s1 ? estimate_quad_corr_s1(rec) : estimate_general_corr(rec, obs);
        body["mode"] = "sampled";
        body["counts"] = to_json(rec);
        body["estimate"] = est.value;
        body["std_error"] = est.std_error;
        body["estimator"] = quad_s1 ? "coincidence_rate" : "plug_in";
        if (est.std_error > 0.0) {
            body["z_score"] = (est.value - exact) / est.std_error;
        } else {
            body["z_score"] = nullptr;
        }
        std::cerr << "estimate " << est.value << " +/- " << est.std_error << " (exact " << exact
                  << ")\n";
    }
    emit(o, dump(envelope(std::move(config), std::move(body))));
    return kExitOk;
}

int cmd_classical_limit(const Options &o) {
    require_format(o, {"json", "md"});
    if (o.degree < 1 || o.degree > 4) {
        throw UsageError("--degree must be in 1..4");
    }
    const Spin s_max = Spin::parse(o.s_max);
    if (s_max.twice() < o.degree) {
        throw UsageError("--s-max must be at least degree/2");
    }
    const Parity parity = require_parity(o.parity);
    const int points = o.grid_points > 0 ? o.grid_points : 1001;
    if (points < 100) {
        throw UsageError("--grid-points must be at least 100");
    }
    const auto rows = weak_classical_sweep(o.degree, s_max, points, parity);

    std::optional<Spin> last_violating;
    for (const auto &r : rows) {
        if (r.violates) {
            last_violating = r.spin;
        }
    }
    if (o.format == "md") {
        std::ostringstream os;
        os << "| s | B_max | coeffs | violates |\n|---|---|---|---|\n";
        for (const auto &r : rows) {
            os << "| " << r.spin.to_string() << " | " << std::fixed << std::setprecision(4)
               << r.b_max << " | (";
            for (std::size_t l = 0; l < r.best_coeffs.size(); ++l) {
                os << (l ? ", " : "") << r.best_coeffs[l];
            }
            os << ") | " << (r.violates ? "yes" : "no") << " |\n";
        }
        emit(o, os.str());
        return kExitOk;
    }
    json config = base_config("classical-limit", o);
    config["degree"] = o.degree;
    config["s_max"] = s_max.to_string();
    config["parity"] = std::string(to_string(parity));
    config["grid_points"] = points;
    json table = json::array();
    for (const auto &r : rows) {
        table.push_back({{"spin", r.spin.to_string()},
                         {"b_max", r.b_max},
                         {"coeffs", coeffs_json(r.best_coeffs)},
                         {"violates", r.violates}});
    }
    json body = {{"rows", std::move(table)},
                 {"last_violating_spin",
                  last_violating ? json(last_violating->to_string()) : json(nullptr)}};
    emit(o, dump(envelope(std::move(config), std::move(body))));
    return kExitOk;
}

void add_output(CLI::App *cmd, Options &o) {
    cmd->add_option("--out", o.out, "Output path (default stdout)");
    cmd->add_option("--format", o.format, "json, csv or md");
}

void add_observable(CLI::App *cmd, Options &o) {
    cmd->add_option("--spin", o.spin, "Spin as 1/2, 1, 3/2, ...");
    cmd->add_option("--observable", o.observable,
                    "linear, quad, quad_s1, quad_s32, cubic_s32, cubic_s2, quartic_s2");
    cmd->add_option("--coeffs", o.coeffs, "Comma-separated C_0,...,C_k (normalized)");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Bell-inequality scans for spin-s singlets with polynomial observables"};
    app.require_subcommand(1);
    Options o;

    auto *correlate = app.add_subcommand("correlate", "Correlator on a theta grid");
    add_observable(correlate, o);
    correlate->add_option("--grid-points", o.grid_points, "Theta samples on [0, pi]");
    add_output(correlate, o);

    auto *scan = app.add_subcommand("scan", "Bell function over the planar family");
    add_observable(scan, o);
    scan->add_option("--grid-points", o.grid_points, "Theta samples on [0, pi]");
    scan->add_option("--restarts", o.restarts, "Also run a four-angle search");
    scan->add_option("--seed", o.seed, "Seed for --restarts");
    add_output(scan, o);

    auto *search = app.add_subcommand("search", "Optimal coefficients for (spin, degree)");
    search->add_option("--spin", o.spin, "Spin");
    search->add_option("--degree", o.degree, "Polynomial degree");
    search->add_option("--bounds", o.bounds, "Lattice half-width");
    search->add_option("--step", o.step, "Lattice spacing");
    search->add_option("--method", o.method, "grid or vertex");
    search->add_option("--parity", o.parity, "any, even or odd");
    search->add_option("--grid-points", o.grid_points, "Theta samples per scan");
    search->add_option("--scatter", o.scatter, "Also write the lattice scatter CSV here");
    add_output(search, o);

    auto *table1 = app.add_subcommand("table1", "Summary table with published values");
    table1->add_option("--grid-points", o.grid_points, "Theta samples per scan");
    add_output(table1, o);

    auto *simulate = app.add_subcommand("simulate", "Sampled coincidence counts");
    add_observable(simulate, o);
    simulate->add_option("--theta", o.theta, "Angle between the axes (radians)");
    simulate->add_option("--shots", o.shots, "Number of joint outcomes; 0 for exact mode");
    simulate->add_option("--seed", o.seed, "Master seed");
    simulate->add_option("--shards", o.shards, "Independent RNG streams");
    add_output(simulate, o);

    auto *climit = app.add_subcommand("classical-limit", "B_max against spin at fixed degree");
    climit->add_option("--degree", o.degree, "Polynomial degree")->required();
    climit->add_option("--s-max", o.s_max, "Largest spin");
    climit->add_option("--parity", o.parity, "any, even or odd");
    climit->add_option("--grid-points", o.grid_points, "Theta samples per scan");
    add_output(climit, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitBadArgs;
    }

    try {
        if (*correlate) return cmd_correlate(o);
        if (*scan) return cmd_scan(o);
        if (*search) return cmd_search(o);
        if (*table1) return cmd_table1(o);
        if (*simulate) return cmd_simulate(o);
        if (*climit) return cmd_classical_limit(o);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    } catch (const NumericalConsistencyError &e) {
        std::cerr << "numerical consistency failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    }
    return kExitBadArgs;
}
