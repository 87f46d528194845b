// Command-line front end: single-shot computations, figure-data sweeps,
// L_U optimization, factorization, Monte Carlo experiments, and the
// closed-form consistency report. Reports are JSON with stable key order;
// sweeps and per-point frequencies are CSV. Every file output gets a
// manifest sidecar so a run can be reproduced from its recorded flags.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "duality/duality.hpp"

using json = nlohmann::ordered_json;
using namespace duality;

namespace {

constexpr int exit_usage = 2;

std::string iso8601_utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct GlobalFlags {
    std::string out;
    std::uint64_t seed = 0;
    bool degrees = false;
    bool compact = false;
};

double to_radians(const GlobalFlags& g, double angle) {
    return g.degrees ? angle * pi / 180.0 : angle;
}

json make_manifest(const std::string& command, const json& parameters) {
    json m;
    m["command"] = command;
    m["parameters"] = parameters;
    m["tool_version"] = tool_version;
    m["timestamp"] = iso8601_utc_now();
    return m;
}

void emit_report(const GlobalFlags& g, json& report) {
    const std::string text = g.compact ? report.dump() : report.dump(2);
    if (g.out.empty()) {
        std::cout << text << '\n';
    } else {
        std::ofstream file(g.out);
        if (!file) throw std::runtime_error("cannot open output file '" + g.out + "'");
        file << text << '\n';
    }
}

void emit_manifest_sidecar(const std::string& out_path, const json& manifest, bool compact) {
    std::ofstream file(out_path + ".manifest.json");
    if (!file) throw std::runtime_error("cannot open manifest sidecar for '" + out_path + "'");
    file << (compact ? manifest.dump() : manifest.dump(2)) << '\n';
}

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

// ---------------------------------------------------------------------------
// shared state/axis flags for simulate, lmax, montecarlo
// ---------------------------------------------------------------------------

struct StateAxisFlags {
    std::vector<double> bloch;
    std::optional<double> sx;
    std::vector<double> axis;
    std::vector<double> spherical;
    double omega = pi / 2.0;
    bool omega_set = false;
};

void add_state_flags(CLI::App* cmd, StateAxisFlags& f) {
    cmd->add_option("--bloch", f.bloch, "input Bloch vector x,y,z")->delimiter(',')->expected(3);
    cmd->add_option("--sx", f.sx, "input state s_x e_x");
}

void add_axis_flags(CLI::App* cmd, StateAxisFlags& f) {
    cmd->add_option("--axis", f.axis, "middle-unitary axis mx,my,mz (normalized)")
        ->delimiter(',')
        ->expected(3);
    cmd->add_option("--spherical", f.spherical, "middle-unitary axis as theta,xi")
        ->delimiter(',')
        ->expected(2);
    cmd->add_option_function<double>(
           "--omega", [&f](double v) { f.omega = v; f.omega_set = true; },
           "beam-splitter angle (default pi/2, the balanced splitter)");
}

BlochVector parse_state(const StateAxisFlags& f) {
    if (f.sx && !f.bloch.empty()) {
        throw std::invalid_argument("give either --bloch or --sx, not both");
    }
    if (f.sx) return {*f.sx, 0.0, 0.0};
    if (f.bloch.size() == 3) return {f.bloch[0], f.bloch[1], f.bloch[2]};
    throw std::invalid_argument("an input state is required (--bloch or --sx)");
}

UnitAxis parse_axis(const GlobalFlags& g, const StateAxisFlags& f) {
    if (!f.axis.empty() && !f.spherical.empty()) {
        throw std::invalid_argument("give either --axis or --spherical, not both");
    }
    if (f.axis.size() == 3) return UnitAxis::normalized({f.axis[0], f.axis[1], f.axis[2]});
    if (f.spherical.size() == 2) {
        return SphericalAxis(to_radians(g, f.spherical[0]), to_radians(g, f.spherical[1])).to_axis();
    }
    throw std::invalid_argument("an axis is required (--axis or --spherical)");
}

json axis_json(const GlobalFlags& g, const StateAxisFlags& f, const UnitAxis& axis) {
    json j;
    j["axis"] = vec_json(axis.vec());
    if (f.spherical.size() == 2) {
        j["spherical"] = {{"theta", to_radians(g, f.spherical[0])},
                          {"xi", to_radians(g, f.spherical[1])}};
    }
    return j;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_simulate(const GlobalFlags& g, const StateAxisFlags& f, double phi_raw) {
    const BlochVector input = parse_state(f);
    const UnitAxis axis = parse_axis(g, f);
    const double omega = f.omega_set ? to_radians(g, f.omega) : f.omega;
    const double phi = to_radians(g, phi_raw);
    const InterferometerConfig cfg{omega, axis, input};

    const DualityResult duality = duality_sum(cfg);
    json report;
    report["command"] = "simulate";
    report["input"] = {{"bloch", vec_json(input)},
                       {"axis", vec_json(axis.vec())},
                       {"omega", omega},
                       {"phi", phi}};
    report["final_bloch"] = vec_json(final_state(cfg, phi));
    report["probability"] = detection_probability(cfg, phi);
    report["predictability"] = duality.predictability;
    if (is_balanced(cfg)) {
        report["visibility_closed_form"] = visibility_closed_form(cfg);
    } else {
        report["visibility_closed_form"] = nullptr;
    }
    report["visibility_scan"] = visibility_scan(cfg, 3);
    report["duality_sum"] = duality.sum;
    report["manifest"] = make_manifest("simulate", report["input"]);
    emit_report(g, report);
    return 0;
}

int cmd_lmax(const GlobalFlags& g, const StateAxisFlags& f) {
    const UnitAxis axis = parse_axis(g, f);
    const double omega = f.omega_set ? to_radians(g, f.omega) : f.omega;
    const DualityBound bound = l_max(axis, omega);

    json report;
    report["command"] = "lmax";
    json input = axis_json(g, f, axis);
    input["omega"] = omega;
    report["input"] = input;
    report["l_max"] = bound.l_max;
    report["argmax_state"] = vec_json(bound.argmax_state);
    report["argmax_norm"] = norm(bound.argmax_state);
    report["iterations"] = bound.iterations;
    report["grid_resolution"] = bound.grid_resolution;
    report["manifest"] = make_manifest("lmax", input);
    emit_report(g, report);
    return 0;
}

int cmd_decompose(const GlobalFlags& g, const std::vector<double>& entries,
                  const std::vector<double>& axis_angle) {
    Unitary2 u;
    json input;
    if (!entries.empty() && !axis_angle.empty()) {
        throw std::invalid_argument("give either --unitary or --axis-angle, not both");
    }
    if (entries.size() == 8) {
        u = {complex(entries[0], entries[1]), complex(entries[2], entries[3]),
             complex(entries[4], entries[5]), complex(entries[6], entries[7])};
        input["unitary"] = entries;
    } else if (axis_angle.size() == 4) {
        const UnitAxis axis = UnitAxis::normalized({axis_angle[0], axis_angle[1], axis_angle[2]});
        const double angle = to_radians(g, axis_angle[3]);
        u = rotation_unitary(axis, angle);
        input["axis"] = vec_json(axis.vec());
        input["angle"] = angle;
    } else {
        throw std::invalid_argument("a unitary is required (--unitary re,im,... or --axis-angle mx,my,mz,phi)");
    }

    const FactoredUnitary fac = factorize_unitary(u);
    json report;
    report["command"] = "decompose";
    report["input"] = input;
    report["varphi"] = fac.varphi;
    report["psi"] = fac.psi;
    report["chi"] = fac.chi;
    report["delta"] = fac.delta;
    report["residual"] = max_abs_diff(recompose(fac), u);
    report["manifest"] = make_manifest("decompose", input);
    emit_report(g, report);
    return 0;
}

int cmd_montecarlo(const GlobalFlags& g, const StateAxisFlags& f, int points, long long shots) {
    const BlochVector input = parse_state(f);
    const UnitAxis axis = parse_axis(g, f);
    const double omega = f.omega_set ? to_radians(g, f.omega) : f.omega;
    const InterferometerConfig cfg{omega, axis, input};
    const ExperimentPlan plan{cfg, points, shots, g.seed, splitmix64_name};

    const std::vector<PointCount> counts = sample_counts(plan);
    const FringeFit fit = fit_fringe(counts);
    const double analytic =
        is_balanced(cfg) ? visibility_closed_form(cfg) : visibility_scan(cfg, 3);
    const double deviation = std::abs(fit.visibility_hat - analytic);

    json parameters = {{"bloch", vec_json(input)}, {"axis", vec_json(axis.vec())},
                       {"omega", omega},           {"points", points},
                       {"shots", shots},           {"seed", g.seed},
                       {"rng_name", plan.rng_name}};
    json report;
    report["command"] = "montecarlo";
    report["plan"] = parameters;
    report["fit"] = {{"a", fit.a},
                     {"b", fit.b},
                     {"c", fit.c},
                     {"i_max", fit.i_max},
                     {"i_min", fit.i_min},
                     {"visibility_hat", fit.visibility_hat},
                     {"std_error", std::isfinite(fit.std_error)
                                       ? json(fit.std_error)
                                       : json("infinity")}};
    report["analytic_visibility"] = analytic;
    report["discrepancy_sigma"] =
        fit.std_error > 0.0 && std::isfinite(fit.std_error)
            ? json(deviation / fit.std_error)
            : (deviation == 0.0 ? json(0.0) : json("infinity"));
    report["manifest"] = make_manifest("montecarlo", parameters);

    if (!g.out.empty()) {
        std::ofstream file(g.out);
        if (!file) throw std::runtime_error("cannot open output file '" + g.out + "'");
        file << "phi,successes,shots,frequency\n";
        for (const PointCount& pc : counts) {
            file << format_double(pc.phi) << ',' << pc.successes << ',' << pc.shots << ','
                 << format_double(static_cast<double>(pc.successes) / pc.shots) << '\n';
        }
        emit_manifest_sidecar(g.out, report["manifest"], g.compact);
        GlobalFlags to_stdout = g;
        to_stdout.out.clear();
        emit_report(to_stdout, report);
    } else {
        emit_report(g, report);
    }
    return 0;
}

int cmd_sweep(const GlobalFlags& g, const std::string& function,
              const std::vector<std::string>& range_flags,
              const std::vector<std::string>& fix_flags) {
    SweepSpec spec;
    spec.function = function;
    for (const std::string& raw : range_flags) {
        const auto eq = raw.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("malformed --range '" + raw + "', expected name=start:end:count");
        }
        SweepRange range;
        range.name = raw.substr(0, eq);
        const std::string body = raw.substr(eq + 1);
        const auto c1 = body.find(':');
        const auto c2 = body.find(':', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw std::invalid_argument("malformed --range '" + raw + "', expected name=start:end:count");
        }
        try {
            std::size_t used = 0;
            range.start = std::stod(body.substr(0, c1), &used);
            range.end = std::stod(body.substr(c1 + 1, c2 - c1 - 1), &used);
            range.count = std::stoi(body.substr(c2 + 1), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed --range '" + raw + "', expected name=start:end:count");
        }
        spec.ranges.push_back(range);
    }
    for (const std::string& raw : fix_flags) {
        const auto eq = raw.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("malformed --fix '" + raw + "', expected name=value");
        }
        try {
            spec.fixed.emplace_back(raw.substr(0, eq), std::stod(raw.substr(eq + 1)));
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed --fix '" + raw + "', expected name=value");
        }
    }

    const SweepTable table = sweep_grid(spec);

    json parameters;
    parameters["function"] = function;
    parameters["ranges"] = json::array();
    for (const SweepRange& r : spec.ranges) {
        parameters["ranges"].push_back(
            {{"name", r.name}, {"start", r.start}, {"end", r.end}, {"count", r.count}});
    }
    parameters["fixed"] = json::object();
    for (const auto& [name, value] : spec.fixed) parameters["fixed"][name] = value;

    json manifest = make_manifest("sweep", parameters);
    manifest["rows"] = table.values.size();
    manifest["defined_cells"] = table.defined_cells;
    if (table.has_extrema) {
        manifest["min_value"] = table.min_value;
        manifest["max_value"] = table.max_value;
        manifest["argmin"] = table.argmin;
        manifest["argmax"] = table.argmax;
    }

    if (g.out.empty()) {
        write_csv(table, std::cout);
    } else {
        std::ofstream file(g.out);
        if (!file) throw std::runtime_error("cannot open output file '" + g.out + "'");
        write_csv(table, file);
        emit_manifest_sidecar(g.out, manifest, g.compact);
    }
    return 0;
}

int cmd_consistency(const GlobalFlags& g, int samples) {
    const ConsistencyReport rep = run_consistency(samples, g.seed);
    json parameters = {{"samples", samples}, {"seed", g.seed}, {"rng_name", splitmix64_name}};
    json report;
    report["command"] = "consistency";
    report["samples"] = rep.samples;
    report["seed"] = rep.seed;
    report["residuals"] = {
        {"detection_probability_balanced", rep.residual_p_balanced},
        {"detection_probability_general_omega", rep.residual_p_general},
        {"visibility_closed_vs_scan", rep.residual_visibility_balanced},
        {"duality_spherical_vs_pipeline", rep.residual_duality_spherical}};
    report["omega_formula"] = {
        {"identity_xi_balanced", rep.widetext_identity_xi_balanced},
        {"shifted_xi_balanced", rep.widetext_shifted_xi_balanced},
        {"identity_xi_general", rep.widetext_identity_xi_general},
        {"shifted_xi_general", rep.widetext_shifted_xi_general}};
    report["line_mz_equals_minus_mx"] = {
        {"value", rep.line_value},
        {"max_deviation_from_two", rep.line_max_deviation_from_two}};
    report["adjudication"] = rep.adjudication;
    report["manifest"] = make_manifest("consistency", parameters);
    emit_report(g, report);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"duality: simulation and analysis toolkit for generalized two-way interferometers"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(tool_version));

    GlobalFlags global;
    app.add_option("--out", global.out, "write data output to this file")->capture_default_str();
    app.add_option("--seed", global.seed, "seed for the deterministic generator")->capture_default_str();
    app.add_flag("--degrees", global.degrees, "interpret angle flags in degrees");
    app.add_flag("--json", global.compact, "emit compact single-line JSON");

    StateAxisFlags sim_flags;
    double sim_phi = 0.0;
    CLI::App* simulate = app.add_subcommand("simulate", "one configuration: p(phi), P, V, P^2+V^2");
    add_state_flags(simulate, sim_flags);
    add_axis_flags(simulate, sim_flags);
    simulate->add_option("--phi", sim_phi, "rotation angle of the middle unitary")->required();

    std::string sweep_function;
    std::vector<std::string> sweep_ranges, sweep_fixes;
    CLI::App* sweep = app.add_subcommand("sweep", "dense landscape evaluation to CSV");
    sweep->add_option("--function", sweep_function,
                      "one of F_pure, F_spherical, f_cartesian, f_rotated, duality_omega_paper, duality_first_principles")
        ->required();
    sweep->add_option("--range", sweep_ranges,
                      "name=start:end:count, end exclusive; repeat per swept parameter");
    sweep->add_option("--fix", sweep_fixes, "name=value for pinned parameters");

    StateAxisFlags lmax_flags;
    CLI::App* lmax_cmd = app.add_subcommand("lmax", "maximize P^2+V^2 over input states");
    add_axis_flags(lmax_cmd, lmax_flags);

    std::vector<double> dec_entries, dec_axis_angle;
    CLI::App* decompose = app.add_subcommand("decompose", "factor a unitary into PS * BS * PS");
    decompose->add_option("--unitary", dec_entries, "row-major re,im pairs (8 numbers)")
        ->delimiter(',')
        ->expected(8);
    decompose->add_option("--axis-angle", dec_axis_angle, "mx,my,mz,phi for e^{-i m.sigma phi/2}")
        ->delimiter(',')
        ->expected(4);

    StateAxisFlags mc_flags;
    int mc_points = 48;
    long long mc_shots = 10000;
    CLI::App* montecarlo = app.add_subcommand("montecarlo", "sampled fringe and fitted visibility");
    add_state_flags(montecarlo, mc_flags);
    add_axis_flags(montecarlo, mc_flags);
    montecarlo->add_option("--points", mc_points, "phase points on [0, 2pi)")->capture_default_str();
    montecarlo->add_option("--shots", mc_shots, "shots per phase point")->capture_default_str();

    int consistency_samples = 10000;
    CLI::App* consistency = app.add_subcommand("consistency",
                                               "closed forms vs the matrix oracle, with the azimuth-convention adjudication");
    consistency->add_option("--samples", consistency_samples, "random configurations per check")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(global, sim_flags, sim_phi);
        if (sweep->parsed()) return cmd_sweep(global, sweep_function, sweep_ranges, sweep_fixes);
        if (lmax_cmd->parsed()) return cmd_lmax(global, lmax_flags);
        if (decompose->parsed()) return cmd_decompose(global, dec_entries, dec_axis_angle);
        if (montecarlo->parsed()) return cmd_montecarlo(global, mc_flags, mc_points, mc_shots);
        if (consistency->parsed()) return cmd_consistency(global, consistency_samples);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return 0;
}
