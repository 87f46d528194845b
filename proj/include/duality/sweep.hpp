#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "duality/landscape.hpp"

// Dense grid evaluation of the landscape functions for figure data. Ranges
// are inclusive-start, exclusive-end with count-based stepping
// (value_i = start + i * (end - start) / count), which keeps grid points free
// of accumulated floating-point drift. Out-of-domain cells are emitted as
// explicitly absent values rather than zeros.

namespace duality {

struct SweepRange {
    std::string name;
    double start;
    double end;     // exclusive
    int count;      // number of points
};

struct SweepSpec {
    std::string function;
    std::vector<SweepRange> ranges;                    // grid axes, row-major, last fastest
    std::vector<std::pair<std::string, double>> fixed; // pinned parameters
};

struct SweepTable {
    std::string function;
    std::vector<std::string> coordinate_names;
    std::vector<std::vector<double>> coordinates;   // one entry per row
    std::vector<std::optional<double>> values;
    std::size_t defined_cells = 0;
    bool has_extrema = false;
    double min_value = 0.0;
    double max_value = 0.0;
    std::vector<double> argmin;
    std::vector<double> argmax;
};

struct LandscapeFunction {
    std::vector<std::string> parameters;  // canonical order
    std::optional<double> (*eval)(const std::vector<double>&);
};

namespace detail {

inline std::optional<double> eval_F_pure(const std::vector<double>& p) {
    return F_pure(p[0], p[1]);
}

inline std::optional<double> eval_F_spherical(const std::vector<double>& p) {
    if (std::abs(p[0]) > 1.0 + invariant_tol) return std::nullopt;
    return F_spherical(p[0], p[1], p[2]);
}

inline std::optional<double> eval_f_cartesian(const std::vector<double>& p) {
    if (p[0] * p[0] + p[1] * p[1] > 1.0 + invariant_tol) return std::nullopt;
    return f_cartesian(p[0], p[1]);
}

inline std::optional<double> eval_f_rotated(const std::vector<double>& p) {
    if (std::abs(p[0]) > 1.0 + invariant_tol) return std::nullopt;
    return f_rotated(p[0], p[1]);
}

inline std::optional<double> eval_omega_paper(const std::vector<double>& p) {
    if (std::abs(p[0]) > 1.0 + invariant_tol) return std::nullopt;
    return duality_sum_omega_paper(p[0], p[1], p[2], p[3]);
}

inline std::optional<double> eval_first_principles(const std::vector<double>& p) {
    if (std::abs(p[0]) > 1.0 + invariant_tol) return std::nullopt;
    const double st = std::sin(p[1]);
    const UnitAxis axis = UnitAxis::normalized({st * std::cos(p[2]), st * std::sin(p[2]), std::cos(p[1])});
    return duality_sum({p[3], axis, {p[0], 0.0, 0.0}}).sum;
}

} // namespace detail

inline const std::vector<std::pair<std::string, LandscapeFunction>>& landscape_functions() {
    static const std::vector<std::pair<std::string, LandscapeFunction>> table = {
        {"F_pure", {{"theta", "xi"}, detail::eval_F_pure}},
        {"F_spherical", {{"sx", "theta", "xi"}, detail::eval_F_spherical}},
        {"f_cartesian", {{"mx", "mz"}, detail::eval_f_cartesian}},
        {"f_rotated", {{"sx", "mxp"}, detail::eval_f_rotated}},
        {"duality_omega_paper", {{"sx", "theta", "xi", "omega"}, detail::eval_omega_paper}},
        {"duality_first_principles", {{"sx", "theta", "xi", "omega"}, detail::eval_first_principles}},
    };
    return table;
}

inline const LandscapeFunction* find_landscape_function(const std::string& name) {
    for (const auto& [fname, fn] : landscape_functions()) {
        if (fname == name) return &fn;
    }
    return nullptr;
}

inline SweepTable sweep_grid(const SweepSpec& spec) {
    const LandscapeFunction* fn = find_landscape_function(spec.function);
    if (fn == nullptr) {
        throw std::invalid_argument("sweep_grid: unknown function '" + spec.function + "'");
    }
    if (spec.ranges.empty()) {
        throw std::invalid_argument("sweep_grid: at least one range is required");
    }

    // Every parameter must be covered exactly once, by a range or a fix.
    std::map<std::string, int> range_slot;   // parameter -> range index
    std::map<std::string, double> fixed;
    for (std::size_t i = 0; i < spec.ranges.size(); ++i) {
        const SweepRange& r = spec.ranges[i];
        if (r.count < 1) {
            throw std::invalid_argument("sweep_grid: empty range for '" + r.name + "'");
        }
        if (range_slot.count(r.name)) {
            throw std::invalid_argument("sweep_grid: duplicate range for '" + r.name + "'");
        }
        range_slot[r.name] = static_cast<int>(i);
    }
    for (const auto& [name, value] : spec.fixed) {
        if (range_slot.count(name) || fixed.count(name)) {
            throw std::invalid_argument("sweep_grid: parameter '" + name + "' given more than once");
        }
        fixed[name] = value;
    }
    std::vector<int> param_to_range(fn->parameters.size(), -1);
    std::vector<double> params(fn->parameters.size(), 0.0);
    std::size_t covered = 0;
    for (std::size_t p = 0; p < fn->parameters.size(); ++p) {
        const std::string& pname = fn->parameters[p];
        if (auto it = range_slot.find(pname); it != range_slot.end()) {
            param_to_range[p] = it->second;
            ++covered;
        } else if (auto fit = fixed.find(pname); fit != fixed.end()) {
            params[p] = fit->second;
            ++covered;
        } else {
            throw std::invalid_argument("sweep_grid: parameter '" + pname + "' is neither ranged nor fixed");
        }
    }
    if (covered != range_slot.size() + fixed.size()) {
        throw std::invalid_argument("sweep_grid: unknown parameter name for function '" + spec.function + "'");
    }

    SweepTable table;
    table.function = spec.function;
    for (const SweepRange& r : spec.ranges) table.coordinate_names.push_back(r.name);

    std::size_t rows = 1;
    for (const SweepRange& r : spec.ranges) rows *= static_cast<std::size_t>(r.count);
    table.coordinates.reserve(rows);
    table.values.reserve(rows);

    std::vector<int> idx(spec.ranges.size(), 0);
    std::vector<double> coords(spec.ranges.size(), 0.0);
    for (std::size_t row = 0; row < rows; ++row) {
        for (std::size_t d = 0; d < spec.ranges.size(); ++d) {
            const SweepRange& r = spec.ranges[d];
            coords[d] = r.start + idx[d] * (r.end - r.start) / r.count;
        }
        for (std::size_t p = 0; p < params.size(); ++p) {
            if (param_to_range[p] >= 0) params[p] = coords[static_cast<std::size_t>(param_to_range[p])];
        }
        const std::optional<double> value = fn->eval(params);
        if (value) {
            ++table.defined_cells;
            if (!table.has_extrema || *value < table.min_value) {
                table.min_value = *value;
                table.argmin = coords;
            }
            if (!table.has_extrema || *value > table.max_value) {
                table.max_value = *value;
                table.argmax = coords;
            }
            table.has_extrema = true;
        }
        table.coordinates.push_back(coords);
        table.values.push_back(value);
        // advance row-major, last coordinate fastest
        for (int d = static_cast<int>(spec.ranges.size()) - 1; d >= 0; --d) {
            if (++idx[static_cast<std::size_t>(d)] < spec.ranges[static_cast<std::size_t>(d)].count) break;
            idx[static_cast<std::size_t>(d)] = 0;
        }
    }
    return table;
}

// Full round-trip precision, '.' decimal separator.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Header row naming the coordinates then `value`; absent cells keep an empty
// value field so plotting tools do not fabricate a rim.
inline void write_csv(const SweepTable& table, std::ostream& out) {
    for (const std::string& name : table.coordinate_names) out << name << ',';
    out << "value\n";
    for (std::size_t row = 0; row < table.values.size(); ++row) {
        for (double c : table.coordinates[row]) out << format_double(c) << ',';
        if (table.values[row]) out << format_double(*table.values[row]);
        out << '\n';
    }
}

} // namespace duality
