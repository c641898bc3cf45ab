#ifndef FABERKIT_CLI_HPP
#define FABERKIT_CLI_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <faberkit/analysis.hpp>
#include <faberkit/io.hpp>

namespace faberkit::cli
{

enum exit_code : int {
    ok = 0,
    check_failed = 1,
    input_error = 2,
};

inline constexpr std::size_t max_trunc = 256;
inline constexpr std::size_t max_quad = 1u << 16;

struct ExperimentSpec {
    std::string config_path;
    std::string command;
    std::size_t trunc = 64;
    std::size_t quad = 512;
    // Parameter radius of the Cauchy contours; 0 means 1 + ext_margin.
    double contour_radius = 0.0;
    std::string out_dir = ".";
    std::string function;
    // auto | definitional | alternate | cross-checked
    std::string method = "auto";
    // boundary | sigma
    std::string grid = "boundary";
    double tol = 1e-7;
    std::uint64_t seed = default_probe_seed;
};

// FABERKIT_SEED, when set to an unsigned integer, replaces the default probe seed.
inline std::uint64_t seed_from_env(std::uint64_t fallback = default_probe_seed)
{
    const char *s = std::getenv("FABERKIT_SEED");
    if (s == nullptr || *s == '\0') {
        return fallback;
    }
    char *end = nullptr;
    const auto v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0') {
        throw parse_error("FABERKIT_SEED must be an unsigned integer");
    }
    return v;
}

inline void check_ranges(const ExperimentSpec &spec)
{
    if (spec.trunc < 1 || spec.trunc > max_trunc) {
        throw parse_error("--trunc must be in 1.." + std::to_string(max_trunc));
    }
    if (!is_power_of_two(spec.quad) || spec.quad < 64 || spec.quad > max_quad) {
        throw parse_error("--quad must be a power of two in 64.." + std::to_string(max_quad));
    }
    if (spec.contour_radius < 0.0) {
        throw parse_error("--contour-radius must be positive");
    }
}

inline std::filesystem::path output_path(const ExperimentSpec &spec, const std::string &name)
{
    std::filesystem::create_directories(spec.out_dir);
    return std::filesystem::path(spec.out_dir) / name;
}

inline void write_json(const std::filesystem::path &p, const json &doc)
{
    std::ofstream out(p);
    out << doc.dump(2) << '\n';
}

inline RationalFn require_function(const ExperimentSpec &spec)
{
    if (spec.function.empty()) {
        throw parse_error("--function is required for " + spec.command);
    }
    return parse_polespec(spec.function);
}

inline MethodPolicy policy_for(const ExperimentSpec &spec)
{
    if (spec.method == "definitional") {
        return MethodPolicy::definitional;
    }
    if (spec.method == "alternate") {
        return MethodPolicy::alternate;
    }
    if (spec.method == "cross-checked") {
        return MethodPolicy::cross_checked;
    }
    if (spec.method == "auto") {
        // The area route costs O(M^3) per block; cross-check only at moderate sizes.
        return spec.trunc <= 64 ? MethodPolicy::cross_checked : MethodPolicy::definitional;
    }
    throw parse_error("--method must be auto, definitional, alternate or cross-checked");
}

inline int cmd_validate(const ExperimentSpec &spec, std::ostream &log)
{
    const auto cfg = load_config(spec.config_path);
    const auto rep = validate_config(cfg);
    write_json(output_path(spec, "validate.json"), validation_to_json(rep));
    log << (rep.pass ? "pass" : "fail");
    if (rep.pass && cfg.size() > 1) {
        log << " min_distance=" << rep.min_curve_distance();
    }
    log << '\n';
    for (const auto &f : rep.failures) {
        log << "  " << f << '\n';
    }
    return rep.pass ? ok : check_failed;
}

inline GrunskyOptions grunsky_options(const ExperimentSpec &spec)
{
    GrunskyOptions opt;
    opt.samples = spec.quad;
    return opt;
}

inline int cmd_grunsky(const ExperimentSpec &spec, std::ostream &log)
{
    const auto cfg = load_config(spec.config_path);
    const auto policy = policy_for(spec);
    const auto g = assemble(cfg, spec.trunc, policy, grunsky_options(spec));
    std::vector<std::size_t> levels;
    for (const std::size_t m : {spec.trunc / 4, spec.trunc / 2, spec.trunc}) {
        if (m >= 1 && (levels.empty() || levels.back() != m)) {
            levels.push_back(m);
        }
    }
    std::vector<NormHistoryEntry> hist;
    for (const auto m : levels) {
        hist.push_back({m, operator_norm(g.truncated(m))});
    }
    write_json(output_path(spec, "grunsky.json"), grunsky_to_json(g, hist));
    log.precision(17);
    for (const auto &h : hist) {
        log << "M=" << h.M << " sigma_max=" << h.sigma << '\n';
    }
    log << "identity_defect=" << g.identity_defect << '\n';
    const bool bounded = hist.back().sigma < 1.0;
    if (!bounded) {
        log << "sigma_max is not below 1\n";
    }
    return bounded ? ok : check_failed;
}

inline int cmd_graph_check(const ExperimentSpec &spec, std::ostream &log)
{
    const auto cfg = load_config(spec.config_path);
    const auto h = require_function(spec);
    // Rejects poles in Sigma before any pullback.
    (void)decompose(cfg, h, false);
    const auto g = assemble(cfg, spec.trunc, MethodPolicy::definitional, grunsky_options(spec));
    const auto rep = graph_check(cfg, h, spec.trunc, g, spec.quad);
    json u = json::array(), v = json::array(), gu = json::array();
    for (std::size_t j = 0; j < cfg.size(); ++j) {
        u.push_back(coeffseq_to_json(rep.u[j]));
        v.push_back(coeffseq_to_json(rep.v[j]));
        gu.push_back(coeffseq_to_json(rep.predicted[j]));
    }
    const bool pass = rep.residual <= spec.tol;
    write_json(output_path(spec, "graph_check.json"),
               {{"schema", schema_version}, {"M", spec.trunc}, {"function", rational_to_json(h)},
                {"u", u}, {"v", v}, {"Gu", gu}, {"residual", rep.residual}, {"tolerance", spec.tol},
                {"alias_warning", rep.alias_warning}, {"pass", pass}});
    log.precision(6);
    log << "residual=" << rep.residual << (pass ? " pass" : " fail") << '\n';
    return pass ? ok : check_failed;
}

inline int cmd_faber_series(const ExperimentSpec &spec, std::ostream &log)
{
    const auto cfg = load_config(spec.config_path);
    const auto h = require_function(spec);
    cvec grid;
    if (spec.grid == "boundary") {
        grid = boundary_probe_grid(cfg, 64, spec.seed);
    } else if (spec.grid == "sigma") {
        grid = sigma_probe_grid(cfg, 64, spec.seed);
    } else {
        throw parse_error("--grid must be boundary or sigma");
    }
    const auto a = faber_coefficients(cfg, h, spec.trunc, spec.quad);
    const auto err = faber_partial_sum_error(cfg, h, spec.trunc, grid, spec.quad);

    {
        std::ofstream out(output_path(spec, "faber_coefficients.csv"));
        out << "k,m,re,im\n";
        out.precision(17);
        for (std::size_t k = 0; k < a.size(); ++k) {
            for (std::size_t m = 1; m <= a[k].size(); ++m) {
                out << k + 1 << ',' << m << ',' << a[k][m - 1].real() << ',' << a[k][m - 1].imag() << '\n';
            }
        }
    }
    {
        std::ofstream out(output_path(spec, "faber_errors.csv"));
        out << "M,sup_error\n";
        out.precision(17);
        for (std::size_t m = 1; m <= err.errors.size(); ++m) {
            out << m << ',' << err.errors[m - 1] << '\n';
        }
    }
    write_json(output_path(spec, "faber_series.json"),
               {{"schema", schema_version}, {"M", spec.trunc}, {"grid", spec.grid}, {"grid_points", grid.size()},
                {"fitted_ratio", err.fitted_ratio}, {"fit_points", err.fit_points},
                {"final_error", err.errors.back()}});
    log.precision(6);
    log << "final_error=" << err.errors.back() << " fitted_ratio=" << err.fitted_ratio << '\n';
    return ok;
}

inline int cmd_decompose(const ExperimentSpec &spec, std::ostream &log)
{
    const auto cfg = load_config(spec.config_path);
    const auto h = require_function(spec);
    const auto dec = decompose(cfg, h, true, spec.quad);
    // Optional second contour: radius independence of the Cauchy projection.
    double radius_delta = -1.0;
    if (spec.contour_radius > 0.0) {
        radius_delta = 0.0;
        const auto grid = sigma_probe_grid(cfg, 64, spec.seed);
        for (std::size_t i = 0; i < cfg.size(); ++i) {
            const auto proj = projection_component(cfg, i, h, spec.contour_radius, spec.quad);
            for (const auto &z : grid) {
                radius_delta = std::max(radius_delta, std::abs(proj(z) - dec.components[i](z)));
            }
        }
    }
    json comps = json::array();
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        comps.push_back({{"index", i + 1}, {"poles", rational_to_json(dec.components[i])}});
    }
    const bool pass = dec.residual <= 1e-10 && dec.quadrature_delta <= 1e-9 && radius_delta <= 1e-9;
    json doc = {{"schema", schema_version}, {"components", comps}, {"residual", dec.residual},
                {"quadrature_delta", dec.quadrature_delta}};
    if (radius_delta >= 0.0) {
        doc["contour_radius"] = spec.contour_radius;
        doc["radius_delta"] = radius_delta;
    }
    doc["pass"] = pass;
    write_json(output_path(spec, "decomposition.json"), doc);
    log.precision(6);
    log << "residual=" << dec.residual << " quadrature_delta=" << dec.quadrature_delta << (pass ? " pass" : " fail")
        << '\n';
    return pass ? ok : check_failed;
}

// Runs one command, mapping library errors onto the exit-code contract.
inline int run(const ExperimentSpec &spec, std::ostream &log, std::ostream &err)
{
    try {
        check_ranges(spec);
        if (spec.command == "validate") {
            return cmd_validate(spec, log);
        }
        if (spec.command == "grunsky") {
            return cmd_grunsky(spec, log);
        }
        if (spec.command == "graph-check") {
            return cmd_graph_check(spec, log);
        }
        if (spec.command == "faber-series") {
            return cmd_faber_series(spec, log);
        }
        if (spec.command == "decompose") {
            return cmd_decompose(spec, log);
        }
        throw parse_error("unknown command " + spec.command);
    } catch (const parse_error &e) {
        err << "input error: " << e.what() << '\n';
        return input_error;
    } catch (const pole_outside_regions &e) {
        err << "input error: " << e.what() << '\n';
        return input_error;
    } catch (const std::invalid_argument &e) {
        err << "input error: " << e.what() << '\n';
        return input_error;
    } catch (const error &e) {
        err << "check failed: " << e.what() << '\n';
        return check_failed;
    } catch (const std::filesystem::filesystem_error &e) {
        err << "input error: " << e.what() << '\n';
        return input_error;
    }
}

} // namespace faberkit::cli

#endif
