// Acceptance run: one line per criterion with the measured quantity, its
// tolerance, and the wall time against the budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace faberkit;

namespace
{

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<Outcome()> body;
};

std::string fmt(const char *f, double a, double b = 0.0)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double sq(double x)
{
    return x * x;
}

Outcome affine_nullity()
{
    const std::vector<ConformalMapSpec> maps{ConformalMapSpec(-2.0, {1.0}), ConformalMapSpec(2.0, {0.8}),
                                             ConformalMapSpec(cplx(0.0, 4.0), {1.0}),
                                             ConformalMapSpec(cplx(0.4, -1.0), {cplx(0.7, 0.2)})};
    double worst = 0.0;
    for (const auto &spec : maps) {
        const auto cfg = fixtures::single(spec);
        worst = std::max(worst, definitional_block(cfg, 0, 0, 32).cwiseAbs().maxCoeff());
        worst = std::max(worst, diagonal_block_series(spec, 32).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-12, fmt("max |b_nm| = %.3e (tol 1e-12)", worst)};
}

Outcome closed_form_offdiagonal()
{
    const auto g = assemble(fixtures::config_a(), 2, MethodPolicy::cross_checked);
    const cplx b11 = g.monomial[1][0](0, 0), b21 = g.monomial[1][0](1, 0), b12 = g.monomial[0][1](0, 0);
    const double e = std::max({std::abs(b11 + 1.0 / 16.0), std::abs(b21 - 1.0 / 64.0), std::abs(b12 + 1.0 / 16.0)});
    const double s = operator_norm(assemble(fixtures::config_a(), 1, MethodPolicy::cross_checked));
    const double es = std::abs(s - 0.0625);
    return {e <= 1e-10 && es <= 1e-10, fmt("entry error %.3e, |sigma_max(M=1) - 0.0625| = %.3e (tol 1e-10)", e, es)};
}

Outcome identity_recovery()
{
    double worst = 0.0;
    for (const auto &named : fixtures::all_configs()) {
        worst = std::max(worst, assemble(named.config, 32).identity_defect);
    }
    return {worst <= 1e-10, fmt("max deviation from delta_ij z^-m = %.3e (tol 1e-10)", worst)};
}

Outcome norm_bound()
{
    bool ok = true;
    std::string detail;
    for (const auto &named : fixtures::all_configs()) {
        const auto g = assemble(named.config, 64);
        double prev = 0.0;
        detail += named.name + ":";
        for (std::size_t M : {8u, 16u, 32u, 64u}) {
            const double s = operator_norm(g.truncated(M));
            ok = ok && s < 1.0 && s >= prev;
            prev = s;
            detail += fmt(" %.12f", s);
        }
        detail += "  ";
    }
    return {ok, detail};
}

Outcome energy_identities()
{
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> n;
    const auto random_h = [&](int support) {
        CoeffSeq h;
        for (int m = 1; m <= support; ++m) {
            h.set(-m, cplx(n(rng), n(rng)) / static_cast<double>(m));
        }
        return h;
    };
    double worst1 = 0.0;
    const auto one = fixtures::single(ConformalMapSpec(-2.0, {1.0, 0.1}));
    for (int trial = 0; trial < 20; ++trial) {
        const auto H = random_h(12);
        const double hh = sq(dirichlet_norm_minus(H));
        const double rhs = dirichlet_norm_sigma_sq(one, apply_faber(one, 0, H))
                           + sq(dirichlet_norm_plus(apply_grunsky_block(one, 0, 0, H).coeffs));
        worst1 = std::max(worst1, std::abs(hh - rhs) / hh);
    }
    double worst2 = 0.0;
    const auto cfg = fixtures::config_a();
    for (int trial = 0; trial < 20; ++trial) {
        for (std::size_t j = 0; j < cfg.size(); ++j) {
            const auto H = random_h(12);
            double lhs = 0.0;
            for (std::size_t i = 0; i < cfg.size(); ++i) {
                lhs += sq(dirichlet_norm_plus(apply_grunsky_block(cfg, i, j, H).coeffs));
            }
            const double hh = sq(dirichlet_norm_minus(H));
            const double rhs = hh - dirichlet_norm_sigma_sq(cfg, apply_faber(cfg, j, H));
            worst2 = std::max(worst2, std::abs(lhs - rhs) / hh);
        }
    }
    return {worst1 <= 1e-7 && worst2 <= 1e-6,
            fmt("single-curve rel %.3e (tol 1e-7), block rel %.3e (tol 1e-6)", worst1, worst2)};
}

Outcome graph_characterization()
{
    double worst = 0.0;
    std::size_t count = 0;
    for (const auto &named : fixtures::all_configs()) {
        const auto g = assemble(named.config, 32);
        for (const auto &h : fixtures::rational_family(named.config)) {
            worst = std::max(worst, graph_check(named.config, h, 32, g).residual);
            ++count;
        }
    }
    return {worst <= 1e-7 && count >= 10,
            fmt("max residual %.3e over %.0f functions (tol 1e-7)", worst, static_cast<double>(count))};
}

Outcome decomposition()
{
    double complete = 0.0, ortho = 0.0;
    for (const auto &named : fixtures::all_configs()) {
        const auto &cfg = named.config;
        const auto grid = sigma_probe_grid(cfg);
        for (const auto &h : fixtures::rational_family(cfg)) {
            const auto dec = decompose(cfg, h, false);
            complete = std::max(complete, dec.residual);
            for (std::size_t i = 0; i < cfg.size(); ++i) {
                for (std::size_t j = 0; j < cfg.size(); ++j) {
                    const auto proj = projection_component(cfg, i, dec.components[j]);
                    for (const auto &z : grid) {
                        const cplx expect = i == j ? dec.components[j](z) : cplx{};
                        ortho = std::max(ortho, std::abs(proj(z) - expect));
                    }
                }
            }
        }
    }
    return {complete <= 1e-10 && ortho <= 1e-9,
            fmt("completeness %.3e (tol 1e-10), projection defect %.3e (tol 1e-9)", complete, ortho)};
}

Outcome faber_series()
{
    const auto a = fixtures::config_a();
    const auto term = faber_partial_sum_error(a, RationalFn::simple(-2.0, 1, 1.0), 8, sigma_probe_grid(a));
    double term_err = 0.0;
    for (double e : term.errors) {
        term_err = std::max(term_err, e);
    }
    struct Case {
        MultiDomainConfig cfg;
        cplx pole;
    };
    const auto b = fixtures::config_b();
    const std::vector<Case> cases{{a, -2.3},
                                  {a, cplx(-2.0, 0.4)},
                                  {a, cplx(2.25, -0.25)},
                                  {b, evaluate_map(b.maps[0], cplx(0.1, 0.35))},
                                  {b, evaluate_map(b.maps[1], -0.45)}};
    double worst = 0.0;
    for (const auto &c : cases) {
        const auto e = faber_partial_sum_error(c.cfg, RationalFn::simple(c.pole, 1, 1.0), 30, boundary_probe_grid(c.cfg));
        const int k = enclosing_region(c.cfg, c.pole);
        const double q = std::abs(invert_map(c.cfg.maps[static_cast<std::size_t>(k)], c.pole));
        worst = std::max(worst, std::abs(e.fitted_ratio - q) / q);
    }
    return {term_err <= 1e-14 && worst <= 0.05,
            fmt("termination error %.3e, worst ratio deviation %.2f%% (tol 5%%)", term_err, 100.0 * worst)};
}

Outcome cross_method()
{
    double worst = 0.0;
    for (const auto &named : fixtures::all_configs()) {
        const auto g = assemble(named.config, 16, MethodPolicy::cross_checked);
        for (const auto &row : g.cross_method_delta) {
            for (double d : row) {
                worst = std::max(worst, d);
            }
        }
    }
    return {worst <= 1e-8, fmt("max entrywise difference %.3e (tol 1e-8)", worst)};
}

Outcome contour_invariance()
{
    double radius = 0.0, sides = 0.0;
    for (const auto &named : fixtures::all_configs()) {
        const auto &cfg = named.config;
        const auto grid = sigma_probe_grid(cfg);
        for (const auto &h : fixtures::rational_family(cfg)) {
            for (std::size_t i = 0; i < cfg.size(); ++i) {
                const auto ref = projection_component(cfg, i, h, 1.02);
                const auto inner = projection_component(cfg, i, h, 0.97);
                const auto outer = projection_component(cfg, i, h, 1.03);
                std::vector<ProjectionComponent<RationalFn>> others;
                for (double s : {1.04, 1.06, 1.08, 1.10}) {
                    others.push_back(projection_component(cfg, i, h, s));
                }
                for (const auto &z : grid) {
                    const cplx r = ref(z);
                    for (const auto &o : others) {
                        radius = std::max(radius, std::abs(o(z) - r));
                    }
                    sides = std::max(sides, std::abs(inner(z) - outer(z)));
                }
            }
        }
    }
    return {radius <= 1e-9 && sides <= 1e-9,
            fmt("radius spread %.3e, inside/outside %.3e (tol 1e-9)", radius, sides)};
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "affine nullity", 1.0, affine_nullity},
        {2, "closed-form off-diagonal", 1.0, closed_form_offdiagonal},
        {3, "identity recovery", 30.0, identity_recovery},
        {4, "norm bound", 120.0, norm_bound},
        {5, "energy identities", 60.0, energy_identities},
        {6, "graph characterization", 60.0, graph_characterization},
        {7, "decomposition", 10.0, decomposition},
        {8, "Faber series", 30.0, faber_series},
        {9, "cross-method agreement", 60.0, cross_method},
        {10, "contour invariances", 10.0, contour_invariance},
    };
    int failed = 0;
    for (const auto &c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out{false, ""};
        try {
            out = c.body();
        } catch (const std::exception &e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = dt <= c.budget_seconds;
        const bool pass = out.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("%s %2d %-26s %s [%.2fs / %.0fs]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), out.detail.c_str(),
                    dt, c.budget_seconds);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
