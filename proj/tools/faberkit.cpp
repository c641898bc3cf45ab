#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <faberkit/cli.hpp>

int main(int argc, char **argv)
{
    namespace fc = faberkit::cli;
    CLI::App app{"faberkit: Faber and Grunsky operators on multiply connected domains"};
    app.require_subcommand(1);

    fc::ExperimentSpec spec;
    const auto add_common = [&](CLI::App *sub, bool needs_function) {
        sub->add_option("--config", spec.config_path, "domain configuration (JSON)")->required();
        sub->add_option("--out", spec.out_dir, "output directory");
        sub->add_option("--quad", spec.quad, "samples per boundary circle (power of two)");
        if (needs_function) {
            sub->add_option("--function", spec.function, "POLESPEC: re,im,order,cre,cim[;...]")->required();
        }
    };

    auto *validate = app.add_subcommand("validate", "check injectivity and separation of the maps");
    add_common(validate, false);

    auto *grunsky = app.add_subcommand("grunsky", "assemble the truncated Grunsky matrix");
    add_common(grunsky, false);
    grunsky->add_option("--trunc", spec.trunc, "truncation level M");
    grunsky->add_option("--method", spec.method, "auto | definitional | alternate | cross-checked");

    auto *graph = app.add_subcommand("graph-check", "residual of v = Gr(f) u for a rational function");
    add_common(graph, true);
    graph->add_option("--trunc", spec.trunc, "truncation level M");
    graph->add_option("--tol", spec.tol, "residual tolerance");

    auto *faber = app.add_subcommand("faber-series", "Faber coefficients and partial-sum errors");
    add_common(faber, true);
    faber->add_option("--trunc", spec.trunc, "number of Faber terms per component");
    faber->add_option("--grid", spec.grid, "boundary | sigma");

    auto *decomp = app.add_subcommand("decompose", "Cauchy decomposition over the boundary components");
    add_common(decomp, true);
    decomp->add_option("--contour-radius", spec.contour_radius, "extra contour radius for the independence check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? fc::ok : fc::input_error;
    }
    spec.command = app.get_subcommands().front()->get_name();
    try {
        spec.seed = fc::seed_from_env();
    } catch (const faberkit::parse_error &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return fc::input_error;
    }
    return fc::run(spec, std::cout, std::cerr);
}
