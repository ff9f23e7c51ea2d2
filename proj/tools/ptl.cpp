// ptl: calibrate the reference dataset, sweep the Pareto front, shift it over price scenarios and
// write plot data.

#include <CLI11.hpp>

#include <iostream>

#include "ptl/cli/commands.hpp"

int main(int argc, char** argv) {
    using namespace ptl::cli;
    CLI::App app{"Power-to-liquid plant and heat recovery network: Pareto fronts and price scenarios"};
    app.require_subcommand(1);

    std::string config_path = "config/reference.ini";
    Overrides o;
    std::string out;
    double mip_gap = -1.0, time_limit = -1.0;
    std::size_t slabs = 0;
    app.add_option("--config", config_path, "INI run configuration")->capture_default_str();
    app.add_option("--out", out, "output directory (overrides [output] dir)");
    app.add_option("--mip-gap", mip_gap, "relative MIP gap per solve");
    app.add_option("--time-limit", time_limit, "time limit per solve [s]");
    app.add_option("--slabs", slabs, "number of efficiency slabs");
    app.add_flag("--allow-out-of-box", o.allow_out_of_box, "accept prices outside the documented box");

    app.add_subcommand("calibrate", "build the reference dataset");
    app.add_subcommand("pareto", "sweep the efficiency/cost front");
    app.add_subcommand("scenario", "shift the front over price scenarios");
    app.add_subcommand("report", "write plot data files");
    app.fallthrough();

    CLI11_PARSE(app, argc, argv);

    RunConfig cfg;
    try {
        cfg = load_config(config_path);
        if (!out.empty()) o.out = out;
        if (app.count("--mip-gap")) o.mip_gap = mip_gap;
        if (app.count("--time-limit")) o.time_limit = time_limit;
        if (app.count("--slabs")) o.slabs = slabs;
        apply(cfg, o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::config);
    }
    const auto command = app.get_subcommands().front()->get_name();
    return static_cast<int>(run(command, cfg, std::cerr));
}
