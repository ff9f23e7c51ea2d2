#pragma once

// Batch commands behind the ptl tool. Every file is written from operation outputs; nothing is
// recomputed here.

#include <fmt/format.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ptl/cli/config.hpp"
#include "ptl/pareto/plant_problem.hpp"
#include "ptl/plant/calibrate.hpp"
#include "ptl/scenario/scenario.hpp"

namespace ptl::cli {

enum class ExitCode : int { ok = 0, config = 1, infeasible = 2, io = 3 };

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyFrontError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Command line values that take precedence over the config file.
struct Overrides {
    std::optional<std::filesystem::path> out;
    std::optional<double> mip_gap, time_limit;
    std::optional<std::size_t> slabs;
    bool allow_out_of_box = false;
};

inline std::optional<unsigned long> seed_from_env() {
    const char* v = std::getenv("PTL_SEED");
    if (!v || !*v) return std::nullopt;
    char* end = nullptr;
    const unsigned long s = std::strtoul(v, &end, 10);
    if (*end != '\0') throw ConfigError(fmt::format("PTL_SEED '{}' is not an unsigned integer", v));
    return s;
}

inline void apply(RunConfig& c, const Overrides& o) {
    if (o.out) c.out_dir = *o.out;
    if (o.mip_gap) {
        if (!(*o.mip_gap >= 0.0 && *o.mip_gap <= 0.5)) throw ConfigError("--mip-gap outside [0, 0.5]");
        c.sweep.limits.mip_gap = *o.mip_gap;
    }
    if (o.time_limit) {
        if (!(*o.time_limit > 0.0)) throw ConfigError("--time-limit must be positive");
        c.sweep.limits.time_limit_s = *o.time_limit;
    }
    if (o.slabs) {
        if (*o.slabs < 2) throw ConfigError("--slabs must be at least 2");
        c.sweep.slabs = *o.slabs;
    }
    c.allow_out_of_box = c.allow_out_of_box || o.allow_out_of_box;
    c.seed = seed_from_env();
    check_price_box(c);
}

namespace detail {

inline void ensure_dir(const std::filesystem::path& d) {
    std::error_code ec;
    std::filesystem::create_directories(d, ec);
    if (ec) throw IoError(fmt::format("cannot create {}: {}", d.string(), ec.message()));
}

template <class Writer>
void write(const std::filesystem::path& path, Writer&& w) {
    std::ofstream os(path);
    if (!os) throw IoError(fmt::format("cannot write {}", path.string()));
    w(os);
    if (!os) throw IoError(fmt::format("write to {} failed", path.string()));
}

inline std::shared_ptr<const plant::PlantDataset> load(const RunConfig& c) {
    std::ifstream is(c.dataset);
    if (!is) throw IoError(fmt::format("cannot open dataset {}", c.dataset.string()));
    return std::make_shared<const plant::PlantDataset>(plant::load_dataset(is, c.dataset.string()));
}

inline void write_run_info(const RunConfig& c, const std::string& command) {
    write(c.out_dir / "run_info.txt", [&](std::ostream& os) {
        os << "command = " << command << "\n";
        os << "dataset = " << c.dataset.filename().string() << "\n";
        os << "PTL_SEED = " << (c.seed ? std::to_string(*c.seed) : std::string("unset")) << "\n";
        os << fmt::format("slabs = {}\nmip_gap = {}\ntime_limit_s = {}\nthreads = {}\n", c.sweep.slabs,
                          c.sweep.limits.mip_gap, c.sweep.limits.time_limit_s, c.sweep.threads);
        os << fmt::format("c_el = {}\nc_CO2 = {}\narea_terms = {}\n", c.costs.c_el, c.costs.c_CO2,
                          c.coupled.area_terms);
    });
}

inline std::string price_tag(const scenario::PriceScenario& s) { return fmt::format("el{:g}_co2{:g}", s.c_el, s.c_CO2); }

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// calibrate

// Networks naming their streams are used as given; an empty list means the reduced reference network.
inline plant::CalibrationResult run_calibrate(const RunConfig& c, std::ostream& log = std::clog) {
    auto t = plant::CalibrationTargets::reference();
    t.costs = c.costs;
    if (!c.network.hot_streams.empty() || !c.network.cold_streams.empty()) t.network = c.network;
    auto r = plant::calibrate_reference_dataset(t);
    detail::ensure_dir(c.out_dir);
    detail::write(c.out_dir / "reference_dataset.csv", [&](std::ostream& os) { plant::write_dataset(r.dataset, os); });
    detail::write(c.out_dir / "calibration.csv", [&](std::ostream& os) {
        os << "U_cell_V,eta_ptl,c_prod_eur_per_kg,product_kg_h,P_el_kW,q_hu_kW,q_cu_kW,q_combustion_kW,n_hex,hex_cost\n";
        for (const auto& s : r.samples) {
            const auto& e = s.objectives;
            os << fmt::format("{:.3f},{:.8f},{:.8f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{},{:.6f}\n", e.U_cell, e.eta,
                              e.c_prod, e.product_rate, e.P_el, s.design.q_hu, s.design.q_cu, s.design.q_combustion,
                              s.design.hex_count(), s.design.area_cost + s.design.fixed_cost);
        }
    });
    detail::write_run_info(c, "calibrate");
    log << fmt::format("calibrated {} samples -> {}\n", r.samples.size(), (c.out_dir / "reference_dataset.csv").string());
    return r;
}

// ---------------------------------------------------------------------------------------------
// pareto

inline pareto::ParetoFront solve_front(const RunConfig& c, const plant::PlantDataset& ds_in,
                                       const objective::CostParameters& costs) {
    auto ds = std::make_shared<const plant::PlantDataset>(ds_in);
    const auto cfg = objective::with_costs(c.network, costs);
    try {
        auto f = pareto::epsilon_sweep(pareto::plant_model_factory(ds, cfg, costs, c.coupled), c.sweep);
        if (f.points.empty()) throw EmptyFrontError("sweep returned no points");
        return f;
    } catch (const pareto::SweepError& e) {
        throw EmptyFrontError(e.what());
    }
}

inline void write_gaps_csv(const pareto::ParetoFront& f, std::ostream& os) {
    os << "slab,eta_lo,eta_hi,reason\n";
    for (const auto& g : f.gaps) os << fmt::format("{},{:.8f},{:.8f},{}\n", g.slab, g.eta_lo, g.eta_hi, g.reason);
}

inline void write_pareto_outputs(const pareto::ParetoFront& f, const std::filesystem::path& dir) {
    detail::ensure_dir(dir / "designs");
    detail::write(dir / "front.csv", [&](std::ostream& os) { pareto::write_front_csv(f, os); });
    pareto::ParetoFront raw;
    raw.points = f.raw;
    detail::write(dir / "raw.csv", [&](std::ostream& os) { pareto::write_front_csv(raw, os); });
    detail::write(dir / "gaps.csv", [&](std::ostream& os) { write_gaps_csv(f, os); });
    for (std::size_t k = 0; k < f.points.size(); ++k)
        detail::write(dir / "designs" / fmt::format("point_{:02}.csv", k),
                      [&](std::ostream& os) { hens::write_design_csv(f.points[k].design, os); });
}

inline pareto::ParetoFront run_pareto(const RunConfig& c, std::ostream& log = std::clog) {
    const auto ds = detail::load(c);
    detail::ensure_dir(c.out_dir);
    const auto f = solve_front(c, *ds, c.costs);
    write_pareto_outputs(f, c.out_dir);
    detail::write_run_info(c, "pareto");
    log << fmt::format("front: {} points, {} gaps -> {}\n", f.points.size(), f.gaps.size(),
                       (c.out_dir / "front.csv").string());
    return f;
}

// Front from an earlier `pareto` run in the output directory, or a fresh sweep.
inline pareto::ParetoFront front_for(const RunConfig& c, std::ostream& log) {
    const auto path = c.out_dir / "front.csv";
    if (std::filesystem::exists(path)) {
        std::ifstream is(path);
        if (!is) throw IoError(fmt::format("cannot open {}", path.string()));
        auto f = pareto::read_front_csv(is, path.string());
        if (f.points.empty()) throw EmptyFrontError(fmt::format("{} has no points", path.string()));
        log << fmt::format("using {} ({} points)\n", path.string(), f.points.size());
        return f;
    }
    return run_pareto(c, log);
}

// ---------------------------------------------------------------------------------------------
// scenario

struct ScenarioOutputs {
    std::vector<std::pair<scenario::PriceScenario, pareto::ParetoFront>> shifted;
    scenario::Envelope grid;
    std::vector<std::pair<scenario::PriceScenario, std::vector<scenario::Pocket>>> pockets;
};

inline ScenarioOutputs scenario_outputs(const RunConfig& c, const pareto::ParetoFront& f) {
    ScenarioOutputs out;
    for (auto s : c.scenario.scenarios) {
        s.out_of_box = s.out_of_box || c.allow_out_of_box;
        out.shifted.emplace_back(s, scenario::shift_front(f, s, c.costs));
        if (out.shifted.back().second.points.size() >= 3)
            out.pockets.emplace_back(s, scenario::detect_pockets(out.shifted.back().second));
    }
    out.grid = scenario::envelope(f, c.costs, c.scenario.c_el.values(), c.scenario.c_CO2.values(), c.allow_out_of_box);
    return out;
}

inline ScenarioOutputs run_scenario(const RunConfig& c, std::ostream& log = std::clog) {
    detail::ensure_dir(c.out_dir);
    const auto f = front_for(c, log);
    auto out = scenario_outputs(c, f);
    detail::write(c.out_dir / "scenario.csv", [&](std::ostream& os) { scenario::write_scenario_csv(out.shifted, os); });
    detail::write(c.out_dir / "envelope.csv", [&](std::ostream& os) { scenario::write_envelope_csv(out.grid, os); });
    detail::write(c.out_dir / "pockets.csv", [&](std::ostream& os) { scenario::write_pockets_csv(out.pockets, os); });
    if (c.scenario.resolve) {
        // Independent sweeps at the listed prices, for comparison with the shifted fronts.
        const auto ds = detail::load(c);
        for (const auto& [s, shifted] : out.shifted) {
            const auto dir = c.out_dir / "resolved" / detail::price_tag(s);
            auto fr = solve_front(c, *ds, c.costs.with_prices(s.c_el, s.c_CO2));
            write_pareto_outputs(fr, dir);
            log << fmt::format("re-solved {}: {} points\n", detail::price_tag(s), fr.points.size());
        }
    }
    detail::write_run_info(c, "scenario");
    std::size_t n = 0;
    for (const auto& [s, list] : out.pockets) n += list.size();
    log << fmt::format("{} scenarios, {} pockets\n", out.shifted.size(), n);
    return out;
}

// ---------------------------------------------------------------------------------------------
// report

struct Report {
    scenario::Envelope el, co2, grid;
};

inline void write_front_plot(const pareto::ParetoFront& f, std::ostream& os) {
    os << "eta_ptl,c_prod_eur_per_kg,U_cell_V,n_hex\n";
    for (const auto& p : f.points)
        os << fmt::format("{:.8f},{:.8f},{:.6f},{}\n", p.objectives.eta, p.objectives.c_prod, p.U_cell, p.n_hex);
}

inline void write_sensitivity_plot(const pareto::ParetoFront& f, std::ostream& os) {
    os << "eta_ptl,grad_cel_kWh_per_kg,grad_cco2_kg_per_kg,U_cell_V\n";
    for (const auto& p : f.points) {
        if (!p.sensitivities) throw scenario::ScenarioError(fmt::format("point in slab {} has no sensitivities", p.slab));
        os << fmt::format("{:.8f},{:.8f},{:.8f},{:.6f}\n", p.objectives.eta, p.sensitivities->grad_el,
                          p.sensitivities->grad_co2, p.U_cell);
    }
}

// One price varied at a time, the other at its base value.
inline std::vector<scenario::PriceScenario> single_price_scenarios(const RunConfig& c) {
    std::vector<scenario::PriceScenario> out;
    for (double el : c.scenario.c_el.values()) out.push_back({el, c.costs.c_CO2, c.allow_out_of_box});
    for (double co2 : c.scenario.c_CO2.values()) out.push_back({c.costs.c_el, co2, c.allow_out_of_box});
    return out;
}

inline std::vector<scenario::PriceScenario> extreme_scenarios(const RunConfig& c) {
    const auto& e = c.scenario.c_el;
    const auto& k = c.scenario.c_CO2;
    const bool b = c.allow_out_of_box;
    return {{c.costs.c_el, c.costs.c_CO2, b}, {e.lo, k.lo, b}, {e.lo, k.hi, b}, {e.hi, k.lo, b}, {e.hi, k.hi, b}};
}

inline Report run_report(const RunConfig& c, std::ostream& log = std::clog) {
    detail::ensure_dir(c.out_dir);
    const auto f = front_for(c, log);
    const auto& sc = c.scenario;
    Report r;
    r.el = scenario::envelope(f, c.costs, sc.c_el.values(), {c.costs.c_CO2}, c.allow_out_of_box);
    r.co2 = scenario::envelope(f, c.costs, {c.costs.c_el}, sc.c_CO2.values(), c.allow_out_of_box);
    r.grid = scenario::envelope(f, c.costs, sc.c_el.values(), sc.c_CO2.values(), c.allow_out_of_box);
    auto shifted = [&](const std::vector<scenario::PriceScenario>& list) {
        std::vector<std::pair<scenario::PriceScenario, pareto::ParetoFront>> out;
        for (const auto& s : list) out.emplace_back(s, scenario::shift_front(f, s, c.costs));
        return out;
    };
    const auto& d = c.out_dir;
    detail::write(d / "fig3_pareto_front.csv", [&](std::ostream& os) { write_front_plot(f, os); });
    detail::write(d / "fig4_envelope_el.csv", [&](std::ostream& os) { scenario::write_envelope_csv(r.el, os); });
    detail::write(d / "fig4_envelope_co2.csv", [&](std::ostream& os) { scenario::write_envelope_csv(r.co2, os); });
    detail::write(d / "fig4_envelope_grid.csv", [&](std::ostream& os) { scenario::write_envelope_csv(r.grid, os); });
    detail::write(d / "fig5_sensitivities.csv", [&](std::ostream& os) { write_sensitivity_plot(f, os); });
    detail::write(d / "fig6_fronts_single_price.csv",
                  [&](std::ostream& os) { scenario::write_scenario_csv(shifted(single_price_scenarios(c)), os); });
    detail::write(d / "fig7_fronts_extremes.csv",
                  [&](std::ostream& os) { scenario::write_scenario_csv(shifted(extreme_scenarios(c)), os); });
    detail::write(d / "planes.csv", [&](std::ostream& os) {
        os << "surface,intercept,slope_el_per_eur_MWh,slope_co2_per_eur_t\n";
        for (const auto& [name, p] : {std::pair{"min", r.grid.min_plane}, std::pair{"max", r.grid.max_plane}})
            os << fmt::format("{},{:.8f},{:.10f},{:.10f}\n", name, p.intercept, p.slope_el, p.slope_co2);
    });
    detail::write_run_info(c, "report");
    log << fmt::format("report files -> {}\n", d.string());
    return r;
}

// ---------------------------------------------------------------------------------------------

inline ExitCode run(const std::string& command, RunConfig c, std::ostream& log = std::clog) {
    try {
        if (command == "calibrate")
            run_calibrate(c, log);
        else if (command == "pareto")
            run_pareto(c, log);
        else if (command == "scenario")
            run_scenario(c, log);
        else if (command == "report")
            run_report(c, log);
        else
            throw ConfigError(fmt::format("unknown command '{}'", command));
        return ExitCode::ok;
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return ExitCode::config;
    } catch (const plant::InfeasibleTargets& e) {
        log << "infeasible: " << e.what() << "\n";
        return ExitCode::infeasible;
    } catch (const plant::DatasetError& e) {
        log << "dataset error: " << e.what() << "\n";
        return ExitCode::config;
    } catch (const objective::ObjectiveError& e) {
        log << "model error: " << e.what() << "\n";
        return ExitCode::config;
    } catch (const scenario::ScenarioError& e) {
        log << "scenario error: " << e.what() << "\n";
        return ExitCode::config;
    } catch (const EmptyFrontError& e) {
        log << "no front: " << e.what() << "\n";
        return ExitCode::infeasible;
    } catch (const pareto::FrontFormatError& e) {
        log << "front file: " << e.what() << "\n";
        return ExitCode::io;
    } catch (const IoError& e) {
        log << "i/o error: " << e.what() << "\n";
        return ExitCode::io;
    } catch (const std::filesystem::filesystem_error& e) {
        log << "i/o error: " << e.what() << "\n";
        return ExitCode::io;
    }
}

}  // namespace ptl::cli
