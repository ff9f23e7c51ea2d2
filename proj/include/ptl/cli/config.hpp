#pragma once

// Run configuration read from an INI file. Relative paths resolve against the file's directory.

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptl/hens/superstructure.hpp"
#include "ptl/milp/branch_and_bound.hpp"
#include "ptl/objective/objectives.hpp"
#include "ptl/pareto/sweep.hpp"
#include "ptl/scenario/scenario.hpp"

namespace ptl::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridAxis {
    double lo = 0.0, hi = 0.0;
    std::size_t points = 2;
    std::vector<double> values() const { return scenario::axis(lo, hi, points); }
};

struct ScenarioSettings {
    GridAxis c_el{10.0, 100.0, 10};
    GridAxis c_CO2{0.0, 150.0, 11};
    std::vector<scenario::PriceScenario> scenarios{{20.0, 50.0}, {10.0, 50.0}, {100.0, 50.0},
                                                   {20.0, 0.0},  {20.0, 150.0}, {10.0, 0.0},
                                                   {100.0, 150.0}};
    bool resolve = false;  // re-run the sweep at each listed scenario, for comparison only
};

struct RunConfig {
    std::filesystem::path dataset;
    std::filesystem::path out_dir = "out";
    hens::SuperstructureConfig network;
    objective::CostParameters costs;
    objective::CoupledOptions coupled;
    pareto::SweepOptions sweep;
    ScenarioSettings scenario;
    bool allow_out_of_box = false;
    std::optional<unsigned long> seed;  // echoed in run_info.txt; the pipeline has no random choices
};

namespace detail {

inline std::vector<std::string> words(const std::string& s) {
    std::vector<std::string> out;
    std::string w;
    for (char ch : s) {
        if (ch == ',' || ch == ' ' || ch == '\t') {
            if (!w.empty()) out.push_back(std::move(w));
            w.clear();
        } else {
            w.push_back(ch);
        }
    }
    if (!w.empty()) out.push_back(std::move(w));
    return out;
}

template <class T>
T get(const boost::property_tree::ptree& pt, const std::string& key, T fallback) {
    const auto text = pt.get_optional<std::string>(key);
    if (!text) return fallback;
    const auto v = pt.get_optional<T>(key);
    if (!v) throw ConfigError(fmt::format("bad value for '{}': '{}'", key, *text));
    return *v;
}

inline void check_range(double v, double lo, double hi, const char* key) {
    if (!(v >= lo && v <= hi)) throw ConfigError(fmt::format("{} = {} outside [{}, {}]", key, v, lo, hi));
}

}  // namespace detail

inline std::vector<scenario::PriceScenario> parse_scenarios(const std::string& text) {
    std::vector<scenario::PriceScenario> out;
    for (const auto& w : detail::words(text)) {
        const auto colon = w.find(':');
        if (colon == std::string::npos) throw ConfigError(fmt::format("scenario '{}' is not c_el:c_CO2", w));
        try {
            std::size_t a = 0, b = 0;
            const double el = std::stod(w.substr(0, colon), &a);
            const double co2 = std::stod(w.substr(colon + 1), &b);
            if (a != colon || b != w.size() - colon - 1) throw std::invalid_argument(w);
            out.push_back({el, co2});
        } catch (const std::logic_error&) {
            throw ConfigError(fmt::format("scenario '{}' is not c_el:c_CO2", w));
        }
    }
    return out;
}

inline RunConfig parse_config(std::istream& is, const std::filesystem::path& base_dir = ".") {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(e.what());
    }
    using detail::get;
    RunConfig c;
    auto path = [&](const std::string& p) {
        std::filesystem::path q(p);
        return q.is_absolute() ? q : base_dir / q;
    };
    c.dataset = path(get<std::string>(tree, "dataset.path", "data/reference_dataset.csv"));
    c.out_dir = path(get<std::string>(tree, "output.dir", "out"));

    auto& n = c.network;
    n.stages = get<std::size_t>(tree, "network.stages", n.stages);
    n.dT_min = get<double>(tree, "network.dT_min", n.dT_min);
    n.offgas_budget = get<bool>(tree, "network.offgas_budget", n.offgas_budget);
    n.hot_streams = detail::words(get<std::string>(tree, "network.hot_streams", ""));
    n.cold_streams = detail::words(get<std::string>(tree, "network.cold_streams", ""));
    n.area_rmse = get<double>(tree, "network.area_rmse", n.area_rmse);
    const auto enc = get<std::string>(tree, "network.encoding", "logarithmic");
    if (enc == "logarithmic")
        n.encoding = milp::PwlEncoding::logarithmic;
    else if (enc == "per_piece")
        n.encoding = milp::PwlEncoding::per_piece;
    else
        throw ConfigError(fmt::format("network.encoding '{}' is neither logarithmic nor per_piece", enc));
    c.coupled.area_terms = get<bool>(tree, "network.area_terms", c.coupled.area_terms);
    c.coupled.ratio_rmse = get<double>(tree, "objective.ratio_rmse", c.coupled.ratio_rmse);
    if (n.stages < 1 || n.stages > 6) throw ConfigError(fmt::format("network.stages = {} outside [1, 6]", n.stages));
    detail::check_range(n.dT_min, 1e-3, 100.0, "network.dT_min");
    detail::check_range(n.area_rmse, 1e-5, 0.5, "network.area_rmse");
    detail::check_range(c.coupled.ratio_rmse, 1e-5, 0.1, "objective.ratio_rmse");

    auto& k = c.costs;
    k.c_el = get<double>(tree, "costs.c_el", k.c_el);
    k.c_CO2 = get<double>(tree, "costs.c_CO2", k.c_CO2);
    k.c_H2O = get<double>(tree, "costs.c_H2O", k.c_H2O);
    k.c_air = get<double>(tree, "costs.c_air", k.c_air);
    k.C_sys = get<double>(tree, "costs.C_sys", k.C_sys);
    k.AF_inv = get<double>(tree, "costs.AF_inv", k.AF_inv);
    k.AF_op = get<double>(tree, "costs.AF_op", k.AF_op);
    k.hours = get<double>(tree, "costs.hours", k.hours);
    k.eps_hu = get<double>(tree, "costs.eps_hu", k.eps_hu);
    k.eps_cu = get<double>(tree, "costs.eps_cu", k.eps_cu);
    k.c_f_hex = get<double>(tree, "costs.c_f_hex", k.c_f_hex);
    k.c_v_hex = get<double>(tree, "costs.c_v_hex", k.c_v_hex);
    k.beta = get<double>(tree, "costs.beta", k.beta);
    try {
        k.validate();
    } catch (const objective::ObjectiveError& e) {
        throw ConfigError(e.what());
    }

    auto& s = c.sweep;
    s.slabs = get<std::size_t>(tree, "sweep.slabs", s.slabs);
    s.limits.mip_gap = get<double>(tree, "sweep.mip_gap", s.limits.mip_gap);
    s.limits.time_limit_s = get<double>(tree, "sweep.time_limit", 600.0);
    s.limits.node_limit = get<std::size_t>(tree, "sweep.node_limit", s.limits.node_limit);
    s.double_sided = get<bool>(tree, "sweep.double_sided", s.double_sided);
    s.threads = get<unsigned>(tree, "sweep.threads", 1u);
    if (s.slabs < 2) throw ConfigError("sweep.slabs must be at least 2");
    detail::check_range(s.limits.mip_gap, 0.0, 0.5, "sweep.mip_gap");
    if (!(s.limits.time_limit_s > 0.0)) throw ConfigError("sweep.time_limit must be positive");

    auto& sc = c.scenario;
    auto axis = [&](const std::string& name, GridAxis& a) {
        a.lo = get<double>(tree, "scenario." + name + "_min", a.lo);
        a.hi = get<double>(tree, "scenario." + name + "_max", a.hi);
        a.points = get<std::size_t>(tree, "scenario." + name + "_points", a.points);
        if (a.points < 2 || !(a.hi > a.lo)) throw ConfigError(fmt::format("scenario.{} axis needs hi > lo and two points", name));
    };
    axis("c_el", sc.c_el);
    axis("c_CO2", sc.c_CO2);
    if (auto list = tree.get_optional<std::string>("scenario.scenarios")) sc.scenarios = parse_scenarios(*list);
    sc.resolve = get<bool>(tree, "scenario.resolve", sc.resolve);
    c.allow_out_of_box = get<bool>(tree, "scenario.allow_out_of_box", false);
    return c;
}

inline RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is) throw ConfigError(fmt::format("cannot open config {}", file.string()));
    return parse_config(is, file.parent_path().empty() ? std::filesystem::path(".") : file.parent_path());
}

// Prices inside the documented box unless explicitly allowed.
inline void check_price_box(RunConfig& c) {
    const objective::PriceBox box;
    auto inside = [&](double el, double co2) { return box.contains(el, co2); };
    if (c.allow_out_of_box) {
        for (auto& s : c.scenario.scenarios) s.out_of_box = true;
        return;
    }
    if (!inside(c.costs.c_el, c.costs.c_CO2))
        throw ConfigError(fmt::format("base prices ({}, {}) outside the price box", c.costs.c_el, c.costs.c_CO2));
    if (!inside(c.scenario.c_el.lo, c.scenario.c_CO2.lo) || !inside(c.scenario.c_el.hi, c.scenario.c_CO2.hi))
        throw ConfigError("scenario grid leaves the price box");
    for (const auto& s : c.scenario.scenarios)
        if (!inside(s.c_el, s.c_CO2)) throw ConfigError(fmt::format("scenario {}:{} outside the price box", s.c_el, s.c_CO2));
}

}  // namespace ptl::cli
