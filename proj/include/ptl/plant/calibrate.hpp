#pragma once

// Reference dataset construction. Stream data ramp linearly across their published bounds;
// feed and product flows and the system power are solved per voltage so that the
// objectives of the cheapest heat recovery network hit target efficiencies and costs.

#include <fmt/format.h>

#include <algorithm>
#include <string>
#include <vector>

#include "ptl/hens/design.hpp"
#include "ptl/hens/superstructure.hpp"
#include "ptl/milp/branch_and_bound.hpp"
#include "ptl/objective/objectives.hpp"
#include "ptl/plant/dataset.hpp"

namespace ptl::plant {

class InfeasibleTargets : public DatasetError {
public:
    using DatasetError::DatasetError;
};

struct CalibrationTargets {
    // Per sample in ascending voltage.
    std::vector<double> eta;       // fraction
    std::vector<double> c_prod;    // EUR/kg at the base prices
    std::vector<double> co2_per_product;  // kg/kg
    std::array<double, 3> product_split{0.25, 0.5, 0.25};
    double water_per_co2 = 0.45;     // kg/kg
    double air_per_product = 2.0;    // kg/kg
    double offgas_growth = 0.25;     // budget growth from the lowest to the highest voltage
    objective::CostParameters costs = objective::CostParameters::reference();
    hens::SuperstructureConfig network;  // heat recovery network the objectives are evaluated on

    static CalibrationTargets reference() {
        CalibrationTargets t;
        t.eta = {0.6184, 0.611, 0.604, 0.597, 0.590, 0.5835, 0.5767};
        t.c_prod = {2.36, 2.325, 2.32, 2.315, 2.31, 2.06, 1.83};
        for (std::size_t k = 0; k < kSampleCount; ++k)
            t.co2_per_product.push_back(3.60 + 0.12 * static_cast<double>(k) / static_cast<double>(kSampleCount - 1));
        t.network = reference_network();
        return t;
    }

    static hens::SuperstructureConfig reference_network() {
        hens::SuperstructureConfig n;
        n.stages = 2;
        n.hot_streams = {"H5", "H9", "H11", "CS2"};
        n.cold_streams = {"C3", "C7"};
        return n;
    }
};

struct CalibratedSample {
    hens::HenDesign design;
    objective::Evaluation objectives;
};

struct CalibrationResult {
    PlantDataset dataset;
    std::vector<CalibratedSample> samples;
};

namespace detail {

// Cheapest network at a fixed voltage: utility electricity plus annualized fixed charges.
// Area costs are evaluated on the resulting design only.
inline hens::HenDesign cheapest_network(const PlantDataset& ds, double U, const hens::SuperstructureConfig& cfg,
                                        const objective::CostParameters& c) {
    milp::Model m;
    auto u = m.add_variable("U_cell", U, U);
    auto mv = hens::build_superstructure(ds, cfg, m, u);
    hens::add_fixed_charges(mv, cfg);
    const double el = c.AF_op * c.hours * c.c_el * objective::kPerMWhToPerKWh;
    milp::LinearExpr obj = el * c.eps_hu * mv.heater_total + el * c.eps_cu * mv.cooler_total;
    obj.add(mv.fixed_cost, c.AF_inv);
    m.set_objective(milp::ObjectiveSense::minimize, obj);
    milp::SolveLimits lim;
    lim.mip_gap = 1e-6;
    const auto sol = milp::solve(m, lim);
    if (!sol.has_values())
        throw InfeasibleTargets(fmt::format("no heat recovery network at {} V ({})", U, milp::to_string(sol.status)));
    return hens::extract_design(sol, mv, ds, cfg);
}

}  // namespace detail

inline CalibrationResult calibrate_reference_dataset(const CalibrationTargets& t) {
    const auto grid = reference_voltages();
    auto check_size = [&](const std::vector<double>& v, const char* name) {
        if (v.size() != kSampleCount)
            throw InfeasibleTargets(fmt::format("{} needs {} entries, got {}", name, kSampleCount, v.size()));
    };
    check_size(t.eta, "eta");
    check_size(t.c_prod, "c_prod");
    check_size(t.co2_per_product, "co2_per_product");
    for (std::size_t k = 0; k < kSampleCount; ++k) {
        if (!(t.eta[k] > 0.0 && t.eta[k] < 1.0))
            throw InfeasibleTargets(fmt::format("efficiency target {} at {} V outside (0, 1)", t.eta[k], grid[k]));
        if (!(t.c_prod[k] > 0.0)) throw InfeasibleTargets(fmt::format("cost target at {} V must be positive", grid[k]));
        if (!(t.co2_per_product[k] > 0.0)) throw InfeasibleTargets("CO2 demand must be positive");
    }
    double split = 0.0;
    for (double s : t.product_split) {
        if (!(s > 0.0)) throw InfeasibleTargets("product split entries must be positive");
        split += s;
    }
    const auto& c = t.costs;
    c.validate();
    const auto cfg = objective::with_costs(t.network, c);

    CalibrationResult out;
    auto& ds = out.dataset;
    ds.streams = reference_streams();
    ds.provenance = Provenance::reference_calibrated;
    const auto ramps = linear_stream_ramps(ds.streams);
    for (std::size_t k = 0; k < kSampleCount; ++k) {
        PlantSample s;
        s.U_cell = grid[k];
        s.streams = ramps[k];
        s.q_offgas = 0.0;
        ds.samples.push_back(s);
    }

    // Offgas budget: what the combustion streams take at the lowest voltage without a limit,
    // growing linearly with voltage.
    auto unlimited = cfg;
    unlimited.offgas_budget = false;
    const double q_ref = detail::cheapest_network(ds, grid.front(), unlimited, c).q_combustion;
    for (std::size_t k = 0; k < kSampleCount; ++k)
        ds.samples[k].q_offgas =
            q_ref * (1.0 + t.offgas_growth * static_cast<double>(k) / static_cast<double>(kSampleCount - 1));

    const auto& prod = ds.products;
    double h_mix = 0.0;
    for (std::size_t v = 0; v < 3; ++v) h_mix += t.product_split[v] / split * prod[v].h_MJ_per_kg;
    for (std::size_t k = 0; k < kSampleCount; ++k) {
        auto& s = ds.samples[k];
        const auto design = detail::cheapest_network(ds, grid[k], cfg, c);
        const double hex = design.area_cost + design.fixed_cost;
        const double M = t.co2_per_product[k];
        // Cost per kg of product apart from the investment.
        const double feed = (c.c_CO2 * M + c.c_H2O * t.water_per_co2 * M + c.c_air * t.air_per_product) *
                            objective::kPerTonneToPerKg;
        const double power = c.c_el * objective::kPerMWhToPerKWh * h_mix / (3.6 * t.eta[k]);
        const double margin = t.c_prod[k] - c.AF_op * (feed + power);
        if (!(margin > 0.0))
            throw InfeasibleTargets(fmt::format("cost target {} at {} V is below the running cost {}", t.c_prod[k],
                                                grid[k], c.AF_op * (feed + power)));
        const double m = objective::capex(hex, c) / (c.hours * margin);
        for (std::size_t v = 0; v < 3; ++v) s.m_prod[v] = t.product_split[v] / split * m;
        s.m_CO2 = M * m;
        s.m_H2O = t.water_per_co2 * s.m_CO2;
        s.m_air = t.air_per_product * m;
        const double P_el = enthalpy_flow(s, prod) / t.eta[k];
        s.P_sys = P_el - (c.eps_hu * design.q_hu + c.eps_cu * design.q_cu);
        if (!(s.P_sys > 0.0))
            throw InfeasibleTargets(fmt::format("utility power exceeds the electric input at {} V", grid[k]));
        out.samples.push_back({design, {}});
    }
    for (std::size_t k = 1; k < kSampleCount; ++k) {
        const auto& a = ds.samples[k - 1];
        const auto& b = ds.samples[k];
        if (product_rate(b) < product_rate(a) || b.P_sys < a.P_sys || b.m_CO2 < a.m_CO2)
            throw InfeasibleTargets(fmt::format("targets give non-monotone flows between {} and {} V", a.U_cell, b.U_cell));
    }
    validate(ds);
    for (std::size_t k = 0; k < kSampleCount; ++k)
        out.samples[k].objectives = objective::evaluate(ds, out.samples[k].design, c);
    return out;
}

}  // namespace ptl::plant
