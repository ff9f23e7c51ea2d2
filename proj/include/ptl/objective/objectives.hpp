#pragma once

// Efficiency and production-cost objectives: exact evaluation on a design and their
// assembly as linear expressions plus ratio links over the coupled plant/HEN model.

#include <fmt/format.h>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptl/hens/design.hpp"
#include "ptl/hens/superstructure.hpp"
#include "ptl/milp/lp_simplex.hpp"
#include "ptl/milp/model.hpp"
#include "ptl/milp/pwl_embed.hpp"
#include "ptl/plant/dataset.hpp"
#include "ptl/pwl/fit.hpp"

namespace ptl::objective {

using milp::LinearExpr;
using milp::VarId;

class ObjectiveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unit conversions for prices.
inline constexpr double kPerMWhToPerKWh = 1e-3;
inline constexpr double kPerTonneToPerKg = 1e-3;

struct PriceBox {
    pwl::Interval c_el{10.0, 100.0};   // EUR/MWh
    pwl::Interval c_CO2{0.0, 150.0};   // EUR/t
    bool contains(double el, double co2) const {
        return el >= c_el.lo && el <= c_el.hi && co2 >= c_CO2.lo && co2 <= c_CO2.hi;
    }
};

struct CostParameters {
    double c_el = 20.0;      // EUR/MWh
    double c_CO2 = 50.0;     // EUR/t
    double c_H2O = 3.54;     // EUR/t
    double c_air = 0.0;      // EUR/t
    double C_sys = 1e7;      // EUR
    double AF_inv = 0.05;    // 1/y
    double AF_op = 1.0;      // 1/y
    double hours = 8000.0;   // full-load hours per year
    double eps_hu = 1.05;
    double eps_cu = 0.05;
    double c_f_hex = 1013.6;
    double c_v_hex = 61.8;
    double beta = 0.8;

    static CostParameters reference() { return {}; }

    void validate() const {
        auto nonneg = [](double v, const char* name) {
            if (!(v >= 0.0) || !std::isfinite(v)) throw ObjectiveError(fmt::format("{} must be finite and >= 0, got {}", name, v));
        };
        nonneg(c_el, "c_el");
        nonneg(c_CO2, "c_CO2");
        nonneg(c_H2O, "c_H2O");
        nonneg(c_air, "c_air");
        nonneg(C_sys, "C_sys");
        nonneg(AF_inv, "AF_inv");
        nonneg(eps_hu, "eps_hu");
        nonneg(eps_cu, "eps_cu");
        nonneg(c_f_hex, "c_f_hex");
        nonneg(c_v_hex, "c_v_hex");
        if (!(AF_op > 0.0)) throw ObjectiveError("AF_op must be positive");
        if (!(hours > 0.0 && hours <= 8760.0)) throw ObjectiveError(fmt::format("full-load hours {} outside (0, 8760]", hours));
        if (!(beta > 0.0 && beta <= 1.0)) throw ObjectiveError("beta must lie in (0, 1]");
    }

    CostParameters with_prices(double el, double co2) const {
        auto c = *this;
        c.c_el = el;
        c.c_CO2 = co2;
        return c;
    }
};

// Exchanger cost coefficients of the HEN config follow the cost parameters.
inline hens::SuperstructureConfig with_costs(hens::SuperstructureConfig cfg, const CostParameters& c) {
    cfg.c_f_hex = c.c_f_hex;
    cfg.c_v_hex = c.c_v_hex;
    cfg.beta = c.beta;
    return cfg;
}

struct ObjectivePair {
    double eta = 0.0;     // fraction
    double c_prod = 0.0;  // EUR/kg
    friend bool operator==(const ObjectivePair&, const ObjectivePair&) = default;
};

struct Evaluation {
    double U_cell = 0.0;
    double H_prod = 0.0;        // kW
    double P_el = 0.0;          // kW
    double product_rate = 0.0;  // kg/h
    double h_mix = 0.0;         // MJ/kg
    double m_CO2 = 0.0;         // kg/h
    double capex = 0.0;         // EUR/y
    double opex_feed = 0.0;     // EUR/y
    double opex_el = 0.0;       // EUR/y
    double eta = 0.0;
    double c_prod = 0.0;        // EUR/kg

    double opex() const { return opex_feed + opex_el; }
    double tac() const { return capex + opex(); }
    ObjectivePair pair() const { return {eta, c_prod}; }
};

inline double electric_input(double P_sys, double q_hu, double q_cu, const CostParameters& c) {
    return P_sys + c.eps_hu * q_hu + c.eps_cu * q_cu;
}

inline double capex(double hex_cost, const CostParameters& c) { return c.AF_inv * (c.C_sys + hex_cost); }

// Feedstock cost rate [EUR/h].
inline double feed_cost_rate(const plant::PlantSample& s, const CostParameters& c) {
    return (c.c_CO2 * s.m_CO2 + c.c_H2O * s.m_H2O + c.c_air * s.m_air) * kPerTonneToPerKg;
}

inline Evaluation evaluate(const plant::PlantSample& s, const std::array<plant::ProductSpec, 3>& products,
                           double q_hu, double q_cu, double hex_cost, const CostParameters& c) {
    Evaluation e;
    e.U_cell = s.U_cell;
    e.H_prod = plant::enthalpy_flow(s, products);
    e.P_el = electric_input(s.P_sys, q_hu, q_cu, c);
    e.product_rate = plant::product_rate(s);
    if (!(e.product_rate > 0.0)) throw ObjectiveError("zero product rate");
    if (!(e.P_el > 0.0)) throw ObjectiveError("nonpositive electric input");
    e.h_mix = plant::mixture_enthalpy(s, products);
    e.m_CO2 = s.m_CO2;
    e.capex = capex(hex_cost, c);
    e.opex_feed = c.AF_op * c.hours * feed_cost_rate(s, c);
    e.opex_el = c.AF_op * c.hours * c.c_el * kPerMWhToPerKWh * e.P_el;
    e.eta = e.H_prod / e.P_el;
    e.c_prod = e.tac() / (c.hours * e.product_rate);
    return e;
}

inline Evaluation evaluate(const plant::PlantDataset& ds, const hens::HenDesign& d, const CostParameters& c) {
    return evaluate(plant::evaluate_at_voltage(ds, d.U_cell), ds.products, d.q_hu, d.q_cu, d.area_cost + d.fixed_cost, c);
}

// Cost sensitivities to the electricity and CO2 prices. The full-load hours cancel
// between the operating cost and the annual production.
struct Sensitivities {
    double grad_el = 0.0;   // kWh/kg, EUR/kg per EUR/kWh
    double grad_co2 = 0.0;  // kg/kg, EUR/kg per EUR/kg CO2
};

inline Sensitivities sensitivities(const Evaluation& e, const CostParameters& c) {
    if (!(e.product_rate > 0.0)) throw ObjectiveError("zero product rate");
    return {c.AF_op * e.P_el / e.product_rate, c.AF_op * e.m_CO2 / e.product_rate};
}

// ---------------------------------------------------------------------------------------------
// MILP assembly

struct RatioLink {
    VarId value;
    pwl::Box box;  // numerator, denominator
    std::optional<pwl::PwlModel> fit;  // empty when both inputs are fixed
    std::size_t binaries = 0;
};

struct CoupledOptions {
    bool area_terms = true;     // false: fixed charges only, area evaluated on the design
    double ratio_rmse = 1e-3;
    std::size_t ratio_validation_per_axis = 60;
};

struct CoupledModel {
    milp::Model model;
    hens::MatchVariables mv;
    hens::SuperstructureConfig hens_config;
    CostParameters costs;
    CoupledOptions options;
    VarId voltage;
    LinearExpr enthalpy_flow;   // kW
    LinearExpr electric_input;  // kW
    LinearExpr tac;             // kEUR/y
    LinearExpr production;      // t/y
    std::optional<RatioLink> efficiency, cost;
};

inline CoupledModel build_coupled_model(const plant::PlantDataset& ds, const hens::SuperstructureConfig& hens_cfg,
                                        const CostParameters& costs, const CoupledOptions& opts = {},
                                        hens::AreaFitCache* cache = nullptr) {
    costs.validate();
    CoupledModel cm;
    cm.hens_config = with_costs(hens_cfg, costs);
    cm.costs = costs;
    cm.options = opts;
    const auto grid = ds.voltages();
    cm.voltage = cm.model.add_variable("U_cell", grid.front(), grid.back());
    cm.mv = hens::build_superstructure(ds, cm.hens_config, cm.model, cm.voltage);
    if (opts.area_terms) {
        hens::AreaFitCache local;
        hens::add_area_cost_terms(cm.model, cm.mv, ds, cm.hens_config, cache ? *cache : local);
    } else {
        hens::add_fixed_charges(cm.mv, cm.hens_config);
    }

    std::vector<double> H, P, feed, prod;
    for (const auto& s : ds.samples) {
        H.push_back(plant::enthalpy_flow(s, ds.products));
        P.push_back(s.P_sys);
        feed.push_back(costs.AF_op * costs.hours * feed_cost_rate(s, costs) / 1000.0);
        prod.push_back(costs.hours * plant::product_rate(s) / 1000.0);
    }
    cm.enthalpy_flow = cm.mv.interpolate(H);
    cm.electric_input = cm.mv.interpolate(P);
    cm.electric_input.add(cm.mv.heater_total, costs.eps_hu);
    cm.electric_input.add(cm.mv.cooler_total, costs.eps_cu);
    cm.production = cm.mv.interpolate(prod);
    cm.tac = LinearExpr(costs.AF_inv * costs.C_sys / 1000.0);
    cm.tac.add(cm.mv.area_cost, costs.AF_inv / 1000.0);
    cm.tac.add(cm.mv.fixed_cost, costs.AF_inv / 1000.0);
    cm.tac.add(cm.mv.interpolate(feed));
    cm.tac.add(cm.electric_input, costs.AF_op * costs.hours * costs.c_el * kPerMWhToPerKWh / 1000.0);
    return cm;
}

// LP-relaxation bounds of an expression over the model.
inline pwl::Interval expression_bounds(const milp::Model& m, const LinearExpr& e) {
    milp::DualSimplex lp(m);
    pwl::Interval iv;
    for (bool maximize : {false, true}) {
        lp.set_objective(e, maximize);
        const auto res = lp.solve();
        if (res.status != milp::LpStatus::optimal)
            throw ObjectiveError(fmt::format("bounding LP is {}", res.status == milp::LpStatus::infeasible ? "infeasible" : "unbounded"));
        (maximize ? iv.hi : iv.lo) = e.evaluate(res.x);
    }
    return iv;
}

namespace detail {

inline bool has_width(const pwl::Interval& iv) { return iv.hi - iv.lo > 1e-9 * std::max(1.0, std::abs(iv.hi)); }

// y = num/den through a PWL model over the bounded box; fixed axes are dropped.
inline RatioLink link_ratio(milp::Model& m, const LinearExpr& num, const LinearExpr& den, const std::string& name,
                            const CoupledOptions& opts, milp::PwlEncoding encoding, const char* zero_message) {
    RatioLink link;
    link.box = {expression_bounds(m, num), expression_bounds(m, den)};
    if (link.box[1].lo <= 0.0) throw ObjectiveError(zero_message);
    const double lo = std::min(link.box[0].lo / link.box[1].hi, link.box[0].lo / link.box[1].lo);
    const double hi = std::max(link.box[0].hi / link.box[1].lo, link.box[0].hi / link.box[1].hi);
    link.value = m.add_variable(name, lo, hi);
    std::vector<std::size_t> dims;
    std::vector<LinearExpr> inputs;
    for (std::size_t d = 0; d < 2; ++d)
        if (has_width(link.box[d])) {
            dims.push_back(d);
            inputs.push_back(d == 0 ? num : den);
        }
    if (dims.empty()) {
        m.add_constraint(name + "_fixed", LinearExpr(link.value), milp::Sense::equal, link.box[0].lo / link.box[1].lo);
        return link;
    }
    pwl::Box sub;
    for (auto d : dims) sub.push_back(link.box[d]);
    auto f = [&](std::span<const double> p) {
        double x[2] = {link.box[0].lo, link.box[1].lo};
        for (std::size_t a = 0; a < dims.size(); ++a) x[dims[a]] = p[a];
        return x[0] / x[1];
    };
    pwl::FitOptions fo;
    fo.validation_points_per_axis = opts.ratio_validation_per_axis;
    fo.validation_points_1d = std::max<std::size_t>(opts.ratio_validation_per_axis * opts.ratio_validation_per_axis, 100);
    link.fit = dims.size() == 1 ? pwl::fit_1d([&](double x) { return f(std::span<const double>(&x, 1)); }, sub[0],
                                              opts.ratio_rmse, fo)
                                : pwl::fit_nd(f, sub, opts.ratio_rmse, fo);
    auto emb = milp::embed_pwl_simplex_log(m, *link.fit, std::span<const LinearExpr>(inputs), LinearExpr(link.value),
                                           "r_" + name, encoding, hens::kPriorityRatio);
    link.binaries = emb.binaries.size();
    return link;
}

}  // namespace detail

// eta = enthalpy flow / electric input.
inline VarId build_efficiency(CoupledModel& cm) {
    if (cm.efficiency) return cm.efficiency->value;
    cm.efficiency = detail::link_ratio(cm.model, cm.enthalpy_flow, cm.electric_input, "eta", cm.options,
                                       cm.hens_config.encoding, "electric input box contains zero");
    return cm.efficiency->value;
}

// c_prod [EUR/kg] = TAC [kEUR/y] / production [t/y].
inline VarId build_cost(CoupledModel& cm) {
    if (cm.cost) return cm.cost->value;
    cm.cost = detail::link_ratio(cm.model, cm.tac, cm.production, "c_prod", cm.options, cm.hens_config.encoding,
                                 "zero product-rate box");
    return cm.cost->value;
}

// Exact efficiency bounds as linear rows: lo·P_el <= H <= hi·P_el.
inline void add_efficiency_bounds(CoupledModel& cm, double lo, double hi, const std::string& tag = "slab") {
    if (std::isfinite(lo))
        cm.model.add_constraint(tag + "_eta_lo", cm.enthalpy_flow - lo * cm.electric_input, milp::Sense::greater_equal, 0.0);
    if (std::isfinite(hi))
        cm.model.add_constraint(tag + "_eta_hi", cm.enthalpy_flow - hi * cm.electric_input, milp::Sense::less_equal, 0.0);
}

struct Recomputed {
    hens::HenDesign design;
    Evaluation exact;
    double eta_model = std::nan("");     // value of the ratio variable, if linked
    double c_prod_model = std::nan("");
    double eta_discrepancy = 0.0;        // relative
    double cost_discrepancy = 0.0;

    double discrepancy() const { return std::max(eta_discrepancy, cost_discrepancy); }
};

inline Recomputed recompute_objectives(const milp::Solution& sol, const CoupledModel& cm, const plant::PlantDataset& ds,
                                       const CostParameters& costs) {
    Recomputed r;
    r.design = hens::extract_design(sol, cm.mv, ds, cm.hens_config);
    r.exact = evaluate(ds, r.design, costs);
    if (cm.efficiency) {
        r.eta_model = sol.value(cm.efficiency->value);
        r.eta_discrepancy = std::abs(r.eta_model - r.exact.eta) / r.exact.eta;
    }
    if (cm.cost) {
        r.c_prod_model = sol.value(cm.cost->value);
        r.cost_discrepancy = std::abs(r.c_prod_model - r.exact.c_prod) / r.exact.c_prod;
    }
    return r;
}

inline Recomputed recompute_objectives(const milp::Solution& sol, const CoupledModel& cm, const plant::PlantDataset& ds) {
    return recompute_objectives(sol, cm, ds, cm.costs);
}

}  // namespace ptl::objective
