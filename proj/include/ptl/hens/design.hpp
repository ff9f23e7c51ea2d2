#pragma once

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "ptl/hens/superstructure.hpp"
#include "ptl/milp/branch_and_bound.hpp"

namespace ptl::hens {

struct ExchangerRecord {
    std::string id;
    std::string hot, cold;  // "CU"/"HU" for utilities
    int stage = -1;         // -1 for utility exchangers
    double duty = 0.0;      // kW
    double theta_left = 0.0, theta_right = 0.0;  // K
    double area = 0.0;                            // m2
    double area_cost = 0.0;                       // per year
};

struct HenDesign {
    double U_cell = 0.0;
    std::vector<ExchangerRecord> matches;
    std::vector<ExchangerRecord> coolers;
    std::vector<ExchangerRecord> heaters;
    double q_hu = 0.0, q_cu = 0.0, q_combustion = 0.0;  // kW
    double area_cost = 0.0;   // exact, per year
    double fixed_cost = 0.0;  // per year

    std::size_t hex_count() const { return matches.size() + coolers.size() + heaters.size(); }
};

// Active exchangers (binary set) with approach temperatures taken from the solved stage
// temperatures, and areas evaluated exactly.
inline HenDesign extract_design(const milp::Solution& sol, const MatchVariables& mv, const plant::PlantDataset& ds,
                                const SuperstructureConfig& cfg) {
    HenDesign d;
    if (!sol.has_values()) return d;
    d.U_cell = sol.value(mv.voltage);
    auto temp = [&](const LinearExpr& e) { return sol.value(e); };
    for (const auto& mt : mv.matches) {
        if (sol.value(mt.z) < 0.5) continue;
        const auto& hs = ds.streams[mv.hot[mt.hot]];
        const auto& cs = ds.streams[mv.cold[mt.cold]];
        ExchangerRecord r;
        r.id = fmt::format("{}-{}-{}", hs.id, cs.id, mt.stage + 1);
        r.hot = hs.id;
        r.cold = cs.id;
        r.stage = static_cast<int>(mt.stage) + 1;
        r.duty = std::max(0.0, sol.value(mt.q));
        r.theta_left = temp(mv.hot_temp[mt.hot][mt.stage]) - temp(mv.cold_temp[mt.cold][mt.stage]);
        r.theta_right = temp(mv.hot_temp[mt.hot][mt.stage + 1]) - temp(mv.cold_temp[mt.cold][mt.stage + 1]);
        const double U = 0.5 * (hs.U + cs.U);
        r.area = exchanger_area(r.duty, r.theta_left, r.theta_right, U);
        r.area_cost = area_cost(r.duty, r.theta_left, r.theta_right, U, cfg);
        d.matches.push_back(r);
    }
    auto utility = [&](const UtilityMatch& u, bool heater) {
        const auto& s = ds.streams[heater ? mv.cold[u.stream] : mv.hot[u.stream]];
        ExchangerRecord r;
        r.id = (heater ? "HU-" : "CU-") + s.id;
        r.hot = heater ? "HU" : s.id;
        r.cold = heater ? s.id : "CU";
        r.duty = std::max(0.0, sol.value(u.q));
        r.theta_left = sol.value(u.theta_left);
        r.theta_right = sol.value(u.theta_right);
        r.area = exchanger_area(r.duty, r.theta_left, r.theta_right, s.U);
        r.area_cost = area_cost(r.duty, r.theta_left, r.theta_right, s.U, cfg);
        return r;
    };
    for (const auto& u : mv.coolers) {
        d.q_cu += std::max(0.0, sol.value(u.q));
        if (sol.value(u.z) >= 0.5) d.coolers.push_back(utility(u, false));
    }
    for (const auto& u : mv.heaters) {
        d.q_hu += std::max(0.0, sol.value(u.q));
        if (sol.value(u.z) >= 0.5) d.heaters.push_back(utility(u, true));
    }
    d.q_combustion = sol.value(mv.combustion_total);
    for (const auto* list : {&d.matches, &d.coolers, &d.heaters})
        for (const auto& r : *list) d.area_cost += r.area_cost;
    d.fixed_cost = cfg.c_f_hex * static_cast<double>(d.hex_count());
    return d;
}

inline void write_design_csv(const HenDesign& d, std::ostream& os) {
    os << "match_id,hot,cold,stage,duty_kW,theta_left_K,theta_right_K,area_m2\n";
    for (const auto* list : {&d.matches, &d.coolers, &d.heaters})
        for (const auto& r : *list)
            os << fmt::format("{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f}\n", r.id, r.hot, r.cold, r.stage, r.duty,
                              r.theta_left, r.theta_right, r.area);
}

inline void write_design_csv(const HenDesign& d, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
    write_design_csv(d, os);
}

}  // namespace ptl::hens
