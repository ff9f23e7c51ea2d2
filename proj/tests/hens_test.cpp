#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <sstream>

#include "ptl/hens/design.hpp"
#include "ptl/hens/superstructure.hpp"
#include "ptl/milp/branch_and_bound.hpp"
#include "test_support.hpp"

using namespace ptl;
using milp::LinearExpr;
using milp::Model;

namespace {

struct Toy {
    Model m;
    hens::MatchVariables mv;
    LinearExpr objective;
};

// Utility-priced toy: hot utility 100/kW, cold utility 10/kW, 50 per exchanger.
Toy build_toy(const plant::PlantDataset& ds, std::size_t stages, double U = 1.29) {
    Toy t;
    hens::SuperstructureConfig cfg;
    cfg.stages = stages;
    cfg.dT_min = 10.0;
    auto u = t.m.add_variable("U", U, U);
    t.mv = hens::build_superstructure(ds, cfg, t.m, u);
    t.objective = 100.0 * t.mv.heater_total + 10.0 * t.mv.cooler_total;
    for (const auto& mt : t.mv.matches) t.objective.add(mt.z, 50.0);
    for (const auto& c : t.mv.coolers) t.objective.add(c.z, 50.0);
    for (const auto& h : t.mv.heaters) t.objective.add(h.z, 50.0);
    t.m.set_objective(milp::ObjectiveSense::minimize, t.objective);
    return t;
}

milp::SolveLimits exact() {
    milp::SolveLimits l;
    l.mip_gap = 1e-9;
    return l;
}

void expect_conservation(const milp::Solution& s, const hens::MatchVariables& mv, const plant::PlantDataset& ds) {
    const double U = s.value(mv.voltage);
    for (std::size_t h = 0; h < mv.hot.size(); ++h) {
        double total = 0.0;
        for (const auto& mt : mv.matches)
            if (mt.hot == h) total += s.value(mt.q);
        for (const auto& c : mv.coolers)
            if (c.stream == h) total += s.value(c.q);
        for (const auto& [pos, duty] : mv.combustion_duty)
            if (pos == h) total = -1.0;  // combustion streams have a free outlet
        if (total < 0.0) continue;
        EXPECT_NEAR(total, plant::interpolated_duty(ds, mv.hot[h], U), 1e-6) << ds.streams[mv.hot[h]].id;
    }
    for (std::size_t c = 0; c < mv.cold.size(); ++c) {
        double total = 0.0;
        for (const auto& mt : mv.matches)
            if (mt.cold == c) total += s.value(mt.q);
        for (const auto& hu : mv.heaters)
            if (hu.stream == c) total += s.value(hu.q);
        EXPECT_NEAR(total, plant::interpolated_duty(ds, mv.cold[c], U), 1e-6) << ds.streams[mv.cold[c]].id;
    }
}

void expect_approach(const milp::Solution& s, const hens::MatchVariables& mv, double dT_min) {
    for (const auto& mt : mv.matches) {
        if (s.value(mt.z) < 0.5) {
            EXPECT_NEAR(s.value(mt.q), 0.0, 1e-6);
            continue;
        }
        for (std::size_t l : {mt.stage, mt.stage + 1})
            EXPECT_GE(s.value(mv.hot_temp[mt.hot][l]) - s.value(mv.cold_temp[mt.cold][l]), dT_min - 1e-6);
    }
    for (std::size_t h = 0; h < mv.hot.size(); ++h)
        for (std::size_t k = 0; k < mv.stages; ++k)
            EXPECT_GE(s.value(mv.hot_temp[h][k]) - s.value(mv.hot_temp[h][k + 1]), -1e-6);
    for (std::size_t c = 0; c < mv.cold.size(); ++c)
        for (std::size_t k = 0; k < mv.stages; ++k)
            EXPECT_GE(s.value(mv.cold_temp[c][k]) - s.value(mv.cold_temp[c][k + 1]), -1e-6);
}

}  // namespace

TEST(Superstructure, ToyHasFourMatchesPerStage) {
    auto ds = test::toy_2x2();
    auto t = build_toy(ds, 1);
    EXPECT_EQ(t.mv.matches.size(), 4u);
    EXPECT_EQ(t.mv.coolers.size(), 2u);
    EXPECT_EQ(t.mv.heaters.size(), 2u);
    // 4 match + 4 utility binaries and 3 for the 7-sample voltage weights.
    EXPECT_EQ(t.m.num_binaries(), 11u);
}

TEST(Superstructure, ToyMatchesExhaustiveStructureEnumeration) {
    auto ds = test::toy_2x2();
    auto t = build_toy(ds, 1);
    auto sol = milp::solve(t.m, exact());
    ASSERT_EQ(sol.status, milp::SolveStatus::optimal_within_gap);
    expect_conservation(sol, t.mv, ds);
    expect_approach(sol, t.mv, 10.0);

    double best = milp::kInf;
    unsigned best_mask = 0;
    for (unsigned mask = 0; mask < 16; ++mask) {
        Model m = t.m;
        for (std::size_t a = 0; a < 4; ++a) {
            const double v = (mask >> a) & 1u;
            m.set_bounds(t.mv.matches[a].z, v, v);
        }
        auto s = milp::solve(m, exact());
        if (s.status == milp::SolveStatus::optimal_within_gap && s.objective < best - 1e-9) {
            best = s.objective;
            best_mask = mask;
        }
    }
    EXPECT_NEAR(sol.objective, best, 1e-6 * std::max(1.0, std::abs(best)));
    unsigned got = 0;
    for (std::size_t a = 0; a < 4; ++a)
        if (sol.value(t.mv.matches[a].z) > 0.5) got |= 1u << a;
    EXPECT_EQ(got, best_mask);

    auto design = hens::extract_design(sol, t.mv, ds, hens::SuperstructureConfig{});
    EXPECT_EQ(design.matches.size(), static_cast<std::size_t>(std::popcount(got)));
}

TEST(Superstructure, AllUtilityDesignWhenMatchesForbidden) {
    auto ds = test::toy_2x2();
    auto t = build_toy(ds, 2);
    for (const auto& mt : t.mv.matches) t.m.set_bounds(mt.z, 0.0, 0.0);
    auto sol = milp::solve(t.m, exact());
    ASSERT_EQ(sol.status, milp::SolveStatus::optimal_within_gap);
    auto design = hens::extract_design(sol, t.mv, ds, hens::SuperstructureConfig{});
    EXPECT_EQ(design.matches.size(), 0u);
    EXPECT_EQ(design.coolers.size() + design.heaters.size(), 4u);
    EXPECT_NEAR(design.q_cu, 330.0 + 180.0, 1e-6);
    EXPECT_NEAR(design.q_hu, 230.0 + 240.0, 1e-6);
}

TEST(Superstructure, MoreStagesNeverRaiseUtilityDuty) {
    auto ds = test::toy_2x2();
    double prev = milp::kInf;
    for (std::size_t st = 1; st <= 3; ++st) {
        auto t = build_toy(ds, st);
        t.m.set_objective(milp::ObjectiveSense::minimize, t.mv.heater_total + t.mv.cooler_total);
        auto sol = milp::solve(t.m, exact());
        ASSERT_EQ(sol.status, milp::SolveStatus::optimal_within_gap);
        EXPECT_LE(sol.objective, prev + 1e-6) << st << " stages";
        prev = sol.objective;
    }
}

TEST(Superstructure, ReferenceStreamDutyH4) {
    plant::PlantDataset ds;
    ds.streams = plant::reference_streams();
    auto ramps = plant::linear_stream_ramps(ds.streams);
    const auto grid = plant::reference_voltages();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        plant::PlantSample s;
        s.U_cell = grid[k];
        s.streams = ramps[k];
        ds.samples.push_back(s);
    }
    const std::size_t h4 = ds.stream_index("H4");
    for (double U : {1.275, 1.2812, 1.29, 1.3049, 1.305}) {
        const double q = plant::interpolated_duty(ds, h4, U);
        EXPECT_GE(q, 5.4 - 1e-12);
        EXPECT_LE(q, 5.6 + 1e-12);
        EXPECT_DOUBLE_EQ(plant::evaluate_at_voltage(ds, U).streams[h4].T_in, 210.0);
    }
}

TEST(Superstructure, VoltageCoupledBalancesCloseBetweenSamples) {
    plant::PlantDataset ds;
    ds.streams = plant::reference_streams();
    auto ramps = plant::linear_stream_ramps(ds.streams);
    const auto grid = plant::reference_voltages();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        plant::PlantSample s;
        s.U_cell = grid[k];
        s.streams = ramps[k];
        s.q_offgas = 60.0 + 10.0 * static_cast<double>(k);
        ds.samples.push_back(s);
    }
    hens::SuperstructureConfig cfg;
    cfg.stages = 2;
    cfg.hot_streams = {"H5", "H9", "H11", "CS2"};
    cfg.cold_streams = {"C3", "C7"};
    for (double U : {1.2875, 1.305}) {
        Model m;
        auto u = m.add_variable("U", U, U);
        auto mv = hens::build_superstructure(ds, cfg, m, u);
        m.set_objective(milp::ObjectiveSense::minimize, 1.05 * mv.heater_total + 0.05 * mv.cooler_total);
        auto sol = milp::solve(m, exact());
        ASSERT_EQ(sol.status, milp::SolveStatus::optimal_within_gap);
        EXPECT_TRUE(milp::check_assignment(m, sol.values).empty());
        expect_conservation(sol, mv, ds);
        expect_approach(sol, mv, cfg.dT_min);
        EXPECT_LE(sol.value(mv.combustion_total), plant::evaluate_at_voltage(ds, U).q_offgas + 1e-6);
        if (U == 1.305) {
            // The budget row's right-hand side at the highest voltage is the stored budget.
            const auto& rows = m.constraints();
            auto it = std::find_if(rows.begin(), rows.end(), [](const auto& r) { return r.name == "offgas"; });
            ASSERT_NE(it, rows.end());
            EXPECT_NEAR(sol.value(mv.interpolate(mv.offgas_budget)), ds.samples.back().q_offgas, 1e-9);
        }
    }
}

TEST(AreaCost, ChenMeanAndHandArithmetic) {
    EXPECT_DOUBLE_EQ(hens::chen_mean(10.0, 10.0), 10.0);
    EXPECT_NEAR(hens::exchanger_area(5.0, 10.0, 10.0, 0.5), 1.0, 1e-12);
    hens::SuperstructureConfig cfg;
    EXPECT_NEAR(hens::area_cost(5.0, 10.0, 10.0, 0.5, cfg), 61.8, 1e-10);
    EXPECT_EQ(hens::area_cost(0.0, 10.0, 10.0, 0.5, cfg), 0.0);
    cfg.beta = 1.0;
    EXPECT_NEAR(hens::area_cost(20.0, 10.0, 10.0, 0.5, cfg), 4.0 * 61.8, 1e-10);
}

TEST(AreaCost, EmbeddedTermsTrackExactCost) {
    auto ds = test::toy_2x2();
    hens::SuperstructureConfig cfg;
    cfg.stages = 1;
    cfg.dT_min = 10.0;
    cfg.area_validation_per_axis = 40;
    Model m;
    auto u = m.add_variable("U", 1.28, 1.28);
    auto mv = hens::build_superstructure(ds, cfg, m, u);
    hens::AreaFitCache cache;
    hens::add_area_cost_terms(m, mv, ds, cfg, cache);
    EXPECT_GT(mv.area_binaries, 0u);
    LinearExpr obj = 100.0 * mv.heater_total + 10.0 * mv.cooler_total + mv.area_cost + mv.fixed_cost;
    m.set_objective(milp::ObjectiveSense::minimize, obj);
    auto sol = milp::solve(m);
    ASSERT_EQ(sol.status, milp::SolveStatus::optimal_within_gap);
    EXPECT_TRUE(milp::check_assignment(m, sol.values).empty());
    auto d = hens::extract_design(sol, mv, ds, cfg);
    EXPECT_GT(d.area_cost, 0.0);
    // Forcing zero duty on every exchanger leaves no area cost in the model.
    Model z = m;
    for (const auto& mt : mv.matches) z.set_bounds(mt.q, 0.0, 0.0);
    z.set_objective(milp::ObjectiveSense::minimize, mv.area_cost + 100.0 * mv.heater_total);
    auto s0 = milp::solve(z);
    ASSERT_EQ(s0.status, milp::SolveStatus::optimal_within_gap);

    std::ostringstream os;
    hens::write_design_csv(d, os);
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "match_id,hot,cold,stage,duty_kW,theta_left_K,theta_right_K,area_m2");
}
