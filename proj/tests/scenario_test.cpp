#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "ptl/scenario/scenario.hpp"
#include "test_support.hpp"

using namespace ptl;
using objective::CostParameters;
using scenario::PriceScenario;

namespace {

pareto::ParetoPoint point(double eta, double c, double g_el, double g_co2) {
    pareto::ParetoPoint p;
    p.objectives = {eta, c};
    p.sensitivities = objective::Sensitivities{g_el, g_co2};
    return p;
}

// Points on the ramp dataset at random voltages and utility duties.
pareto::ParetoFront random_plant_front(const plant::PlantDataset& ds, std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto c = CostParameters::reference();
    pareto::ParetoFront f;
    for (std::size_t k = 0; k < n; ++k) {
        pareto::ParetoPoint p;
        p.design.U_cell = 1.275 + 0.03 * u(rng);
        p.design.q_hu = 50.0 * u(rng);
        p.design.q_cu = 80.0 * u(rng);
        p.design.area_cost = 4000.0 * u(rng);
        p.design.fixed_cost = 1013.6 * static_cast<double>(k % 7);
        const auto e = objective::evaluate(ds, p.design, c);
        p.objectives = e.pair();
        p.U_cell = e.U_cell;
        p.sensitivities = scenario::compute_sensitivities(p, ds, c);
        f.points.push_back(p);
    }
    return f;
}

}  // namespace

TEST(Shift, ZeroDeltaIsIdentity) {
    pareto::ParetoFront f;
    f.points = {point(0.58, 1.83, 21.3, 3.7), point(0.61, 2.3, 20.1, 3.6)};
    const auto base = CostParameters::reference();
    const auto s = scenario::shift_front(f, {base.c_el, base.c_CO2}, base);
    for (std::size_t i = 0; i < f.points.size(); ++i) EXPECT_EQ(s.points[i].objectives, f.points[i].objectives);
}

TEST(Shift, ElectricityHandValue) {
    pareto::ParetoFront f;
    f.points = {point(0.58, 1.83, 20.5, 4.1)};
    const auto base = CostParameters::reference();
    const auto s = scenario::shift_front(f, {base.c_el + 80.0, base.c_CO2}, base);
    EXPECT_NEAR(s.points[0].objectives.c_prod - 1.83, 1.64, 1e-12);
    EXPECT_EQ(s.points[0].objectives.eta, 0.58);
}

TEST(Shift, MissingSensitivitiesAndOutOfBox) {
    pareto::ParetoFront f;
    f.points = {point(0.58, 1.83, 20.5, 4.1)};
    const auto base = CostParameters::reference();
    EXPECT_THROW(scenario::shift_front(f, {120.0, 50.0}, base), scenario::ScenarioError);
    EXPECT_NO_THROW(scenario::shift_front(f, {120.0, 50.0, true}, base));
    f.points[0].sensitivities.reset();
    EXPECT_THROW(scenario::shift_front(f, {30.0, 50.0}, base), scenario::ScenarioError);
}

TEST(Shift, MatchesRecomputationFromScratch) {
    const auto ds = test::ramp_dataset();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto base = CostParameters::reference();
    const auto f = random_plant_front(ds, rng, 25);
    for (int k = 0; k < 100; ++k) {
        const PriceScenario s{10.0 + 90.0 * u(rng), 150.0 * u(rng)};
        const auto shifted = scenario::shift_front(f, s, base);
        const auto costs = base.with_prices(s.c_el, s.c_CO2);
        for (std::size_t i = 0; i < f.points.size(); ++i) {
            const auto e = objective::evaluate(ds, f.points[i].design, costs);
            EXPECT_NEAR(shifted.points[i].objectives.c_prod / e.c_prod, 1.0, 1e-9);
            EXPECT_EQ(shifted.points[i].objectives.eta, f.points[i].objectives.eta);
            // Sensitivities do not depend on the prices.
            const auto g = scenario::compute_sensitivities(f.points[i], ds, costs);
            EXPECT_NEAR(g.grad_el, f.points[i].sensitivities->grad_el, 1e-12 * g.grad_el);
            EXPECT_NEAR(g.grad_co2, f.points[i].sensitivities->grad_co2, 1e-12 * g.grad_co2);
        }
    }
}

TEST(Envelope, SinglePointSurfacesCoincide) {
    pareto::ParetoFront f;
    f.points = {point(0.58, 1.83, 21.0, 3.7)};
    const auto base = CostParameters::reference();
    const auto e = scenario::envelope(f, base, scenario::axis(10, 100, 10), scenario::axis(0, 150, 11));
    EXPECT_EQ(e.min, e.max);
    EXPECT_NEAR(e.min_plane.slope_el, 21.0e-3, 1e-12);
    EXPECT_NEAR(e.min_plane.slope_co2, 3.7e-3, 1e-12);
    EXPECT_NEAR(e.min(0, 0), 1.83 - 0.01 * 21.0 - 0.05 * 3.7, 1e-12);
}

TEST(Envelope, BoundsEveryPoint) {
    pareto::ParetoFront f;
    f.points = {point(0.58, 1.83, 21.3, 3.72), point(0.60, 2.31, 20.8, 3.68), point(0.618, 2.36, 19.9, 3.6)};
    const auto base = CostParameters::reference();
    const auto e = scenario::envelope(f, base, scenario::axis(10, 100, 4), scenario::axis(0, 150, 4));
    for (Eigen::Index i = 0; i < e.min.rows(); ++i)
        for (Eigen::Index j = 0; j < e.min.cols(); ++j) {
            const PriceScenario s{e.c_el[i], e.c_CO2[j]};
            const auto sh = scenario::shift_front(f, s, base);
            for (const auto& p : sh.points) {
                EXPECT_GE(p.objectives.c_prod, e.min(i, j) - 1e-12);
                EXPECT_LE(p.objectives.c_prod, e.max(i, j) + 1e-12);
            }
        }
    std::ostringstream os;
    scenario::write_envelope_csv(e, os);
    const auto text = os.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 17);
}

TEST(Pockets, ParetoFrontHasNone) {
    pareto::ParetoFront f;
    f.points = {point(0.58, 1.8, 21, 3.7), point(0.59, 2.0, 21, 3.7), point(0.60, 2.1, 21, 3.7)};
    EXPECT_TRUE(scenario::detect_pockets(f).empty());
}

TEST(Pockets, RaisedMiddlePointIsFlagged) {
    pareto::ParetoFront f;
    f.points = {point(0.58, 1.8, 21, 3.7), point(0.59, 2.5, 21, 3.7), point(0.60, 2.1, 21, 3.7)};
    const auto pockets = scenario::detect_pockets(f);
    ASSERT_EQ(pockets.size(), 1u);
    EXPECT_EQ(pockets[0].eta_lo, 0.59);
    EXPECT_EQ(pockets[0].eta_hi, 0.59);
    EXPECT_EQ(pockets[0].points, std::vector<std::size_t>{1});
    f.points.pop_back();
    EXPECT_THROW(scenario::detect_pockets(f), scenario::ScenarioError);
}

TEST(Pockets, AdjacentDominatedPointsMerge) {
    pareto::ParetoFront f;
    f.points = {point(0.58, 1.8, 21, 3.7), point(0.59, 2.5, 21, 3.7), point(0.595, 2.4, 21, 3.7),
                point(0.60, 2.1, 21, 3.7), point(0.61, 2.6, 21, 3.7), point(0.62, 2.2, 21, 3.7)};
    const auto pockets = scenario::detect_pockets(f);
    ASSERT_EQ(pockets.size(), 2u);
    EXPECT_EQ(pockets[0].eta_lo, 0.59);
    EXPECT_EQ(pockets[0].eta_hi, 0.595);
    EXPECT_EQ(pockets[1].eta_lo, 0.61);
}
