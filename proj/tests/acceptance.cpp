// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// The plant criteria use the shipped dataset and config/reference.ini.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ptl/cli/commands.hpp"
#include "test_support.hpp"

using namespace ptl;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

int failures = 0;
std::vector<std::pair<int, std::string>> lines;  // printed in criterion order at the end

void report(int id, bool ok, const std::string& name, const std::string& detail) {
    if (!ok) ++failures;
    lines.emplace_back(id, fmt::format("{} {} {}: {}", ok ? "PASS" : "FAIL", id, name, detail));
}

// Relative gap the solver reports never exceeds the requested one.
struct GapLedger {
    std::size_t solves = 0;
    double worst = 0.0;
    void add(double gap) {
        ++solves;
        worst = std::max(worst, gap);
    }
};

}  // namespace

int main() {
    const auto t_start = Clock::now();
    const std::filesystem::path src = PTL_SOURCE_DIR;
    GapLedger gaps;

    // 5: encoder equivalence
    {
        const auto t0 = Clock::now();
        std::mt19937_64 rng(20240611);
        double worst = 0.0;
        std::size_t max_pieces = 0;
        bool ok = true;
        for (int i = 0; i < 50; ++i) {
            const auto inst = oracle::random_pwl_instance(rng, i);
            max_pieces = std::max(max_pieces, inst.model.num_pieces());
            const double a = oracle::solve_instance(inst, milp::PwlEncoding::logarithmic);
            const double b = oracle::solve_instance(inst, milp::PwlEncoding::per_piece);
            const double c = oracle::enumerate_instance(inst);
            if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
                ok = false;
                continue;
            }
            worst = std::max({worst, std::abs(a - b), std::abs(a - c)});
        }
        const double dt = seconds_since(t0);
        ok = ok && worst <= 1e-6 && max_pieces <= 16 && dt < 60.0;
        report(5, ok, "encoder equivalence",
               fmt::format("50 instances, <= {} pieces, max |log - per_piece|, |log - enum| = {:.2e} (tol 1e-6), {:.1f} s",
                           max_pieces, worst, dt));
    }

    // Reduced reference study.
    auto cfg = cli::load_config(src / "config" / "reference.ini");
    cfg.sweep.slabs = 12;
    const auto ds = plant::load_dataset(cfg.dataset);
    const auto t_sweep = Clock::now();
    pareto::ParetoFront front;
    try {
        front = cli::solve_front(cfg, ds, cfg.costs);
    } catch (const std::exception& e) {
        fmt::print("FAIL sweep: {}\n", e.what());
        return 1;
    }
    const double sweep_s = seconds_since(t_sweep);
    fmt::print("info sweep: {} hot / {} cold streams, {} stages, {} slabs, {} raw solves, {} front points, {} gaps, {:.1f} s\n",
               cfg.network.hot_streams.size(), cfg.network.cold_streams.size(), cfg.network.stages, cfg.sweep.slabs,
               front.raw.size(), front.points.size(), front.gaps.size(), sweep_s);
    for (const auto& p : front.raw) gaps.add(p.mip_gap);
    const auto& base = cfg.costs;

    // 6: branch and bound against enumeration
    const auto toy_ds = test::toy_2x2();
    hens::SuperstructureConfig toy_cfg;
    toy_cfg.dT_min = 1.0;
    std::vector<std::string> toy_violations;
    {
        std::mt19937_64 rng(2024);
        double worst = 0.0;
        bool ok = true;
        for (int inst = 0; inst < 20; ++inst) {
            const auto k = oracle::random_knapsack(rng, 6 + static_cast<std::size_t>(inst % 7));
            const auto m = oracle::knapsack_model(k);
            const auto s = milp::solve(m, oracle::exact());
            ok = ok && s.status == milp::SolveStatus::optimal_within_gap && milp::check_assignment(m, s.values).empty();
            worst = std::max(worst, std::abs(s.objective - oracle::enumerate(k)));
            gaps.add(s.mip_gap);
            // Default 1 % gap: the incumbent is within 1 % of the enumerated optimum.
            const auto d = milp::solve(m);
            gaps.add(d.mip_gap);
            ok = ok && d.objective >= oracle::enumerate(k) * 0.99 - 1e-9;
        }
        const auto toy = oracle::build_hens_toy(toy_ds, 1, 1.29, toy_cfg.dT_min);
        const auto sol = milp::solve(toy.m, oracle::exact(1e-9));
        gaps.add(sol.mip_gap);
        const auto best = oracle::enumerate_structures(toy);
        const bool toy_ok = sol.status == milp::SolveStatus::optimal_within_gap &&
                            std::abs(sol.objective - best.objective) <= 1e-6 * std::max(1.0, std::abs(best.objective)) &&
                            oracle::active_mask(sol, toy.mv) == best.mask;
        const bool gap_ok = gaps.worst <= cfg.sweep.limits.mip_gap + 1e-12;
        ok = ok && worst <= 1e-6 && toy_ok && gap_ok;
        report(6, ok, "solver vs enumeration",
               fmt::format("20 knapsacks (6-12 binaries) max |B&B - enum| = {:.2e}; HENS toy 2x2x1 optimum {:.4f} vs "
                           "enumeration {:.4f} over 16 structures, structure {}; {} terminating solves, worst gap {:.2e} "
                           "(limit {})",
                           worst, sol.objective, best.objective, toy_ok ? "identical" : "differs", gaps.solves, gaps.worst,
                           cfg.sweep.limits.mip_gap));
        toy_violations = oracle::design_violations(hens::extract_design(sol, toy.mv, toy_ds, toy_cfg), toy_ds, toy_cfg);
    }

    // 1: shift exactness
    {
        const auto t0 = Clock::now();
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> el(10.0, 100.0), co2(0.0, 150.0);
        double worst = 0.0;
        bool eta_same = true;
        for (int k = 0; k < 100; ++k) {
            const scenario::PriceScenario s{el(rng), co2(rng)};
            const auto shifted = scenario::shift_front(front, s, base);
            const auto costs = base.with_prices(s.c_el, s.c_CO2);
            for (std::size_t i = 0; i < front.points.size(); ++i) {
                const auto e = objective::evaluate(ds, front.points[i].design, costs);
                worst = std::max(worst, rel(shifted.points[i].objectives.c_prod, e.c_prod));
                eta_same = eta_same && shifted.points[i].objectives.eta == front.points[i].objectives.eta;
            }
        }
        const double dt = seconds_since(t0);
        report(1, worst <= 1e-9 && eta_same && dt < 10.0, "shift exactness",
               fmt::format("100 scenarios x {} points, max relative error {:.2e} (tol 1e-9), efficiency {}, {:.2f} s",
                           front.points.size(), worst, eta_same ? "bit-identical" : "changed", dt));
    }

    // 2: sensitivity identity
    {
        double worst = 0.0;
        for (const auto& p : front.raw) {
            const auto e = objective::evaluate(ds, p.design, base);
            const auto g = objective::sensitivities(e, base);
            worst = std::max(worst, rel(e.eta * g.grad_el * 3.6 / base.AF_op, e.h_mix));
        }
        report(2, !front.raw.empty() && worst <= 1e-9, "sensitivity identity",
               fmt::format("eta * grad_el vs h_mix on {} solved points, max relative error {:.2e} (tol 1e-9)",
                           front.raw.size(), worst));
    }

    // 3: corner costs of the two ends of the front
    {
        const auto& lo = front.points.front();
        const auto& hi = front.points.back();
        const scenario::PriceScenario best{10.0, 0.0}, worst{100.0, 150.0};
        auto at = [&](const pareto::ParetoPoint& p, const scenario::PriceScenario& s) {
            return p.objectives.c_prod + scenario::cost_shift(*p.sensitivities, s, base);
        };
        const double v[4] = {at(lo, best), at(lo, worst), at(hi, best), at(hi, worst)};
        const double target[4] = {1.42, 3.88, 1.97, 4.28};
        bool ok = true;
        for (int i = 0; i < 4; ++i) ok = ok && std::abs(v[i] - target[i]) <= 0.05;
        const auto env = scenario::envelope(front, base, {10.0, 100.0}, {0.0, 150.0});
        report(3, ok, "corner costs",
               fmt::format("min-cost point {:.4f} -> {:.4f} / {:.4f} (1.42 / 3.88), max-efficiency point {:.4f} -> "
                           "{:.4f} / {:.4f} (1.97 / 4.28), tol 0.05; envelope at worst corner [{:.4f}, {:.4f}]",
                           lo.objectives.c_prod, v[0], v[1], hi.objectives.c_prod, v[2], v[3], env.min(1, 1), env.max(1, 1)));
    }

    // 4: influence ratio
    {
        const auto env = scenario::envelope(front, base, cfg.scenario.c_el.values(), cfg.scenario.c_CO2.values());
        const double r_min = env.min_plane.slope_el / env.min_plane.slope_co2;
        const double r_max = env.max_plane.slope_el / env.max_plane.slope_co2;
        const bool ok = r_min >= 4.0 && r_min <= 6.0 && r_max >= 4.0 && r_max <= 6.0;
        report(4, ok, "influence ratio",
               fmt::format("plane slopes el/CO2: min surface {:.5f}/{:.5f} = {:.3f}, max surface {:.5f}/{:.5f} = {:.3f} "
                           "(range 4-6)",
                           env.min_plane.slope_el, env.min_plane.slope_co2, r_min, env.max_plane.slope_el,
                           env.max_plane.slope_co2, r_max));
    }

    // 7: conservation, approach temperatures and objective discrepancy
    {
        const auto net = objective::with_costs(cfg.network, base);
        std::size_t bad = toy_violations.size();
        std::string first = toy_violations.empty() ? std::string() : "toy " + toy_violations.front();
        double worst_disc = 0.0;
        for (const auto& p : front.raw) {
            const auto v = oracle::design_violations(p.design, ds, net);
            bad += v.size();
            if (!v.empty() && first.empty()) first = v.front();
            worst_disc = std::max(worst_disc, p.discrepancy);
        }
        const bool ok = bad == 0 && worst_disc <= 0.01;
        report(7, ok, "conservation and discrepancy",
               fmt::format("{} solved networks and the toy, {} balance/approach violations (tol 1e-6, dT_min {} K){}, "
                           "max PWL vs exact objective discrepancy {:.2e} (tol 1e-2)",
                           front.raw.size(), bad, net.dT_min, first.empty() ? "" : " first: " + first, worst_disc));
    }

    // 8: pockets
    {
        const auto at_base = scenario::shift_front(front, {base.c_el, base.c_CO2}, base);
        const auto base_pockets = scenario::detect_pockets(at_base);
        const auto high = scenario::shift_front(front, {100.0, base.c_CO2}, base);
        const auto pockets = scenario::detect_pockets(high);
        bool hit = false;
        std::string list;
        for (const auto& p : pockets) {
            hit = hit || (p.eta_hi >= 0.590 && p.eta_lo <= 0.618);
            list += fmt::format(" [{:.2f} %, {:.2f} %]", 100 * p.eta_lo, 100 * p.eta_hi);
        }
        report(8, base_pockets.empty() && hit, "pockets",
               fmt::format("{} at base prices; at 100 EUR/MWh:{}", base_pockets.size(), list.empty() ? " none" : list));
    }

    // 9: budget
    {
        const double total = seconds_since(t_start);
        report(9, total < 600.0, "desk-scale budget", fmt::format("whole run {:.1f} s (limit 600 s)", total));
    }
    std::stable_sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [id, line] : lines) fmt::print("{}\n", line);
    return failures == 0 ? 0 : 1;
}
