// Solve a small efficiency/cost front on the reference dataset and see how it moves with prices.
//
//   price_study [dataset.csv]

#include <fmt/format.h>

#include <memory>

#include "ptl/pareto/plant_problem.hpp"
#include "ptl/scenario/scenario.hpp"

using namespace ptl;

int main(int argc, char** argv) {
    const std::string path = argc > 1 ? argv[1] : PTL_SOURCE_DIR "/data/reference_dataset.csv";
    auto ds = std::make_shared<const plant::PlantDataset>(plant::load_dataset(std::filesystem::path(path)));

    hens::SuperstructureConfig net;
    net.stages = 1;
    net.hot_streams = {"H11", "CS2"};
    net.cold_streams = {"C7"};
    const auto costs = objective::CostParameters::reference();
    objective::CoupledOptions opts;
    opts.area_terms = false;

    pareto::SweepOptions sweep;
    sweep.slabs = 6;
    const auto front =
        pareto::epsilon_sweep(pareto::plant_model_factory(ds, objective::with_costs(net, costs), costs, opts), sweep);

    fmt::print("{:>8} {:>8} {:>10} {:>10} {:>10}\n", "U [V]", "eta", "c [EUR/kg]", "d/dc_el", "d/dc_CO2");
    for (const auto& p : front.points)
        fmt::print("{:8.4f} {:8.4f} {:10.4f} {:10.3f} {:10.3f}\n", p.U_cell, p.objectives.eta, p.objectives.c_prod,
                   p.sensitivities->grad_el, p.sensitivities->grad_co2);

    for (const scenario::PriceScenario s : {scenario::PriceScenario{10, 0}, scenario::PriceScenario{100, 150}}) {
        const auto shifted = scenario::shift_front(front, s, costs);
        fmt::print("\nc_el = {} EUR/MWh, c_CO2 = {} EUR/t\n", s.c_el, s.c_CO2);
        for (const auto& p : shifted.points) fmt::print("  eta {:.4f}  c {:.4f}\n", p.objectives.eta, p.objectives.c_prod);
        if (shifted.points.size() >= 3)
            for (const auto& k : scenario::detect_pockets(shifted))
                fmt::print("  dominated between eta {:.4f} and {:.4f}\n", k.eta_lo, k.eta_hi);
    }
}
