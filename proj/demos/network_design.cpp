// Cheapest heat recovery network at one cell voltage, printed exchanger by exchanger.
//
//   network_design [U_cell] [dataset.csv]

#include <fmt/format.h>

#include <cstdlib>
#include <iostream>

#include "ptl/hens/design.hpp"
#include "ptl/objective/objectives.hpp"

using namespace ptl;

int main(int argc, char** argv) {
    const double U = argc > 1 ? std::atof(argv[1]) : 1.29;
    const std::string path = argc > 2 ? argv[2] : PTL_SOURCE_DIR "/data/reference_dataset.csv";
    const auto ds = plant::load_dataset(std::filesystem::path(path));
    const auto costs = objective::CostParameters::reference();

    hens::SuperstructureConfig net;
    net.stages = 2;
    net.hot_streams = {"H5", "H9", "H11", "CS2"};
    net.cold_streams = {"C3", "C7"};
    net = objective::with_costs(net, costs);

    milp::Model m;
    auto u = m.add_variable("U", U, U);
    auto mv = hens::build_superstructure(ds, net, m, u);
    hens::add_fixed_charges(mv, net);
    // Electricity for the utilities plus annualized exchanger charges.
    const double el = costs.AF_op * costs.hours * costs.c_el * objective::kPerMWhToPerKWh;
    milp::LinearExpr obj = el * costs.eps_hu * mv.heater_total + el * costs.eps_cu * mv.cooler_total;
    obj.add(mv.fixed_cost, costs.AF_inv);
    m.set_objective(milp::ObjectiveSense::minimize, obj);

    const auto sol = milp::solve(m);
    if (!sol.has_values()) {
        std::cerr << "no network: " << milp::to_string(sol.status) << "\n";
        return 2;
    }
    const auto d = hens::extract_design(sol, mv, ds, net);
    hens::write_design_csv(d, std::cout);
    const auto e = objective::evaluate(ds, d, costs);
    fmt::print("\nU {:.3f} V: hot utility {:.1f} kW, cold utility {:.1f} kW, {} exchangers, eta {:.4f}, c {:.4f} EUR/kg\n",
               U, d.q_hu, d.q_cu, d.hex_count(), e.eta, e.c_prod);
}
