#pragma once

// Model factory for the coupled plant and heat recovery network.

#include <memory>
#include <mutex>

#include "ptl/objective/objectives.hpp"
#include "ptl/pareto/sweep.hpp"
#include "ptl/plant/dataset.hpp"

namespace ptl::pareto {

inline ParetoPoint make_point(const objective::Recomputed& r, const objective::CostParameters& costs) {
    ParetoPoint p;
    p.objectives = r.exact.pair();
    p.U_cell = r.exact.U_cell;
    p.design = r.design;
    p.q_hu = r.design.q_hu;
    p.q_cu = r.design.q_cu;
    p.n_hex = r.design.hex_count();
    p.discrepancy = r.discrepancy();
    p.sensitivities = objective::sensitivities(r.exact, costs);
    return p;
}

inline ModelFactory plant_model_factory(std::shared_ptr<const plant::PlantDataset> ds,
                                        const hens::SuperstructureConfig& cfg, const objective::CostParameters& costs,
                                        const objective::CoupledOptions& opts = {}) {
    auto cache = std::make_shared<hens::AreaFitCache>();
    auto mutex = std::make_shared<std::mutex>();
    return [=](const SweepRequest& r) {
        auto cm = std::make_shared<objective::CoupledModel>([&] {
            std::lock_guard lock(*mutex);
            return objective::build_coupled_model(*ds, cfg, costs, opts, cache.get());
        }());
        // Bounds first so the ratio boxes shrink to the slab.
        objective::add_efficiency_bounds(*cm, r.eta_lo, r.eta_hi);
        if (r.goal == SweepRequest::Goal::max_efficiency) {
            cm->model.set_objective(milp::ObjectiveSense::maximize, milp::LinearExpr(objective::build_efficiency(*cm)));
        } else {
            cm->model.set_objective(milp::ObjectiveSense::minimize, milp::LinearExpr(objective::build_cost(*cm)));
        }
        BuiltModel b;
        b.model = std::shared_ptr<const milp::Model>(cm, &cm->model);
        b.extract = [cm, ds, costs](const milp::Solution& sol) {
            auto p = make_point(objective::recompute_objectives(sol, *cm, *ds), costs);
            p.feasible = milp::check_assignment(cm->model, sol.values).empty();
            return p;
        };
        return b;
    };
}

}  // namespace ptl::pareto
