#pragma once

// Epsilon-constraint sweep: anchors, then cost minimization inside efficiency slabs.

#include <fmt/format.h>

#include <atomic>
#include <functional>
#include <memory>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ptl/milp/branch_and_bound.hpp"
#include "ptl/pareto/front.hpp"

namespace ptl::pareto {

class SweepError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepRequest {
    enum class Goal { min_cost, max_efficiency };
    Goal goal = Goal::min_cost;
    double eta_lo = -milp::kInf, eta_hi = milp::kInf;
    int slab = kMinCostAnchor;
};

struct BuiltModel {
    std::shared_ptr<const milp::Model> model;
    std::function<ParetoPoint(const milp::Solution&)> extract;
};

// Must be safe to call concurrently when the sweep runs on several threads.
using ModelFactory = std::function<BuiltModel(const SweepRequest&)>;

struct SweepOptions {
    std::size_t slabs = 24;
    milp::SolveLimits limits;
    bool double_sided = true;  // false: lower efficiency bound only
    unsigned threads = 1;
};

namespace detail {

struct SolveOutcome {
    std::optional<ParetoPoint> point;
    std::string status;
};

inline SolveOutcome solve_request(const ModelFactory& factory, const SweepRequest& r, const milp::SolveLimits& lim) {
    auto built = factory(r);
    const auto sol = milp::solve(*built.model, lim);
    SolveOutcome out;
    out.status = milp::to_string(sol.status);
    if (!sol.has_values()) return out;
    auto p = built.extract(sol);
    p.slab = r.slab;
    p.mip_gap = sol.mip_gap;
    out.point = std::move(p);
    return out;
}

}  // namespace detail

inline ParetoFront epsilon_sweep(const ModelFactory& factory, const SweepOptions& opts) {
    if (opts.slabs < 2) throw SweepError("slab count must be at least 2");
    using Goal = SweepRequest::Goal;
    const auto lo_anchor = detail::solve_request(factory, {Goal::min_cost, -milp::kInf, milp::kInf, kMinCostAnchor}, opts.limits);
    const auto hi_anchor =
        detail::solve_request(factory, {Goal::max_efficiency, -milp::kInf, milp::kInf, kMaxEfficiencyAnchor}, opts.limits);
    if (!lo_anchor.point && !hi_anchor.point)
        throw SweepError(fmt::format("both anchor solves failed ({}, {})", lo_anchor.status, hi_anchor.status));

    std::vector<ParetoPoint> raw;
    std::vector<SlabGap> gaps;
    std::vector<double> edges;
    if (lo_anchor.point) raw.push_back(*lo_anchor.point);
    if (hi_anchor.point) raw.push_back(*hi_anchor.point);
    if (!lo_anchor.point || !hi_anchor.point) {
        gaps.push_back({lo_anchor.point ? kMaxEfficiencyAnchor : kMinCostAnchor, 0.0, 0.0,
                        lo_anchor.point ? hi_anchor.status : lo_anchor.status});
    } else {
        const double e0 = lo_anchor.point->objectives.eta;
        const double e1 = hi_anchor.point->objectives.eta;
        if (e1 > e0) {
            for (std::size_t s = 0; s <= opts.slabs; ++s)
                edges.push_back(s == opts.slabs ? e1 : e0 + (e1 - e0) * static_cast<double>(s) / static_cast<double>(opts.slabs));
            std::vector<detail::SolveOutcome> results(opts.slabs);
            std::atomic<std::size_t> next{0};
            auto worker = [&] {
                for (std::size_t s; (s = next.fetch_add(1)) < opts.slabs;) {
                    SweepRequest r{Goal::min_cost, edges[s], opts.double_sided ? edges[s + 1] : milp::kInf,
                                   static_cast<int>(s)};
                    results[s] = detail::solve_request(factory, r, opts.limits);
                }
            };
            const unsigned n = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(opts.slabs)));
            if (n == 1) {
                worker();
            } else {
                std::vector<std::jthread> pool;
                for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
            }
            for (std::size_t s = 0; s < opts.slabs; ++s) {
                if (results[s].point)
                    raw.push_back(std::move(*results[s].point));
                else
                    gaps.push_back({static_cast<int>(s), edges[s], edges[s + 1], results[s].status});
            }
        }
    }
    auto front = non_dominated_filter(raw);
    front.raw = std::move(raw);
    front.gaps = std::move(gaps);
    front.slab_edges = std::move(edges);
    return front;
}

}  // namespace ptl::pareto
