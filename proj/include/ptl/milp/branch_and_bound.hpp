#pragma once

#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <queue>
#include <vector>

#include "ptl/milp/lp_simplex.hpp"
#include "ptl/milp/model.hpp"

namespace ptl::milp {

struct SolveLimits {
    double mip_gap = 0.01;
    double time_limit_s = kInf;
    std::size_t node_limit = 1'000'000;
    double integrality_tol = 1e-6;
    std::size_t dive_interval = 50;  // nodes between diving heuristics
    bool plunge = true;              // continue with a child on the warm basis before picking the best bound
};

enum class SolveStatus { optimal_within_gap, time_limit, infeasible, unbounded };

inline const char* to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::optimal_within_gap: return "optimal-within-gap";
    case SolveStatus::time_limit: return "time-limit";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    }
    return "?";
}

struct Solution {
    SolveStatus status = SolveStatus::infeasible;
    std::vector<double> values;
    double objective = std::nan("");
    double best_bound = std::nan("");
    double mip_gap = kInf;
    std::size_t nodes = 0;
    std::size_t lp_iterations = 0;
    double seconds = 0.0;

    bool has_values() const { return !values.empty(); }
    double value(VarId v) const { return values.at(v.index); }
    double value(const LinearExpr& e) const { return e.evaluate(values); }
};

inline double relative_gap(double objective, double bound, bool maximize) {
    const double diff = maximize ? bound - objective : objective - bound;
    return std::max(0.0, diff) / std::max(std::abs(objective), 1e-9);
}

namespace detail {

struct Node {
    std::size_t id = 0;
    double bound = 0.0;  // internal (minimization) sense
    int depth = 0;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> fixes;
    std::shared_ptr<const LpBasis> basis;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.id > b.id;
    }
};

class BranchAndBound {
public:
    BranchAndBound(const Model& model, const SolveLimits& limits)
        : model_(model), limits_(limits), lp_(model),
          sign_(model.objective_sense() == ObjectiveSense::maximize ? -1.0 : 1.0),
          start_(std::chrono::steady_clock::now()) {
        for (std::size_t j = 0; j < model.num_variables(); ++j)
            if (model.variable(j).type == VarType::binary) binaries_.push_back(j);
    }

    Solution run() {
        Solution sol;
        model_.validate();
        std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
        open.push(Node{next_id_++, -kInf, 0, {}, nullptr});
        bool limit_hit = false;
        bool root = true;

        std::optional<Node> plunge;  // child processed next on the warm basis
        while (!open.empty() || plunge) {
            if (nodes_ >= limits_.node_limit || elapsed() > limits_.time_limit_s) {
                limit_hit = true;
                break;
            }
            Node node;
            if (plunge) {
                node = std::move(*plunge);
                plunge.reset();
            } else {
                if (has_incumbent_ && gap_with(open.top().bound) <= limits_.mip_gap) break;
                node = open.top();
                open.pop();
            }
            if (has_incumbent_ && node.bound >= incumbent_obj_ - prune_slack()) {
                pruned_bound_ = std::min(pruned_bound_, node.bound);
                continue;
            }
            ++nodes_;
            apply(node);
            if (node.basis) lp_.load_basis(*node.basis);
            LpResult lp = lp_.solve();
            iterations_ += lp.iterations;
            if (lp.status == LpStatus::iteration_limit) {
                lp_.reset_to_slack_basis();
                lp = lp_.solve();
                iterations_ += lp.iterations;
            }
            if (lp.status == LpStatus::unbounded) {
                if (root) {
                    sol.status = SolveStatus::unbounded;
                    return finalize(sol, open, false);
                }
                lost_bound_ = std::min(lost_bound_, node.bound);
                continue;
            }
            if (lp.status == LpStatus::iteration_limit) {
                lost_bound_ = std::min(lost_bound_, node.bound);
                continue;
            }
            root = false;
            if (lp.status == LpStatus::infeasible) continue;
            const double obj = sign_ * lp.objective;
            if (has_incumbent_ && obj >= incumbent_obj_ - prune_slack()) {
                pruned_bound_ = std::min(pruned_bound_, obj);
                continue;
            }
            const long branch = choose_branch(lp.x);
            if (branch < 0) {
                accept_incumbent(lp.x, obj);
                continue;
            }
            auto basis = std::make_shared<const LpBasis>(lp_.basis());
            bool dove = false;
            if (!has_incumbent_ || (nodes_ % limits_.dive_interval) == 1) {
                dive(node, lp.x);
                dove = true;
                if (has_incumbent_ && obj >= incumbent_obj_ - prune_slack()) {
                    pruned_bound_ = std::min(pruned_bound_, obj);
                    continue;
                }
            }
            const double xv = lp.x[static_cast<std::size_t>(branch)];
            const std::uint8_t first = xv >= 0.5 ? 1 : 0;
            for (std::uint8_t side : {first, static_cast<std::uint8_t>(1 - first)}) {
                Node child{next_id_++, obj, node.depth + 1, node.fixes, basis};
                child.fixes.emplace_back(static_cast<std::uint32_t>(branch), side);
                if (limits_.plunge && side == first && !dove) plunge = std::move(child);
                else open.push(std::move(child));
            }
        }
        return finalize(sol, open, limit_hit);
    }

private:
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    double prune_slack() const {
        return std::max(1e-9, limits_.mip_gap * std::max(std::abs(incumbent_obj_), 1e-9));
    }

    double gap_with(double open_bound) const {
        const double bound = std::min({open_bound, pruned_bound_, lost_bound_, incumbent_obj_});
        return std::max(0.0, incumbent_obj_ - bound) / std::max(std::abs(incumbent_obj_), 1e-9);
    }

    void apply(const Node& node) {
        for (auto j : binaries_) lp_.set_column_bounds(j, model_.variable(j).lower, model_.variable(j).upper);
        for (const auto& [j, v] : node.fixes) lp_.set_column_bounds(j, v, v);
    }

    long choose_branch(const std::vector<double>& x) const {
        long best = -1;
        int best_prio = 0;
        double best_score = -1.0;
        for (auto j : binaries_) {
            const double f = x[j] - std::floor(x[j]);
            if (f <= limits_.integrality_tol || f >= 1.0 - limits_.integrality_tol) continue;
            const int prio = model_.variable(j).priority;
            const double score = 0.5 - std::abs(f - 0.5);
            if (best < 0 || prio > best_prio || (prio == best_prio && score > best_score + 1e-12)) {
                best = static_cast<long>(j);
                best_prio = prio;
                best_score = score;
            }
        }
        return best;
    }

    void accept_incumbent(std::vector<double> x, double obj) {
        if (has_incumbent_ && obj >= incumbent_obj_) return;
        for (auto j : binaries_) x[j] = std::round(x[j]);
        incumbent_ = std::move(x);
        incumbent_obj_ = obj;
        has_incumbent_ = true;
    }

    // Fractional diving: repeatedly round the least fractional high-priority binary.
    void dive(const Node& node, std::vector<double> x) {
        auto fixes = node.fixes;
        std::vector<std::uint8_t> is_fixed(model_.num_variables(), 0);
        for (const auto& f : fixes) is_fixed[f.first] = 1;
        for (std::size_t step = 0; step < binaries_.size(); ++step) {
            if (elapsed() > limits_.time_limit_s) return;
            long pick = -1;
            int prio = 0;
            double dist = 2.0;
            for (auto j : binaries_) {
                if (is_fixed[j]) continue;
                const double f = x[j] - std::floor(x[j]);
                if (f <= limits_.integrality_tol || f >= 1.0 - limits_.integrality_tol) continue;
                const int p = model_.variable(j).priority;
                const double dd = std::min(f, 1.0 - f);
                if (pick < 0 || p > prio || (p == prio && dd < dist - 1e-12)) {
                    pick = static_cast<long>(j);
                    prio = p;
                    dist = dd;
                }
            }
            if (pick < 0) {
                const double obj = sign_ * lp_value(x);
                accept_incumbent(x, obj);
                return;
            }
            const auto j = static_cast<std::size_t>(pick);
            const std::uint8_t v = x[j] >= 0.5 ? 1 : 0;
            bool ok = false;
            for (std::uint8_t side : {v, static_cast<std::uint8_t>(1 - v)}) {
                lp_.set_column_bounds(j, side, side);
                LpResult lp = lp_.solve();
                iterations_ += lp.iterations;
                if (lp.status == LpStatus::optimal &&
                    (!has_incumbent_ || sign_ * lp.objective < incumbent_obj_ - prune_slack())) {
                    x = std::move(lp.x);
                    fixes.emplace_back(static_cast<std::uint32_t>(j), side);
                    is_fixed[j] = 1;
                    ok = true;
                    break;
                }
            }
            if (!ok) return;
        }
    }

    double lp_value(const std::vector<double>& x) const { return model_.objective().evaluate(x); }

    // Re-solve the LP with every binary fixed at its incumbent value for clean continuous values.
    void polish() {
        for (auto j : binaries_) lp_.set_column_bounds(j, incumbent_[j], incumbent_[j]);
        LpResult lp = lp_.solve();
        if (lp.status != LpStatus::optimal) {
            lp_.reset_to_slack_basis();
            lp = lp_.solve();
        }
        if (lp.status != LpStatus::optimal) return;
        for (auto j : binaries_) lp.x[j] = incumbent_[j];
        const double obj = sign_ * lp.objective;
        if (check_assignment(model_, lp.x, 1e-6).empty() && obj <= incumbent_obj_ + 1e-9 * std::max(1.0, std::abs(incumbent_obj_))) {
            incumbent_ = std::move(lp.x);
            incumbent_obj_ = std::min(obj, incumbent_obj_);
        }
    }

    Solution& finalize(Solution& sol, auto& open, bool limit_hit) {
        sol.nodes = nodes_;
        sol.lp_iterations = iterations_;
        if (sol.status == SolveStatus::unbounded) {
            sol.seconds = elapsed();
            return sol;
        }
        double bound = std::min(pruned_bound_, lost_bound_);
        if (!open.empty()) bound = std::min(bound, open.top().bound);
        if (has_incumbent_) {
            polish();
            bound = std::min(bound, incumbent_obj_);
            sol.values = incumbent_;
            sol.objective = model_.objective().evaluate(sol.values);
            sol.best_bound = sign_ * bound;
            sol.mip_gap = relative_gap(sol.objective, sol.best_bound, sign_ < 0);
            sol.status = (limit_hit && sol.mip_gap > limits_.mip_gap) ? SolveStatus::time_limit
                                                                       : SolveStatus::optimal_within_gap;
        } else {
            sol.status = limit_hit ? SolveStatus::time_limit : SolveStatus::infeasible;
            sol.best_bound = sign_ * bound;
        }
        sol.seconds = elapsed();
        return sol;
    }

    const Model& model_;
    SolveLimits limits_;
    DualSimplex lp_;
    double sign_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::size_t> binaries_;
    std::size_t next_id_ = 0;
    std::size_t nodes_ = 0;
    std::size_t iterations_ = 0;
    bool has_incumbent_ = false;
    std::vector<double> incumbent_;
    double incumbent_obj_ = kInf;
    double pruned_bound_ = kInf;
    double lost_bound_ = kInf;
};

}  // namespace detail

// Best-bound branch and bound over dual-simplex LP relaxations.
inline Solution solve(const Model& model, const SolveLimits& limits = {}) {
    detail::BranchAndBound bb(model, limits);
    return bb.run();
}

}  // namespace ptl::milp
