#pragma once

// Adaptive refinement of piecewise-linear models against a uniform validation grid.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "ptl/pwl/model.hpp"

namespace ptl::pwl {

struct FitOptions {
    std::size_t max_knots = 256;            // per axis
    std::size_t max_vertices = 200'000;
    std::size_t validation_points_1d = 10'000;
    std::size_t validation_points_per_axis = 100;
};

namespace detail {

inline std::vector<double> uniform_grid(const Interval& iv, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = i + 1 == n ? iv.hi : iv.lo + (iv.hi - iv.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

inline void check_interval(const Interval& iv, std::size_t axis) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) throw DegenerateDomain(fmt::format("axis {} has a nonfinite bound", axis));
    if (!(iv.hi > iv.lo)) throw DegenerateDomain(fmt::format("axis {} has zero width", axis));
}

}  // namespace detail

template <class F>
PwlModel fit_1d(F&& f, Interval domain, double rmse_target, const FitOptions& opts = {}) {
    detail::check_interval(domain, 0);
    if (!(rmse_target > 0.0)) throw PwlError("rmse target must be positive");
    const auto grid = detail::uniform_grid(domain, opts.validation_points_1d);
    std::vector<double> fv(grid.size());
    double max_abs = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        fv[i] = f(grid[i]);
        if (!std::isfinite(fv[i])) throw PwlError(fmt::format("function is not finite at x = {}", grid[i]));
        max_abs = std::max(max_abs, std::abs(fv[i]));
    }
    std::vector<double> knots{domain.lo, domain.hi};
    std::vector<double> vals{f(domain.lo), f(domain.hi)};
    FitReport rep;
    rep.max_abs_f = max_abs;
    rep.validation_points = grid.size();
    for (;;) {
        Breakpoints1D bp(knots, vals);
        double sse = 0.0, emax = -1.0;
        std::size_t imax = 0;
        std::size_t s = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            while (s + 2 < knots.size() && grid[i] > knots[s + 1]) ++s;
            const double w = (grid[i] - knots[s]) / (knots[s + 1] - knots[s]);
            const double e = std::abs((1.0 - w) * vals[s] + w * vals[s + 1] - fv[i]);
            sse += e * e;
            if (e > emax) {
                emax = e;
                imax = i;
            }
        }
        const double rmse = max_abs > 0.0 ? std::sqrt(sse / static_cast<double>(grid.size())) / max_abs : 0.0;
        rep.rmse_history.push_back(rmse);
        rep.rmse = rmse;
        rep.max_abs_error = emax;
        if (rmse <= rmse_target) return PwlModel(std::move(bp), rmse_target, rep);
        if (knots.size() + 1 > opts.max_knots)
            throw BudgetExceeded(fmt::format("1-D refinement exceeds {} knots (rmse {:.3g})", opts.max_knots, rmse));
        const std::size_t seg = locate_segment(knots, grid[imax]);
        const double mid = 0.5 * (knots[seg] + knots[seg + 1]);
        knots.insert(knots.begin() + static_cast<long>(seg) + 1, mid);
        vals.insert(vals.begin() + static_cast<long>(seg) + 1, f(mid));
    }
}

namespace detail {

// Validation-grid evaluator for union-jack meshes.
class GridErrors {
public:
    GridErrors(const Box& box, std::size_t per_axis) : d_(box.size()) {
        for (const auto& iv : box) grid_.push_back(uniform_grid(iv, per_axis));
        total_ = 1;
        for (const auto& g : grid_) total_ *= g.size();
    }

    std::size_t size() const { return total_; }
    std::size_t dim() const { return d_; }

    std::array<double, kMaxDim> point(std::size_t idx) const {
        std::array<double, kMaxDim> p{};
        for (std::size_t k = 0; k < d_; ++k) {
            p[k] = grid_[k][idx % grid_[k].size()];
            idx /= grid_[k].size();
        }
        return p;
    }

    // Squared-error sum and worst point of `mesh` against sampled values.
    std::pair<double, std::size_t> sse(const SimplexMesh& mesh, const std::vector<double>& fv, double& emax) const {
        std::vector<std::vector<std::size_t>> cell(d_);
        std::vector<std::vector<double>> ur(d_);
        for (std::size_t k = 0; k < d_; ++k) {
            const auto& a = mesh.axes()[k];
            cell[k].resize(grid_[k].size());
            ur[k].resize(grid_[k].size());
            for (std::size_t p = 0; p < grid_[k].size(); ++p) {
                const double x = grid_[k][p];
                const std::size_t s = locate_segment(a, x);
                const double u = std::clamp((x - a[s]) / (a[s + 1] - a[s]), 0.0, 1.0);
                cell[k][p] = s;
                ur[k][p] = (s % 2) ? 1.0 - u : u;
            }
        }
        double total = 0.0;
        emax = -1.0;
        std::size_t worst = 0;
        std::array<std::size_t, kMaxDim> c{};
        std::array<double, kMaxDim> u{};
        for (std::size_t idx = 0; idx < total_; ++idx) {
            std::size_t rem = idx;
            for (std::size_t k = 0; k < d_; ++k) {
                const std::size_t p = rem % grid_[k].size();
                rem /= grid_[k].size();
                c[k] = cell[k][p];
                u[k] = ur[k][p];
            }
            const auto b = mesh.from_local(c, u);
            double v = 0.0;
            for (std::size_t i = 0; i < b.count; ++i) v += b.weights[i] * mesh.values()[b.vertices[i]];
            const double e = std::abs(v - fv[idx]);
            total += e * e;
            if (e > emax) {
                emax = e;
                worst = idx;
            }
        }
        return {total, worst};
    }

private:
    std::size_t d_;
    std::vector<std::vector<double>> grid_;
    std::size_t total_ = 0;
};

template <class F>
SimplexMesh sample_mesh(F& f, const std::vector<std::vector<double>>& axes) {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.size();
    std::vector<double> vals(n);
    std::array<double, kMaxDim> p{};
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t rem = v;
        for (std::size_t k = 0; k < axes.size(); ++k) {
            p[k] = axes[k][rem % axes[k].size()];
            rem /= axes[k].size();
        }
        vals[v] = f(std::span<const double>(p.data(), axes.size()));
        if (!std::isfinite(vals[v])) throw PwlError("function is not finite at a mesh vertex");
    }
    return SimplexMesh(axes, std::move(vals));
}

}  // namespace detail

// Refine a rectilinear grid (union-jack triangulated) until the validation RMSE meets the target.
// Each step bisects one axis interval of the cell holding the worst validation point; the axis is
// the one along which f deviates most from its chord through that point.
template <class F>
PwlModel fit_nd(F&& f, const Box& domain, double rmse_target, const FitOptions& opts = {}) {
    if (domain.empty() || domain.size() > kMaxDim) throw PwlError("fit_nd supports 1 to 3 dimensions");
    if (!(rmse_target > 0.0)) throw PwlError("rmse target must be positive");
    for (std::size_t k = 0; k < domain.size(); ++k) detail::check_interval(domain[k], k);
    const std::size_t d = domain.size();
    detail::GridErrors grid(domain, opts.validation_points_per_axis);
    std::vector<double> fv(grid.size());
    double max_abs = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto p = grid.point(i);
        fv[i] = f(std::span<const double>(p.data(), d));
        if (!std::isfinite(fv[i])) throw PwlError("function is not finite on the validation grid");
        max_abs = std::max(max_abs, std::abs(fv[i]));
    }
    auto rel = [&](double sse) {
        return max_abs > 0.0 ? std::sqrt(sse / static_cast<double>(grid.size())) / max_abs : 0.0;
    };
    std::vector<std::vector<double>> axes;
    for (const auto& iv : domain) axes.push_back({iv.lo, iv.hi});
    SimplexMesh mesh = detail::sample_mesh(f, axes);
    FitReport rep;
    rep.max_abs_f = max_abs;
    rep.validation_points = grid.size();
    double emax = 0.0;
    auto [sse, worst] = grid.sse(mesh, fv, emax);
    double rmse = rel(sse);
    rep.rmse_history.push_back(rmse);

    while (rmse > rmse_target) {
        const auto p = grid.point(worst);
        // Rank axes by the chord deviation of f along each axis through the worst point.
        std::array<double, kMaxDim> score{};
        std::array<std::size_t, kMaxDim> seg{};
        for (std::size_t k = 0; k < d; ++k) {
            seg[k] = locate_segment(axes[k], p[k]);
            auto q = p;
            const double a = axes[k][seg[k]], b = axes[k][seg[k] + 1];
            q[k] = a;
            const double fa = f(std::span<const double>(q.data(), d));
            q[k] = b;
            const double fb = f(std::span<const double>(q.data(), d));
            const double w = (p[k] - a) / (b - a);
            const double chord = (1.0 - w) * fa + w * fb;
            score[k] = std::abs(fv[worst] - chord);
            // Secondary key: relative width, so cross-term errors split the coarsest axis.
            score[k] += 1e-12 * max_abs * (b - a) / domain[k].width();
        }
        std::array<std::size_t, kMaxDim> order{0, 1, 2};
        std::stable_sort(order.begin(), order.begin() + static_cast<long>(d),
                         [&](std::size_t x, std::size_t y) { return score[x] > score[y]; });

        bool accepted = false;
        std::vector<std::vector<double>> best_axes;
        double best_rmse = kInfinity;
        std::size_t best_worst = 0;
        double best_sse = 0.0, best_emax = 0.0;
        for (std::size_t r = 0; r < d && !accepted; ++r) {
            const std::size_t k = order[r];
            if (axes[k].size() + 1 > opts.max_knots) continue;
            auto trial = axes;
            const double mid = 0.5 * (axes[k][seg[k]] + axes[k][seg[k] + 1]);
            trial[k].insert(trial[k].begin() + static_cast<long>(seg[k]) + 1, mid);
            std::size_t nv = 1;
            for (const auto& a : trial) nv *= a.size();
            if (nv > opts.max_vertices) continue;
            SimplexMesh tm = detail::sample_mesh(f, trial);
            double te = 0.0;
            auto [tsse, tworst] = grid.sse(tm, fv, te);
            const double tr = rel(tsse);
            if (tr < best_rmse) {
                best_rmse = tr;
                best_axes = trial;
                best_worst = tworst;
                best_sse = tsse;
                best_emax = te;
            }
            accepted = tr <= rmse * (1.0 + 1e-12);
        }
        if (best_axes.empty())
            throw BudgetExceeded(fmt::format("{}-D refinement exceeds its knot budget (rmse {:.3g})", d, rmse));
        axes = std::move(best_axes);
        mesh = detail::sample_mesh(f, axes);
        sse = best_sse;
        worst = best_worst;
        emax = best_emax;
        rmse = best_rmse;
        rep.rmse_history.push_back(rmse);
    }
    rep.rmse = rmse;
    rep.max_abs_error = emax;
    return PwlModel(std::move(mesh), rmse_target, rep);
}

}  // namespace ptl::pwl
