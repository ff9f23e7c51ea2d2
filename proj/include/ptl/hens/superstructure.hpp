#pragma once

// Stage-wise heat exchanger network superstructure with voltage-dependent stream data.
//
// Stream parameters are known at the dataset voltages. The voltage enters through shared
// SOS2 weights; each stage temperature is split into one share per voltage sample, bounded
// by that sample's weight, so heat balances stay linear and close exactly on the
// interpolated duties.

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ptl/milp/model.hpp"
#include "ptl/milp/pwl_embed.hpp"
#include "ptl/plant/dataset.hpp"
#include "ptl/pwl/fit.hpp"

namespace ptl::hens {

using milp::LinearExpr;
using milp::Model;
using milp::Sense;
using milp::VarId;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SuperstructureConfig {
    std::size_t stages = 3;
    double dT_min = 1.0;               // K
    double beta = 0.8;
    double c_f_hex = 1013.6;           // per exchanger and year
    double c_v_hex = 61.8;             // per m^(2 beta) and year
    double cold_utility_supply = 15.0;  // degC
    double cold_utility_return = 20.0;
    double heater_supply = 1000.0;  // electric heater, degC
    double heater_return = 950.0;
    bool offgas_budget = true;
    std::vector<std::string> hot_streams;   // empty: every hot and combustion stream of the dataset
    std::vector<std::string> cold_streams;  // empty: every cold stream
    double area_rmse = 0.01;
    std::size_t area_validation_per_axis = 100;
    milp::PwlEncoding encoding = milp::PwlEncoding::logarithmic;
};

// Branching priorities (higher first).
inline constexpr int kPriorityVoltage = 40;
inline constexpr int kPriorityRatio = 30;
inline constexpr int kPriorityMatch = 20;
inline constexpr int kPriorityArea = 10;

struct Match {
    std::size_t hot = 0, cold = 0, stage = 0;  // positions in MatchVariables::hot / cold
    VarId q, z, theta_left, theta_right;       // left: hot-end location `stage`
    double q_max = 0.0;
    double theta_max = 0.0;
};

struct UtilityMatch {
    std::size_t stream = 0;  // position in the hot (cooler) or cold (heater) list
    VarId q, z, theta_left, theta_right;
    double q_max = 0.0;
};

struct MatchVariables {
    std::vector<std::size_t> hot, cold;  // dataset stream indices
    std::size_t stages = 0;
    VarId voltage;
    milp::KnotWeights weights;
    // Aggregated temperatures per stream and location 0..stages (location 0 is the hot end).
    std::vector<std::vector<LinearExpr>> hot_temp, cold_temp;
    std::vector<Match> matches;
    std::vector<UtilityMatch> coolers;  // one per hot process stream
    std::vector<UtilityMatch> heaters;  // one per cold stream
    std::vector<std::pair<std::size_t, LinearExpr>> combustion_duty;  // hot position, duty
    LinearExpr heater_total, cooler_total, combustion_total;
    std::vector<double> offgas_budget;  // per sample; empty when unbounded
    // Set by add_area_cost_terms.
    LinearExpr area_cost;   // per year
    LinearExpr fixed_cost;  // per year
    std::size_t area_binaries = 0;
    bool has_area_terms = false;
    bool has_fixed_charges = false;

    LinearExpr interpolate(const std::vector<double>& per_sample) const { return weights.interpolate(per_sample); }
    std::size_t exchanger_count() const { return matches.size() + coolers.size() + heaters.size(); }
};

namespace detail {

struct StreamRange {
    double t_min = 0.0, t_max = 0.0, duty_max = 0.0;
};

inline StreamRange stream_range(const plant::PlantDataset& ds, std::size_t i) {
    StreamRange r{pwl::kInfinity, -pwl::kInfinity, 0.0};
    const auto& spec = ds.streams[i];
    for (const auto& s : ds.samples) {
        const auto& st = s.streams[i];
        double lo = std::min(st.T_in, st.T_out), hi = std::max(st.T_in, st.T_out);
        double duty = st.duty();
        if (spec.kind == plant::StreamKind::internal_hot_utility) duty = st.F * (st.T_in - spec.T_out.lo);
        r.t_min = std::min(r.t_min, lo);
        r.t_max = std::max(r.t_max, hi);
        r.duty_max = std::max(r.duty_max, duty);
    }
    if (spec.kind == plant::StreamKind::internal_hot_utility) r.t_min = std::min(r.t_min, spec.T_out.lo);
    return r;
}

inline std::vector<std::size_t> select_streams(const plant::PlantDataset& ds, const std::vector<std::string>& ids,
                                               bool hot_side) {
    std::vector<std::size_t> out;
    if (ids.empty()) {
        for (std::size_t i = 0; i < ds.streams.size(); ++i)
            if (ds.streams[i].is_hot_side() == hot_side) out.push_back(i);
        return out;
    }
    for (const auto& id : ids) {
        if (!ds.has_stream(id)) throw ConfigError(fmt::format("stream {} is not in the dataset", id));
        const std::size_t i = ds.stream_index(id);
        if (ds.streams[i].is_hot_side() != hot_side)
            throw ConfigError(fmt::format("stream {} listed as {} but is {}", id, hot_side ? "hot" : "cold",
                                          plant::to_string(ds.streams[i].kind)));
        out.push_back(i);
    }
    return out;
}

}  // namespace detail

// Adds the superstructure rows. `voltage` must be a registered continuous variable whose
// bounds lie inside the dataset voltage range.
inline MatchVariables build_superstructure(const plant::PlantDataset& ds, const SuperstructureConfig& cfg, Model& m,
                                           VarId voltage) {
    using plant::StreamKind;
    if (cfg.stages == 0) throw ConfigError("stage count must be positive");
    if (!(cfg.dT_min > 0.0)) throw ConfigError("minimum approach temperature must be positive");
    if (!(cfg.beta > 0.0 && cfg.beta <= 1.0)) throw ConfigError("cost exponent must lie in (0, 1]");
    if (!(cfg.cold_utility_return > cfg.cold_utility_supply)) throw ConfigError("cold utility must warm up");
    if (!(cfg.heater_supply > cfg.heater_return)) throw ConfigError("heater medium must cool down");
    for (std::size_t i = 0; i < ds.streams.size(); ++i)
        for (const auto& s : ds.samples) {
            const auto& st = s.streams[i];
            if (ds.streams[i].is_hot_side() && st.T_in < st.T_out)
                throw plant::ValidationError(fmt::format("hot stream {} has T_in {} < T_out {} at {} V", ds.streams[i].id,
                                                         st.T_in, st.T_out, s.U_cell));
            if (!ds.streams[i].is_hot_side() && st.T_in > st.T_out)
                throw plant::ValidationError(fmt::format("cold stream {} has T_in {} > T_out {} at {} V",
                                                         ds.streams[i].id, st.T_in, st.T_out, s.U_cell));
        }

    MatchVariables mv;
    mv.hot = detail::select_streams(ds, cfg.hot_streams, true);
    mv.cold = detail::select_streams(ds, cfg.cold_streams, false);
    mv.stages = cfg.stages;
    mv.voltage = voltage;
    const auto grid = ds.voltages();
    mv.weights = milp::embed_sos2_log(m, grid, LinearExpr(voltage), "U", kPriorityVoltage);
    const auto& lam = mv.weights.lambdas;
    const std::size_t N = grid.size(), S = cfg.stages;

    auto sample = [&](std::size_t i, std::size_t n) -> const plant::StreamState& { return ds.samples[n].streams[i]; };

    // Temperature at one location of one stream, split into per-sample shares.
    struct Location {
        LinearExpr total;
        std::vector<LinearExpr> share;
    };
    auto make_location = [&](const std::string& name, auto lo_of, auto hi_of, bool fixed) {
        Location loc;
        for (std::size_t n = 0; n < N; ++n) {
            const double lo = lo_of(n), hi = hi_of(n);
            LinearExpr share;
            if (fixed) {
                share.add(lam[n], lo);
            } else {
                auto v = m.add_variable(fmt::format("{}_s{}", name, n), 0.0, std::max(hi, 0.0));
                share = LinearExpr(v);
                m.add_constraint(fmt::format("{}_s{}lo", name, n), LinearExpr(v) - lo * LinearExpr(lam[n]),
                                 Sense::greater_equal, 0.0);
                m.add_constraint(fmt::format("{}_s{}hi", name, n), LinearExpr(v) - hi * LinearExpr(lam[n]),
                                 Sense::less_equal, 0.0);
            }
            loc.total += share;
            loc.share.push_back(std::move(share));
        }
        return loc;
    };

    std::vector<std::vector<Location>> hot_loc(mv.hot.size()), cold_loc(mv.cold.size());
    for (std::size_t h = 0; h < mv.hot.size(); ++h) {
        const std::size_t i = mv.hot[h];
        const auto& spec = ds.streams[i];
        const bool cs = spec.kind == StreamKind::internal_hot_utility;
        for (std::size_t l = 0; l <= S; ++l) {
            const std::string name = fmt::format("t_{}_{}", spec.id, l);
            auto lo = [&](std::size_t n) { return l == 0 ? sample(i, n).T_in : sample(i, n).T_out; };
            auto hi = [&](std::size_t n) { return cs && l == S ? spec.T_out.hi : sample(i, n).T_in; };
            hot_loc[h].push_back(make_location(name, lo, hi, l == 0));
        }
    }
    for (std::size_t c = 0; c < mv.cold.size(); ++c) {
        const std::size_t j = mv.cold[c];
        const auto& spec = ds.streams[j];
        for (std::size_t l = 0; l <= S; ++l) {
            const std::string name = fmt::format("t_{}_{}", spec.id, l);
            auto lo = [&](std::size_t n) { return sample(j, n).T_in; };
            auto hi = [&](std::size_t n) { return l == S ? sample(j, n).T_in : sample(j, n).T_out; };
            cold_loc[c].push_back(make_location(name, lo, hi, l == S));
        }
    }
    for (std::size_t h = 0; h < mv.hot.size(); ++h) {
        mv.hot_temp.emplace_back();
        for (auto& loc : hot_loc[h]) mv.hot_temp.back().push_back(loc.total);
    }
    for (std::size_t c = 0; c < mv.cold.size(); ++c) {
        mv.cold_temp.emplace_back();
        for (auto& loc : cold_loc[c]) mv.cold_temp.back().push_back(loc.total);
    }

    // Heat released (hot) or absorbed (cold) between two locations.
    auto stage_heat = [&](std::size_t i, const Location& a, const Location& b) {
        LinearExpr e;
        for (std::size_t n = 0; n < N; ++n) {
            const double F = sample(i, n).F;
            e.add(a.share[n], F);
            e.add(b.share[n], -F);
        }
        return e;
    };

    std::vector<detail::StreamRange> hot_range, cold_range;
    for (auto i : mv.hot) hot_range.push_back(detail::stream_range(ds, i));
    for (auto j : mv.cold) cold_range.push_back(detail::stream_range(ds, j));

    // Process matches.
    std::vector<std::vector<LinearExpr>> hot_sum(mv.hot.size(), std::vector<LinearExpr>(S)),
        cold_sum(mv.cold.size(), std::vector<LinearExpr>(S));
    for (std::size_t h = 0; h < mv.hot.size(); ++h) {
        for (std::size_t c = 0; c < mv.cold.size(); ++c) {
            const auto& hr = hot_range[h];
            const auto& cr = cold_range[c];
            const double theta_max = hr.t_max - cr.t_min;
            if (theta_max < cfg.dT_min) continue;  // never hot enough
            const double big = theta_max - (hr.t_min - cr.t_max);
            const double qmax = std::min(hr.duty_max, cr.duty_max);
            const auto& hid = ds.streams[mv.hot[h]].id;
            const auto& cid = ds.streams[mv.cold[c]].id;
            for (std::size_t k = 0; k < S; ++k) {
                Match mt;
                mt.hot = h;
                mt.cold = c;
                mt.stage = k;
                mt.q_max = qmax;
                mt.theta_max = theta_max;
                const std::string tag = fmt::format("{}_{}_{}", hid, cid, k);
                mt.q = m.add_variable("q_" + tag, 0.0, qmax);
                mt.z = m.add_binary("z_" + tag, kPriorityMatch);
                mt.theta_left = m.add_variable("dtl_" + tag, cfg.dT_min, theta_max);
                mt.theta_right = m.add_variable("dtr_" + tag, cfg.dT_min, theta_max);
                m.add_constraint("link_" + tag, LinearExpr(mt.q) - qmax * LinearExpr(mt.z), Sense::less_equal, 0.0);
                for (int side = 0; side < 2; ++side) {
                    const std::size_t l = k + static_cast<std::size_t>(side);
                    const VarId th = side == 0 ? mt.theta_left : mt.theta_right;
                    LinearExpr e = LinearExpr(th) - mv.hot_temp[h][l] + mv.cold_temp[c][l] + big * LinearExpr(mt.z);
                    m.add_constraint(fmt::format("app{}_{}", side == 0 ? "l" : "r", tag), e, Sense::less_equal, big);
                }
                hot_sum[h][k].add(mt.q, 1.0);
                cold_sum[c][k].add(mt.q, 1.0);
                mv.matches.push_back(mt);
            }
        }
    }

    // Stage balances and monotonic temperatures.
    for (std::size_t h = 0; h < mv.hot.size(); ++h) {
        const std::size_t i = mv.hot[h];
        const auto& id = ds.streams[i].id;
        for (std::size_t k = 0; k < S; ++k) {
            m.add_constraint(fmt::format("bal_{}_{}", id, k), stage_heat(i, hot_loc[h][k], hot_loc[h][k + 1]) - hot_sum[h][k],
                             Sense::equal, 0.0);
            m.add_constraint(fmt::format("mono_{}_{}", id, k), mv.hot_temp[h][k] - mv.hot_temp[h][k + 1],
                             Sense::greater_equal, 0.0);
        }
    }
    for (std::size_t c = 0; c < mv.cold.size(); ++c) {
        const std::size_t j = mv.cold[c];
        const auto& id = ds.streams[j].id;
        for (std::size_t k = 0; k < S; ++k) {
            m.add_constraint(fmt::format("bal_{}_{}", id, k),
                             stage_heat(j, cold_loc[c][k], cold_loc[c][k + 1]) - cold_sum[c][k], Sense::equal, 0.0);
            m.add_constraint(fmt::format("mono_{}_{}", id, k), mv.cold_temp[c][k] - mv.cold_temp[c][k + 1],
                             Sense::greater_equal, 0.0);
        }
    }

    // Coolers on hot process streams, combustion duty on internal utilities.
    for (std::size_t h = 0; h < mv.hot.size(); ++h) {
        const std::size_t i = mv.hot[h];
        const auto& spec = ds.streams[i];
        std::vector<double> t_out(N);
        for (std::size_t n = 0; n < N; ++n) t_out[n] = sample(i, n).T_out;
        if (spec.kind == StreamKind::internal_hot_utility) {
            LinearExpr duty;
            for (std::size_t n = 0; n < N; ++n) {
                duty.add(lam[n], sample(i, n).F * sample(i, n).T_in);
                duty.add(hot_loc[h][S].share[n], -sample(i, n).F);
            }
            mv.combustion_total += duty;
            mv.combustion_duty.emplace_back(h, std::move(duty));
            continue;
        }
        const auto& hr = hot_range[h];
        if (hr.t_min - cfg.cold_utility_return < cfg.dT_min || hr.t_min - cfg.cold_utility_supply < cfg.dT_min)
            throw ConfigError(fmt::format("cold utility too warm for stream {}", spec.id));
        UtilityMatch u;
        u.stream = h;
        u.q_max = hr.duty_max;
        u.q = m.add_variable("qcu_" + spec.id, 0.0, hr.duty_max);
        u.z = m.add_binary("zcu_" + spec.id, kPriorityMatch);
        LinearExpr duty = LinearExpr(u.q);
        for (std::size_t n = 0; n < N; ++n) {
            duty.add(hot_loc[h][S].share[n], -sample(i, n).F);
            duty.add(lam[n], sample(i, n).F * t_out[n]);
        }
        m.add_constraint("cu_" + spec.id, duty, Sense::equal, 0.0);
        m.add_constraint("linkcu_" + spec.id, LinearExpr(u.q) - hr.duty_max * LinearExpr(u.z), Sense::less_equal, 0.0);
        const double t_out_min = *std::min_element(t_out.begin(), t_out.end());
        const double t_out_max = *std::max_element(t_out.begin(), t_out.end());
        u.theta_left = m.add_variable("dtlcu_" + spec.id, hr.t_min - cfg.cold_utility_return, hr.t_max - cfg.cold_utility_return);
        u.theta_right = m.add_variable("dtrcu_" + spec.id, t_out_min - cfg.cold_utility_supply, t_out_max - cfg.cold_utility_supply);
        m.add_constraint("dtlcu_" + spec.id, LinearExpr(u.theta_left) - mv.hot_temp[h][S], Sense::equal,
                         -cfg.cold_utility_return);
        m.add_constraint("dtrcu_" + spec.id, LinearExpr(u.theta_right) - mv.interpolate(t_out), Sense::equal,
                         -cfg.cold_utility_supply);
        mv.cooler_total.add(u.q, 1.0);
        mv.coolers.push_back(u);
    }

    // Electric heaters on cold streams.
    for (std::size_t c = 0; c < mv.cold.size(); ++c) {
        const std::size_t j = mv.cold[c];
        const auto& spec = ds.streams[j];
        const auto& cr = cold_range[c];
        if (cfg.heater_return - cr.t_max < cfg.dT_min || cfg.heater_supply - cr.t_max < cfg.dT_min)
            throw ConfigError(fmt::format("heater medium too cold for stream {}", spec.id));
        std::vector<double> t_out(N);
        for (std::size_t n = 0; n < N; ++n) t_out[n] = sample(j, n).T_out;
        UtilityMatch u;
        u.stream = c;
        u.q_max = cr.duty_max;
        u.q = m.add_variable("qhu_" + spec.id, 0.0, cr.duty_max);
        u.z = m.add_binary("zhu_" + spec.id, kPriorityMatch);
        LinearExpr duty = LinearExpr(u.q);
        for (std::size_t n = 0; n < N; ++n) {
            duty.add(cold_loc[c][0].share[n], sample(j, n).F);
            duty.add(lam[n], -sample(j, n).F * t_out[n]);
        }
        m.add_constraint("hu_" + spec.id, duty, Sense::equal, 0.0);
        m.add_constraint("linkhu_" + spec.id, LinearExpr(u.q) - cr.duty_max * LinearExpr(u.z), Sense::less_equal, 0.0);
        const double t_out_min = *std::min_element(t_out.begin(), t_out.end());
        const double t_out_max = *std::max_element(t_out.begin(), t_out.end());
        u.theta_left = m.add_variable("dtlhu_" + spec.id, cfg.heater_supply - t_out_max, cfg.heater_supply - t_out_min);
        u.theta_right = m.add_variable("dtrhu_" + spec.id, cfg.heater_return - cr.t_max, cfg.heater_return - cr.t_min);
        m.add_constraint("dtlhu_" + spec.id, LinearExpr(u.theta_left) + mv.interpolate(t_out), Sense::equal,
                         cfg.heater_supply);
        m.add_constraint("dtrhu_" + spec.id, LinearExpr(u.theta_right) + mv.cold_temp[c][0], Sense::equal,
                         cfg.heater_return);
        mv.heater_total.add(u.q, 1.0);
        mv.heaters.push_back(u);
    }

    if (cfg.offgas_budget && !mv.combustion_duty.empty()) {
        for (const auto& s : ds.samples) mv.offgas_budget.push_back(s.q_offgas);
        m.add_constraint("offgas", mv.combustion_total - mv.interpolate(mv.offgas_budget), Sense::less_equal, 0.0);
    }
    return mv;
}

// ---------------------------------------------------------------------------------------------
// Area cost

// Closed-form mean temperature difference, exact for equal approaches.
inline double chen_mean(double theta1, double theta2) {
    return std::cbrt(theta1 * theta2 * (theta1 + theta2) / 2.0);
}

inline double exchanger_area(double q, double theta1, double theta2, double U) {
    if (q <= 0.0) return 0.0;
    return q / (U * chen_mean(theta1, theta2));
}

inline double area_cost(double q, double theta1, double theta2, double U, const SuperstructureConfig& cfg) {
    const double a = exchanger_area(q, theta1, theta2, U);
    return a > 0.0 ? cfg.c_v_hex * std::pow(a, cfg.beta) : 0.0;
}

// Fitted area-cost models keyed by box; exchangers with identical boxes share one fit.
class AreaFitCache {
public:
    std::shared_ptr<const pwl::PwlModel> get(const pwl::Box& box, const std::vector<std::size_t>& dims, double U,
                                             const SuperstructureConfig& cfg) {
        std::vector<double> key{U, cfg.beta, cfg.c_v_hex, cfg.area_rmse, static_cast<double>(cfg.area_validation_per_axis)};
        for (const auto& iv : box) key.insert(key.end(), {iv.lo, iv.hi});
        for (auto d : dims) key.push_back(static_cast<double>(d));
        if (auto it = fits_.find(key); it != fits_.end()) return it->second;
        pwl::Box sub;
        for (auto d : dims) sub.push_back(box[d]);
        auto f = [&](std::span<const double> p) {
            double x[3] = {box[0].lo, box[1].lo, box[2].lo};
            for (std::size_t a = 0; a < dims.size(); ++a) x[dims[a]] = p[a];
            return area_cost(x[0], x[1], x[2], U, cfg);
        };
        pwl::FitOptions opts;
        opts.validation_points_per_axis = cfg.area_validation_per_axis;
        auto model = std::make_shared<const pwl::PwlModel>(pwl::fit_nd(f, sub, cfg.area_rmse, opts));
        fits_.emplace(key, model);
        return model;
    }
    std::size_t size() const { return fits_.size(); }

private:
    std::map<std::vector<double>, std::shared_ptr<const pwl::PwlModel>> fits_;
};

// Per exchanger the annual area cost c_v·(q/(U·chen(θl, θr)))^β as a PWL model in
// (q, θl, θr); fixed charges c_f per active exchanger.
inline void add_area_cost_terms(Model& m, MatchVariables& mv, const plant::PlantDataset& ds,
                                const SuperstructureConfig& cfg, AreaFitCache& cache) {
    if (mv.has_area_terms || mv.has_fixed_charges) throw ConfigError("cost terms already added");
    auto add = [&](const std::string& tag, VarId q, VarId z, VarId tl, VarId tr, double U) {
        const auto& vq = m.variable(q);
        const auto& vl = m.variable(tl);
        const auto& vr = m.variable(tr);
        pwl::Box box{{0.0, vq.upper}, {vl.lower, vl.upper}, {vr.lower, vr.upper}};
        std::vector<std::size_t> dims;
        std::vector<LinearExpr> inputs;
        const std::array<VarId, 3> vars{q, tl, tr};
        for (std::size_t d = 0; d < 3; ++d)
            if (box[d].hi - box[d].lo > 1e-9 * std::max(1.0, std::abs(box[d].hi))) {
                dims.push_back(d);
                inputs.emplace_back(vars[d]);
            }
        mv.fixed_cost.add(z, cfg.c_f_hex);
        if (dims.empty() || dims[0] != 0) return;  // zero duty range: no area
        auto fit = cache.get(box, dims, U, cfg);
        auto y = m.add_variable("area_" + tag, 0.0, milp::kInf);
        auto emb = milp::embed_pwl_simplex_log(m, *fit, std::span<const LinearExpr>(inputs), LinearExpr(y), "a_" + tag,
                                               cfg.encoding, kPriorityArea);
        mv.area_binaries += emb.binaries.size();
        mv.area_cost.add(y, 1.0);
    };
    for (const auto& mt : mv.matches) {
        const auto& hs = ds.streams[mv.hot[mt.hot]];
        const auto& cs = ds.streams[mv.cold[mt.cold]];
        add(fmt::format("{}_{}_{}", hs.id, cs.id, mt.stage), mt.q, mt.z, mt.theta_left, mt.theta_right,
            0.5 * (hs.U + cs.U));
    }
    for (const auto& u : mv.coolers) {
        const auto& s = ds.streams[mv.hot[u.stream]];
        add("cu_" + s.id, u.q, u.z, u.theta_left, u.theta_right, s.U);
    }
    for (const auto& u : mv.heaters) {
        const auto& s = ds.streams[mv.cold[u.stream]];
        add("hu_" + s.id, u.q, u.z, u.theta_left, u.theta_right, s.U);
    }
    mv.has_area_terms = true;
    mv.has_fixed_charges = true;
}

// Fixed charges c_f per active exchanger without area terms; the area cost is then only
// evaluated on the extracted design.
inline void add_fixed_charges(MatchVariables& mv, const SuperstructureConfig& cfg) {
    if (mv.has_area_terms || mv.has_fixed_charges) throw ConfigError("cost terms already added");
    for (const auto& mt : mv.matches) mv.fixed_cost.add(mt.z, cfg.c_f_hex);
    for (const auto& u : mv.coolers) mv.fixed_cost.add(u.z, cfg.c_f_hex);
    for (const auto& u : mv.heaters) mv.fixed_cost.add(u.z, cfg.c_f_hex);
    mv.has_fixed_charges = true;
}

}  // namespace ptl::hens
