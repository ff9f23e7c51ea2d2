#pragma once

// Embedding of piecewise-linear models into a Model.
//
// Grid models use convex-combination weights per vertex. Segment selection along
// each axis is coded with ceil(log2(segments)) binaries through a reflected Gray
// code; the simplex inside a union-jack cell is coded with one binary per axis pair.

#include <fmt/format.h>

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "ptl/milp/model.hpp"
#include "ptl/pwl/model.hpp"

namespace ptl::milp {

enum class Pressure { none, minimize, maximize };
enum class PwlEncoding { logarithmic, per_piece };

struct PwlEmbedding {
    enum class Kind { affine, epigraph, hypograph, convex_combination };
    Kind kind = Kind::convex_combination;
    std::vector<VarId> lambdas;   // one per grid vertex (convex_combination only)
    std::vector<VarId> binaries;
    std::size_t rows = 0;
};

inline std::size_t ceil_log2(std::size_t n) {
    std::size_t b = 0;
    while ((std::size_t{1} << b) < n) ++b;
    return b;
}

inline std::size_t gray_code(std::size_t s) { return s ^ (s >> 1); }

// Knots whose adjacent segments all carry `bit` = `value` in their Gray code.
inline std::vector<std::size_t> gray_knot_set(std::size_t segments, std::size_t bit, bool value) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i <= segments; ++i) {
        bool all = true;
        for (std::size_t s : {i - 1, i}) {
            if (s >= segments) continue;  // i - 1 wraps for i = 0
            all = all && (((gray_code(s) >> bit) & 1u) == static_cast<std::size_t>(value));
        }
        if (all) out.push_back(i);
    }
    return out;
}

namespace detail {

inline std::vector<std::vector<std::size_t>> grid_pieces(const std::vector<std::vector<double>>& axes) {
    if (axes.size() == 1) {
        std::vector<std::vector<std::size_t>> out;
        for (std::size_t s = 0; s + 1 < axes[0].size(); ++s) out.push_back({s, s + 1});
        return out;
    }
    pwl::SimplexMesh mesh(axes, std::vector<double>([&] {
                              std::size_t n = 1;
                              for (const auto& a : axes) n *= a.size();
                              return n;
                          }(), 0.0));
    return mesh.simplices();
}

}  // namespace detail

// Convex-combination weights over a rectilinear grid (axis 0 fastest) tied to `inputs`.
inline PwlEmbedding embed_grid_weights(Model& model, const std::vector<std::vector<double>>& axes,
                                       std::span<const LinearExpr> inputs, const std::string& prefix,
                                       PwlEncoding encoding = PwlEncoding::logarithmic, int priority = 0) {
    const std::size_t d = axes.size();
    if (d == 0 || d > pwl::kMaxDim) throw ModelError(prefix + ": grid dimension must be 1..3");
    if (inputs.size() != d) throw ModelError(prefix + ": input count does not match grid dimension");
    std::vector<std::size_t> strides(d);
    std::size_t nv = 1;
    for (std::size_t k = 0; k < d; ++k) {
        if (axes[k].size() < 2) throw ModelError(prefix + ": grid axis needs two knots");
        strides[k] = nv;
        nv *= axes[k].size();
    }
    auto knot = [&](std::size_t v, std::size_t k) { return (v / strides[k]) % axes[k].size(); };

    PwlEmbedding emb;
    emb.kind = PwlEmbedding::Kind::convex_combination;
    LinearExpr sum;
    for (std::size_t v = 0; v < nv; ++v) {
        auto l = model.add_variable(fmt::format("{}_l{}", prefix, v), 0.0, 1.0);
        emb.lambdas.push_back(l);
        sum.add(l, 1.0);
    }
    model.add_constraint(prefix + "_sum", sum, Sense::equal, 1.0);
    ++emb.rows;
    for (std::size_t k = 0; k < d; ++k) {
        LinearExpr e = -inputs[k];
        for (std::size_t v = 0; v < nv; ++v) e.add(emb.lambdas[v], axes[k][knot(v, k)]);
        model.add_constraint(fmt::format("{}_x{}", prefix, k), e, Sense::equal, 0.0);
        ++emb.rows;
    }

    if (encoding == PwlEncoding::per_piece) {
        const auto pieces = detail::grid_pieces(axes);
        std::vector<LinearExpr> cover(nv);
        LinearExpr pick;
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            auto b = model.add_binary(fmt::format("{}_p{}", prefix, p), priority);
            emb.binaries.push_back(b);
            pick.add(b, 1.0);
            for (auto v : pieces[p]) cover[v].add(b, 1.0);
        }
        model.add_constraint(prefix + "_pick", pick, Sense::equal, 1.0);
        ++emb.rows;
        for (std::size_t v = 0; v < nv; ++v) {
            model.add_constraint(fmt::format("{}_cov{}", prefix, v), LinearExpr(emb.lambdas[v]) - cover[v],
                                 Sense::less_equal, 0.0);
            ++emb.rows;
        }
        return emb;
    }

    // Per-axis segment selection on the marginal weights.
    for (std::size_t k = 0; k < d; ++k) {
        const std::size_t segs = axes[k].size() - 1;
        for (std::size_t bit = 0; bit < ceil_log2(segs); ++bit) {
            auto y = model.add_binary(fmt::format("{}_a{}b{}", prefix, k, bit), priority);
            emb.binaries.push_back(y);
            LinearExpr one, zero;
            for (auto i : gray_knot_set(segs, bit, true))
                for (std::size_t v = 0; v < nv; ++v)
                    if (knot(v, k) == i) one.add(emb.lambdas[v], 1.0);
            for (auto i : gray_knot_set(segs, bit, false))
                for (std::size_t v = 0; v < nv; ++v)
                    if (knot(v, k) == i) zero.add(emb.lambdas[v], 1.0);
            model.add_constraint(fmt::format("{}_a{}b{}p", prefix, k, bit), one - LinearExpr(y), Sense::less_equal, 0.0);
            model.add_constraint(fmt::format("{}_a{}b{}z", prefix, k, bit), zero + LinearExpr(y), Sense::less_equal, 1.0);
            emb.rows += 2;
        }
    }
    // Simplex selection inside the cell: w = 1 orders axis k before axis l.
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = k + 1; l < d; ++l) {
            auto w = model.add_binary(fmt::format("{}_t{}{}", prefix, k, l), priority);
            emb.binaries.push_back(w);
            LinearExpr kl, lk;
            for (std::size_t v = 0; v < nv; ++v) {
                const bool k_odd = knot(v, k) % 2, l_odd = knot(v, l) % 2;
                if (!k_odd && l_odd) kl.add(emb.lambdas[v], 1.0);
                if (k_odd && !l_odd) lk.add(emb.lambdas[v], 1.0);
            }
            model.add_constraint(fmt::format("{}_t{}{}a", prefix, k, l), kl + LinearExpr(w), Sense::less_equal, 1.0);
            model.add_constraint(fmt::format("{}_t{}{}b", prefix, k, l), lk - LinearExpr(w), Sense::less_equal, 0.0);
            emb.rows += 2;
        }
    }
    return emb;
}

// y = PWL(inputs) for a grid model (1-D breakpoints or union-jack mesh).
inline PwlEmbedding embed_pwl_simplex_log(Model& model, const pwl::PwlModel& pwl, std::span<const LinearExpr> inputs,
                                          const LinearExpr& y, const std::string& prefix,
                                          PwlEncoding encoding = PwlEncoding::logarithmic, int priority = 0) {
    const auto axes = pwl.grid_axes();
    auto emb = embed_grid_weights(model, axes, inputs, prefix, encoding, priority);
    const auto& vals = pwl.grid_values();
    LinearExpr e = -y;
    for (std::size_t v = 0; v < emb.lambdas.size(); ++v) e.add(emb.lambdas[v], vals[v]);
    model.add_constraint(prefix + "_y", e, Sense::equal, 0.0);
    ++emb.rows;
    return emb;
}

inline PwlEmbedding embed_pwl_simplex_log(Model& model, const pwl::PwlModel& pwl, std::initializer_list<LinearExpr> inputs,
                                          const LinearExpr& y, const std::string& prefix,
                                          PwlEncoding encoding = PwlEncoding::logarithmic, int priority = 0) {
    std::vector<LinearExpr> in(inputs);
    return embed_pwl_simplex_log(model, pwl, std::span<const LinearExpr>(in), y, prefix, encoding, priority);
}

// 1-D embedding. Convex curves under minimizing pressure (concave under maximizing) become
// segment-line cuts without binaries; affine curves a single equality; anything else the
// log-coded convex combination.
inline PwlEmbedding embed_pwl_1d(Model& model, const pwl::PwlModel& pwl, VarId x, VarId y, Pressure pressure,
                                 const std::string& prefix, PwlEncoding encoding = PwlEncoding::logarithmic,
                                 int priority = 0) {
    if (!pwl.is_1d()) throw ModelError(prefix + ": embed_pwl_1d needs a 1-D model");
    const auto& bp = pwl.breakpoints();
    const auto dom = bp.domain();
    const auto& xv = model.variable(x);
    const double tol = 1e-9 * std::max(1.0, std::abs(dom.lo) + std::abs(dom.hi));
    if (std::abs(xv.lower - dom.lo) > tol || std::abs(xv.upper - dom.hi) > tol)
        throw ModelError(fmt::format("{}: domain mismatch, variable [{}, {}] vs model [{}, {}]", prefix, xv.lower,
                                     xv.upper, dom.lo, dom.hi));
    PwlEmbedding emb;
    if (bp.is_affine()) {
        emb.kind = PwlEmbedding::Kind::affine;
        model.add_constraint(prefix + "_aff", LinearExpr(y) - bp.slope(0) * LinearExpr(x), Sense::equal, bp.intercept(0));
        emb.rows = 1;
        return emb;
    }
    const bool epi = bp.is_convex() && pressure == Pressure::minimize;
    const bool hypo = bp.is_concave() && pressure == Pressure::maximize;
    if (epi || hypo) {
        emb.kind = epi ? PwlEmbedding::Kind::epigraph : PwlEmbedding::Kind::hypograph;
        for (std::size_t s = 0; s < bp.segments(); ++s) {
            model.add_constraint(fmt::format("{}_cut{}", prefix, s), LinearExpr(y) - bp.slope(s) * LinearExpr(x),
                                 epi ? Sense::greater_equal : Sense::less_equal, bp.intercept(s));
            ++emb.rows;
        }
        return emb;
    }
    std::vector<LinearExpr> in{LinearExpr(x)};
    return embed_pwl_simplex_log(model, pwl, std::span<const LinearExpr>(in), LinearExpr(y), prefix, encoding, priority);
}

// Weights that interpolate any per-knot data linearly in a scalar (shared SOS2 over 1-D knots).
struct KnotWeights {
    std::vector<double> knots;
    std::vector<VarId> lambdas;
    std::vector<VarId> binaries;

    LinearExpr interpolate(std::span<const double> node_values) const {
        if (node_values.size() != lambdas.size()) throw ModelError("node value count does not match knot count");
        LinearExpr e;
        for (std::size_t n = 0; n < lambdas.size(); ++n) e.add(lambdas[n], node_values[n]);
        return e;
    }
};

inline KnotWeights embed_sos2_log(Model& model, const std::vector<double>& knots, const LinearExpr& x,
                                  const std::string& prefix, int priority = 0) {
    std::vector<LinearExpr> in{x};
    auto emb = embed_grid_weights(model, {knots}, std::span<const LinearExpr>(in), prefix, PwlEncoding::logarithmic,
                                  priority);
    return {knots, emb.lambdas, emb.binaries};
}

}  // namespace ptl::milp
