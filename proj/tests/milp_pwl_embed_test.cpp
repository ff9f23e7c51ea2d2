#include <gtest/gtest.h>

#include <random>

#include "ptl/milp/branch_and_bound.hpp"
#include "ptl/milp/pwl_embed.hpp"
#include "ptl/pwl/fit.hpp"
#include "oracles.hpp"

using namespace ptl;
using namespace ptl::milp;

namespace {

SolveLimits exact() {
    SolveLimits l;
    l.mip_gap = 0.0;
    return l;
}

using oracle::grid_model;
using oracle::random_axis;

// Vertices a fixed binary assignment leaves usable: a weight is forced to zero when it sits
// in a row whose right-hand side drops to zero once the binaries are substituted.
std::vector<bool> usable_vertices(const Model& m, const PwlEmbedding& emb, std::size_t mask) {
    std::vector<double> bin(m.num_variables(), 0.0);
    std::vector<bool> is_bin(m.num_variables(), false);
    for (std::size_t b = 0; b < emb.binaries.size(); ++b) {
        bin[emb.binaries[b].index] = (mask >> b) & 1u;
        is_bin[emb.binaries[b].index] = true;
    }
    std::vector<bool> is_lambda(m.num_variables(), false);
    for (auto l : emb.lambdas) is_lambda[l.index] = true;
    std::vector<bool> usable(emb.lambdas.size(), true);
    for (const auto& row : m.constraints()) {
        if (row.sense != Sense::less_equal) continue;
        double rhs = row.rhs;
        bool pure = true;
        std::vector<std::size_t> lam;
        for (const auto& t : row.terms) {
            if (is_bin[t.var]) rhs -= t.coef * bin[t.var];
            else if (is_lambda[t.var] && t.coef == 1.0) lam.push_back(t.var);
            else pure = false;
        }
        if (!pure || rhs > 0.5) continue;
        for (auto v : lam)
            for (std::size_t i = 0; i < emb.lambdas.size(); ++i)
                if (emb.lambdas[i].index == v) usable[i] = false;
    }
    return usable;
}

void check_selection(const std::vector<std::vector<double>>& axes) {
    Model m;
    std::vector<LinearExpr> in;
    for (std::size_t k = 0; k < axes.size(); ++k) in.emplace_back(m.add_variable("x" + std::to_string(k), -1e3, 1e3));
    auto emb = embed_grid_weights(m, axes, in, "g");
    const auto pieces = detail::grid_pieces(axes);
    std::vector<bool> reached(pieces.size(), false);
    for (std::size_t mask = 0; mask < (std::size_t{1} << emb.binaries.size()); ++mask) {
        auto ok = usable_vertices(m, emb, mask);
        std::vector<std::size_t> set;
        for (std::size_t v = 0; v < ok.size(); ++v)
            if (ok[v]) set.push_back(v);
        if (set.empty()) continue;
        bool inside = false;
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            auto piece = pieces[p];
            std::sort(piece.begin(), piece.end());
            const bool sub = std::includes(piece.begin(), piece.end(), set.begin(), set.end());
            inside = inside || sub;
            if (sub && set.size() == piece.size()) reached[p] = true;
        }
        EXPECT_TRUE(inside) << "assignment " << mask << " admits vertices outside every piece";
    }
    for (std::size_t p = 0; p < pieces.size(); ++p) EXPECT_TRUE(reached[p]) << "piece " << p << " unreachable";
}

}  // namespace

TEST(PwlEmbed, GrayKnotSetsSelectAdjacentKnots1d) {
    for (std::size_t segs = 1; segs <= 16; ++segs) {
        std::vector<double> axis;
        for (std::size_t i = 0; i <= segs; ++i) axis.push_back(static_cast<double>(i));
        check_selection({axis});
    }
}

TEST(PwlEmbed, UnionJackSelectionIsExact2d3d) {
    for (std::size_t a = 1; a <= 5; ++a)
        for (std::size_t b = 1; b <= 4; ++b) {
            std::vector<double> x, y;
            for (std::size_t i = 0; i <= a; ++i) x.push_back(static_cast<double>(i));
            for (std::size_t i = 0; i <= b; ++i) y.push_back(static_cast<double>(i));
            check_selection({x, y});
        }
    check_selection({{0, 1, 2}, {0, 1, 2, 3}, {0, 1}});
    check_selection({{0, 1, 2, 3}, {0, 1, 2}, {0, 1, 2}});
}

TEST(PwlEmbed, BinaryCountFormula) {
    std::mt19937_64 rng(1);
    Model m;
    auto x = m.add_variable("x", 0, 1), y = m.add_variable("y", 0, 1), z = m.add_variable("z", -kInf, kInf);
    auto one = grid_model({{0, 1}, {0, 1}}, rng);
    EXPECT_EQ(embed_pwl_simplex_log(m, one, {LinearExpr(x), LinearExpr(y)}, LinearExpr(z), "a").binaries.size(), 1u);
    Model m2;
    auto x2 = m2.add_variable("x", 0, 4), y2 = m2.add_variable("y", 0, 4), z2 = m2.add_variable("z", -kInf, kInf);
    auto four = grid_model({{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}}, rng);
    auto e = embed_pwl_simplex_log(m2, four, {LinearExpr(x2), LinearExpr(y2)}, LinearExpr(z2), "b");
    EXPECT_EQ(e.binaries.size(), 5u);
    EXPECT_EQ(m2.num_binaries(), 5u);
}

TEST(PwlEmbed, NonconvexFourSegmentsUseTwoBinaries) {
    Model m;
    auto x = m.add_variable("x", 0.0, 4.0);
    auto y = m.add_variable("y", -kInf, kInf);
    pwl::PwlModel f(pwl::Breakpoints1D({0, 1, 2, 3, 4}, {0, 2, 1, 3, 0}));
    auto e = embed_pwl_1d(m, f, x, y, Pressure::minimize, "f");
    EXPECT_EQ(e.kind, PwlEmbedding::Kind::convex_combination);
    EXPECT_EQ(e.binaries.size(), 2u);
}

TEST(PwlEmbed, AffineCurveIsOneRow) {
    Model m;
    auto x = m.add_variable("x", 0.0, 2.0);
    auto y = m.add_variable("y", -kInf, kInf);
    pwl::PwlModel f(pwl::Breakpoints1D({0, 1, 2}, {1, 3, 5}));
    auto e = embed_pwl_1d(m, f, x, y, Pressure::none, "f");
    EXPECT_EQ(e.kind, PwlEmbedding::Kind::affine);
    EXPECT_EQ(e.rows, 1u);
    EXPECT_EQ(m.num_constraints(), 1u);
    EXPECT_EQ(m.num_binaries(), 0u);
}

TEST(PwlEmbed, ConvexEpigraphMatchesEvaluate) {
    // Convex curve under minimizing pressure: epigraph cuts, no binaries.
    auto fit = pwl::fit_1d([](double x) { return std::pow(x, 1.25); }, {1.0, 400.0}, 0.01);
    Model m;
    auto x = m.add_variable("x", 1.0, 400.0);
    auto y = m.add_variable("y", -kInf, kInf);
    auto e = embed_pwl_1d(m, fit, x, y, Pressure::minimize, "f");
    EXPECT_EQ(e.kind, PwlEmbedding::Kind::epigraph);
    EXPECT_EQ(m.num_binaries(), 0u);
    m.set_objective(ObjectiveSense::minimize, LinearExpr(y) - 2.0 * LinearExpr(x));
    auto s = solve(m);
    ASSERT_EQ(s.status, SolveStatus::optimal_within_gap);
    EXPECT_NEAR(s.value(y), fit.evaluate(s.value(x)), 1e-9 * std::max(1.0, std::abs(s.value(y))));

    // Concave curve under maximizing pressure: hypograph.
    auto conc = pwl::fit_1d([](double x) { return std::pow(x, 0.8); }, {1.0, 400.0}, 0.01);
    Model m2;
    auto x2 = m2.add_variable("x", 1.0, 400.0);
    auto y2 = m2.add_variable("y", -kInf, kInf);
    EXPECT_EQ(embed_pwl_1d(m2, conc, x2, y2, Pressure::maximize, "g").kind, PwlEmbedding::Kind::hypograph);
    m2.set_objective(ObjectiveSense::maximize, LinearExpr(y2) - 0.3 * LinearExpr(x2));
    auto s2 = solve(m2);
    EXPECT_NEAR(s2.value(y2), conc.evaluate(s2.value(x2)), 1e-9 * std::max(1.0, std::abs(s2.value(y2))));
}

TEST(PwlEmbed, DomainMismatchRejected) {
    Model m;
    auto x = m.add_variable("x", 0.0, 3.0);
    auto y = m.add_variable("y", -kInf, kInf);
    pwl::PwlModel f(pwl::Breakpoints1D({0, 1, 2}, {0, 2, 1}));
    EXPECT_THROW(embed_pwl_1d(m, f, x, y, Pressure::none, "f"), ModelError);
}

TEST(PwlEmbed, VertexForcedByBoundsGivesVertexValue) {
    std::mt19937_64 rng(5);
    auto f = grid_model({{0, 1, 2, 3}, {0, 2, 4}}, rng);
    for (std::size_t v = 0; v < f.mesh().num_vertices(); ++v) {
        auto p = f.mesh().vertex(v);
        Model m;
        auto x = m.add_variable("x", p[0], p[0]), y = m.add_variable("y", p[1], p[1]);
        auto z = m.add_variable("z", -kInf, kInf);
        embed_pwl_simplex_log(m, f, {LinearExpr(x), LinearExpr(y)}, LinearExpr(z), "f");
        m.set_objective(ObjectiveSense::minimize, LinearExpr(z));
        auto s = solve(m, exact());
        ASSERT_EQ(s.status, SolveStatus::optimal_within_gap);
        EXPECT_NEAR(s.value(z), f.mesh().value(v), 1e-9);
    }
}

TEST(PwlEmbed, LogEqualsPerPieceEqualsEnumeration) {
    std::mt19937_64 rng(20240611);
    for (int i = 0; i < 50; ++i) {
        const auto inst = oracle::random_pwl_instance(rng, i);
        ASSERT_LE(inst.model.num_pieces(), 16u);
        const double log_v = oracle::solve_instance(inst, PwlEncoding::logarithmic);
        const double naive_v = oracle::solve_instance(inst, PwlEncoding::per_piece);
        const double enum_v = oracle::enumerate_instance(inst);
        ASSERT_TRUE(std::isfinite(log_v) && std::isfinite(naive_v)) << "instance " << i;
        EXPECT_NEAR(log_v, naive_v, 1e-6) << "instance " << i;
        EXPECT_NEAR(log_v, enum_v, 1e-6) << "instance " << i;
    }
}

TEST(PwlEmbed, SharedKnotWeightsInterpolateData) {
    Model m;
    auto u = m.add_variable("u", 1.275, 1.305);
    std::vector<double> knots{1.275, 1.28, 1.285, 1.29, 1.295, 1.3, 1.305};
    auto w = embed_sos2_log(m, knots, LinearExpr(u), "v");
    EXPECT_EQ(w.binaries.size(), 3u);
    std::vector<double> data{1, 4, 2, 8, 5, 7, 3};
    auto val = m.add_variable("val", -kInf, kInf);
    m.add_constraint("def", LinearExpr(val) - w.interpolate(data), Sense::equal, 0.0);
    m.set_bounds(u, 1.2875, 1.2875);
    m.set_objective(ObjectiveSense::minimize, LinearExpr(val));
    auto s = solve(m, exact());
    ASSERT_EQ(s.status, SolveStatus::optimal_within_gap);
    EXPECT_NEAR(s.value(val), 5.0, 1e-9);  // midpoint of 2 and 8
}
