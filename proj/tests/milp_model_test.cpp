#include <gtest/gtest.h>

#include "ptl/milp/model.hpp"

using namespace ptl::milp;

TEST(Model, AddVariableGrowsRegistry) {
    Model m;
    EXPECT_EQ(m.num_variables(), 0u);
    auto x = m.add_variable("x", 0.0, 1.0);
    EXPECT_EQ(m.num_variables(), 1u);
    EXPECT_EQ(m.variable(x).name, "x");
    EXPECT_EQ(m.variable(x).type, VarType::continuous);
}

TEST(Model, DuplicateNamesRejected) {
    Model m;
    m.add_variable("x", 0.0, 1.0);
    EXPECT_THROW(m.add_variable("x", 0.0, 2.0), ModelError);
    auto x = m.find_variable("x");
    m.add_constraint("c", LinearExpr(x), Sense::less_equal, 1.0);
    EXPECT_THROW(m.add_constraint("c", LinearExpr(x), Sense::less_equal, 1.0), ModelError);
}

TEST(Model, UnknownVariableRejected) {
    Model m;
    m.add_variable("x", 0.0, 1.0);
    LinearExpr e;
    e.add(VarId{5}, 1.0);
    EXPECT_THROW(m.add_constraint("c", e, Sense::equal, 0.0), ModelError);
    EXPECT_THROW(m.set_objective(ObjectiveSense::minimize, e), ModelError);
}

TEST(Model, NonfiniteCoefficientRejected) {
    Model m;
    auto x = m.add_variable("x", 0.0, 1.0);
    LinearExpr e;
    e.add(x, std::numeric_limits<double>::quiet_NaN());
    EXPECT_THROW(m.add_constraint("c", e, Sense::equal, 0.0), ModelError);
    EXPECT_THROW(m.add_constraint("d", LinearExpr(x), Sense::equal, kInf), ModelError);
}

TEST(Model, ExpressionConstantMovesToRhs) {
    Model m;
    auto x = m.add_variable("x", 0.0, 10.0);
    auto y = m.add_variable("y", 0.0, 10.0);
    LinearExpr e = 2.0 * LinearExpr(x) + LinearExpr(y) + 3.0 - LinearExpr(x);
    m.add_constraint("c", e, Sense::less_equal, 7.0);
    const auto& row = m.constraints().front();
    ASSERT_EQ(row.terms.size(), 2u);
    EXPECT_DOUBLE_EQ(row.terms[0].coef, 1.0);
    EXPECT_DOUBLE_EQ(row.terms[1].coef, 1.0);
    EXPECT_DOUBLE_EQ(row.rhs, 4.0);
}

TEST(Model, BinaryBoundsClamped) {
    Model m;
    auto b = m.add_binary("b");
    EXPECT_EQ(m.variable(b).lower, 0.0);
    EXPECT_EQ(m.variable(b).upper, 1.0);
    EXPECT_EQ(m.num_binaries(), 1u);
}

TEST(Model, CheckAssignmentFindsViolations) {
    Model m;
    auto x = m.add_variable("x", 0.0, 1.0);
    auto b = m.add_binary("b");
    m.add_constraint("c", LinearExpr(x) + LinearExpr(b), Sense::less_equal, 1.0);
    EXPECT_TRUE(check_assignment(m, {0.5, 0.0}).empty());
    EXPECT_EQ(check_assignment(m, {0.5, 0.5}).size(), 1u);  // integrality only
    EXPECT_EQ(check_assignment(m, {1.0, 1.0}).size(), 1u);  // row only
    EXPECT_EQ(check_assignment(m, {2.0, 0.0}).size(), 2u);  // bound and row
}
