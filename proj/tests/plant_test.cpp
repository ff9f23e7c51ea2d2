#include <gtest/gtest.h>

#include <sstream>

#include "ptl/plant/dataset.hpp"
#include "test_support.hpp"

using namespace ptl;

using test::ramp_dataset;

TEST(PlantData, ReferenceTablesAreComplete) {
    const auto streams = plant::reference_streams();
    EXPECT_EQ(streams.size(), 22u);
    for (const auto& s : streams) EXPECT_DOUBLE_EQ(s.U, 0.5) << s.id;
    const auto products = plant::reference_products();
    EXPECT_DOUBLE_EQ(products[0].h_MJ_per_kg, 43.887);
    EXPECT_DOUBLE_EQ(products[1].h_MJ_per_kg, 44.345);
    EXPECT_DOUBLE_EQ(products[2].h_MJ_per_kg, 44.676);
    const auto grid = plant::reference_voltages();
    EXPECT_DOUBLE_EQ(grid.front(), 1.275);
    EXPECT_DOUBLE_EQ(grid.back(), 1.305);
    for (std::size_t k = 1; k < grid.size(); ++k) EXPECT_NEAR(grid[k] - grid[k - 1], 0.005, 1e-15);
}

TEST(PlantData, RoundTripIsFieldForField) {
    auto ds = ramp_dataset();
    plant::validate(ds);
    std::stringstream ss;
    plant::write_dataset(ds, ss);
    auto back = plant::load_dataset(ss, "memory");
    ASSERT_EQ(back.samples.size(), ds.samples.size());
    for (std::size_t k = 0; k < ds.samples.size(); ++k) EXPECT_EQ(back.samples[k], ds.samples[k]) << k;
    EXPECT_EQ(back.streams.size(), 22u);
}

TEST(PlantData, ChangedConstantInletIsRejected) {
    auto ds = ramp_dataset();
    ds.samples[3].streams[ds.stream_index("H4")].T_in = 211.0;
    std::stringstream ss;
    plant::write_dataset(ds, ss);
    try {
        plant::load_dataset(ss, "memory");
        FAIL() << "expected a validation error";
    } catch (const plant::ValidationError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("H4"), std::string::npos) << msg;
        EXPECT_NE(msg.find("T_in"), std::string::npos) << msg;
    }
}

TEST(PlantData, SixSamplesAreRejected) {
    auto ds = ramp_dataset();
    ds.samples.pop_back();
    EXPECT_THROW(plant::validate(ds), plant::ValidationError);
    std::stringstream ss;
    plant::write_dataset(ds, ss);
    EXPECT_THROW(plant::load_dataset(ss, "memory"), plant::DatasetError);
}

TEST(PlantData, MalformedNumberIsParseError) {
    auto ds = ramp_dataset();
    std::stringstream ss;
    plant::write_dataset(ds, ss);
    std::string text = ss.str();
    const auto pos = text.find("[flows]");
    const auto line = text.find('\n', text.find('\n', pos) + 1) + 1;
    text.replace(line, text.find(',', line) - line, "1.2x");
    std::stringstream bad(text);
    EXPECT_THROW(plant::load_dataset(bad, "memory"), plant::ParseError);
}

TEST(PlantData, InterpolationIsExactAtNodesAndLinearBetween) {
    auto ds = ramp_dataset();
    for (const auto& s : ds.samples) EXPECT_EQ(plant::evaluate_at_voltage(ds, s.U_cell), s);
    const auto mid = plant::evaluate_at_voltage(ds, 1.2775);
    const auto& a = ds.samples[0];
    const auto& b = ds.samples[1];
    EXPECT_NEAR(mid.m_CO2, 0.5 * (a.m_CO2 + b.m_CO2), 1e-9);
    EXPECT_NEAR(mid.P_sys, 0.5 * (a.P_sys + b.P_sys), 1e-9);
    for (std::size_t i = 0; i < ds.streams.size(); ++i) {
        EXPECT_NEAR(mid.streams[i].F, 0.5 * (a.streams[i].F + b.streams[i].F), 1e-12);
        EXPECT_NEAR(mid.streams[i].T_in, 0.5 * (a.streams[i].T_in + b.streams[i].T_in), 1e-9);
    }
    for (double U : {1.275, 1.2801, 1.29, 1.3049}) EXPECT_DOUBLE_EQ(plant::evaluate_at_voltage(ds, U).streams[ds.stream_index("H4")].T_in, 210.0);
    EXPECT_THROW(plant::evaluate_at_voltage(ds, 1.27), plant::VoltageOutOfRange);
    EXPECT_THROW(plant::evaluate_at_voltage(ds, 1.3051), plant::VoltageOutOfRange);
}

TEST(PlantData, InterpolatedValuesStayInsideBounds) {
    auto ds = ramp_dataset();
    for (int i = 0; i <= 300; ++i) {
        const double U = 1.275 + 0.0001 * i;
        const auto s = plant::evaluate_at_voltage(ds, std::min(U, 1.305));
        for (std::size_t j = 0; j < ds.streams.size(); ++j) {
            const auto& spec = ds.streams[j];
            EXPECT_GE(s.streams[j].F, spec.F.lo - 1e-12);
            EXPECT_LE(s.streams[j].F, spec.F.hi + 1e-12);
            EXPECT_GE(s.streams[j].T_in, spec.T_in.lo - 1e-9);
            EXPECT_LE(s.streams[j].T_in, spec.T_in.hi + 1e-9);
        }
    }
}

TEST(PlantData, MixtureEnthalpyIsConvexCombination) {
    auto ds = ramp_dataset();
    for (const auto& s : ds.samples) {
        const double h = plant::mixture_enthalpy(s, ds.products);
        EXPECT_GE(h, 43.887);
        EXPECT_LE(h, 44.676);
        EXPECT_NEAR(plant::enthalpy_flow(s, ds.products), h * plant::product_rate(s) / 3.6, 1e-9);
    }
}

TEST(PlantData, UnknownStreamIdIsRejected) {
    auto ds = ramp_dataset();
    std::stringstream ss;
    plant::write_dataset(ds, ss);
    std::string text = ss.str();
    const auto pos = text.find(",H11,");
    text.replace(pos, 5, ",H99,");
    std::stringstream bad(text);
    EXPECT_THROW(plant::load_dataset(bad, "memory"), plant::DatasetError);
}
