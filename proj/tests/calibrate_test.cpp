#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ptl/plant/calibrate.hpp"

using namespace ptl;

namespace {

const std::filesystem::path kShipped = std::filesystem::path(PTL_SOURCE_DIR) / "data" / "reference_dataset.csv";

const plant::CalibrationResult& calibrated() {
    static const auto r = plant::calibrate_reference_dataset(plant::CalibrationTargets::reference());
    return r;
}

}  // namespace

TEST(Calibration, HitsTargetsAndMatchesShippedDataset) {
    const auto t = plant::CalibrationTargets::reference();
    const auto& r = calibrated();
    ASSERT_EQ(r.samples.size(), plant::kSampleCount);
    for (std::size_t k = 0; k < r.samples.size(); ++k) {
        const auto& e = r.samples[k].objectives;
        EXPECT_NEAR(e.eta, t.eta[k], 1e-9);
        EXPECT_NEAR(e.c_prod, t.c_prod[k], 1e-9);
        EXPECT_NEAR(e.m_CO2 / e.product_rate, t.co2_per_product[k], 1e-9);
    }
    std::ostringstream fresh;
    plant::write_dataset(r.dataset, fresh);
    std::ifstream is(kShipped);
    ASSERT_TRUE(is) << kShipped;
    std::ostringstream shipped;
    shipped << is.rdbuf();
    EXPECT_EQ(fresh.str(), shipped.str());
}

TEST(Calibration, DatasetTrendsWithVoltage) {
    const auto ds = plant::load_dataset(kShipped);
    EXPECT_EQ(ds.provenance, plant::Provenance::reference_calibrated);
    for (std::size_t k = 1; k < ds.samples.size(); ++k) {
        const auto& a = ds.samples[k - 1];
        const auto& b = ds.samples[k];
        EXPECT_GT(plant::product_rate(b), plant::product_rate(a));
        EXPECT_GT(b.P_sys, a.P_sys);
        EXPECT_GT(b.m_CO2, a.m_CO2);
        EXPECT_GT(b.q_offgas, a.q_offgas);
    }
    EXPECT_NEAR(ds.samples.back().q_offgas / ds.samples.front().q_offgas, 1.25, 1e-6);
}

TEST(Calibration, OffgasBudgetBindsTheCombustionDuty) {
    const auto& r = calibrated();
    for (std::size_t k = 0; k < r.samples.size(); ++k)
        EXPECT_LE(r.samples[k].design.q_combustion, r.dataset.samples[k].q_offgas * (1.0 + 1e-6));
}

TEST(Calibration, UnreachableTargetsAreRejected) {
    auto t = plant::CalibrationTargets::reference();
    t.eta[2] = 1.02;
    EXPECT_THROW(plant::calibrate_reference_dataset(t), plant::InfeasibleTargets);
    t = plant::CalibrationTargets::reference();
    t.c_prod.pop_back();
    EXPECT_THROW(plant::calibrate_reference_dataset(t), plant::InfeasibleTargets);
    t = plant::CalibrationTargets::reference();
    t.product_split[1] = 0.0;
    EXPECT_THROW(plant::calibrate_reference_dataset(t), plant::InfeasibleTargets);
    // Electricity alone costs more than this.
    t = plant::CalibrationTargets::reference();
    t.c_prod[0] = 0.4;
    EXPECT_THROW(plant::calibrate_reference_dataset(t), plant::InfeasibleTargets);
}
