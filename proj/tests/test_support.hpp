#pragma once

#include <string>
#include <vector>

#include "ptl/plant/dataset.hpp"

namespace ptl::test {

struct ToyStream {
    std::string id;
    plant::StreamKind kind;
    double T_in, T_out, F;
};

// Voltage-independent dataset on the reference grid with the given streams.
inline plant::PlantDataset toy_dataset(const std::vector<ToyStream>& streams) {
    plant::PlantDataset ds;
    for (const auto& s : streams) {
        plant::StreamSpec spec;
        spec.id = s.id;
        spec.kind = s.kind;
        spec.T_in = {s.T_in, s.T_in};
        spec.T_out = {s.T_out, s.T_out};
        spec.F = {s.F, s.F};
        ds.streams.push_back(spec);
    }
    for (double U : plant::reference_voltages()) {
        plant::PlantSample p;
        p.U_cell = U;
        for (const auto& s : streams) p.streams.push_back({s.T_in, s.T_out, s.F});
        p.m_CO2 = 150.0;
        p.m_H2O = 70.0;
        p.m_air = 200.0;
        p.m_prod = {10.0, 20.0, 10.0};
        p.P_sys = 900.0;
        p.q_offgas = 1e3;
        ds.samples.push_back(p);
    }
    return ds;
}

// Two hot and two cold streams with fixed temperatures.
inline plant::PlantDataset toy_2x2() {
    using K = plant::StreamKind;
    return toy_dataset({{"H1", K::hot, 170.0, 60.0, 3.0},
                        {"H2", K::hot, 150.0, 30.0, 1.5},
                        {"C1", K::cold, 20.0, 135.0, 2.0},
                        {"C2", K::cold, 80.0, 140.0, 4.0}});
}

// Reference streams ramped linearly across their bounds, with plant-sized flows.
inline plant::PlantDataset ramp_dataset() {
    plant::PlantDataset ds;
    ds.streams = plant::reference_streams();
    const auto ramps = plant::linear_stream_ramps(ds.streams);
    const auto grid = plant::reference_voltages();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        plant::PlantSample s;
        s.U_cell = grid[k];
        s.streams = ramps[k];
        const double x = static_cast<double>(k);
        const double m = 35.0 + 2.8 * x;
        s.m_prod = {0.25 * m, 0.5 * m, 0.25 * m};
        s.m_CO2 = (3.6 + 0.03 * x) * m;
        s.m_H2O = 0.45 * s.m_CO2;
        s.m_air = 2.0 * m;
        s.P_sys = 690.0 + 65.0 * x;
        s.q_offgas = 60.0 + 10.0 * x;
        ds.samples.push_back(s);
    }
    return ds;
}

}  // namespace ptl::test
