#pragma once

// Published product properties, stream bounds and voltage grid of the reference plant.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptl/pwl/breakpoints.hpp"

namespace ptl::plant {

using pwl::Interval;

struct ProductSpec {
    int index = 0;
    std::string name;
    double h_MJ_per_kg = 0.0;
    double rho_kg_per_m3 = 0.0;
    double mu_mPa_s = 0.0;
};

enum class StreamKind { hot, cold, internal_hot_utility };

inline std::string_view to_string(StreamKind k) {
    switch (k) {
        case StreamKind::hot: return "hot";
        case StreamKind::cold: return "cold";
        case StreamKind::internal_hot_utility: return "internal-hot-utility";
    }
    return "?";
}

struct StreamSpec {
    std::string id;
    StreamKind kind = StreamKind::hot;
    Interval T_in;   // degenerate interval for voltage-independent values
    Interval T_out;
    Interval F;      // kW/K
    double U = 0.5;  // kW/m2/K

    bool is_hot_side() const { return kind != StreamKind::cold; }
};

inline constexpr std::size_t kSampleCount = 7;
inline constexpr double kVoltageMin = 1.275;
inline constexpr double kVoltageMax = 1.305;

inline std::array<double, kSampleCount> reference_voltages() {
    std::array<double, kSampleCount> v{};
    for (std::size_t k = 0; k < kSampleCount; ++k) v[k] = static_cast<double>(1275 + 5 * k) / 1000.0;
    return v;
}

inline std::array<ProductSpec, 3> reference_products() {
    return {{{1, "FT-wax", 43.887, 797.73, 6.7477},
             {2, "diesel", 44.345, 748.81, 1.5983},
             {3, "naphtha", 44.676, 516.17, 0.5893}}};
}

inline std::vector<StreamSpec> reference_streams() {
    using K = StreamKind;
    auto c = [](double v) { return Interval{v, v}; };
    auto b = [](double lo, double hi) { return Interval{lo, hi}; };
    return {
        {"H1", K::hot, c(40.0), c(35.0), b(1.71, 2.16)},
        {"H2", K::hot, b(127.9, 131.1), b(34.0, 35.0), b(0.09, 0.12)},
        {"H3", K::hot, b(169.8, 174.1), b(34.0, 35.0), b(0.09, 0.12)},
        {"H4", K::hot, c(210.0), c(190.0), b(0.27, 0.28)},
        {"H5", K::hot, c(190.0), c(120.0), b(0.56, 0.58)},
        {"H6", K::hot, c(120.0), c(30.0), b(0.48, 0.50)},
        {"H7", K::hot, b(45.4, 57.0), c(31.0), b(2.35, 2.95)},
        {"H8", K::hot, c(138.9), c(137.9), b(59.60, 94.40)},
        {"H9", K::hot, b(805.2, 825.5), b(34.0, 35.0), b(0.10, 0.13)},
        {"H10", K::hot, b(49.5, 50.7), b(34.0, 35.0), b(0.65, 0.88)},
        {"H11", K::hot, c(101.8), c(30.0), b(0.51, 0.64)},
        {"H12", K::hot, c(190.0), c(188.0), b(76.88, 80.45)},
        {"C1", K::cold, b(318.0, 319.2), b(825.0, 870.5), b(0.14, 0.18)},
        {"C2", K::cold, c(116.9), c(124.2), b(20.02, 25.12)},
        {"C3", K::cold, b(57.3, 58.8), c(825.0), b(0.25, 0.33)},
        {"C4", K::cold, c(137.9), c(139.9), b(105.77, 142.64)},
        {"C5", K::cold, c(138.9), b(426.6, 449.4), b(0.10, 0.11)},
        {"C6", K::cold, c(35.0), b(115.9, 145.4), b(0.05, 0.06)},
        {"C7", K::cold, c(20.3), b(189.5, 199.6), b(0.15, 0.21)},
        {"CS1", K::internal_hot_utility, c(900.0), b(100.0, 890.0), b(59.60, 94.40)},
        {"CS2", K::internal_hot_utility, c(900.0), b(100.0, 890.0), b(0.10, 0.13)},
        {"CS3", K::internal_hot_utility, c(900.0), b(100.0, 890.0), b(0.65, 0.88)},
    };
}

inline std::optional<StreamSpec> find_reference_stream(std::string_view id) {
    for (auto& s : reference_streams())
        if (s.id == id) return s;
    return std::nullopt;
}

}  // namespace ptl::plant
