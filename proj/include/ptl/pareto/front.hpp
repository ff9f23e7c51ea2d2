#pragma once

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ptl/hens/design.hpp"
#include "ptl/objective/objectives.hpp"

namespace ptl::pareto {

using objective::ObjectivePair;

// Slab index of the two anchor solves.
inline constexpr int kMinCostAnchor = -1;
inline constexpr int kMaxEfficiencyAnchor = -2;

struct ParetoPoint {
    ObjectivePair objectives;
    double U_cell = std::nan("");
    hens::HenDesign design;
    double q_hu = 0.0, q_cu = 0.0;  // kW
    std::size_t n_hex = 0;
    double mip_gap = std::nan("");
    int slab = kMinCostAnchor;
    bool feasible = false;     // solution passed the constraint check
    double discrepancy = 0.0;  // relative, model ratio vs exact objective
    std::optional<objective::Sensitivities> sensitivities;
};

struct SlabGap {
    int slab = 0;
    double eta_lo = 0.0, eta_hi = 0.0;
    std::string reason;
};

struct ParetoFront {
    std::vector<ParetoPoint> points;  // pairwise non-dominated, ascending efficiency
    std::vector<double> slab_edges;
    std::vector<SlabGap> gaps;
    std::vector<ParetoPoint> raw;  // every solve result, by slab order, before filtering
};

// Maximize efficiency, minimize cost.
inline bool dominates(const ObjectivePair& a, const ObjectivePair& b) {
    return a.eta >= b.eta && a.c_prod <= b.c_prod && (a.eta > b.eta || a.c_prod < b.c_prod);
}

inline ParetoFront non_dominated_filter(std::vector<ParetoPoint> points) {
    std::stable_sort(points.begin(), points.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
        if (a.objectives.eta != b.objectives.eta) return a.objectives.eta > b.objectives.eta;
        return a.objectives.c_prod < b.objectives.c_prod;
    });
    ParetoFront f;
    double best = std::numeric_limits<double>::infinity();
    for (auto& p : points) {
        if (p.objectives.c_prod < best) {
            best = p.objectives.c_prod;
            f.points.push_back(std::move(p));
        }
    }
    std::reverse(f.points.begin(), f.points.end());
    return f;
}

// Shortest round-trip formatting, so a front read back is the front written.
inline void write_front_csv(const ParetoFront& f, std::ostream& os) {
    os << "slab,U_cell_V,eta_ptl,c_prod_eur_per_kg,mip_gap,n_hex,q_hu_kW,q_cu_kW,grad_cel_kWh_per_kg,grad_cco2_kg_per_kg\n";
    for (const auto& p : f.points) {
        const double ge = p.sensitivities ? p.sensitivities->grad_el : std::nan("");
        const double gc = p.sensitivities ? p.sensitivities->grad_co2 : std::nan("");
        os << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", p.slab, p.U_cell,
                          p.objectives.eta, p.objectives.c_prod, p.mip_gap, p.n_hex, p.q_hu, p.q_cu, ge, gc);
    }
}

inline void write_front_csv(const ParetoFront& f, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
    write_front_csv(f, os);
}

class FrontFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Points with objectives, voltage, duties and sensitivities; designs are not stored.
inline ParetoFront read_front_csv(std::istream& is, const std::string& source = "front") {
    std::string line;
    if (!std::getline(is, line) || line.rfind("slab,U_cell_V,eta_ptl,c_prod_eur_per_kg", 0) != 0)
        throw FrontFormatError(fmt::format("{}: missing front header", source));
    ParetoFront f;
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos; start = pos + 1)
            cells.push_back(line.substr(start, pos - start));
        cells.push_back(line.substr(start));
        if (cells.size() != 10) throw FrontFormatError(fmt::format("{}:{}: expected 10 columns", source, row));
        std::vector<double> v;
        for (const auto& c : cells) {
            std::size_t used = 0;
            double x = std::nan("");
            try {
                x = std::stod(c, &used);
            } catch (const std::logic_error&) {
                used = 0;
            }
            if (used != c.size()) throw FrontFormatError(fmt::format("{}:{}: bad number '{}'", source, row, c));
            v.push_back(x);
        }
        ParetoPoint p;
        p.slab = static_cast<int>(v[0]);
        p.U_cell = v[1];
        p.design.U_cell = v[1];
        p.objectives = {v[2], v[3]};
        p.mip_gap = v[4];
        p.n_hex = static_cast<std::size_t>(v[5]);
        p.q_hu = v[6];
        p.q_cu = v[7];
        if (std::isfinite(v[8]) && std::isfinite(v[9])) p.sensitivities = objective::Sensitivities{v[8], v[9]};
        p.feasible = true;
        f.points.push_back(p);
    }
    return f;
}

inline ParetoFront read_front_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error(fmt::format("cannot open {}", path.string()));
    return read_front_csv(is, path.string());
}

}  // namespace ptl::pareto
