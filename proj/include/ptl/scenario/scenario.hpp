#pragma once

// Price scenarios on a solved front: linear cost shifts through the price sensitivities,
// min/max envelopes over a price grid, and regions the shift turns dominated.

#include <Eigen/Dense>
#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "ptl/objective/objectives.hpp"
#include "ptl/pareto/front.hpp"
#include "ptl/plant/dataset.hpp"

namespace ptl::scenario {

using pareto::ParetoFront;
using pareto::ParetoPoint;

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PriceScenario {
    double c_el = 20.0;   // EUR/MWh
    double c_CO2 = 50.0;  // EUR/t
    bool out_of_box = false;
};

inline objective::Sensitivities compute_sensitivities(const ParetoPoint& p, const plant::PlantDataset& ds,
                                                      const objective::CostParameters& costs) {
    return objective::sensitivities(objective::evaluate(ds, p.design, costs), costs);
}

inline void check_scenario(const PriceScenario& s, const objective::PriceBox& box = {}) {
    if (!std::isfinite(s.c_el) || !std::isfinite(s.c_CO2)) throw ScenarioError("scenario prices must be finite");
    if (!s.out_of_box && !box.contains(s.c_el, s.c_CO2))
        throw ScenarioError(fmt::format("scenario ({}, {}) lies outside the price box [{}, {}] x [{}, {}]", s.c_el, s.c_CO2,
                                        box.c_el.lo, box.c_el.hi, box.c_CO2.lo, box.c_CO2.hi));
}

// Cost change of one point when prices move from `base` to `s` [EUR/kg].
inline double cost_shift(const objective::Sensitivities& g, const PriceScenario& s, const objective::CostParameters& base) {
    return (s.c_el - base.c_el) * objective::kPerMWhToPerKWh * g.grad_el +
           (s.c_CO2 - base.c_CO2) * objective::kPerTonneToPerKg * g.grad_co2;
}

// Efficiencies stay, costs move linearly; no re-filtering.
inline ParetoFront shift_front(const ParetoFront& front, const PriceScenario& s, const objective::CostParameters& base) {
    check_scenario(s);
    ParetoFront out = front;
    for (auto& p : out.points) {
        if (!p.sensitivities) throw ScenarioError(fmt::format("point in slab {} has no sensitivities", p.slab));
        p.objectives.c_prod += cost_shift(*p.sensitivities, s, base);
    }
    out.raw.clear();
    return out;
}

struct Plane {
    double intercept = 0.0;
    double slope_el = 0.0;   // EUR/kg per EUR/MWh
    double slope_co2 = 0.0;  // EUR/kg per EUR/t
};

struct Envelope {
    std::vector<double> c_el, c_CO2;  // grid axes
    Eigen::MatrixXd min, max;         // rows: c_el, columns: c_CO2
    Plane min_plane, max_plane;       // least-squares planes through the surfaces
    Eigen::MatrixXi argmin, argmax;   // point index per node
};

namespace detail {

// Least-squares plane; an axis with a single value gets zero slope.
inline Plane fit_plane(const std::vector<double>& el, const std::vector<double>& co2, const Eigen::MatrixXd& z) {
    const bool fit_el = el.size() > 1, fit_co2 = co2.size() > 1;
    const Eigen::Index cols = 1 + (fit_el ? 1 : 0) + (fit_co2 ? 1 : 0);
    Eigen::MatrixXd A(z.size(), cols);
    Eigen::VectorXd b(z.size());
    Eigen::Index r = 0;
    for (std::size_t i = 0; i < el.size(); ++i)
        for (std::size_t j = 0; j < co2.size(); ++j, ++r) {
            Eigen::Index c = 0;
            A(r, c++) = 1.0;
            if (fit_el) A(r, c++) = el[i];
            if (fit_co2) A(r, c++) = co2[j];
            b(r) = z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
    Plane p;
    Eigen::Index c = 0;
    p.intercept = x(c++);
    if (fit_el) p.slope_el = x(c++);
    if (fit_co2) p.slope_co2 = x(c++);
    return p;
}

}  // namespace detail

inline Envelope envelope(const ParetoFront& front, const objective::CostParameters& base, const std::vector<double>& c_el,
                         const std::vector<double>& c_CO2, bool allow_out_of_box = false) {
    if (front.points.empty()) throw ScenarioError("envelope of an empty front");
    if (c_el.empty() || c_CO2.empty()) throw ScenarioError("price grid axis is empty");
    Envelope e;
    e.c_el = c_el;
    e.c_CO2 = c_CO2;
    const auto ne = static_cast<Eigen::Index>(c_el.size());
    const auto nc = static_cast<Eigen::Index>(c_CO2.size());
    e.min.resize(ne, nc);
    e.max.resize(ne, nc);
    e.argmin.resize(ne, nc);
    e.argmax.resize(ne, nc);
    for (Eigen::Index i = 0; i < ne; ++i)
        for (Eigen::Index j = 0; j < nc; ++j) {
            const PriceScenario s{c_el[static_cast<std::size_t>(i)], c_CO2[static_cast<std::size_t>(j)], allow_out_of_box};
            check_scenario(s);
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (std::size_t k = 0; k < front.points.size(); ++k) {
                const auto& p = front.points[k];
                if (!p.sensitivities) throw ScenarioError(fmt::format("point in slab {} has no sensitivities", p.slab));
                const double c = p.objectives.c_prod + cost_shift(*p.sensitivities, s, base);
                if (c < lo) {
                    lo = c;
                    e.argmin(i, j) = static_cast<int>(k);
                }
                if (c > hi) {
                    hi = c;
                    e.argmax(i, j) = static_cast<int>(k);
                }
            }
            e.min(i, j) = lo;
            e.max(i, j) = hi;
        }
    e.min_plane = detail::fit_plane(c_el, c_CO2, e.min);
    e.max_plane = detail::fit_plane(c_el, c_CO2, e.max);
    return e;
}

struct Pocket {
    double eta_lo = 0.0, eta_hi = 0.0;
    std::vector<std::size_t> points;  // indices into the front, ascending efficiency
};

// Maximal efficiency runs of points dominated within the same front.
inline std::vector<Pocket> detect_pockets(const ParetoFront& shifted) {
    const auto& pts = shifted.points;
    if (pts.size() < 3) throw ScenarioError("pocket detection needs at least three points");
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pts[a].objectives.eta < pts[b].objectives.eta; });
    std::vector<bool> dominated(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size() && !dominated[i]; ++j)
            dominated[i] = j != i && pareto::dominates(pts[j].objectives, pts[i].objectives);
    std::vector<Pocket> out;
    bool open = false;
    for (auto i : order) {
        if (!dominated[i]) {
            open = false;
            continue;
        }
        if (!open) {
            out.push_back({pts[i].objectives.eta, pts[i].objectives.eta, {}});
            open = true;
        }
        out.back().eta_hi = pts[i].objectives.eta;
        out.back().points.push_back(i);
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Files

inline std::vector<double> axis(double lo, double hi, std::size_t n) {
    if (n < 2) throw ScenarioError("price axis needs two values");
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

inline void write_scenario_csv(const std::vector<std::pair<PriceScenario, ParetoFront>>& shifted, std::ostream& os) {
    os << "c_el_eur_MWh,c_co2_eur_t,point_id,eta_ptl,c_prod_shifted\n";
    for (const auto& [s, f] : shifted)
        for (std::size_t k = 0; k < f.points.size(); ++k)
            os << fmt::format("{:g},{:g},{},{:.8f},{:.8f}\n", s.c_el, s.c_CO2, k, f.points[k].objectives.eta,
                              f.points[k].objectives.c_prod);
}

inline void write_envelope_csv(const Envelope& e, std::ostream& os) {
    os << "c_el_eur_MWh,c_co2_eur_t,c_prod_min,c_prod_max,point_min,point_max\n";
    for (Eigen::Index i = 0; i < e.min.rows(); ++i)
        for (Eigen::Index j = 0; j < e.min.cols(); ++j)
            os << fmt::format("{:g},{:g},{:.8f},{:.8f},{},{}\n", e.c_el[static_cast<std::size_t>(i)],
                              e.c_CO2[static_cast<std::size_t>(j)], e.min(i, j), e.max(i, j), e.argmin(i, j), e.argmax(i, j));
}

inline void write_pockets_csv(const std::vector<std::pair<PriceScenario, std::vector<Pocket>>>& pockets, std::ostream& os) {
    os << "c_el_eur_MWh,c_co2_eur_t,eta_lo,eta_hi,n_points\n";
    for (const auto& [s, list] : pockets)
        for (const auto& p : list)
            os << fmt::format("{:g},{:g},{:.8f},{:.8f},{}\n", s.c_el, s.c_CO2, p.eta_lo, p.eta_hi, p.points.size());
}

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& w) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
    w(os);
    if (!os) throw std::runtime_error(fmt::format("write to {} failed", path.string()));
}

}  // namespace ptl::scenario
