#pragma once

#include <fmt/format.h>

#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ptl/pwl/breakpoints.hpp"
#include "ptl/pwl/simplex_mesh.hpp"

namespace ptl::pwl {

struct FitReport {
    double rmse = 0.0;                 // relative to max|f| on the validation grid
    double max_abs_f = 0.0;
    double max_abs_error = 0.0;
    std::size_t validation_points = 0;
    std::vector<double> rmse_history;  // one entry per refinement step, starting with the initial grid
    std::string normalization = "max-abs-f";
};

class PwlModel {
public:
    PwlModel(Breakpoints1D bp, double target = 0.0, FitReport report = {})
        : repr_(std::move(bp)), target_(target), report_(std::move(report)) {}
    PwlModel(SimplexMesh mesh, double target = 0.0, FitReport report = {})
        : repr_(std::move(mesh)), target_(target), report_(std::move(report)) {}

    bool is_1d() const { return std::holds_alternative<Breakpoints1D>(repr_); }
    std::size_t dim() const { return is_1d() ? 1 : mesh().dim(); }
    const Breakpoints1D& breakpoints() const { return std::get<Breakpoints1D>(repr_); }
    const SimplexMesh& mesh() const { return std::get<SimplexMesh>(repr_); }

    Box domain() const { return is_1d() ? Box{breakpoints().domain()} : mesh().domain(); }
    double recorded_rmse() const { return report_.rmse; }
    double rmse_target() const { return target_; }
    const FitReport& report() const { return report_; }

    // Knots per axis and vertex values with axis 0 varying fastest.
    std::vector<std::vector<double>> grid_axes() const {
        return is_1d() ? std::vector<std::vector<double>>{breakpoints().knots()} : mesh().axes();
    }
    const std::vector<double>& grid_values() const { return is_1d() ? breakpoints().values() : mesh().values(); }

    // Number of linear pieces (segments or simplices).
    std::size_t num_pieces() const {
        if (is_1d()) return breakpoints().segments();
        std::size_t fact = 1;
        for (std::size_t k = 2; k <= mesh().dim(); ++k) fact *= k;
        return mesh().num_cells() * fact;
    }

    double evaluate(std::span<const double> x) const {
        if (is_1d()) {
            if (x.size() != 1) throw PwlError("1-D model evaluated with a multi-dimensional point");
            return breakpoints().evaluate(x[0]);
        }
        return mesh().evaluate(x);
    }
    double evaluate(double x) const { return evaluate(std::span<const double>(&x, 1)); }

private:
    std::variant<Breakpoints1D, SimplexMesh> repr_;
    double target_ = 0.0;
    FitReport report_;
};

inline double evaluate(const PwlModel& model, std::span<const double> x) { return model.evaluate(x); }
inline double evaluate(const PwlModel& model, std::initializer_list<double> x) {
    return model.evaluate(std::span<const double>(x.begin(), x.size()));
}

// Audit dump: vertex rows then piece rows.
inline void write_model_csv(const PwlModel& model, std::ostream& os) {
    os << "# rmse=" << fmt::format("{:.6g}", model.recorded_rmse()) << " normalization=" << model.report().normalization
       << " validation_points=" << model.report().validation_points << '\n';
    os << "kind,index,c0,c1,c2,c3\n";
    if (model.is_1d()) {
        const auto& bp = model.breakpoints();
        for (std::size_t i = 0; i < bp.knots().size(); ++i)
            os << fmt::format("vertex,{},{:.17g},{:.17g},,\n", i, bp.knots()[i], bp.values()[i]);
        for (std::size_t s = 0; s < bp.segments(); ++s) os << fmt::format("piece,{},{},{},,\n", s, s, s + 1);
        return;
    }
    const auto& m = model.mesh();
    for (std::size_t v = 0; v < m.num_vertices(); ++v) {
        auto p = m.vertex(v);
        os << "vertex," << v;
        for (std::size_t k = 0; k < 3; ++k) os << ',' << (k < p.size() ? fmt::format("{:.17g}", p[k]) : std::string());
        os << fmt::format(",{:.17g}\n", m.value(v));
    }
    std::size_t i = 0;
    for (const auto& s : m.simplices()) {
        os << "piece," << i++;
        for (std::size_t k = 0; k < 4; ++k) os << ',' << (k < s.size() ? std::to_string(s[k]) : std::string());
        os << '\n';
    }
}

}  // namespace ptl::pwl
