#pragma once

// Union-jack (J1) triangulation of a rectilinear grid. Inside cell (i_1..i_d) the
// local coordinates are reflected on odd cell indices, u~_k = [i_k odd] ? 1-u_k : u_k,
// and the simplex is selected by the descending order of u~. The reflection makes
// the simplex choice a property of vertex parities, which the logarithmic MILP
// encoding relies on.

#include <algorithm>
#include <array>
#include <numeric>
#include <span>
#include <vector>

#include "ptl/pwl/breakpoints.hpp"

namespace ptl::pwl {

inline constexpr std::size_t kMaxDim = 3;

struct Barycentric {
    std::array<std::size_t, kMaxDim + 1> vertices{};
    std::array<double, kMaxDim + 1> weights{};
    std::size_t count = 0;
};

class SimplexMesh {
public:
    SimplexMesh(std::vector<std::vector<double>> axes, std::vector<double> values)
        : axes_(std::move(axes)), values_(std::move(values)) {
        if (axes_.empty() || axes_.size() > kMaxDim) throw PwlError("mesh dimension must be 1..3");
        std::size_t n = 1;
        for (const auto& a : axes_) {
            if (a.size() < 2) throw PwlError("every mesh axis needs at least two knots");
            for (std::size_t i = 1; i < a.size(); ++i)
                if (!(a[i] > a[i - 1])) throw DegenerateDomain("mesh knots must be strictly ascending");
            strides_.push_back(n);
            n *= a.size();
        }
        if (values_.size() != n) throw PwlError("mesh value count does not match the grid");
    }

    std::size_t dim() const { return axes_.size(); }
    const std::vector<std::vector<double>>& axes() const { return axes_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t num_vertices() const { return values_.size(); }
    std::size_t stride(std::size_t k) const { return strides_[k]; }
    std::size_t segments(std::size_t k) const { return axes_[k].size() - 1; }
    std::size_t num_cells() const {
        std::size_t c = 1;
        for (std::size_t k = 0; k < dim(); ++k) c *= segments(k);
        return c;
    }
    Box domain() const {
        Box b;
        for (const auto& a : axes_) b.push_back({a.front(), a.back()});
        return b;
    }

    std::size_t knot_index(std::size_t vertex, std::size_t axis) const {
        return (vertex / strides_[axis]) % axes_[axis].size();
    }
    std::vector<double> vertex(std::size_t v) const {
        std::vector<double> p(dim());
        for (std::size_t k = 0; k < dim(); ++k) p[k] = axes_[k][knot_index(v, k)];
        return p;
    }
    double value(std::size_t v) const { return values_[v]; }

    // Every simplex as d+1 vertex indices, cell by cell, permutations in lexicographic order.
    std::vector<std::vector<std::size_t>> simplices() const {
        std::vector<std::vector<std::size_t>> out;
        const std::size_t d = dim();
        std::vector<std::size_t> cell(d, 0);
        for (std::size_t c = 0; c < num_cells(); ++c) {
            std::size_t rem = c;
            for (std::size_t k = 0; k < d; ++k) {
                cell[k] = rem % segments(k);
                rem /= segments(k);
            }
            std::vector<std::size_t> perm(d);
            std::iota(perm.begin(), perm.end(), 0);
            do {
                std::vector<std::size_t> idx(d);
                for (std::size_t k = 0; k < d; ++k) idx[k] = cell[k] + (cell[k] % 2);
                std::vector<std::size_t> s{flat(idx)};
                for (std::size_t m = 0; m < d; ++m) {
                    const std::size_t k = perm[m];
                    idx[k] = (cell[k] % 2) ? cell[k] : cell[k] + 1;
                    s.push_back(flat(idx));
                }
                out.push_back(std::move(s));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        return out;
    }

    Barycentric locate(std::span<const double> p) const {
        const std::size_t d = dim();
        if (p.size() != d) throw PwlError("point dimension does not match mesh");
        std::array<std::size_t, kMaxDim> cell{};
        std::array<double, kMaxDim> ur{};
        for (std::size_t k = 0; k < d; ++k) {
            const auto& a = axes_[k];
            const Interval iv{a.front(), a.back()};
            if (!iv.contains(p[k], domain_slack(iv))) throw OutOfDomain("point outside mesh domain");
            const double x = std::clamp(p[k], a.front(), a.back());
            const std::size_t s = locate_segment(a, x);
            cell[k] = s;
            double u = (x - a[s]) / (a[s + 1] - a[s]);
            u = std::clamp(u, 0.0, 1.0);
            ur[k] = (s % 2) ? 1.0 - u : u;
        }
        return from_local(cell, ur);
    }

    double evaluate(std::span<const double> p) const {
        const auto b = locate(p);
        double s = 0.0;
        for (std::size_t i = 0; i < b.count; ++i) s += b.weights[i] * values_[b.vertices[i]];
        return s;
    }

    // Evaluation from precomputed cell indices and reflected local coordinates.
    Barycentric from_local(const std::array<std::size_t, kMaxDim>& cell, const std::array<double, kMaxDim>& ur) const {
        const std::size_t d = dim();
        std::array<std::size_t, kMaxDim> order{0, 1, 2};
        std::stable_sort(order.begin(), order.begin() + static_cast<long>(d),
                         [&](std::size_t a, std::size_t b) { return ur[a] > ur[b]; });
        Barycentric b;
        std::size_t v = 0;
        for (std::size_t k = 0; k < d; ++k) v += (cell[k] + (cell[k] % 2)) * strides_[k];
        b.vertices[0] = v;
        b.weights[0] = 1.0 - ur[order[0]];
        for (std::size_t m = 0; m < d; ++m) {
            const std::size_t k = order[m];
            // Step to the far corner along axis k: +1 knot on even cells, -1 on odd.
            if (cell[k] % 2) v -= strides_[k];
            else v += strides_[k];
            b.vertices[m + 1] = v;
            b.weights[m + 1] = m + 1 < d ? ur[order[m]] - ur[order[m + 1]] : ur[order[m]];
        }
        b.count = d + 1;
        return b;
    }

private:
    std::size_t flat(const std::vector<std::size_t>& idx) const {
        std::size_t v = 0;
        for (std::size_t k = 0; k < idx.size(); ++k) v += idx[k] * strides_[k];
        return v;
    }

    std::vector<std::vector<double>> axes_;
    std::vector<double> values_;
    std::vector<std::size_t> strides_;
};

}  // namespace ptl::pwl
