#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptl::pwl {

class PwlError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class BudgetExceeded : public PwlError {
public:
    using PwlError::PwlError;
};
class DegenerateDomain : public PwlError {
public:
    using PwlError::PwlError;
};
class OutOfDomain : public PwlError {
public:
    using PwlError::PwlError;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    bool contains(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
};

using Box = std::vector<Interval>;

// Tolerance for domain membership, relative to the interval width.
inline double domain_slack(const Interval& iv) { return 1e-12 * std::max(1.0, std::abs(iv.lo) + std::abs(iv.hi)); }

// Index of the segment [k_s, k_{s+1}] containing x (last segment for the right end).
inline std::size_t locate_segment(const std::vector<double>& knots, double x) {
    auto it = std::upper_bound(knots.begin(), knots.end(), x);
    std::size_t s = it == knots.begin() ? 0 : static_cast<std::size_t>(it - knots.begin()) - 1;
    return std::min(s, knots.size() - 2);
}

class Breakpoints1D {
public:
    Breakpoints1D(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
        if (x_.size() < 2 || x_.size() != y_.size()) throw PwlError("breakpoints need at least two knots and matching values");
        for (std::size_t i = 1; i < x_.size(); ++i)
            if (!(x_[i] > x_[i - 1])) throw PwlError("breakpoint knots must be strictly ascending");
    }

    const std::vector<double>& knots() const { return x_; }
    const std::vector<double>& values() const { return y_; }
    std::size_t segments() const { return x_.size() - 1; }
    Interval domain() const { return {x_.front(), x_.back()}; }

    double slope(std::size_t s) const { return (y_[s + 1] - y_[s]) / (x_[s + 1] - x_[s]); }
    double intercept(std::size_t s) const { return y_[s] - slope(s) * x_[s]; }

    double evaluate(double x) const {
        if (!domain().contains(x, domain_slack(domain())))
            throw OutOfDomain("point " + std::to_string(x) + " outside breakpoint domain");
        x = std::clamp(x, x_.front(), x_.back());
        const std::size_t s = locate_segment(x_, x);
        if (x == x_[s]) return y_[s];
        if (x == x_[s + 1]) return y_[s + 1];
        const double w = (x - x_[s]) / (x_[s + 1] - x_[s]);
        return (1.0 - w) * y_[s] + w * y_[s + 1];
    }

    // Nondecreasing slopes within `tol` (relative to the slope magnitude).
    bool is_convex(double tol = 1e-9) const {
        for (std::size_t s = 1; s < segments(); ++s) {
            const double a = slope(s - 1), b = slope(s);
            if (b < a - tol * std::max(1.0, std::max(std::abs(a), std::abs(b)))) return false;
        }
        return true;
    }
    bool is_concave(double tol = 1e-9) const {
        for (std::size_t s = 1; s < segments(); ++s) {
            const double a = slope(s - 1), b = slope(s);
            if (b > a + tol * std::max(1.0, std::max(std::abs(a), std::abs(b)))) return false;
        }
        return true;
    }
    bool is_affine(double tol = 1e-9) const { return is_convex(tol) && is_concave(tol); }

private:
    std::vector<double> x_, y_;
};

}  // namespace ptl::pwl
