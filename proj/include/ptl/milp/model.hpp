#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ptl::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class VarType { continuous, binary };
enum class Sense { less_equal, greater_equal, equal };
enum class ObjectiveSense { minimize, maximize };

struct VarId {
    std::size_t index = 0;
    friend bool operator==(VarId, VarId) = default;
};

struct RowId {
    std::size_t index = 0;
};

struct Term {
    std::size_t var;
    double coef;
};

// Sparse affine expression. Terms are kept unmerged until normalized.
class LinearExpr {
public:
    LinearExpr() = default;
    LinearExpr(double constant) : constant_(constant) {}
    LinearExpr(VarId v) { terms_.push_back({v.index, 1.0}); }

    LinearExpr& add(VarId v, double coef) {
        if (coef != 0.0) terms_.push_back({v.index, coef});
        return *this;
    }
    LinearExpr& add(const LinearExpr& e, double scale = 1.0) {
        for (const auto& t : e.terms_) terms_.push_back({t.var, t.coef * scale});
        constant_ += e.constant_ * scale;
        return *this;
    }
    LinearExpr& operator+=(const LinearExpr& e) { return add(e, 1.0); }
    LinearExpr& operator-=(const LinearExpr& e) { return add(e, -1.0); }
    LinearExpr& operator*=(double s) {
        for (auto& t : terms_) t.coef *= s;
        constant_ *= s;
        return *this;
    }

    friend LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
    friend LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
    friend LinearExpr operator*(LinearExpr a, double s) { return a *= s; }
    friend LinearExpr operator*(double s, LinearExpr a) { return a *= s; }
    friend LinearExpr operator-(LinearExpr a) { return a *= -1.0; }

    double constant() const { return constant_; }
    void set_constant(double c) { constant_ = c; }
    const std::vector<Term>& terms() const { return terms_; }

    // Merge duplicate variables and drop zeros; order by variable index.
    LinearExpr normalized() const {
        LinearExpr out;
        out.constant_ = constant_;
        auto t = terms_;
        std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
        for (const auto& term : t) {
            if (!out.terms_.empty() && out.terms_.back().var == term.var)
                out.terms_.back().coef += term.coef;
            else
                out.terms_.push_back(term);
        }
        std::erase_if(out.terms_, [](const Term& x) { return x.coef == 0.0; });
        return out;
    }

    double evaluate(const std::vector<double>& values) const {
        double s = constant_;
        for (const auto& t : terms_) s += t.coef * values.at(t.var);
        return s;
    }

private:
    std::vector<Term> terms_;
    double constant_ = 0.0;
};

struct Variable {
    std::string name;
    double lower = 0.0;
    double upper = kInf;
    VarType type = VarType::continuous;
    int priority = 0;  // higher values are branched first
};

struct Constraint {
    std::string name;
    std::vector<Term> terms;  // merged, sorted by variable
    Sense sense = Sense::less_equal;
    double rhs = 0.0;
};

class Model {
public:
    VarId add_variable(std::string name, double lower, double upper,
                       VarType type = VarType::continuous, int priority = 0) {
        if (std::isnan(lower) || std::isnan(upper))
            throw ModelError("variable '" + name + "': NaN bound");
        if (lower == kInf || upper == -kInf)
            throw ModelError("variable '" + name + "': bound on the wrong side of infinity");
        if (type == VarType::binary) {
            lower = std::max(lower, 0.0);
            upper = std::min(upper, 1.0);
        }
        if (var_index_.contains(name)) throw ModelError("duplicate variable name '" + name + "'");
        var_index_.emplace(name, vars_.size());
        vars_.push_back({std::move(name), lower, upper, type, priority});
        return VarId{vars_.size() - 1};
    }

    VarId add_binary(std::string name, int priority = 0) {
        return add_variable(std::move(name), 0.0, 1.0, VarType::binary, priority);
    }

    // The expression constant is moved to the right-hand side.
    RowId add_constraint(std::string name, const LinearExpr& expr, Sense sense, double rhs) {
        if (!std::isfinite(rhs)) throw ModelError("constraint '" + name + "': nonfinite rhs");
        if (row_index_.contains(name)) throw ModelError("duplicate constraint name '" + name + "'");
        auto e = expr.normalized();
        for (const auto& t : e.terms()) {
            if (t.var >= vars_.size())
                throw ModelError("constraint '" + name + "' references unknown variable #" +
                                 std::to_string(t.var));
            if (!std::isfinite(t.coef))
                throw ModelError("constraint '" + name + "': nonfinite coefficient");
        }
        if (!std::isfinite(e.constant())) throw ModelError("constraint '" + name + "': nonfinite constant");
        row_index_.emplace(name, rows_.size());
        rows_.push_back({std::move(name), e.terms(), sense, rhs - e.constant()});
        return RowId{rows_.size() - 1};
    }

    void set_objective(ObjectiveSense sense, const LinearExpr& expr) {
        auto e = expr.normalized();
        for (const auto& t : e.terms()) {
            if (t.var >= vars_.size())
                throw ModelError("objective references unknown variable #" + std::to_string(t.var));
            if (!std::isfinite(t.coef)) throw ModelError("objective: nonfinite coefficient");
        }
        if (!std::isfinite(e.constant())) throw ModelError("objective: nonfinite constant");
        obj_sense_ = sense;
        objective_ = std::move(e);
    }

    void set_bounds(VarId v, double lower, double upper) {
        auto& var = vars_.at(v.index);
        var.lower = lower;
        var.upper = upper;
    }

    void set_priority(VarId v, int priority) { vars_.at(v.index).priority = priority; }

    std::size_t num_variables() const { return vars_.size(); }
    std::size_t num_constraints() const { return rows_.size(); }
    std::size_t num_binaries() const {
        return static_cast<std::size_t>(std::count_if(
            vars_.begin(), vars_.end(), [](const Variable& v) { return v.type == VarType::binary; }));
    }

    const Variable& variable(VarId v) const { return vars_.at(v.index); }
    const Variable& variable(std::size_t i) const { return vars_.at(i); }
    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<Constraint>& constraints() const { return rows_; }
    const LinearExpr& objective() const { return objective_; }
    ObjectiveSense objective_sense() const { return obj_sense_; }

    VarId find_variable(const std::string& name) const {
        auto it = var_index_.find(name);
        if (it == var_index_.end()) throw ModelError("unknown variable '" + name + "'");
        return VarId{it->second};
    }
    bool has_variable(const std::string& name) const { return var_index_.contains(name); }

    // Checked at solve/export time.
    void validate() const {
        for (const auto& v : vars_) {
            if (v.type == VarType::binary && !(std::isfinite(v.lower) && std::isfinite(v.upper)))
                throw ModelError("binary variable '" + v.name + "' without finite bounds");
        }
    }

private:
    std::vector<Variable> vars_;
    std::vector<Constraint> rows_;
    LinearExpr objective_;
    ObjectiveSense obj_sense_ = ObjectiveSense::minimize;
    std::unordered_map<std::string, std::size_t> var_index_;
    std::unordered_map<std::string, std::size_t> row_index_;
};

struct Violation {
    std::string what;
    double amount = 0.0;
};

// Independent row-by-row check of an assignment: bounds, integrality and rows.
inline std::vector<Violation> check_assignment(const Model& model, const std::vector<double>& x,
                                               double tol = 1e-6) {
    std::vector<Violation> out;
    if (x.size() != model.num_variables()) {
        out.push_back({"assignment size mismatch", kInf});
        return out;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        const auto& v = model.variable(j);
        if (x[j] < v.lower - tol) out.push_back({"lower bound of " + v.name, v.lower - x[j]});
        if (x[j] > v.upper + tol) out.push_back({"upper bound of " + v.name, x[j] - v.upper});
        if (v.type == VarType::binary && std::abs(x[j] - std::round(x[j])) > tol)
            out.push_back({"integrality of " + v.name, std::abs(x[j] - std::round(x[j]))});
    }
    for (const auto& row : model.constraints()) {
        double lhs = 0.0;
        for (const auto& t : row.terms) lhs += t.coef * x[t.var];
        double viol = 0.0;
        switch (row.sense) {
        case Sense::less_equal: viol = lhs - row.rhs; break;
        case Sense::greater_equal: viol = row.rhs - lhs; break;
        case Sense::equal: viol = std::abs(lhs - row.rhs); break;
        }
        if (viol > tol) out.push_back({"row " + row.name, viol});
    }
    return out;
}

}  // namespace ptl::milp
