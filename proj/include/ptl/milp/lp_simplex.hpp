#pragma once

// Bounded-variable dual simplex over an explicit basis inverse.
//
// Rows are turned into ranged slacks (A x - s = 0, lo_r <= s <= hi_r), so the
// all-slack basis is always available. Every nonbasic column sits at a finite
// bound; infinite bounds are replaced by an artificial box which is checked on exit.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "ptl/milp/model.hpp"

namespace ptl::milp {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpOptions {
    double primal_tol = 1e-9;
    double dual_tol = 1e-9;
    double pivot_tol = 1e-7;
    std::size_t refactor_interval = 80;
    std::size_t max_iterations = 0;  // 0: derived from problem size
    double artificial_bound = 1e7;
    std::size_t stall_limit = 60;    // degenerate pivots before Bland's rule kicks in
};

struct LpBasis {
    std::vector<int> head;
    std::vector<std::uint8_t> state;
    bool empty() const { return head.empty(); }
};

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    double objective = 0.0;
    std::vector<double> x;  // structural columns only
    std::size_t iterations = 0;
};

class DualSimplex {
public:
    static constexpr std::uint8_t kBasic = 0;
    static constexpr std::uint8_t kLower = 1;
    static constexpr std::uint8_t kUpper = 2;

    explicit DualSimplex(const Model& model, LpOptions opts = {}) : opts_(opts) {
        n_ = model.num_variables();
        m_ = model.num_constraints();
        col_start_.assign(n_ + 1, 0);
        for (const auto& row : model.constraints())
            for (const auto& t : row.terms) ++col_start_[t.var + 1];
        for (std::size_t j = 0; j < n_; ++j) col_start_[j + 1] += col_start_[j];
        row_idx_.resize(col_start_[n_]);
        val_.resize(col_start_[n_]);
        std::vector<std::size_t> fill(col_start_.begin(), col_start_.end() - 1);
        for (std::size_t i = 0; i < m_; ++i) {
            for (const auto& t : model.constraints()[i].terms) {
                row_idx_[fill[t.var]] = static_cast<int>(i);
                val_[fill[t.var]++] = t.coef;
            }
        }
        lo_.resize(n_ + m_);
        hi_.resize(n_ + m_);
        cost_.assign(n_ + m_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) {
            lo_[j] = model.variable(j).lower;
            hi_[j] = model.variable(j).upper;
        }
        model_lo_.assign(lo_.begin(), lo_.begin() + static_cast<long>(n_));
        model_hi_.assign(hi_.begin(), hi_.begin() + static_cast<long>(n_));
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& row = model.constraints()[i];
            double l = -kInf, h = kInf;
            if (row.sense != Sense::greater_equal) h = row.rhs;
            if (row.sense != Sense::less_equal) l = row.rhs;
            lo_[n_ + i] = l;
            hi_[n_ + i] = h;
        }
        maximize_ = model.objective_sense() == ObjectiveSense::maximize;
        const auto obj = model.objective().normalized();
        obj_constant_ = obj.constant();
        for (const auto& t : obj.terms()) cost_[t.var] = maximize_ ? -t.coef : t.coef;
        equilibrate();
        reset_to_slack_basis();
    }

    std::size_t num_columns() const { return n_; }
    std::size_t num_rows() const { return m_; }

    void set_column_bounds(std::size_t j, double lo, double hi) {
        lo_[j] = lo / col_scale_[j];
        hi_[j] = hi / col_scale_[j];
        primal_dirty_ = true;
    }
    void reset_column_bounds() {
        for (std::size_t j = 0; j < n_; ++j) {
            lo_[j] = model_lo_[j];
            hi_[j] = model_hi_[j];
        }
        primal_dirty_ = true;
    }
    double column_lower(std::size_t j) const { return lo_[j] * col_scale_[j]; }
    double column_upper(std::size_t j) const { return hi_[j] * col_scale_[j]; }

    // Replace the objective (structural coefficients, minimization sense after `maximize`).
    void set_objective(const LinearExpr& expr, bool maximize) {
        std::fill(cost_.begin(), cost_.end(), 0.0);
        maximize_ = maximize;
        auto e = expr.normalized();
        obj_constant_ = e.constant();
        for (const auto& t : e.terms()) cost_[t.var] = (maximize ? -t.coef : t.coef) * col_scale_[t.var];
        duals_dirty_ = true;
    }

    LpBasis basis() const { return {head_, state_}; }

    void load_basis(const LpBasis& b) {
        if (b.empty() || b.head.size() != m_ || b.state.size() != n_ + m_) return;
        if (b.head == head_ && b.state == state_ && factor_valid_) return;
        head_ = b.head;
        state_ = b.state;
        factor_valid_ = false;
    }

    void reset_to_slack_basis() {
        head_.resize(m_);
        state_.assign(n_ + m_, kLower);
        for (std::size_t i = 0; i < m_; ++i) {
            head_[i] = static_cast<int>(n_ + i);
            state_[n_ + i] = kBasic;
        }
        for (std::size_t j = 0; j < n_; ++j) state_[j] = cost_[j] >= 0.0 ? kLower : kUpper;
        factor_valid_ = false;
    }

    LpResult solve() {
        LpResult res;
        const std::size_t max_iter =
            opts_.max_iterations ? opts_.max_iterations : std::max<std::size_t>(20000, 30 * (n_ + m_));
        for (std::size_t j = 0; j < n_ + m_; ++j) {
            if (lo_[j] > hi_[j] + opts_.primal_tol * std::max(1.0, std::abs(lo_[j]))) {
                res.status = LpStatus::infeasible;
                return res;
            }
        }
        if (!factor_valid_) {
            refactor();
        } else {
            if (duals_dirty_) compute_duals();
            fix_dual_infeasibilities();
            compute_primal();
        }
        std::size_t since_refactor = 0;
        std::size_t stall = 0;
        bool bland = false;
        bool retried = false;
        bool verified = false;
        double last_obj = dual_objective();
        std::vector<double> rho(m_), alpha_row(n_ + m_), alpha_col(m_);

        for (std::size_t iter = 0;; ++iter) {
            if (iter >= max_iter) {
                res.status = LpStatus::iteration_limit;
                res.iterations = iter;
                return res;
            }
            if (since_refactor >= opts_.refactor_interval) {
                refactor();
                since_refactor = 0;
            }
            int r = choose_leaving(bland);
            if (r < 0) {
                // Recompute duals and primal values from the current inverse before accepting.
                if (since_refactor > 0 && !verified) {
                    verified = true;
                    compute_duals();
                    fix_dual_infeasibilities();
                    compute_primal();
                    if (choose_leaving(bland) >= 0) continue;
                }
                res.iterations = iter;
                return finish(res);
            }
            const int leave = head_[static_cast<std::size_t>(r)];
            const double xb = x_[leave];
            const bool to_lower = xb < lo_[leave];
            const double target = to_lower ? lo_[leave] : hi_[leave];
            const double sgn = to_lower ? 1.0 : -1.0;

            std::copy_n(binv_.data() + static_cast<std::size_t>(r) * m_, m_, rho.begin());

            int q = choose_entering(rho, sgn, alpha_row, bland);
            if (q < 0) {
                if (!retried && since_refactor > 0) {
                    retried = true;
                    refactor();
                    since_refactor = 0;
                    continue;
                }
                res.status = LpStatus::infeasible;
                res.iterations = iter;
                return res;
            }
            retried = false;

            column_times_binv(static_cast<std::size_t>(q), alpha_col);
            const double arq = alpha_col[static_cast<std::size_t>(r)];
            if (std::abs(arq - alpha_row[q]) > 1e-7 * (1.0 + std::abs(arq)) || std::abs(arq) < opts_.pivot_tol) {
                refactor();
                since_refactor = 0;
                continue;
            }
            // Primal step.
            const double t = (xb - target) / arq;
            for (std::size_t i = 0; i < m_; ++i) x_[head_[i]] -= t * alpha_col[i];
            x_[q] += t;
            x_[leave] = target;
            // Dual step.
            const double theta = d_[q] / arq;
            if (theta != 0.0) {
                for (std::size_t j = 0; j < n_ + m_; ++j)
                    if (state_[j] != kBasic) d_[j] -= theta * alpha_row[j];
            }
            d_[leave] = -theta;
            d_[q] = 0.0;
            // Basis inverse update.
            const Eigen::RowVectorXd prow = binv_.row(r) / arq;
            for (std::size_t i = 0; i < m_; ++i)
                if (alpha_col[i] != 0.0 && static_cast<int>(i) != r) binv_.row(static_cast<long>(i)) -= alpha_col[i] * prow;
            binv_.row(r) = prow;

            head_[static_cast<std::size_t>(r)] = q;
            state_[q] = kBasic;
            state_[leave] = to_lower ? kLower : kUpper;
            ++since_refactor;

            double obj = dual_objective();
            if (obj > last_obj + 1e-12 * (1.0 + std::abs(last_obj))) {
                stall = 0;
                bland = false;
                last_obj = obj;
            } else if (++stall > opts_.stall_limit) {
                bland = true;
            }
        }
    }

private:
    // Geometric row and column scaling with power-of-two factors; the solver works on
    // x' = x / col_scale and row activities multiplied by row_scale.
    void equilibrate() {
        col_scale_.assign(n_, 1.0);
        row_scale_.assign(m_, 1.0);
        if (val_.empty()) return;
        std::vector<double> rmin(m_), rmax(m_);
        for (int pass = 0; pass < 6; ++pass) {
            std::fill(rmin.begin(), rmin.end(), kInf);
            std::fill(rmax.begin(), rmax.end(), 0.0);
            for (std::size_t j = 0; j < n_; ++j)
                for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) {
                    const double a = std::abs(val_[k]) * col_scale_[j];
                    if (a == 0.0) continue;
                    rmin[row_idx_[k]] = std::min(rmin[row_idx_[k]], a);
                    rmax[row_idx_[k]] = std::max(rmax[row_idx_[k]], a);
                }
            for (std::size_t i = 0; i < m_; ++i)
                row_scale_[i] = rmax[i] > 0.0 ? 1.0 / std::sqrt(rmin[i] * rmax[i]) : 1.0;
            for (std::size_t j = 0; j < n_; ++j) {
                double lo = kInf, hi = 0.0;
                for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) {
                    const double a = std::abs(val_[k]) * row_scale_[row_idx_[k]];
                    if (a == 0.0) continue;
                    lo = std::min(lo, a);
                    hi = std::max(hi, a);
                }
                col_scale_[j] = hi > 0.0 ? 1.0 / std::sqrt(lo * hi) : 1.0;
            }
        }
        auto pow2 = [](double v) { return std::exp2(std::round(std::log2(v))); };
        for (auto& v : row_scale_) v = pow2(v);
        for (auto& v : col_scale_) v = pow2(v);
        for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) val_[k] *= row_scale_[row_idx_[k]] * col_scale_[j];
            lo_[j] /= col_scale_[j];
            hi_[j] /= col_scale_[j];
            cost_[j] *= col_scale_[j];
        }
        for (std::size_t i = 0; i < m_; ++i) {
            lo_[n_ + i] *= row_scale_[i];
            hi_[n_ + i] *= row_scale_[i];
        }
        model_lo_.assign(lo_.begin(), lo_.begin() + static_cast<long>(n_));
        model_hi_.assign(hi_.begin(), hi_.begin() + static_cast<long>(n_));
    }

    double elo(std::size_t j) const { return std::isfinite(lo_[j]) ? lo_[j] : -opts_.artificial_bound; }
    double ehi(std::size_t j) const { return std::isfinite(hi_[j]) ? hi_[j] : opts_.artificial_bound; }
    bool fixed(std::size_t j) const { return lo_[j] == hi_[j]; }

    double dual_objective() const {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += cost_[j] * x_[j];
        return s;
    }

    double primal_tol(double bound) const { return opts_.primal_tol * std::max(1.0, std::abs(bound)); }

    int choose_leaving(bool bland) const {
        int best = -1;
        double best_val = 0.0;
        int best_var = std::numeric_limits<int>::max();
        for (std::size_t i = 0; i < m_; ++i) {
            const int b = head_[i];
            double inf = 0.0;
            if (x_[b] < lo_[b] - primal_tol(lo_[b]))
                inf = lo_[b] - x_[b];
            else if (x_[b] > hi_[b] + primal_tol(hi_[b]))
                inf = x_[b] - hi_[b];
            if (inf <= 0.0) continue;
            if (bland) {
                if (b < best_var) {
                    best_var = b;
                    best = static_cast<int>(i);
                }
            } else if (inf > best_val) {
                best_val = inf;
                best = static_cast<int>(i);
            }
        }
        return best;
    }

    int choose_entering(const std::vector<double>& rho, double sgn, std::vector<double>& alpha,
                        bool bland) const {
        // alpha_j = rho . column_j for nonbasic j
        for (std::size_t j = 0; j < n_; ++j) {
            if (state_[j] == kBasic || fixed(j)) {
                alpha[j] = 0.0;
                continue;
            }
            double s = 0.0;
            for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) s += rho[row_idx_[k]] * val_[k];
            alpha[j] = s;
        }
        for (std::size_t i = 0; i < m_; ++i) {
            const std::size_t j = n_ + i;
            alpha[j] = (state_[j] == kBasic || fixed(j)) ? 0.0 : -rho[i];
        }
        auto eligible = [&](std::size_t j) {
            if (state_[j] == kBasic || fixed(j)) return false;
            const double a = sgn * alpha[j];
            if (state_[j] == kLower) return a < -opts_.pivot_tol;
            return a > opts_.pivot_tol;
        };
        double theta_max = kInf;
        for (std::size_t j = 0; j < n_ + m_; ++j) {
            if (!eligible(j)) continue;
            const double ratio = (std::abs(d_[j]) + opts_.dual_tol) / std::abs(alpha[j]);
            theta_max = std::min(theta_max, ratio);
        }
        if (!std::isfinite(theta_max)) return -1;
        double amax = 0.0;
        for (std::size_t j = 0; j < n_ + m_; ++j)
            if (eligible(j) && std::abs(d_[j]) / std::abs(alpha[j]) <= theta_max) amax = std::max(amax, std::abs(alpha[j]));
        // Bland mode: lowest index among candidates with a usable pivot.
        int q = -1;
        double best = -1.0;
        for (std::size_t j = 0; j < n_ + m_; ++j) {
            if (!eligible(j)) continue;
            const double ratio = std::abs(d_[j]) / std::abs(alpha[j]);
            if (ratio > theta_max) continue;
            if (bland) {
                if (std::abs(alpha[j]) >= 1e-3 * amax) return static_cast<int>(j);
            } else if (std::abs(alpha[j]) > best) {
                best = std::abs(alpha[j]);
                q = static_cast<int>(j);
            }
        }
        return q;
    }

    void column_times_binv(std::size_t q, std::vector<double>& out) const {
        std::fill(out.begin(), out.end(), 0.0);
        if (q < n_) {
            for (std::size_t i = 0; i < m_; ++i) {
                const double* row = binv_.data() + i * m_;
                double sum = 0.0;
                for (std::size_t k = col_start_[q]; k < col_start_[q + 1]; ++k) sum += row[row_idx_[k]] * val_[k];
                out[i] = sum;
            }
        } else {
            const long c = static_cast<long>(q - n_);
            for (std::size_t i = 0; i < m_; ++i) out[i] = -binv_(static_cast<long>(i), c);
        }
    }

    void refactor() {
        for (int attempt = 0; attempt < 2; ++attempt) {
            if (m_ == 0) {
                binv_.resize(0, 0);
                break;
            }
            if (invert_basis()) break;
            if (attempt == 0) {
                repair_basis(dense_basis());
                continue;
            }
            // Repair was not enough: restart from the all-slack basis.
            reset_to_slack_basis();
            binv_ = -Eigen::MatrixXd::Identity(static_cast<long>(m_), static_cast<long>(m_));
        }
        factor_valid_ = true;
        compute_duals();
        fix_dual_infeasibilities();
        compute_primal();
    }

    Eigen::MatrixXd dense_basis() const {
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(static_cast<long>(m_), static_cast<long>(m_));
        for (std::size_t i = 0; i < m_; ++i) {
            const int j = head_[i];
            if (static_cast<std::size_t>(j) < n_) {
                for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) B(row_idx_[k], static_cast<long>(i)) = val_[k];
            } else {
                B(static_cast<long>(j - static_cast<int>(n_)), static_cast<long>(i)) = -1.0;
            }
        }
        return B;
    }

    // Inverts the basis through its structural kernel: with basic slacks covering some rows,
    // B = [[K, 0], [L, -I]] after permutation, so only K (rows without a basic slack) is
    // factorized. Returns false when K is numerically singular.
    bool invert_basis() {
        std::vector<long> slack_pos(m_, -1);
        std::vector<std::size_t> structural;
        for (std::size_t i = 0; i < m_; ++i) {
            const auto j = static_cast<std::size_t>(head_[i]);
            if (j < n_) structural.push_back(i);
            else slack_pos[j - n_] = static_cast<long>(i);
        }
        std::vector<long> kernel_row(m_, -1);
        std::vector<std::size_t> uncovered;
        for (std::size_t r = 0; r < m_; ++r)
            if (slack_pos[r] < 0) {
                kernel_row[r] = static_cast<long>(uncovered.size());
                uncovered.push_back(r);
            }
        const auto k = static_cast<long>(structural.size());
        if (static_cast<long>(uncovered.size()) != k) return false;
        binv_.setZero(static_cast<long>(m_), static_cast<long>(m_));
        for (std::size_t r = 0; r < m_; ++r)
            if (slack_pos[r] >= 0) binv_(slack_pos[r], static_cast<long>(r)) = -1.0;
        if (k == 0) return true;
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(k, k);
        for (long b = 0; b < k; ++b) {
            const auto j = static_cast<std::size_t>(head_[structural[static_cast<std::size_t>(b)]]);
            for (std::size_t e = col_start_[j]; e < col_start_[j + 1]; ++e)
                if (kernel_row[row_idx_[e]] >= 0) K(kernel_row[row_idx_[e]], b) = val_[e];
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(K);
        if (!(lu.rcond() >= 1e-12)) return false;
        const Eigen::MatrixXd Kinv = lu.inverse();
        if (!Kinv.allFinite()) return false;
        // Rows of structural positions: K^-1 on the uncovered columns.
        for (long b = 0; b < k; ++b) {
            const long pos = static_cast<long>(structural[static_cast<std::size_t>(b)]);
            for (long a = 0; a < k; ++a) binv_(pos, static_cast<long>(uncovered[static_cast<std::size_t>(a)])) = Kinv(b, a);
        }
        // Rows of slack positions: (L K^-1) on the uncovered columns.
        for (long b = 0; b < k; ++b) {
            const auto j = static_cast<std::size_t>(head_[structural[static_cast<std::size_t>(b)]]);
            for (std::size_t e = col_start_[j]; e < col_start_[j + 1]; ++e) {
                const long pos = slack_pos[row_idx_[e]];
                if (pos < 0) continue;
                const double v = val_[e];
                for (long a = 0; a < k; ++a)
                    binv_(pos, static_cast<long>(uncovered[static_cast<std::size_t>(a)])) += v * Kinv(b, a);
            }
        }
        return true;
    }

    // Swap dependent basic columns for slacks of uncovered rows.
    void repair_basis(const Eigen::MatrixXd& B) {
        Eigen::MatrixXd W = B;
        std::vector<bool> row_used(m_, false);
        std::vector<bool> col_ok(m_, false);
        for (std::size_t c = 0; c < m_; ++c) {
            long piv = -1;
            double best = 1e-9;
            for (std::size_t i = 0; i < m_; ++i) {
                if (row_used[i]) continue;
                if (std::abs(W(static_cast<long>(i), static_cast<long>(c))) > best) {
                    best = std::abs(W(static_cast<long>(i), static_cast<long>(c)));
                    piv = static_cast<long>(i);
                }
            }
            if (piv < 0) continue;
            row_used[static_cast<std::size_t>(piv)] = true;
            col_ok[c] = true;
            const double p = W(piv, static_cast<long>(c));
            for (std::size_t c2 = c + 1; c2 < m_; ++c2) {
                const double f = W(piv, static_cast<long>(c2)) / p;
                if (f == 0.0) continue;
                W.col(static_cast<long>(c2)) -= f * W.col(static_cast<long>(c));
            }
        }
        std::size_t next_row = 0;
        for (std::size_t c = 0; c < m_; ++c) {
            if (col_ok[c]) continue;
            while (row_used[next_row]) ++next_row;
            row_used[next_row] = true;
            const int old = head_[c];
            state_[old] = (std::isfinite(lo_[old]) || !std::isfinite(hi_[old])) ? kLower : kUpper;
            head_[c] = static_cast<int>(n_ + next_row);
            state_[n_ + next_row] = kBasic;
        }
    }

    void compute_duals() {
        d_.assign(n_ + m_, 0.0);
        Eigen::VectorXd cb(static_cast<long>(m_));
        for (std::size_t i = 0; i < m_; ++i) cb[static_cast<long>(i)] = cost_[head_[i]];
        Eigen::VectorXd y = binv_.transpose() * cb;
        for (std::size_t j = 0; j < n_; ++j) {
            if (state_[j] == kBasic) continue;
            double s = cost_[j];
            for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) s -= y[row_idx_[k]] * val_[k];
            d_[j] = s;
        }
        for (std::size_t i = 0; i < m_; ++i)
            if (state_[n_ + i] != kBasic) d_[n_ + i] = y[static_cast<long>(i)];
        duals_dirty_ = false;
    }

    void fix_dual_infeasibilities() {
        for (std::size_t j = 0; j < n_ + m_; ++j) {
            if (state_[j] == kBasic) continue;
            if (fixed(j)) {
                state_[j] = kLower;
                continue;
            }
            if (state_[j] == kLower && d_[j] < -opts_.dual_tol) state_[j] = kUpper;
            else if (state_[j] == kUpper && d_[j] > opts_.dual_tol) state_[j] = kLower;
        }
    }

    void compute_primal() {
        x_.assign(n_ + m_, 0.0);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<long>(m_));
        for (std::size_t j = 0; j < n_ + m_; ++j) {
            if (state_[j] == kBasic) continue;
            const double v = state_[j] == kLower ? elo(j) : ehi(j);
            x_[j] = v;
            if (v == 0.0) continue;
            if (j < n_) {
                for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) rhs[row_idx_[k]] -= val_[k] * v;
            } else {
                rhs[static_cast<long>(j - n_)] += v;
            }
        }
        Eigen::VectorXd xb = binv_ * rhs;
        for (std::size_t i = 0; i < m_; ++i) x_[head_[i]] = xb[static_cast<long>(i)];
        primal_dirty_ = false;
    }

    LpResult& finish(LpResult& res) {
        for (std::size_t j = 0; j < n_ + m_; ++j) {
            if (state_[j] == kBasic) continue;
            const bool artificial = (state_[j] == kLower && !std::isfinite(lo_[j])) ||
                                    (state_[j] == kUpper && !std::isfinite(hi_[j]));
            if (artificial && std::abs(d_[j]) > opts_.dual_tol) {
                res.status = LpStatus::unbounded;
                return res;
            }
        }
        res.status = LpStatus::optimal;
        res.x.assign(x_.begin(), x_.begin() + static_cast<long>(n_));
        for (std::size_t j = 0; j < n_; ++j) res.x[j] *= col_scale_[j];
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += cost_[j] * x_[j];
        res.objective = (maximize_ ? -s : s) + obj_constant_;
        return res;
    }

    LpOptions opts_;
    std::size_t n_ = 0, m_ = 0;
    std::vector<std::size_t> col_start_;
    std::vector<int> row_idx_;
    std::vector<double> val_;
    std::vector<double> lo_, hi_, cost_, model_lo_, model_hi_;
    std::vector<double> col_scale_, row_scale_;
    std::vector<double> x_, d_;
    std::vector<int> head_;
    std::vector<std::uint8_t> state_;
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> binv_;
    bool factor_valid_ = false;
    bool primal_dirty_ = true;
    bool duals_dirty_ = true;
    bool maximize_ = false;
    double obj_constant_ = 0.0;
};

}  // namespace ptl::milp
