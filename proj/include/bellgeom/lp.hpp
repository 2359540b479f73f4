#pragma once
// Dense two-phase simplex with Bland's rule, templated on the scalar field.
//
//   maximize c.x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  x_j <= upper_j,
//                       x_j >= 0 unless free_var[j].
//
// Works with double (tolerance 1e-10) and with exact fields (Rational, Quad<D>).

#include <optional>
#include <string>
#include <vector>

#include "bellgeom/exact.hpp"
#include "bellgeom/scenario.hpp"

namespace bellgeom {

enum class LpStatus { optimal, infeasible, unbounded, numerical_failure };
std::string to_string(LpStatus s);

template <class S>
struct LinearProgramT {
    Vec<S> c;
    Mat<S> A_eq;
    Vec<S> b_eq;
    Mat<S> A_ub;
    Vec<S> b_ub;
    std::vector<bool> free_var;
    std::vector<std::optional<S>> upper;

    LinearProgramT() = default;
    explicit LinearProgramT(int n)
        : c(Vec<S>::Zero(n)), A_eq(0, n), b_eq(0), A_ub(0, n), b_ub(0), free_var(n, false), upper(n) {}

    int num_vars() const { return int(c.size()); }

    void add_eq(const Vec<S>& row, const S& rhs) {
        A_eq.conservativeResize(A_eq.rows() + 1, num_vars());
        A_eq.row(A_eq.rows() - 1) = row.transpose();
        b_eq.conservativeResize(b_eq.size() + 1);
        b_eq[b_eq.size() - 1] = rhs;
    }
    void add_ub(const Vec<S>& row, const S& rhs) {
        A_ub.conservativeResize(A_ub.rows() + 1, num_vars());
        A_ub.row(A_ub.rows() - 1) = row.transpose();
        b_ub.conservativeResize(b_ub.size() + 1);
        b_ub[b_ub.size() - 1] = rhs;
    }
};
using LinearProgram = LinearProgramT<double>;

template <class S>
struct LpResultT {
    LpStatus status = LpStatus::numerical_failure;
    S optimum{};
    Vec<S> x;
    Vec<S> y_eq, y_ub, y_upper;  // dual multipliers
    S dual_objective{};
    double gap = 0;              // |primal - dual|
    double dual_infeasibility = 0;
    int iterations = 0;
    bool ok() const { return status == LpStatus::optimal; }
};
using LpResult = LpResultT<double>;

namespace detail {

template <class S>
bool lp_positive(const S& v, const S& eps) { return v > eps; }

template <class S>
class Tableau {
public:
    Tableau(int rows, int cols) : T(rows + 1, cols + 1), basis(rows, -1), m(rows), n(cols) {
        for (int i = 0; i <= rows; ++i)
            for (int j = 0; j <= cols; ++j) T(i, j) = S(0);
    }
    Mat<S> T;  // last row: reduced costs d_j = z_j - c_j, last column: rhs
    std::vector<int> basis;
    int m, n;

    S& d(int j) { return T(m, j); }
    S& rhs(int i) { return T(i, n); }

    void pivot(int r, int col) {
        S piv = T(r, col);
        for (int j = 0; j <= n; ++j)
            if (!is_zero(T(r, j), S(0))) T(r, j) /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == r) continue;
            S f = T(i, col);
            if (is_zero(f, S(0))) continue;
            for (int j = 0; j <= n; ++j)
                if (!is_zero(T(r, j), S(0))) T(i, j) -= f * T(r, j);
            T(i, col) = S(0);
        }
        basis[r] = col;
    }

    // Returns 0 optimal, 1 unbounded, 2 iteration limit.
    int run(const std::vector<bool>& allowed, const S& eps, int& iters) {
        const int limit = 200000;
        while (iters < limit) {
            int enter = -1;
            for (int j = 0; j < n; ++j)
                if (allowed[j] && T(m, j) < -eps) {
                    enter = j;
                    break;
                }
            if (enter < 0) return 0;
            int leave = -1;
            S best{};
            for (int i = 0; i < m; ++i) {
                if (!lp_positive(T(i, enter), eps)) continue;
                S ratio = T(i, n) / T(i, enter);
                if (leave < 0 || ratio < best || (!(best < ratio) && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return 1;
            pivot(leave, enter);
            ++iters;
        }
        return 2;
    }
};

}  // namespace detail

template <class S>
LpResultT<S> lp_solve(const LinearProgramT<S>& lp) {
    using detail::Tableau;
    const S eps = zero_tol<S>() * S(10);
    const int nv = lp.num_vars();
    const int n_eq = int(lp.A_eq.rows()), n_ub = int(lp.A_ub.rows());
    std::vector<int> up_idx;
    for (int j = 0; j < nv; ++j)
        if (lp.upper[j]) up_idx.push_back(j);
    const int n_up = int(up_idx.size());
    const int m = n_eq + n_ub + n_up;

    // standard-form columns: split free variables, then one slack per inequality
    std::vector<int> pos_col(nv), neg_col(nv, -1);
    int ncol = 0;
    for (int j = 0; j < nv; ++j) {
        pos_col[j] = ncol++;
        if (lp.free_var[j]) neg_col[j] = ncol++;
    }
    const int slack0 = ncol;
    ncol += n_ub + n_up;
    const int art0 = ncol;
    ncol += m;

    Tableau<S> tab(m, ncol);
    std::vector<int> row_sign(m, 1);
    auto set_row = [&](int i, auto coef, const S& b, int slack) {
        for (int j = 0; j < nv; ++j) {
            S v = coef(j);
            tab.T(i, pos_col[j]) = v;
            if (neg_col[j] >= 0) tab.T(i, neg_col[j]) = -v;
        }
        if (slack >= 0) tab.T(i, slack) = S(1);
        tab.T(i, ncol) = b;
        if (b < S(0)) {
            row_sign[i] = -1;
            for (int j = 0; j <= ncol; ++j) tab.T(i, j) = -tab.T(i, j);
        }
        tab.T(i, art0 + i) = S(1);
        tab.basis[i] = art0 + i;
    };
    for (int i = 0; i < n_eq; ++i) set_row(i, [&](int j) { return lp.A_eq(i, j); }, lp.b_eq[i], -1);
    for (int i = 0; i < n_ub; ++i)
        set_row(n_eq + i, [&](int j) { return lp.A_ub(i, j); }, lp.b_ub[i], slack0 + i);
    for (int k = 0; k < n_up; ++k)
        set_row(n_eq + n_ub + k, [&](int j) { return j == up_idx[k] ? S(1) : S(0); }, *lp.upper[up_idx[k]],
                slack0 + n_ub + k);

    LpResultT<S> res;
    // phase 1: maximize -sum(artificials)
    for (int j = 0; j <= ncol; ++j) {
        if (j >= art0 && j < ncol) continue;
        S acc(0);
        for (int i = 0; i < m; ++i) acc -= tab.T(i, j);
        tab.d(j) = acc;
    }
    std::vector<bool> allowed(ncol, true);
    int iters = 0;
    int code = tab.run(allowed, eps, iters);
    if (code == 2) {
        res.status = LpStatus::numerical_failure;
        return res;
    }
    if (tab.d(ncol) < -eps * S(std::max(1, m))) {
        res.status = LpStatus::infeasible;
        res.iterations = iters;
        return res;
    }
    // drive basic artificials out where possible
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] < art0) continue;
        int col = -1;
        S best(0);
        for (int j = 0; j < art0; ++j) {
            S v = s_abs(tab.T(i, j));
            if (v > eps && (col < 0 || v > best)) {
                col = j;
                best = v;
            }
        }
        if (col >= 0) tab.pivot(i, col);
    }
    // phase 2 objective, artificials barred from entering
    std::vector<S> cost(ncol, S(0));
    for (int j = 0; j < nv; ++j) {
        cost[pos_col[j]] = lp.c[j];
        if (neg_col[j] >= 0) cost[neg_col[j]] = -lp.c[j];
    }
    for (int j = 0; j <= ncol; ++j) {
        S acc(0);
        for (int i = 0; i < m; ++i) {
            const S& cb = cost[tab.basis[i]];
            if (!is_zero(cb, S(0)) && !is_zero(tab.T(i, j), S(0))) acc += cb * tab.T(i, j);
        }
        tab.d(j) = j < ncol ? acc - cost[j] : acc;
    }
    for (int j = art0; j < ncol; ++j) allowed[j] = false;
    code = tab.run(allowed, eps, iters);
    res.iterations = iters;
    if (code == 1) {
        res.status = LpStatus::unbounded;
        return res;
    }
    if (code == 2) {
        res.status = LpStatus::numerical_failure;
        return res;
    }

    Vec<S> xs = Vec<S>::Zero(ncol);
    for (int i = 0; i < m; ++i) xs[tab.basis[i]] = tab.rhs(i);
    res.x = Vec<S>::Zero(nv);
    for (int j = 0; j < nv; ++j) {
        res.x[j] = xs[pos_col[j]];
        if (neg_col[j] >= 0) res.x[j] -= xs[neg_col[j]];
    }
    res.optimum = S(0);
    for (int j = 0; j < nv; ++j) res.optimum += lp.c[j] * res.x[j];

    // y = c_B B^{-1}; the artificial block of the final tableau holds B^{-1}
    Vec<S> y(m);
    for (int i = 0; i < m; ++i) y[i] = row_sign[i] > 0 ? tab.d(art0 + i) : -tab.d(art0 + i);
    res.y_eq = y.head(n_eq);
    res.y_ub = y.segment(n_eq, n_ub);
    res.y_upper = y.tail(n_up);
    S dual(0);
    for (int i = 0; i < n_eq; ++i) dual += lp.b_eq[i] * res.y_eq[i];
    for (int i = 0; i < n_ub; ++i) dual += lp.b_ub[i] * res.y_ub[i];
    for (int k = 0; k < n_up; ++k) dual += *lp.upper[up_idx[k]] * res.y_upper[k];
    res.dual_objective = dual;
    res.gap = std::abs(to_double(res.optimum) - to_double(dual));

    // dual feasibility: A^T y >= c (= c for free variables), y_ub, y_upper >= 0
    double worst = 0;
    for (int j = 0; j < nv; ++j) {
        S col(0);
        for (int i = 0; i < n_eq; ++i) col += lp.A_eq(i, j) * res.y_eq[i];
        for (int i = 0; i < n_ub; ++i) col += lp.A_ub(i, j) * res.y_ub[i];
        for (int k = 0; k < n_up; ++k)
            if (up_idx[k] == j) col += res.y_upper[k];
        double r = to_double(col - lp.c[j]);
        worst = std::max(worst, lp.free_var[j] ? std::abs(r) : std::max(0.0, -r));
    }
    for (int i = 0; i < n_ub; ++i) worst = std::max(worst, std::max(0.0, -to_double(res.y_ub[i])));
    for (int k = 0; k < n_up; ++k) worst = std::max(worst, std::max(0.0, -to_double(res.y_upper[k])));
    res.dual_infeasibility = worst;
    res.status = LpStatus::optimal;
    return res;
}

// Lift a double LP into exact rationals (every double is a dyadic rational).
LinearProgramT<Rational> to_rational(const LinearProgram& lp);

// Log of every LP solved in this process: (gap, dual infeasibility) for audits.
struct LpAudit {
    long solved = 0;
    double worst_gap = 0;
    double worst_dual_infeasibility = 0;
};
LpAudit lp_audit();
void lp_audit_record(const LpResult& r);

// Double-precision entry point that records the audit.
LpResult solve(const LinearProgram& lp);

}  // namespace bellgeom
