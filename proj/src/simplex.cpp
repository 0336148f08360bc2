#include "concord/simplex.hpp"

#include "concord/errors.hpp"

namespace concord {

void LinearProgram::add_eq(std::vector<Rational> coeffs, Rational rhs) {
    if (static_cast<int>(coeffs.size()) != n_original_) {
        throw InternalError("LP row width mismatch");
    }
    rows_.push_back(Row{std::move(coeffs), std::move(rhs), -1, Rational(0)});
}

void LinearProgram::add_le(std::vector<Rational> coeffs, Rational rhs) {
    add_eq(std::move(coeffs), std::move(rhs));
    rows_.back().slack = n_total_++;
    rows_.back().slack_coeff = 1;
}

void LinearProgram::add_ge(std::vector<Rational> coeffs, Rational rhs) {
    add_eq(std::move(coeffs), std::move(rhs));
    rows_.back().slack = n_total_++;
    rows_.back().slack_coeff = -1;
}

namespace {

struct Tableau {
    int m, n;                              // constraint rows, structural columns
    std::vector<std::vector<Rational>> t;  // m rows, n columns
    std::vector<Rational> rhs;             // m entries, kept >= 0
    std::vector<int> basis;                // m entries, column per row

    void pivot(int row, int col) {
        Rational p = t[row][col];
        for (int j = 0; j < n; ++j) t[row][j] /= p;
        rhs[row] /= p;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            Rational f = t[i][col];
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) t[i][j] -= f * t[row][j];
            rhs[i] -= f * rhs[row];
        }
        basis[row] = col;
    }

    /// Bland's rule; `allowed[j]` gates candidate entering columns.
    /// Returns true at optimum, false if unbounded.
    bool run(const std::vector<Rational>& cost, const std::vector<bool>& allowed) {
        for (;;) {
            // Reduced costs d_j = c_j - c_B . column_j on the current basis.
            int enter = -1;
            for (int j = 0; j < n && enter < 0; ++j) {
                if (!allowed[j]) continue;
                bool basic = false;
                for (int i = 0; i < m; ++i) {
                    if (basis[i] == j) {
                        basic = true;
                        break;
                    }
                }
                if (basic) continue;
                Rational d = cost[j];
                for (int i = 0; i < m; ++i) {
                    if (cost[basis[i]] != 0) d -= cost[basis[i]] * t[i][j];
                }
                if (d < 0) enter = j;
            }
            if (enter < 0) return true;
            int leave = -1;
            Rational best;
            for (int i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                Rational ratio = rhs[i] / t[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult LinearProgram::solve(std::vector<Rational> cost) const {
    int m = static_cast<int>(rows_.size());
    int n = n_total_;
    cost.resize(n, Rational(0));

    Tableau tab;
    tab.m = m;
    tab.n = n + m;  // structural + one artificial per row
    tab.t.assign(m, std::vector<Rational>(tab.n, Rational(0)));
    tab.rhs.resize(m);
    tab.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        const Row& r = rows_[i];
        for (size_t j = 0; j < r.a.size(); ++j) tab.t[i][j] = r.a[j];
        if (r.slack >= 0) tab.t[i][r.slack] = r.slack_coeff;
        tab.rhs[i] = r.b;
        if (tab.rhs[i] < 0) {
            for (int j = 0; j < n; ++j) tab.t[i][j] = -tab.t[i][j];
            tab.rhs[i] = -tab.rhs[i];
        }
        tab.t[i][n + i] = 1;
        tab.basis[i] = n + i;
    }

    // Phase 1: minimize the artificial mass.
    std::vector<Rational> phase1(tab.n, Rational(0));
    for (int i = 0; i < m; ++i) phase1[n + i] = 1;
    std::vector<bool> all(tab.n, true);
    if (!tab.run(phase1, all)) throw InternalError("phase-1 LP unbounded");
    Rational infeas = 0;
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] >= n) infeas += tab.rhs[i];
    }
    if (infeas != 0) return LpResult{LpStatus::Infeasible, Rational(0), {}};

    // Drive any zero-level artificials out of the basis.
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] < n) continue;
        int col = -1;
        for (int j = 0; j < n && col < 0; ++j) {
            if (tab.t[i][j] != 0) col = j;
        }
        if (col >= 0) tab.pivot(i, col);
        // else: redundant row; its artificial stays basic at level 0.
    }

    // Phase 2 over structural columns only.
    std::vector<Rational> phase2(tab.n, Rational(0));
    for (int j = 0; j < n; ++j) phase2[j] = cost[j];
    std::vector<bool> structural(tab.n, false);
    for (int j = 0; j < n; ++j) structural[j] = true;
    if (!tab.run(phase2, structural)) {
        return LpResult{LpStatus::Unbounded, Rational(0), {}};
    }

    LpResult out;
    out.status = LpStatus::Optimal;
    out.x.assign(n_original_, Rational(0));
    out.objective = 0;
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] < n_original_) out.x[tab.basis[i]] = tab.rhs[i];
        if (tab.basis[i] < n) out.objective += cost[tab.basis[i]] * tab.rhs[i];
    }
    return out;
}

LpResult LinearProgram::minimize(const std::vector<Rational>& objective) const {
    std::vector<Rational> c = objective;
    if (static_cast<int>(c.size()) != n_original_) throw InternalError("LP objective width");
    return solve(std::move(c));
}

LpResult LinearProgram::maximize(const std::vector<Rational>& objective) const {
    std::vector<Rational> c(objective);
    if (static_cast<int>(c.size()) != n_original_) throw InternalError("LP objective width");
    for (auto& v : c) v = -v;
    LpResult r = solve(std::move(c));
    if (r.status == LpStatus::Optimal) r.objective = -r.objective;
    return r;
}

bool LinearProgram::feasible() const {
    return minimize(std::vector<Rational>(n_original_, Rational(0))).status ==
           LpStatus::Optimal;
}

}  // namespace concord
