#pragma once

#include "concord/rational.hpp"

#include <vector>

namespace concord {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational objective;
    std::vector<Rational> x;  // values of the original variables
};

/// Exact-arithmetic linear program over nonnegative variables. Inequality
/// rows get hidden slack columns; objectives and solutions are expressed
/// over the original variables only.
class LinearProgram {
public:
    explicit LinearProgram(int n_vars) : n_original_(n_vars), n_total_(n_vars) {}

    int n_vars() const { return n_original_; }

    void add_eq(std::vector<Rational> coeffs, Rational rhs);
    void add_le(std::vector<Rational> coeffs, Rational rhs);
    void add_ge(std::vector<Rational> coeffs, Rational rhs);

    /// Two-phase simplex with Bland's rule; never cycles, always exact.
    LpResult minimize(const std::vector<Rational>& objective) const;
    LpResult maximize(const std::vector<Rational>& objective) const;
    /// Feasibility check (phase 1 only).
    bool feasible() const;

private:
    struct Row {
        std::vector<Rational> a;  // dense over columns existing at insert time
        Rational b;
        int slack = -1;  // column index of this row's slack, +1/-1 coefficient
        Rational slack_coeff;
    };
    LpResult solve(std::vector<Rational> cost) const;

    int n_original_;
    int n_total_;
    std::vector<Row> rows_;
};

}  // namespace concord
