#pragma once

#include <cstddef>
#include <vector>

#include "bellpoly/errors.hpp"

namespace bellpoly {

enum class FeasibilityStatus { Feasible, Infeasible };

template <class S>
struct FeasibilityResult {
    FeasibilityStatus status;
    S objective;              // phase-1 optimum: total artificial mass left
    std::vector<S> solution;  // structural variable values (basic solution)
    std::vector<S> dual;      // y per original row; Farkas vector when infeasible
    std::size_t iterations = 0;
};

/// Decides feasibility of  A x = b, x >= 0  by a phase-1 simplex over a
/// dense tableau: minimize the sum of artificial variables with Bland's
/// anti-cycling rule. With S = Rational and zero tolerances the run is
/// exact. On infeasible systems the dual values y satisfy A^T y <= 0 and
/// b^T y = objective > 0, i.e. y is a Farkas certificate.
///
/// `entering_tol`: a column enters only if its reduced cost < -entering_tol.
/// `pivot_tol`: a tableau entry counts as positive if > pivot_tol.
/// `feasible_tol`: the system is declared feasible if the optimum <= this.
template <class S>
FeasibilityResult<S> solve_equality_feasibility(
    const std::vector<std::vector<S>>& a, const std::vector<S>& b,
    const S& entering_tol, const S& pivot_tol, const S& feasible_tol) {
    const std::size_t m = a.size();
    if (b.size() != m) throw ShapeError("rhs length does not match row count");
    const std::size_t k = m == 0 ? 0 : a[0].size();
    for (const auto& row : a) {
        if (row.size() != k) throw ShapeError("ragged constraint matrix");
    }

    // Tableau columns: k structural, m artificial, 1 rhs.
    const std::size_t cols = k + m + 1;
    const std::size_t rhs = k + m;
    std::vector<std::vector<S>> t(m, std::vector<S>(cols, S(0)));
    std::vector<bool> flipped(m, false);

    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = b[i] < S(0);
        flipped[i] = flip;
        for (std::size_t j = 0; j < k; ++j) t[i][j] = flip ? -a[i][j] : a[i][j];
        t[i][k + i] = S(1);
        t[i][rhs] = flip ? -b[i] : b[i];
    }

    // Reduced-cost row for min sum(artificials): rc_j = c_j - sum_i t[i][j]
    // with c = (0...0, 1...1). Objective value = sum of rhs.
    std::vector<S> rc(cols, S(0));
    for (std::size_t j = 0; j < k; ++j) {
        S s(0);
        for (std::size_t i = 0; i < m; ++i) s += t[i][j];
        rc[j] = -s;
    }
    S objective(0);
    for (std::size_t i = 0; i < m; ++i) objective += t[i][rhs];

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = k + i;

    FeasibilityResult<S> result;
    const std::size_t max_iterations = 2000 * (m + k + 1);

    while (true) {
        // Bland: entering column = smallest index with negative reduced cost.
        std::size_t enter = cols;
        for (std::size_t j = 0; j < k + m; ++j) {
            if (rc[j] < -entering_tol) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;

        // Ratio test; ties broken by smallest basic variable index.
        std::size_t leave = m;
        S best_ratio(0);
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= pivot_tol) continue;
            const S ratio = t[i][rhs] / t[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) {
            // The phase-1 objective is bounded below by zero; an unbounded
            // ray here means the tableau went numerically bad.
            throw Error("phase-1 simplex found an unbounded direction");
        }

        // Pivot on (leave, enter).
        const S pivot = t[leave][enter];
        for (std::size_t j = 0; j < cols; ++j) t[leave][j] /= pivot;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            const S factor = t[i][enter];
            if (factor == S(0)) continue;
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= factor * t[leave][j];
        }
        const S rc_factor = rc[enter];
        if (rc_factor != S(0)) {
            for (std::size_t j = 0; j < cols; ++j) rc[j] -= rc_factor * t[leave][j];
        }
        basis[leave] = enter;

        objective = S(0);
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] >= k) objective += t[i][rhs];
        }

        if (++result.iterations > max_iterations) {
            throw Error("phase-1 simplex exceeded its iteration budget");
        }
    }

    result.objective = objective;
    result.status = objective <= feasible_tol ? FeasibilityStatus::Feasible
                                              : FeasibilityStatus::Infeasible;

    result.solution.assign(k, S(0));
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < k) result.solution[basis[i]] = t[i][rhs];
    }

    // Simplex multipliers from the artificial columns: rc_{k+i} = 1 - y_i.
    // Undo the row sign normalization.
    result.dual.assign(m, S(0));
    for (std::size_t i = 0; i < m; ++i) {
        const S y = S(1) - rc[k + i];
        result.dual[i] = flipped[i] ? -y : y;
    }
    return result;
}

}  // namespace bellpoly
