#include "efekit/simplex_lp.hpp"

#include "efekit/errors.hpp"

#include <cmath>
#include <limits>

namespace efekit {

namespace {

constexpr double kPivotTol = 1e-11;

struct Tableau {
    // rows 0..m-1: constraints; row m: objective reduced costs.
    // The rhs column stores b, and -objective in the cost row.
    std::vector<std::vector<double>> t;
    std::vector<std::size_t> basis;
    std::size_t m = 0;
    std::size_t n_total = 0;

    double& at(std::size_t r, std::size_t c) { return t[r][c]; }
    double rhs(std::size_t r) const { return t[r][n_total]; }

    void pivot(std::size_t row, std::size_t col) {
        double p = t[row][col];
        for (double& v : t[row]) v /= p;
        for (std::size_t r = 0; r < t.size(); ++r) {
            if (r == row) continue;
            double f = t[r][col];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c <= n_total; ++c) {
                t[r][c] -= f * t[row][c];
            }
        }
        basis[row] = col;
    }

    /// One simplex phase on the given cost row. Bland's rule: entering is
    /// the lowest eligible column index, leaving breaks ratio ties by the
    /// lowest basic variable index. Returns false on an unbounded ray.
    bool run(std::size_t cost_row, std::size_t max_col) {
        while (true) {
            std::size_t entering = n_total;
            for (std::size_t c = 0; c < max_col; ++c) {
                if (t[cost_row][c] < -kPivotTol) {
                    entering = c;
                    break;
                }
            }
            if (entering == n_total) return true;

            std::size_t leave = m;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < m; ++r) {
                if (t[r][entering] <= kPivotTol) continue;
                double ratio = rhs(r) / t[r][entering];
                if (ratio < best_ratio - 1e-15 ||
                    (std::abs(ratio - best_ratio) <= 1e-15 && leave < m &&
                     basis[r] < basis[leave])) {
                    best_ratio = ratio;
                    leave = r;
                }
            }
            if (leave == m) return false;
            pivot(leave, entering);
        }
    }
};

} // namespace

LpSolution solve_lp(const LpProblem& p) {
    std::size_t m = p.b.size();
    std::size_t n = p.c.size();
    if (p.e.rows() != m || p.e.cols() != n) {
        throw DimMismatchError("lp: matrix shape does not match b and c");
    }
    for (double v : p.b) {
        if (v < 0.0) {
            throw NegativeWeightError("lp: wants b >= 0");
        }
    }

    // Columns: n structural, then m artificials, then rhs.
    std::size_t n_total = n + m;
    Tableau tab;
    tab.m = m;
    tab.n_total = n_total;
    tab.t.assign(m + 2, std::vector<double>(n_total + 1, 0.0));
    tab.basis.assign(m, 0);

    const std::size_t kPhase2Row = m;
    const std::size_t kPhase1Row = m + 1;
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) tab.at(r, c) = p.e(r, c);
        tab.at(r, n + r) = 1.0;
        tab.at(r, n_total) = p.b[r];
        tab.basis[r] = n + r;
    }
    for (std::size_t c = 0; c < n; ++c) tab.at(kPhase2Row, c) = p.c[c];
    // Phase-1 reduced costs with the artificial basis priced out.
    for (std::size_t c = 0; c <= n_total; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < m; ++r) s += tab.at(r, c);
        tab.at(kPhase1Row, c) = (c >= n && c < n_total ? 1.0 : 0.0) - s;
    }

    LpSolution out;
    // Phase 1 drives the artificials to zero; all rows pivot together, so
    // the phase-2 cost row stays priced out.
    if (!tab.run(kPhase1Row, n_total)) {
        out.feasible = false;
        return out;
    }
    if (-tab.rhs(kPhase1Row) > 1e-9) {
        out.feasible = false;
        return out;
    }

    // Phase 2 over structural columns only; a degenerate artificial may
    // stay basic at level zero.
    out.feasible = true;
    out.bounded = tab.run(kPhase2Row, n);
    if (!out.bounded) return out;

    out.z.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        if (tab.basis[r] < n) out.z[tab.basis[r]] = tab.rhs(r);
    }
    out.objective = -tab.rhs(kPhase2Row);
    return out;
}

} // namespace efekit
