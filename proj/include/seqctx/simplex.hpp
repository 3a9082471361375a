#pragma once

#include <vector>

#include "seqctx/errors.hpp"
#include "seqctx/rational.hpp"

namespace seqctx {

struct LPResult {
    Rational objective;
    std::vector<Rational> x;  // structural variables only
};

// Maximizes c.x subject to A x <= b, x >= 0, in exact rational arithmetic.
// Requires b >= 0 so the slack basis is feasible. Bland's rule (lowest
// eligible index enters, lowest-index basic variable leaves on ratio ties)
// makes the pivot sequence deterministic and cycle-free.
inline LPResult simplex_maximize(const std::vector<std::vector<Rational>>& A,
                                 const std::vector<Rational>& b, const std::vector<Rational>& c) {
    size_t m = A.size();
    size_t n = c.size();
    for (size_t i = 0; i < m; ++i) {
        if (A[i].size() != n) throw DimensionMismatch("LP constraint row length mismatch");
        if (b[i] < 0) throw InfeasibleModel("LP right-hand side must be nonnegative");
    }

    size_t cols = n + m + 1;  // structural, slack, rhs
    std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(cols, Rational(0)));
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) tab[i][j] = A[i][j];
        tab[i][n + i] = 1;
        tab[i][cols - 1] = b[i];
        basis[i] = n + i;
    }
    std::vector<Rational> z(cols, Rational(0));  // reduced costs; objective in last cell
    for (size_t j = 0; j < n; ++j) z[j] = -c[j];

    for (;;) {
        size_t enter = cols;
        for (size_t j = 0; j + 1 < cols; ++j) {
            if (z[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;

        size_t leave = m;
        Rational best_ratio;
        for (size_t i = 0; i < m; ++i) {
            if (tab[i][enter] <= 0) continue;
            Rational ratio = tab[i][cols - 1] / tab[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) throw Error("LP is unbounded");

        Rational pivot = tab[leave][enter];
        for (auto& v : tab[leave]) v /= pivot;
        for (size_t i = 0; i < m; ++i) {
            if (i == leave || tab[i][enter] == 0) continue;
            Rational factor = tab[i][enter];
            for (size_t j = 0; j < cols; ++j) tab[i][j] -= factor * tab[leave][j];
        }
        if (z[enter] != 0) {
            Rational factor = z[enter];
            for (size_t j = 0; j < cols; ++j) z[j] -= factor * tab[leave][j];
        }
        basis[leave] = enter;
    }

    LPResult out;
    out.objective = z[cols - 1];
    out.x.assign(n, Rational(0));
    for (size_t i = 0; i < m; ++i)
        if (basis[i] < n) out.x[basis[i]] = tab[i][cols - 1];
    return out;
}

}  // namespace seqctx
