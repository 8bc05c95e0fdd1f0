#include "cfnl/assignment.hpp"

#include <algorithm>
#include <limits>

namespace cfnl::assignment {

Assignment solve_min(const Matrix& cost) {
    const std::size_t n = cost.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    // 1-based potentials; column 0 is a sentinel.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> row_of(n + 1, 0), way(n + 1, 0);

    for (std::size_t i = 1; i <= n; ++i) {
        row_of[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = row_of[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (row_of[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    Assignment a;
    a.col_for_row.assign(n, 0);
    for (std::size_t j = 1; j <= n; ++j)
        if (row_of[j] != 0) a.col_for_row[row_of[j] - 1] = j - 1;
    a.total = evaluate(cost, a.col_for_row);
    return a;
}

Assignment solve_max(const Matrix& weight) {
    const std::size_t n = weight.size();
    Matrix neg(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) neg(r, c) = -weight(r, c);
    Assignment a = solve_min(neg);
    a.total = evaluate(weight, a.col_for_row);
    return a;
}

double evaluate(const Matrix& m, const std::vector<std::size_t>& col_for_row) {
    double total = 0.0;
    for (std::size_t r = 0; r < col_for_row.size(); ++r) total += m(r, col_for_row[r]);
    return total;
}

bool is_permutation(const std::vector<std::size_t>& p, std::size_t n) {
    if (p.size() != n) return false;
    std::vector<char> seen(n, 0);
    for (std::size_t c : p) {
        if (c >= n || seen[c]) return false;
        seen[c] = 1;
    }
    return true;
}

}  // namespace cfnl::assignment
