#ifndef REINHARDT_VERTEX_ORACLE_HPP
#define REINHARDT_VERTEX_ORACLE_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

// Brute-force LP oracle: maximize <c, x> over {a_i . x <= b_i} by visiting
// every vertex (every nonsingular choice of n tight constraints). Only valid
// when the region is pointed and the optimum is attained.
namespace vertex_oracle
{

struct Row {
    std::vector<double> a;
    double b;
};

// Solves the square system by Gaussian elimination with partial pivoting.
inline std::optional<std::vector<double>> solve(std::vector<std::vector<double>> m, std::vector<double> rhs)
{
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) {
                piv = r;
            }
        }
        if (std::abs(m[piv][col]) < 1e-10) {
            return std::nullopt;
        }
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) {
                continue;
            }
            const double f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) {
                m[r][c] -= f * m[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = rhs[i] / m[i][i];
    }
    return x;
}

inline void subsets(std::size_t m, std::size_t k, std::size_t start, std::vector<std::size_t> &cur,
                    const auto &visit)
{
    if (cur.size() == k) {
        visit(cur);
        return;
    }
    for (std::size_t i = start; i < m; ++i) {
        cur.push_back(i);
        subsets(m, k, i + 1, cur, visit);
        cur.pop_back();
    }
}

// -inf when no vertex is feasible.
inline double maximize(const std::vector<double> &c, const std::vector<Row> &rows, double feas_tol = 1e-9)
{
    const std::size_t n = c.size();
    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> cur;
    subsets(rows.size(), n, 0, cur, [&](const std::vector<std::size_t> &pick) {
        std::vector<std::vector<double>> m;
        std::vector<double> rhs;
        for (auto i : pick) {
            m.push_back(rows[i].a);
            rhs.push_back(rows[i].b);
        }
        const auto x = solve(m, rhs);
        if (!x) {
            return;
        }
        for (const auto &r : rows) {
            double lhs = 0;
            for (std::size_t i = 0; i < n; ++i) {
                lhs += r.a[i] * (*x)[i];
            }
            if (lhs > r.b + feas_tol * (1 + std::abs(r.b))) {
                return;
            }
        }
        double v = 0;
        for (std::size_t i = 0; i < n; ++i) {
            v += c[i] * (*x)[i];
        }
        best = std::max(best, v);
    });
    return best;
}

} // namespace vertex_oracle

#endif
