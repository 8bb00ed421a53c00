#ifndef REINHARDT_DETAIL_SIMPLEX_HPP
#define REINHARDT_DETAIL_SIMPLEX_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <reinhardt/error.hpp>

namespace reinhardt::detail
{

enum class lp_status { optimal, infeasible, unbounded };

struct StandardFormResult {
    lp_status status = lp_status::infeasible;
    double value = 0;
    // Primal solution x (size n) and simplex multipliers y (size m), valid when optimal.
    std::vector<double> x;
    std::vector<double> multipliers;
};

// Dense two-phase tableau simplex for
//
//   minimize c.x  subject to  A x = b,  x >= 0,
//
// with A given row-major (m x n). Bland's rule throughout.
class StandardFormSimplex
{
public:
    static constexpr double pivot_tolerance = 1e-9;

    StandardFormSimplex(std::size_t m, std::size_t n, std::vector<double> a, std::vector<double> b, std::vector<double> c)
        : m_rows(m), m_cols(n), m_width(n + m + 1), m_cost(std::move(c))
    {
        require(a.size() == m * n && b.size() == m && m_cost.size() == n, errc::invalid_argument,
                "inconsistent standard-form LP dimensions");
        // Columns: [original n | artificial m | rhs].
        m_tab.assign((m + 1) * m_width, 0.0);
        m_sign.assign(m, 1.0);
        m_basis.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            m_sign[i] = b[i] < 0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n; ++j) {
                at(i, j) = m_sign[i] * a[i * n + j];
            }
            at(i, n + i) = 1.0;
            at(i, m_width - 1) = m_sign[i] * b[i];
            m_basis[i] = n + i;
        }
    }

    StandardFormResult solve()
    {
        StandardFormResult out;
        // Phase one: minimize the sum of artificials.
        auto &obj = m_tab;
        const std::size_t orow = m_rows;
        for (std::size_t j = 0; j < m_width; ++j) {
            obj[orow * m_width + j] = 0;
        }
        for (std::size_t i = 0; i < m_rows; ++i) {
            for (std::size_t j = 0; j < m_cols; ++j) {
                at(orow, j) -= at(i, j);
            }
            at(orow, m_width - 1) -= at(i, m_width - 1);
        }
        if (!iterate(m_cols + m_rows)) {
            fail(errc::invalid_argument, "phase-one LP reported unbounded");
        }
        double scale = 1;
        for (std::size_t i = 0; i < m_rows; ++i) {
            scale = std::max(scale, std::abs(at(i, m_width - 1)));
        }
        if (-at(orow, m_width - 1) > pivot_tolerance * scale) {
            out.status = lp_status::infeasible;
            return out;
        }
        // Drive zero-level artificials out of the basis where possible.
        for (std::size_t i = 0; i < m_rows; ++i) {
            if (m_basis[i] < m_cols) {
                continue;
            }
            for (std::size_t j = 0; j < m_cols; ++j) {
                if (std::abs(at(i, j)) > pivot_tolerance) {
                    pivot(i, j);
                    break;
                }
            }
        }
        // Phase two: reduced costs of the true objective; artificials may not re-enter.
        for (std::size_t j = 0; j < m_width; ++j) {
            at(orow, j) = j < m_cols ? m_cost[j] : 0.0;
        }
        for (std::size_t i = 0; i < m_rows; ++i) {
            const std::size_t bj = m_basis[i];
            const double cb = bj < m_cols ? m_cost[bj] : 0.0;
            if (cb != 0) {
                for (std::size_t j = 0; j < m_width; ++j) {
                    at(orow, j) -= cb * at(i, j);
                }
            }
        }
        if (!iterate(m_cols)) {
            out.status = lp_status::unbounded;
            return out;
        }
        out.status = lp_status::optimal;
        out.value = -at(orow, m_width - 1);
        out.x.assign(m_cols, 0.0);
        for (std::size_t i = 0; i < m_rows; ++i) {
            if (m_basis[i] < m_cols) {
                out.x[m_basis[i]] = at(i, m_width - 1);
            }
        }
        // The artificial block holds B^{-1}; its reduced costs are -y (sign-flipped rows).
        out.multipliers.resize(m_rows);
        for (std::size_t i = 0; i < m_rows; ++i) {
            out.multipliers[i] = -at(orow, m_cols + i) * m_sign[i];
        }
        return out;
    }

private:
    double &at(std::size_t i, std::size_t j)
    {
        return m_tab[i * m_width + j];
    }

    void pivot(std::size_t r, std::size_t c)
    {
        const double p = at(r, c);
        for (std::size_t j = 0; j < m_width; ++j) {
            at(r, j) /= p;
        }
        for (std::size_t i = 0; i <= m_rows; ++i) {
            if (i == r) {
                continue;
            }
            const double f = at(i, c);
            if (f != 0) {
                for (std::size_t j = 0; j < m_width; ++j) {
                    at(i, j) -= f * at(r, j);
                }
                at(i, c) = 0;
            }
        }
        m_basis[r] = c;
    }

    // Pivots until optimal over the first `eligible` columns; false when unbounded.
    bool iterate(std::size_t eligible)
    {
        const std::size_t cap = 50 * (m_rows + m_cols + 10);
        for (std::size_t it = 0; it < cap; ++it) {
            std::size_t enter = eligible;
            for (std::size_t j = 0; j < eligible; ++j) {
                if (at(m_rows, j) < -pivot_tolerance) {
                    enter = j;
                    break;
                }
            }
            if (enter == eligible) {
                return true;
            }
            std::size_t leave = m_rows;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_rows; ++i) {
                const double a = at(i, enter);
                if (a > pivot_tolerance) {
                    const double ratio = at(i, m_width - 1) / a;
                    if (ratio < best - 1e-12 || (ratio <= best + 1e-12 && leave < m_rows && m_basis[i] < m_basis[leave])) {
                        best = std::min(best, ratio);
                        leave = i;
                    }
                }
            }
            if (leave == m_rows) {
                return false;
            }
            pivot(leave, enter);
        }
        fail(errc::invalid_argument, "simplex iteration limit exceeded");
    }

    std::size_t m_rows;
    std::size_t m_cols;
    std::size_t m_width;
    std::vector<double> m_cost;
    std::vector<double> m_tab;
    std::vector<double> m_sign;
    std::vector<std::size_t> m_basis;
};

} // namespace reinhardt::detail

#endif
