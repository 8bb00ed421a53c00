#ifndef REINHARDT_CONVEX_HPP
#define REINHARDT_CONVEX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <reinhardt/detail/simplex.hpp>
#include <reinhardt/error.hpp>
#include <reinhardt/index.hpp>
#include <reinhardt/sampled_function.hpp>

namespace reinhardt
{

// Open half-space {s : <normal, s> - offset < 0}.
struct HalfSpace {
    SimplexDirection normal;
    double offset = 0;

    double margin(std::span<const double> s) const
    {
        return detail::dot(normal.coords(), s) - offset;
    }
    bool contains(std::span<const double> s) const
    {
        return margin(s) < 0;
    }
};

// Finite intersection of half-spaces with normals on PS_N.
class HDomain
{
public:
    HDomain() = default;

    HDomain(std::size_t dimension, std::vector<HalfSpace> halfspaces)
        : m_dimension(dimension), m_halfspaces(std::move(halfspaces))
    {
        detail::require(m_dimension >= 1, errc::invalid_argument, "domain dimension must be at least 1");
        for (const auto &h : m_halfspaces) {
            detail::require(h.normal.dimension() == m_dimension, errc::dimension_mismatch,
                            "half-space normal does not match domain dimension");
            detail::require(std::isfinite(h.offset), errc::invalid_argument, "half-space offsets must be finite");
        }
    }

    std::size_t dimension() const noexcept
    {
        return m_dimension;
    }
    const std::vector<HalfSpace> &halfspaces() const noexcept
    {
        return m_halfspaces;
    }

    // max_i (<alpha_i, s> - c_i); negative exactly on the open domain. -inf
    // when there are no half-spaces.
    double margin(std::span<const double> s) const
    {
        double out = -std::numeric_limits<double>::infinity();
        for (const auto &h : m_halfspaces) {
            out = std::max(out, h.margin(s));
        }
        return out;
    }
    bool contains(std::span<const double> s) const
    {
        return margin(s) < 0;
    }
    bool contains_closed(std::span<const double> s) const
    {
        return margin(s) <= 0;
    }

private:
    std::size_t m_dimension = 0;
    std::vector<HalfSpace> m_halfspaces;
};

// General linear constraint <normal, s> <= bound (normals unrestricted).
struct LinearConstraint {
    std::vector<double> normal;
    double bound = 0;
};

struct LpResult {
    // +inf when unbounded, -inf when infeasible.
    double value = 0;
    std::optional<std::vector<double>> witness;

    bool unbounded() const noexcept
    {
        return value == std::numeric_limits<double>::infinity();
    }
    bool infeasible() const noexcept
    {
        return value == -std::numeric_limits<double>::infinity();
    }
};

// sup <objective, s> over {s : <a_i, s> <= b_i}.
//
// Solved through the dual  min b.y  s.t.  sum y_i a_i = objective, y >= 0,
// whose simplex multipliers are an optimal primal point. When the dual is
// infeasible, a Farkas system decides between unbounded and infeasible.
inline LpResult lp_maximize(std::span<const double> objective, std::span<const LinearConstraint> constraints)
{
    const std::size_t n = objective.size();
    const std::size_t m = constraints.size();
    detail::require(n >= 1, errc::invalid_argument, "LP objective must have at least one coordinate");
    for (const auto &c : constraints) {
        detail::require(c.normal.size() == n, errc::dimension_mismatch, "LP constraint does not match objective dimension");
        detail::require(std::isfinite(c.bound), errc::invalid_argument, "LP constraint bounds must be finite");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();

    std::vector<double> a(n * m), b(objective.begin(), objective.end()), cost(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t r = 0; r < n; ++r) {
            a[r * m + i] = constraints[i].normal[r];
        }
        cost[i] = constraints[i].bound;
    }
    auto dual = detail::StandardFormSimplex(n, m, std::move(a), std::move(b), std::move(cost)).solve();
    if (dual.status == detail::lp_status::optimal) {
        return {dual.value, std::move(dual.multipliers)};
    }
    if (dual.status == detail::lp_status::unbounded) {
        return {-inf, std::nullopt};
    }
    // Primal infeasible iff some y >= 0, sum y = 1, A^T y = 0 has b.y < 0.
    std::vector<double> fa((n + 1) * (m + 1), 0.0), fb(n + 1, 0.0), fc(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t r = 0; r < n; ++r) {
            fa[r * (m + 1) + i] = constraints[i].normal[r];
        }
        fa[n * (m + 1) + i] = 1.0;
        fc[i] = constraints[i].bound;
    }
    fa[n * (m + 1) + m] = 1.0;
    fb[n] = 1.0;
    auto farkas = detail::StandardFormSimplex(n + 1, m + 1, std::move(fa), std::move(fb), std::move(fc)).solve();
    double scale = 1;
    for (const auto &c : constraints) {
        scale = std::max(scale, std::abs(c.bound));
    }
    if (farkas.status == detail::lp_status::optimal && farkas.value < -detail::StandardFormSimplex::pivot_tolerance * scale) {
        return {-inf, std::nullopt};
    }
    return {inf, std::nullopt};
}

inline std::vector<LinearConstraint> to_constraints(const HDomain &domain)
{
    std::vector<LinearConstraint> out;
    out.reserve(domain.halfspaces().size());
    for (const auto &h : domain.halfspaces()) {
        out.push_back({h.normal.coords(), h.offset});
    }
    return out;
}

inline LpResult lp_maximize(std::span<const double> objective, const HDomain &domain)
{
    detail::require(objective.size() == domain.dimension(), errc::dimension_mismatch,
                    "LP objective does not match domain dimension");
    const auto cons = to_constraints(domain);
    return lp_maximize(objective, std::span<const LinearConstraint>(cons));
}

// Support function h(alpha) = sup{<alpha, s> : s in closure of the domain}.
inline double support_value(const HDomain &domain, const SimplexDirection &alpha)
{
    auto r = lp_maximize(alpha.coords(), domain);
    detail::require(!r.infeasible(), errc::empty_domain, "half-space domain is empty");
    return r.value;
}

// cl(conv f)(alpha): the support function of the polyhedron cut out by the
// homogeneous minorant conditions <beta_i, s> <= v_i. +inf samples impose
// nothing.
inline double convex_closure_value(const SampledFunction &f, const SimplexDirection &alpha)
{
    detail::require(!f.empty(), errc::invalid_argument, "convex closure needs at least one sample");
    detail::require(f.dimension() == alpha.dimension(), errc::dimension_mismatch,
                    "direction does not match sampled function dimension");
    std::vector<LinearConstraint> cons;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (std::isfinite(f.values()[i])) {
            cons.push_back({f.directions()[i].coords(), f.values()[i]});
        }
    }
    auto r = lp_maximize(alpha.coords(), std::span<const LinearConstraint>(cons));
    detail::require(!r.infeasible(), errc::empty_domain, "sampled function admits no homogeneous minorant region");
    return r.value;
}

// The supporting half-spaces of `domain` at the given directions; directions
// with infinite support value are dropped.
inline HDomain reduce_to_dense_subset(const HDomain &domain, std::span<const SimplexDirection> dense)
{
    std::vector<HalfSpace> out;
    out.reserve(dense.size());
    for (const auto &alpha : dense) {
        detail::require(alpha.dimension() == domain.dimension(), errc::dimension_mismatch,
                        "dense direction does not match domain dimension");
        const double h = support_value(domain, alpha);
        if (std::isfinite(h)) {
            out.push_back({alpha, h});
        }
    }
    return HDomain(domain.dimension(), std::move(out));
}

// l1 distance from s to the boundary of the domain. Inside, the nearest point
// of the complement lies across one hyperplane (dual norm l-inf); outside, the
// distance to the closed polyhedron is an LP.
inline double l1_distance_to_boundary(const HDomain &domain, std::span<const double> s)
{
    const std::size_t n = domain.dimension();
    detail::require(s.size() == n, errc::dimension_mismatch, "point does not match domain dimension");
    if (domain.halfspaces().empty()) {
        return std::numeric_limits<double>::infinity();
    }
    if (domain.contains_closed(s)) {
        double out = std::numeric_limits<double>::infinity();
        for (const auto &h : domain.halfspaces()) {
            const double linf = *std::max_element(h.normal.coords().begin(), h.normal.coords().end());
            out = std::min(out, -h.margin(s) / linf);
        }
        return out;
    }
    // Variables (x, u): maximize -sum u  s.t.  x in domain, |x - s| <= u.
    std::vector<LinearConstraint> cons;
    for (const auto &h : domain.halfspaces()) {
        std::vector<double> row(2 * n, 0.0);
        std::copy(h.normal.coords().begin(), h.normal.coords().end(), row.begin());
        cons.push_back({std::move(row), h.offset});
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> up(2 * n, 0.0), down(2 * n, 0.0);
        up[i] = 1;
        up[n + i] = -1;
        down[i] = -1;
        down[n + i] = -1;
        cons.push_back({std::move(up), s[i]});
        cons.push_back({std::move(down), -s[i]});
    }
    std::vector<double> objective(2 * n, 0.0);
    std::fill(objective.begin() + static_cast<std::ptrdiff_t>(n), objective.end(), -1.0);
    auto r = lp_maximize(objective, std::span<const LinearConstraint>(cons));
    detail::require(std::isfinite(r.value), errc::empty_domain, "half-space domain is empty");
    return -r.value;
}

} // namespace reinhardt

#endif
