#ifndef REINHARDT_HADAMARD_HPP
#define REINHARDT_HADAMARD_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <reinhardt/convex.hpp>
#include <reinhardt/error.hpp>
#include <reinhardt/index.hpp>
#include <reinhardt/series.hpp>

namespace reinhardt
{

inline constexpr std::int64_t default_degree = 64;
inline constexpr double default_epsilon = 0.05;

// Degrees [ceil(K/2), K] stand in for the limsup tail.
inline std::pair<std::int64_t, std::int64_t> tail_degrees(std::int64_t max_degree)
{
    return {(max_degree + 1) / 2, max_degree};
}

struct TailTerm {
    MultiIndex index;
    std::vector<double> projection;
    // ln|c_J| / |J|
    double log_growth;
};

// Supported terms of a series over a degree range, with projections and
// normalized log-coefficients precomputed. Reusable across many points.
class TailTable
{
public:
    TailTable(const SeriesSpec &s, std::int64_t degree_lo, std::int64_t degree_hi)
        : m_dimension(s.dimension()), m_lo(degree_lo), m_hi(degree_hi)
    {
        detail::require(degree_lo >= 1 && degree_lo <= degree_hi, errc::invalid_argument,
                        "tail degree range must satisfy 1 <= lo <= hi");
        for (std::int64_t k = degree_lo; k <= degree_hi; ++k) {
            for_each_supported(s, k, [&](const MultiIndex &j, double la) {
                m_terms.push_back({j, project(j).coords(), la / static_cast<double>(k)});
            });
        }
    }

    static TailTable for_degree(const SeriesSpec &s, std::int64_t max_degree)
    {
        const auto [lo, hi] = tail_degrees(max_degree);
        return TailTable(s, lo, hi);
    }

    std::size_t dimension() const noexcept
    {
        return m_dimension;
    }
    std::int64_t degree_lo() const noexcept
    {
        return m_lo;
    }
    std::int64_t degree_hi() const noexcept
    {
        return m_hi;
    }
    const std::vector<TailTerm> &terms() const noexcept
    {
        return m_terms;
    }

private:
    std::size_t m_dimension;
    std::int64_t m_lo;
    std::int64_t m_hi;
    std::vector<TailTerm> m_terms;
};

// Truncated defining function: max over tail terms of <J/|J|, s> + ln|c_J|/|J|.
inline double psi_hat(const TailTable &table, std::span<const double> point)
{
    detail::require(point.size() == table.dimension(), errc::dimension_mismatch,
                    "point does not match series dimension");
    double out = -infinity;
    for (const auto &t : table.terms()) {
        out = std::max(out, detail::dot(t.projection, point) + t.log_growth);
    }
    return out;
}

inline double psi_hat(const SeriesSpec &s, std::span<const double> point, std::int64_t max_degree = default_degree)
{
    detail::require(max_degree >= 8, errc::invalid_argument, "psi_hat needs max degree K >= 8");
    check_dimension(s, point.size());
    return psi_hat(TailTable::for_degree(s, max_degree), point);
}

enum class Membership { inside, outside, unknown };

inline std::string_view membership_name(Membership m) noexcept
{
    switch (m) {
        case Membership::inside:
            return "inside";
        case Membership::outside:
            return "outside";
        case Membership::unknown:
            return "unknown";
    }
    return "unknown";
}

struct MembershipVerdict {
    Membership membership;
    double value;
    double margin;
};

inline MembershipVerdict verdict_from_value(double value, double epsilon)
{
    detail::require(epsilon > 0, errc::invalid_argument, "epsilon must be positive");
    Membership m = Membership::unknown;
    if (value < -epsilon) {
        m = Membership::inside;
    } else if (value > epsilon) {
        m = Membership::outside;
    }
    return {m, value, epsilon};
}

inline MembershipVerdict classify(const TailTable &table, std::span<const double> point, double epsilon = default_epsilon)
{
    return verdict_from_value(psi_hat(table, point), epsilon);
}

inline MembershipVerdict classify(const SeriesSpec &s, std::span<const double> point,
                                  std::int64_t max_degree = default_degree, double epsilon = default_epsilon)
{
    return verdict_from_value(psi_hat(s, point, max_degree), epsilon);
}

// delta(K) = max(0.02, 2N / sqrt(K)).
inline double default_window_radius(std::size_t n, std::int64_t max_degree)
{
    return std::max(0.02, 2.0 * static_cast<double>(n) / std::sqrt(static_cast<double>(max_degree)));
}

// Finite stand-in for the sequences J^n with pi(J^n) -> center.
struct DirectionWindow {
    SimplexDirection center;
    double radius;
    std::int64_t degree_lo;
    std::int64_t degree_hi;

    DirectionWindow(SimplexDirection c, double r, std::int64_t lo, std::int64_t hi)
        : center(std::move(c)), radius(r), degree_lo(lo), degree_hi(hi)
    {
        detail::require(radius > 0 && radius <= 2, errc::invalid_argument, "window radius must lie in (0, 2]");
        detail::require(degree_lo >= 1 && degree_lo <= degree_hi, errc::invalid_argument,
                        "window degree range must satisfy 1 <= lo <= hi");
    }

    // Tail window [ceil(K/2), K]; a non-positive radius selects delta(K).
    static DirectionWindow for_degree(SimplexDirection c, std::int64_t max_degree, double radius = 0)
    {
        const auto [lo, hi] = tail_degrees(max_degree);
        if (radius <= 0) {
            radius = default_window_radius(c.dimension(), max_degree);
        }
        return DirectionWindow(std::move(c), radius, lo, hi);
    }

    bool admits(const TailTerm &t) const
    {
        return t.index.degree() >= degree_lo && t.index.degree() <= degree_hi
               && detail::l1_distance(t.projection, center.coords()) <= radius + 1e-12;
    }
};

// -(max ln|c_J|/|J| over supported J in the window); +inf for an empty window.
inline double c_hat(const TailTable &table, const DirectionWindow &w)
{
    detail::require(w.center.dimension() == table.dimension(), errc::dimension_mismatch,
                    "window center does not match series dimension");
    double best = -infinity;
    for (const auto &t : table.terms()) {
        if (w.admits(t)) {
            best = std::max(best, t.log_growth);
        }
    }
    return -best;
}

inline double c_hat(const SeriesSpec &s, const DirectionWindow &w)
{
    check_dimension(s, w.center.dimension());
    return c_hat(TailTable(s, w.degree_lo, w.degree_hi), w);
}

// Samples c_hat at each direction using one shared tail table.
inline SampledFunction sample_c_hat(const SeriesSpec &s, std::span<const SimplexDirection> directions,
                                    std::int64_t max_degree = default_degree, double radius = 0)
{
    const auto table = TailTable::for_degree(s, max_degree);
    std::vector<SimplexDirection> dirs(directions.begin(), directions.end());
    std::vector<double> values;
    values.reserve(dirs.size());
    for (const auto &a : dirs) {
        values.push_back(c_hat(table, DirectionWindow::for_degree(a, max_degree, radius)));
    }
    return SampledFunction(std::move(dirs), std::move(values));
}

inline constexpr double elementary_diameter_limit = 0.2;

struct ElementaryEstimate {
    // {<alpha_hat, s> + log_growth < 0}, i.e. offset = -log_growth.
    HalfSpace halfspace;
    double log_growth;
    double diameter;
};

// Degree-weighted mean direction sum J / sum |J| and max normalized
// log-coefficient over the given terms. Requires at least one term.
inline std::pair<SimplexDirection, double> tail_direction_and_growth(std::span<const TailTerm> terms, std::size_t n)
{
    std::vector<double> acc(n, 0.0);
    double weight = 0;
    double growth = -infinity;
    for (const auto &t : terms) {
        for (std::size_t i = 0; i < n; ++i) {
            acc[i] += static_cast<double>(t.index[i]);
        }
        weight += static_cast<double>(t.index.degree());
        growth = std::max(growth, t.log_growth);
    }
    for (auto &a : acc) {
        a /= weight;
    }
    return {SimplexDirection(std::move(acc)), growth};
}

inline ElementaryEstimate elementary_estimate(const SeriesSpec &s, std::int64_t max_degree = default_degree)
{
    const auto table = TailTable::for_degree(s, max_degree);
    const auto &terms = table.terms();
    detail::require(!terms.empty(), errc::not_elementary, "series has no supported index in the tail window");
    double diameter = 0;
    for (std::size_t a = 0; a < terms.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b) {
            diameter = std::max(diameter, detail::l1_distance(terms[a].projection, terms[b].projection));
        }
        if (diameter > elementary_diameter_limit) {
            detail::fail(errc::not_elementary, "tail projections spread over l1 diameter > 0.2");
        }
    }
    auto [alpha, growth] = tail_direction_and_growth(terms, s.dimension());
    return {HalfSpace{std::move(alpha), -growth}, growth, diameter};
}

inline HalfSpace elementary_halfspace(const SeriesSpec &s, std::int64_t max_degree = default_degree)
{
    return elementary_estimate(s, max_degree).halfspace;
}

namespace detail
{

struct SliceTerm {
    // ln|a_k|, -inf when a_k vanishes.
    double log_abs = -infinity;
    // Number of nonzero monomials of degree k.
    std::size_t support = 0;
};

// a_k = sum over |J| = k of c_J r^J, accumulated relative to its largest term.
inline SliceTerm slice_term(const SeriesSpec &s, std::span<const double> log_r, std::int64_t k)
{
    std::vector<LogValue> terms;
    double top = -infinity;
    for_each_index_of_degree(s.dimension(), k, [&](const MultiIndex &j) {
        if (!rule_may_be_nonzero(s.rule(), j)) {
            return;
        }
        auto v = rule_log_value(s.rule(), j);
        if (v.log_abs == -infinity) {
            return;
        }
        v.log_abs += log_monomial(j, log_r);
        top = std::max(top, v.log_abs);
        terms.push_back(v);
    });
    SliceTerm out;
    out.support = terms.size();
    if (terms.empty()) {
        return out;
    }
    complex acc(0);
    for (const auto &t : terms) {
        acc += std::exp(t.log_abs - top) * t.phase;
    }
    if (acc != complex(0)) {
        out.log_abs = top + std::log(std::abs(acc));
    }
    return out;
}

} // namespace detail

// Cauchy-Hadamard radius estimate of the slice zeta -> g(zeta r):
// 1 / max over the tail window of (|a_k| / n_k)^(1/k), where n_k counts the
// nonzero monomials of degree k. Dividing by n_k leaves the limsup unchanged
// (n_k grows polynomially) but removes the polynomial bias of the plain root
// at desk-scale K. +inf when every tail slice coefficient vanishes.
inline double slice_radius(const SeriesSpec &s, std::span<const double> r, std::int64_t max_degree = default_degree)
{
    check_dimension(s, r.size());
    detail::require(max_degree >= 8, errc::invalid_argument, "slice_radius needs K >= 8");
    for (auto x : r) {
        detail::require(x > 0 && std::isfinite(x), errc::invalid_argument, "slice point coordinates must be positive");
    }
    const auto log_r = detail::log_point(r);
    const auto [lo, hi] = tail_degrees(max_degree);
    double best = -infinity;
    for (std::int64_t k = lo; k <= hi; ++k) {
        const auto t = detail::slice_term(s, log_r, k);
        if (t.log_abs == -infinity) {
            continue;
        }
        best = std::max(best, (t.log_abs - std::log(static_cast<double>(t.support))) / static_cast<double>(k));
    }
    return best == -infinity ? infinity : std::exp(-best);
}

} // namespace reinhardt

#endif
