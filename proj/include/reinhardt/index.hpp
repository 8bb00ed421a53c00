#ifndef REINHARDT_INDEX_HPP
#define REINHARDT_INDEX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <reinhardt/error.hpp>

namespace reinhardt
{

namespace detail
{

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t out{};
    if (__builtin_add_overflow(a, b, &out)) {
        fail(errc::overflow, "64-bit overflow in multi-index degree");
    }
    return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t out{};
    if (__builtin_mul_overflow(a, b, &out)) {
        fail(errc::overflow, "64-bit overflow in multi-index product");
    }
    return out;
}

inline double l1_distance(std::span<const double> a, std::span<const double> b)
{
    double acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::abs(a[i] - b[i]);
    }
    return acc;
}

inline double dot(std::span<const double> a, std::span<const double> b)
{
    double acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

} // namespace detail

// Lattice exponent J in N_0^N with its cached l1 degree |J|.
class MultiIndex
{
public:
    MultiIndex() = default;

    explicit MultiIndex(std::vector<std::int64_t> entries) : m_entries(std::move(entries))
    {
        for (auto e : m_entries) {
            detail::require(e >= 0, errc::invalid_argument, "multi-index entries must be non-negative");
            m_degree = detail::checked_add(m_degree, e);
        }
    }

    MultiIndex(std::initializer_list<std::int64_t> entries) : MultiIndex(std::vector<std::int64_t>(entries)) {}

    static MultiIndex zero(std::size_t dimension)
    {
        return MultiIndex(std::vector<std::int64_t>(dimension, 0));
    }

    std::size_t dimension() const noexcept
    {
        return m_entries.size();
    }
    std::int64_t degree() const noexcept
    {
        return m_degree;
    }
    const std::vector<std::int64_t> &entries() const noexcept
    {
        return m_entries;
    }
    std::int64_t operator[](std::size_t i) const
    {
        return m_entries[i];
    }
    bool is_zero() const noexcept
    {
        return m_degree == 0;
    }

    MultiIndex scaled(std::int64_t factor) const
    {
        detail::require(factor >= 0, errc::invalid_argument, "scale factor must be non-negative");
        std::vector<std::int64_t> out(m_entries.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = detail::checked_mul(m_entries[i], factor);
        }
        return MultiIndex(std::move(out));
    }

    friend bool operator==(const MultiIndex &a, const MultiIndex &b)
    {
        return a.m_entries == b.m_entries;
    }
    friend auto operator<=>(const MultiIndex &a, const MultiIndex &b)
    {
        return a.m_entries <=> b.m_entries;
    }

    friend std::ostream &operator<<(std::ostream &os, const MultiIndex &j)
    {
        os << '(';
        for (std::size_t i = 0; i < j.m_entries.size(); ++i) {
            os << (i ? "," : "") << j.m_entries[i];
        }
        return os << ')';
    }

private:
    std::vector<std::int64_t> m_entries;
    std::int64_t m_degree = 0;
};

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex &j) const noexcept
    {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (auto e : j.entries()) {
            h ^= std::hash<std::int64_t>{}(e) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

inline std::string to_string(const MultiIndex &j)
{
    std::string out = "(";
    for (std::size_t i = 0; i < j.dimension(); ++i) {
        out += (i ? "," : "") + std::to_string(j[i]);
    }
    return out + ")";
}

// Point of the probability simplex PS_N: non-negative coordinates summing to 1.
class SimplexDirection
{
public:
    static constexpr double sum_tolerance = 1e-12;

    SimplexDirection() = default;

    explicit SimplexDirection(std::vector<double> coords) : m_coords(std::move(coords))
    {
        detail::require(!m_coords.empty(), errc::invalid_argument, "simplex direction needs at least one coordinate");
        double sum = 0;
        for (auto c : m_coords) {
            detail::require(std::isfinite(c) && c >= 0, errc::invalid_argument,
                            "simplex direction coordinates must be finite and non-negative");
            sum += c;
        }
        detail::require(std::abs(sum - 1.0) <= sum_tolerance, errc::invalid_argument,
                        "simplex direction coordinates must sum to 1");
    }

    SimplexDirection(std::initializer_list<double> coords) : SimplexDirection(std::vector<double>(coords)) {}

    // Radially rescales a non-negative, nonzero vector onto PS_N.
    static SimplexDirection normalized(std::span<const double> v)
    {
        double sum = 0;
        for (auto c : v) {
            detail::require(std::isfinite(c) && c >= 0, errc::invalid_argument,
                            "cannot normalize a vector with negative or non-finite entries");
            sum += c;
        }
        detail::require(sum > 0, errc::invalid_argument, "cannot normalize the zero vector");
        std::vector<double> out(v.begin(), v.end());
        for (auto &c : out) {
            c /= sum;
        }
        return SimplexDirection(std::move(out));
    }

    std::size_t dimension() const noexcept
    {
        return m_coords.size();
    }
    const std::vector<double> &coords() const noexcept
    {
        return m_coords;
    }
    double operator[](std::size_t i) const
    {
        return m_coords[i];
    }

    friend bool operator==(const SimplexDirection &, const SimplexDirection &) = default;

    friend std::ostream &operator<<(std::ostream &os, const SimplexDirection &a)
    {
        os << '(';
        for (std::size_t i = 0; i < a.m_coords.size(); ++i) {
            os << (i ? "," : "") << a.m_coords[i];
        }
        return os << ')';
    }

private:
    std::vector<double> m_coords;
};

inline double l1_distance(const SimplexDirection &a, const SimplexDirection &b)
{
    return detail::l1_distance(a.coords(), b.coords());
}

// Radial projection J -> J/|J| onto PS_N.
inline SimplexDirection project(const MultiIndex &j)
{
    detail::require(!j.is_zero(), errc::zero_index_not_projectable, "cannot project the zero multi-index " + to_string(j));
    std::vector<double> out(j.dimension());
    const auto degree = static_cast<double>(j.degree());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<double>(j[i]) / degree;
    }
    return SimplexDirection(std::move(out));
}

// Calls f(const MultiIndex &) for every index of dimension n and degree k, in
// lexicographic order.
template <typename F>
void for_each_index_of_degree(std::size_t n, std::int64_t k, F &&f)
{
    detail::require(n >= 1, errc::invalid_argument, "dimension must be at least 1");
    detail::require(k >= 0, errc::invalid_argument, "degree must be non-negative");
    std::vector<std::int64_t> entries(n, 0);
    // Recursive fill: entry i ranges over 0..remaining, the last entry takes the rest.
    auto fill = [&](auto &&self, std::size_t i, std::int64_t remaining) -> void {
        if (i + 1 == n) {
            entries[i] = remaining;
            f(MultiIndex(entries));
            return;
        }
        for (std::int64_t e = 0; e <= remaining; ++e) {
            entries[i] = e;
            self(self, i + 1, remaining - e);
        }
    };
    fill(fill, 0, k);
}

inline std::vector<MultiIndex> enumerate_degree(std::size_t n, std::int64_t k)
{
    std::vector<MultiIndex> out;
    for_each_index_of_degree(n, k, [&](const MultiIndex &j) { out.push_back(j); });
    return out;
}

// C(k+n-1, n-1), the number of indices of dimension n and degree k.
inline std::int64_t count_of_degree(std::size_t n, std::int64_t k)
{
    std::int64_t out = 1;
    for (std::int64_t i = 1; i < static_cast<std::int64_t>(n); ++i) {
        // out * (k + i) / i stays integral at every step.
        out = detail::checked_mul(out, k + i) / i;
    }
    return out;
}

// Index of degree k whose projection is l1-closest to alpha; ties go to the
// lexicographically smallest index.
//
// The l1 cost is separable and convex, so every minimizer rounds each k*alpha_i
// to its floor or ceiling. The remaining units go to the coordinates with the
// largest fractional parts, preferring later coordinates on ties.
inline MultiIndex nearest_index_of_degree(const SimplexDirection &alpha, std::int64_t k)
{
    detail::require(k >= 1, errc::invalid_argument, "degree must be at least 1");
    constexpr double tie_tolerance = 1e-12;
    const auto n = alpha.dimension();
    std::vector<std::int64_t> entries(n);
    std::vector<double> frac(n);
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double target = static_cast<double>(k) * alpha[i];
        auto lo = static_cast<std::int64_t>(std::floor(target));
        double f = target - static_cast<double>(lo);
        // Snap values within rounding noise of an integer.
        if (f > 1 - tie_tolerance) {
            ++lo;
            f = 0;
        } else if (f < tie_tolerance) {
            f = 0;
        }
        entries[i] = lo;
        frac[i] = f;
        assigned += lo;
    }
    std::int64_t extra = k - assigned;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (std::abs(frac[a] - frac[b]) > tie_tolerance) {
            return frac[a] > frac[b];
        }
        return a > b;
    });
    if (extra >= 0) {
        for (std::size_t r = 0; extra > 0; r = (r + 1) % n, --extra) {
            ++entries[order[r]];
        }
    } else {
        // Only reachable through accumulated rounding; remove from the smallest fractions.
        for (std::size_t r = n; extra < 0; --extra) {
            r = (r == 0 ? n : r) - 1;
            while (entries[order[r]] == 0) {
                r = (r == 0 ? n : r) - 1;
            }
            --entries[order[r]];
        }
    }
    return MultiIndex(std::move(entries));
}

// M directions (t, 1 - t) with t = k / (M - 1), k = 0..M-1.
inline std::vector<SimplexDirection> uniform_directions_2d(std::size_t count)
{
    detail::require(count >= 2, errc::invalid_argument, "a uniform direction grid needs at least two points");
    std::vector<SimplexDirection> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(count - 1);
        out.emplace_back(std::vector<double>{t, 1.0 - t});
    }
    return out;
}

} // namespace reinhardt

#endif
