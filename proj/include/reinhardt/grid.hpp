#ifndef REINHARDT_GRID_HPP
#define REINHARDT_GRID_HPP

#include <cstddef>
#include <vector>

#include <reinhardt/error.hpp>

namespace reinhardt
{

struct GridAxis {
    double lo;
    double hi;
    std::size_t count;

    double at(std::size_t i) const
    {
        if (count == 1) {
            return lo;
        }
        // lo + i*step drifts; interpolate from both ends instead.
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        return lo * (1 - t) + hi * t;
    }
};

inline constexpr std::size_t max_grid_points = 10000;

// Tensor grid of log-points, enumerated row-major (first axis slowest).
class Grid
{
public:
    explicit Grid(std::vector<GridAxis> axes) : m_axes(std::move(axes))
    {
        detail::require(!m_axes.empty(), errc::invalid_argument, "grid needs at least one axis");
        std::size_t total = 1;
        for (const auto &a : m_axes) {
            detail::require(a.count >= 1, errc::invalid_argument, "grid axis needs at least one point");
            detail::require(a.lo <= a.hi, errc::invalid_argument, "grid axis needs lo <= hi");
            total *= a.count;
            detail::require(total <= max_grid_points, errc::invalid_argument, "grid exceeds 10^4 points");
        }
        m_size = total;
    }

    static Grid square(std::size_t dimension, double lo, double hi, std::size_t count)
    {
        return Grid(std::vector<GridAxis>(dimension, GridAxis{lo, hi, count}));
    }

    std::size_t dimension() const noexcept
    {
        return m_axes.size();
    }
    std::size_t size() const noexcept
    {
        return m_size;
    }
    const std::vector<GridAxis> &axes() const noexcept
    {
        return m_axes;
    }

    std::vector<double> point(std::size_t flat) const
    {
        std::vector<double> out(m_axes.size());
        for (std::size_t i = m_axes.size(); i-- > 0;) {
            out[i] = m_axes[i].at(flat % m_axes[i].count);
            flat /= m_axes[i].count;
        }
        return out;
    }

    std::vector<std::vector<double>> points() const
    {
        std::vector<std::vector<double>> out;
        out.reserve(m_size);
        for (std::size_t i = 0; i < m_size; ++i) {
            out.push_back(point(i));
        }
        return out;
    }

private:
    std::vector<GridAxis> m_axes;
    std::size_t m_size = 0;
};

} // namespace reinhardt

#endif
