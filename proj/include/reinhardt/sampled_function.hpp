#ifndef REINHARDT_SAMPLED_FUNCTION_HPP
#define REINHARDT_SAMPLED_FUNCTION_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include <reinhardt/error.hpp>
#include <reinhardt/index.hpp>

namespace reinhardt
{

// Finite table of (direction, value) pairs standing for a positively
// homogeneous function restricted to PS_N. +inf marks directions outside the
// effective domain; -inf is rejected.
class SampledFunction
{
public:
    static constexpr double distinct_tolerance = 1e-10;

    SampledFunction() = default;

    SampledFunction(std::vector<SimplexDirection> directions, std::vector<double> values)
        : m_directions(std::move(directions)), m_values(std::move(values))
    {
        detail::require(m_directions.size() == m_values.size(), errc::invalid_argument,
                        "sampled function needs one value per direction");
        for (std::size_t i = 0; i < m_directions.size(); ++i) {
            detail::require(m_directions[i].dimension() == m_directions.front().dimension(), errc::dimension_mismatch,
                            "sampled function directions disagree in dimension");
            detail::require(!std::isnan(m_values[i]) && m_values[i] != -std::numeric_limits<double>::infinity(),
                            errc::invalid_argument, "sampled function values must be finite or +inf");
            for (std::size_t j = 0; j < i; ++j) {
                detail::require(l1_distance(m_directions[i], m_directions[j]) > distinct_tolerance,
                                errc::invalid_argument, "sampled function directions must be pairwise distinct");
            }
        }
    }

    std::size_t size() const noexcept
    {
        return m_directions.size();
    }
    bool empty() const noexcept
    {
        return m_directions.empty();
    }
    std::size_t dimension() const noexcept
    {
        return m_directions.empty() ? 0 : m_directions.front().dimension();
    }
    const std::vector<SimplexDirection> &directions() const noexcept
    {
        return m_directions;
    }
    const std::vector<double> &values() const noexcept
    {
        return m_values;
    }

    // Value stored for a direction within distinct_tolerance of `alpha`.
    std::optional<double> lookup(const SimplexDirection &alpha) const
    {
        for (std::size_t i = 0; i < m_directions.size(); ++i) {
            if (m_directions[i].dimension() == alpha.dimension()
                && l1_distance(m_directions[i], alpha) <= distinct_tolerance) {
                return m_values[i];
            }
        }
        return std::nullopt;
    }

private:
    std::vector<SimplexDirection> m_directions;
    std::vector<double> m_values;
};

} // namespace reinhardt

#endif
