#ifndef REINHARDT_FAMILY_HPP
#define REINHARDT_FAMILY_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <reinhardt/error.hpp>
#include <reinhardt/index.hpp>

namespace reinhardt
{

// Generator parameters of a doubly-indexed family: slot k of row n sits at
// degree base + (k-1)*M*stride + (n-1)*stride.
struct FamilyParams {
    std::int64_t base = 8;
    std::int64_t stride = 1;
    std::int64_t per_row = 1;
    std::vector<SimplexDirection> directions;

    std::int64_t degree_of(std::size_t row, std::size_t slot) const
    {
        const auto rows = static_cast<std::int64_t>(directions.size());
        auto d = detail::checked_mul(detail::checked_mul(static_cast<std::int64_t>(slot), rows), stride);
        d = detail::checked_add(d, detail::checked_mul(static_cast<std::int64_t>(row), stride));
        return detail::checked_add(d, base);
    }
};

// Pairwise distinct indices J^{nk}; row n converges radially to directions[n].
struct IndexFamily {
    FamilyParams params;
    std::vector<std::vector<MultiIndex>> rows;

    std::size_t row_count() const noexcept
    {
        return rows.size();
    }
};

inline IndexFamily build_family(FamilyParams params)
{
    const auto m = params.directions.size();
    detail::require(m >= 1, errc::invalid_argument, "index family needs at least one direction");
    detail::require(params.per_row >= 1, errc::invalid_argument, "index family needs per_row >= 1");
    detail::require(params.base >= 1 && params.stride >= 1, errc::invalid_argument,
                    "index family base and stride must be positive");
    for (std::size_t a = 0; a < m; ++a) {
        detail::require(params.directions[a].dimension() == params.directions[0].dimension(),
                        errc::dimension_mismatch, "family directions disagree in dimension");
        for (std::size_t b = 0; b < a; ++b) {
            detail::require(l1_distance(params.directions[a], params.directions[b]) > 1e-10,
                            errc::invalid_argument, "family directions must be pairwise distinct");
        }
    }
    IndexFamily out;
    out.rows.resize(m);
    for (std::size_t n = 0; n < m; ++n) {
        auto &row = out.rows[n];
        row.reserve(static_cast<std::size_t>(params.per_row));
        for (std::int64_t k = 0; k < params.per_row; ++k) {
            row.push_back(nearest_index_of_degree(params.directions[n], params.degree_of(n, static_cast<std::size_t>(k))));
        }
    }
    out.params = std::move(params);
    return out;
}

inline IndexFamily build_family(std::vector<SimplexDirection> directions, std::int64_t per_row)
{
    FamilyParams params;
    params.per_row = per_row;
    params.directions = std::move(directions);
    return build_family(std::move(params));
}

} // namespace reinhardt

#endif
