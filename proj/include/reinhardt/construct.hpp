#ifndef REINHARDT_CONSTRUCT_HPP
#define REINHARDT_CONSTRUCT_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <reinhardt/convex.hpp>
#include <reinhardt/error.hpp>
#include <reinhardt/family.hpp>
#include <reinhardt/hadamard.hpp>
#include <reinhardt/index.hpp>
#include <reinhardt/sampled_function.hpp>
#include <reinhardt/series.hpp>

namespace reinhardt
{

// One supported index per dyadic degree band [b, min(2b - 1, K)], b = 8, 16,
// ..., chosen to maximize ln|c_J|/|J| inside the window of radius delta(b)
// around alpha. Ties prefer the projection closest to alpha, then the
// lexicographically smallest index.
inline std::vector<MultiIndex> realize_c_sequence(const SeriesSpec &s, const SimplexDirection &alpha,
                                                  std::int64_t max_degree = default_degree)
{
    detail::require(max_degree >= 8, errc::invalid_argument, "realize_c_sequence needs K >= 8");
    check_dimension(s, alpha.dimension());
    constexpr double tie = 1e-12;
    std::vector<MultiIndex> out;
    for (std::int64_t band = 8; band <= max_degree; band *= 2) {
        const std::int64_t hi = std::min(2 * band - 1, max_degree);
        const double radius = default_window_radius(s.dimension(), band);
        bool found = false;
        MultiIndex best;
        double best_growth = -infinity;
        double best_dist = infinity;
        for (std::int64_t k = band; k <= hi; ++k) {
            for_each_supported(s, k, [&](const MultiIndex &j, double la) {
                const double dist = l1_distance(project(j), alpha);
                if (dist > radius + tie) {
                    return;
                }
                const double growth = la / static_cast<double>(k);
                bool better = !found || growth > best_growth + tie;
                if (!better && std::abs(growth - best_growth) <= tie) {
                    better = dist < best_dist - tie || (std::abs(dist - best_dist) <= tie && j < best);
                }
                if (better) {
                    found = true;
                    best = j;
                    best_growth = growth;
                    best_dist = dist;
                }
            });
        }
        if (found) {
            out.push_back(std::move(best));
        }
    }
    detail::require(!out.empty(), errc::empty_window, "no supported index near the requested direction");
    return out;
}

// The series sum over rows n of sum_k exp(-|J^{nk}| h(alpha^n)) z^{J^{nk}}
// with h the support function of `domain`: every row is elementary with a
// supporting half-space of the domain as logarithmic image.
inline SeriesSpec mainthm_series(const HDomain &domain, std::span<const SimplexDirection> directions,
                                 std::int64_t per_row, std::string label = "constructed")
{
    detail::require(!directions.empty(), errc::invalid_argument, "construction needs at least one direction");
    std::vector<SimplexDirection> dirs(directions.begin(), directions.end());
    std::vector<double> values;
    values.reserve(dirs.size());
    for (std::size_t n = 0; n < dirs.size(); ++n) {
        detail::require(dirs[n].dimension() == domain.dimension(), errc::dimension_mismatch,
                        "direction does not match domain dimension");
        const double h = support_value(domain, dirs[n]);
        detail::require(std::isfinite(h), errc::infinite_support,
                        "support value is +inf at direction " + std::to_string(n) + "; it lies outside PS_h");
        values.push_back(h);
    }
    FamilyParams params;
    params.per_row = per_row;
    params.directions = dirs;
    SupportWeighted rule(SampledFunction(std::move(dirs), std::move(values)), std::move(params));
    return SeriesSpec(domain.dimension(), CoefficientRule{std::move(rule)}, std::move(label));
}

// Row n of a support-weighted series as an explicit table scaled by `factor`.
inline SeriesSpec family_row(const SeriesSpec &s, std::size_t row, double factor = 1.0)
{
    const auto *rule = std::get_if<SupportWeighted>(&s.rule().node);
    detail::require(rule != nullptr, errc::invalid_argument, "family_row needs a support-weighted series");
    detail::require(row < rule->family().row_count(), errc::invalid_argument, "family row out of range");
    std::map<MultiIndex, complex> terms;
    for (const auto &j : rule->family().rows[row]) {
        const double lc = rule->log_coefficient(j);
        if (lc != -infinity) {
            terms.emplace(j, complex(factor * std::exp(lc)));
        }
    }
    return explicit_table(s.dimension(), std::move(terms), s.label() + "/row" + std::to_string(row + 1));
}

} // namespace reinhardt

#endif
