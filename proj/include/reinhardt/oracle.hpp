#ifndef REINHARDT_ORACLE_HPP
#define REINHARDT_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include <reinhardt/error.hpp>
#include <reinhardt/grid.hpp>
#include <reinhardt/hadamard.hpp>
#include <reinhardt/index.hpp>
#include <reinhardt/series.hpp>

namespace reinhardt
{

inline constexpr double default_probe_margin = 0.1;

enum class Convergence { converges, diverges, inconclusive };

inline std::string_view convergence_name(Convergence c) noexcept
{
    switch (c) {
        case Convergence::converges:
            return "converges";
        case Convergence::diverges:
            return "diverges";
        case Convergence::inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

struct ProbeVerdict {
    Convergence verdict = Convergence::inconclusive;
    // (B_b / B_a)^(1/(b-a)) between the last supported blocks at or below K and K/2.
    double tail_ratio = std::numeric_limits<double>::quiet_NaN();
    // sum over |J| <= K of |c_J| r^J
    double partial = 0;
    // max over tail blocks of B_k^(1/k): bounds the tail from above.
    double block_root = 0;
    // max over tail blocks of (max single term)^(1/k): terms fail to decay when > 1.
    double term_root = 0;
};

// Absolute-convergence probe at r = tau(z) from degree-block sums
// B_k = sum over |J| = k of |c_J| r^J, evaluated directly in r-space.
//
// Diverges when some tail term exceeds (1 + margin)^k or the partial sum
// overflows; converges when every tail block stays below (1 - margin)^k;
// otherwise inconclusive. Needs at least two nonzero tail blocks.
inline ProbeVerdict probe(const SeriesSpec &s, std::span<const double> r, std::int64_t max_degree = default_degree,
                          double margin = default_probe_margin)
{
    check_dimension(s, r.size());
    detail::require(max_degree >= 32, errc::invalid_argument, "probe needs K >= 32");
    detail::require(margin > 0 && margin < 0.5, errc::invalid_argument, "probe margin must lie in (0, 0.5)");
    for (auto x : r) {
        detail::require(x >= 0 && std::isfinite(x), errc::invalid_argument, "probe point must be non-negative and finite");
    }
    std::vector<double> block(static_cast<std::size_t>(max_degree + 1), 0.0);
    std::vector<double> largest(block.size(), 0.0);
    for (std::int64_t k = 0; k <= max_degree; ++k) {
        double acc = 0;
        double top = 0;
        for_each_index_of_degree(s.dimension(), k, [&](const MultiIndex &j) {
            if (!detail::rule_may_be_nonzero(s.rule(), j)) {
                return;
            }
            double term = std::abs(detail::rule_value(s.rule(), j));
            for (std::size_t i = 0; i < r.size(); ++i) {
                term *= detail::ipow(r[i], j[i]);
            }
            acc += term;
            top = std::max(top, term);
        });
        block[static_cast<std::size_t>(k)] = acc;
        largest[static_cast<std::size_t>(k)] = top;
    }

    ProbeVerdict out;
    for (auto b : block) {
        out.partial += b;
    }
    const std::int64_t lo = max_degree / 2;
    std::int64_t supported = 0;
    std::int64_t last = -1;
    std::int64_t last_half = -1;
    for (std::int64_t k = 1; k <= max_degree; ++k) {
        const auto b = block[static_cast<std::size_t>(k)];
        if (b > 0) {
            if (k <= lo) {
                last_half = k;
            }
            last = k;
        }
        if (k < lo || !(b > 0)) {
            continue;
        }
        ++supported;
        const double inv = 1.0 / static_cast<double>(k);
        out.block_root = std::max(out.block_root, std::pow(b, inv));
        out.term_root = std::max(out.term_root, std::pow(largest[static_cast<std::size_t>(k)], inv));
    }
    if (last_half > 0 && last > last_half) {
        out.tail_ratio = std::pow(block[static_cast<std::size_t>(last)] / block[static_cast<std::size_t>(last_half)],
                                  1.0 / static_cast<double>(last - last_half));
    }
    if (!std::isfinite(out.partial)) {
        out.verdict = Convergence::diverges;
    } else if (supported < 2) {
        out.verdict = Convergence::inconclusive;
    } else if (out.term_root > 1 + margin) {
        out.verdict = Convergence::diverges;
    } else if (out.block_root < 1 - margin) {
        out.verdict = Convergence::converges;
    }
    return out;
}

struct GridOutcome {
    std::vector<double> point;
    MembershipVerdict estimate;
    ProbeVerdict probe;
};

struct AgreementReport {
    std::vector<GridOutcome> outcomes;
    std::size_t decisive = 0;
    std::size_t agreeing = 0;

    // Vacuously 1 when no point is decisive for both.
    double fraction() const noexcept
    {
        return decisive == 0 ? 1.0 : static_cast<double>(agreeing) / static_cast<double>(decisive);
    }
};

inline bool is_decisive(const GridOutcome &o)
{
    return o.estimate.membership != Membership::unknown && o.probe.verdict != Convergence::inconclusive;
}

inline bool agrees(const GridOutcome &o)
{
    return (o.estimate.membership == Membership::inside && o.probe.verdict == Convergence::converges)
           || (o.estimate.membership == Membership::outside && o.probe.verdict == Convergence::diverges);
}

// classify at each log-point s against probe at r = exp(s).
inline AgreementReport agreement_grid(const SeriesSpec &s, const Grid &grid, std::int64_t max_degree = default_degree,
                                      double epsilon = default_epsilon, double margin = default_probe_margin)
{
    check_dimension(s, grid.dimension());
    const auto table = TailTable::for_degree(s, max_degree);
    AgreementReport report;
    report.outcomes.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto p = grid.point(i);
        std::vector<double> r(p.size());
        std::transform(p.begin(), p.end(), r.begin(), [](double x) { return std::exp(x); });
        GridOutcome o{p, classify(table, p, epsilon), probe(s, r, max_degree, margin)};
        if (is_decisive(o)) {
            ++report.decisive;
            report.agreeing += agrees(o) ? 1 : 0;
        }
        report.outcomes.push_back(std::move(o));
    }
    return report;
}

} // namespace reinhardt

#endif
