#ifndef REINHARDT_DECOMPOSE_HPP
#define REINHARDT_DECOMPOSE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <reinhardt/construct.hpp>
#include <reinhardt/convex.hpp>
#include <reinhardt/error.hpp>
#include <reinhardt/grid.hpp>
#include <reinhardt/hadamard.hpp>
#include <reinhardt/index.hpp>
#include <reinhardt/series.hpp>

namespace reinhardt
{

struct ElementaryPart {
    SimplexDirection direction;
    // Sub-series of the input on this row (explicit, truncated at the working degree).
    SeriesSpec series;
    // max ln|c_J|/|J| over the row's tail window; -inf when the tail is empty.
    double log_growth = -infinity;
    // {<direction, s> + log_growth < 0}; absent when the tail is empty.
    std::optional<HalfSpace> halfspace;
    // Degree-weighted mean projection of the row's tail terms, when present.
    std::optional<SimplexDirection> tail_direction;
    std::size_t supported_terms = 0;
};

struct ElementaryDecomposition {
    std::vector<ElementaryPart> parts;
    complex constant{0, 0};
    bool constant_absorbed = false;
    // Row of every supported index with 1 <= |J| <= max_degree.
    std::map<MultiIndex, std::size_t> assignment;
    std::int64_t max_degree = 0;
    std::size_t dimension = 0;
};

namespace detail
{

inline void check_directions(std::span<const SimplexDirection> directions, std::size_t n)
{
    require(!directions.empty(), errc::invalid_argument, "decomposition needs at least one direction");
    for (std::size_t a = 0; a < directions.size(); ++a) {
        require(directions[a].dimension() == n, errc::dimension_mismatch, "direction does not match series dimension");
        for (std::size_t b = 0; b < a; ++b) {
            require(l1_distance(directions[a], directions[b]) > 1e-10, errc::invalid_argument,
                    "decomposition directions must be pairwise distinct");
        }
    }
}

} // namespace detail

// Row of J: the nearest direction in l1, ties to the smallest row.
inline std::size_t route(const MultiIndex &j, std::span<const SimplexDirection> directions)
{
    const auto p = project(j);
    std::size_t best = 0;
    double best_dist = infinity;
    for (std::size_t n = 0; n < directions.size(); ++n) {
        const double d = l1_distance(p, directions[n]);
        if (d < best_dist - 1e-12) {
            best = n;
            best_dist = d;
        }
    }
    return best;
}

// Splits s into monomial-wise disjoint sub-series g_n by routing every index
// of degree 1..K to its nearest direction. Coefficients are copied, never
// recomputed.
inline ElementaryDecomposition decompose_elementary(const SeriesSpec &s, std::span<const SimplexDirection> directions,
                                                    std::int64_t max_degree = default_degree,
                                                    bool absorb_constant = false)
{
    detail::require(max_degree >= 1, errc::invalid_argument, "decomposition needs K >= 1");
    detail::check_directions(directions, s.dimension());
    const auto m = directions.size();
    const auto [tail_lo, tail_hi] = tail_degrees(max_degree);

    std::vector<std::map<MultiIndex, complex>> rows(m);
    std::vector<std::vector<TailTerm>> tails(m);
    ElementaryDecomposition out;
    out.max_degree = max_degree;
    out.dimension = s.dimension();
    for (std::int64_t k = 1; k <= max_degree; ++k) {
        for_each_index_of_degree(s.dimension(), k, [&](const MultiIndex &j) {
            if (!detail::rule_may_be_nonzero(s.rule(), j)) {
                return;
            }
            const complex c = detail::rule_value(s.rule(), j);
            if (c == complex(0)) {
                return;
            }
            const auto n = route(j, directions);
            rows[n].emplace(j, c);
            out.assignment.emplace(j, n);
            if (k >= tail_lo && k <= tail_hi) {
                tails[n].push_back({j, project(j).coords(), log_abs_coefficient(s, j) / static_cast<double>(k)});
            }
        });
    }
    out.constant = coefficient(s, MultiIndex::zero(s.dimension()));
    if (absorb_constant && out.constant != complex(0)) {
        rows[0].emplace(MultiIndex::zero(s.dimension()), out.constant);
        out.constant_absorbed = true;
    }
    for (std::size_t n = 0; n < m; ++n) {
        ElementaryPart part{directions[n],
                            explicit_table(s.dimension(), std::move(rows[n]), s.label() + "/g" + std::to_string(n + 1)),
                            -infinity,
                            std::nullopt,
                            std::nullopt,
                            0};
        part.supported_terms = std::get<ExplicitTable>(part.series.rule().node).terms.size();
        if (!tails[n].empty()) {
            auto [alpha_hat, growth] = tail_direction_and_growth(tails[n], s.dimension());
            part.log_growth = growth;
            part.tail_direction = std::move(alpha_hat);
            part.halfspace = HalfSpace{directions[n], -growth};
        }
        out.parts.push_back(std::move(part));
    }
    return out;
}

struct ExactnessReport {
    // Every supported index sits in exactly one row with a bitwise-equal coefficient.
    bool partition_exact = true;
    std::optional<MultiIndex> witness;
    double original_partial = 0;
    // Row terms summed back in canonical order (ascending degree, lexicographic).
    double reassembled_partial = 0;
    // Sum of per-row partial sums plus |g_0|; differs from the above only by rounding.
    double row_sum_partial = 0;
};

inline ExactnessReport exactness_check(const SeriesSpec &s, const ElementaryDecomposition &d, std::span<const double> r)
{
    check_dimension(s, r.size());
    ExactnessReport out;
    for (std::int64_t k = 0; k <= d.max_degree; ++k) {
        for_each_index_of_degree(s.dimension(), k, [&](const MultiIndex &j) {
            const complex original = detail::rule_may_be_nonzero(s.rule(), j) ? detail::rule_value(s.rule(), j) : complex(0);
            complex routed(0);
            std::size_t holders = 0;
            for (const auto &p : d.parts) {
                const auto &terms = std::get<ExplicitTable>(p.series.rule().node).terms;
                if (auto it = terms.find(j); it != terms.end()) {
                    routed = it->second;
                    ++holders;
                }
            }
            if (k == 0 && !d.constant_absorbed) {
                routed = d.constant;
                holders += d.constant != complex(0) ? 1 : 0;
            }
            const bool ok = original == complex(0) ? holders == 0 : (holders == 1 && routed == original);
            if (!ok && out.partition_exact) {
                out.partition_exact = false;
                out.witness = j;
            }
        });
    }
    out.original_partial = partial_sum_abs(s, r, d.max_degree);
    // Canonical-order reassembly mirrors partial_sum_abs term for term.
    double total = 0;
    for (std::int64_t k = 0; k <= d.max_degree; ++k) {
        double block = 0;
        for_each_index_of_degree(s.dimension(), k, [&](const MultiIndex &j) {
            if (k == 0 && !d.constant_absorbed) {
                if (d.constant != complex(0)) {
                    block += detail::abs_term(d.constant, r, j);
                }
                return;
            }
            for (const auto &p : d.parts) {
                const auto &terms = std::get<ExplicitTable>(p.series.rule().node).terms;
                if (auto it = terms.find(j); it != terms.end()) {
                    block += detail::abs_term(it->second, r, j);
                }
            }
        });
        total += block;
    }
    out.reassembled_partial = total;
    out.row_sum_partial = d.constant_absorbed ? 0.0 : std::abs(d.constant);
    for (const auto &p : d.parts) {
        out.row_sum_partial += partial_sum_abs(p.series, r, d.max_degree);
    }
    return out;
}

struct SimplePart {
    SeriesSpec series;
    // H_n = {<alpha^n, s> - h(alpha^n) < 0}
    HalfSpace halfspace;
    // H_{n-1} for n >= 2: the part's wedge is halfspace ∩ previous.
    std::optional<HalfSpace> previous;

    bool contains(std::span<const double> s) const
    {
        return halfspace.contains(s) && (!previous || previous->contains(s));
    }
};

struct SimpleDecomposition {
    std::vector<SimplePart> parts;
    // g_n (constant absorbed into g_1) and f_n, row by row.
    std::vector<SeriesSpec> g_rows;
    std::vector<SeriesSpec> f_rows;
    std::int64_t max_degree = 0;

    // Membership in the intersection of all wedges.
    bool in_wedges(std::span<const double> s) const
    {
        for (const auto &p : parts) {
            if (!p.contains(s)) {
                return false;
            }
        }
        return true;
    }
};

// sigma_1 = g_1 + f_1 and sigma_{n+1} = (g_{n+1} + f_{n+1}/(n+1)) - f_n/n, where
// g_n are the elementary rows of s and f_n the rows of the constructed series
// for `domain`; the first M sigmas telescope to sum g_n + f_M/M.
inline SimpleDecomposition decompose_simple(const SeriesSpec &s, const HDomain &domain,
                                            std::span<const SimplexDirection> directions,
                                            std::int64_t max_degree = default_degree)
{
    detail::require(directions.size() >= 2, errc::need_two_directions, "wedges need at least two directions");
    detail::require(domain.dimension() == s.dimension(), errc::dimension_mismatch,
                    "domain does not match series dimension");
    auto elementary = decompose_elementary(s, directions, max_degree, true);
    const auto f_series = mainthm_series(domain, directions, max_degree, s.label() + "/f");
    const auto &weights = std::get<SupportWeighted>(f_series.rule().node).weights();

    SimpleDecomposition out;
    out.max_degree = max_degree;
    const auto m = directions.size();
    for (std::size_t n = 0; n < m; ++n) {
        out.g_rows.push_back(elementary.parts[n].series);
        out.f_rows.push_back(family_row(f_series, n));
    }
    std::vector<HalfSpace> h;
    for (std::size_t n = 0; n < m; ++n) {
        h.push_back(HalfSpace{directions[n], weights.values()[n]});
    }
    for (std::size_t n = 0; n < m; ++n) {
        std::vector<SeriesSpec> members{out.g_rows[n], family_row(f_series, n, 1.0 / static_cast<double>(n + 1))};
        if (n > 0) {
            members.push_back(family_row(f_series, n - 1, -1.0 / static_cast<double>(n)));
        }
        SimplePart part{sum_of(members, s.label() + "/sigma" + std::to_string(n + 1)), h[n], std::nullopt};
        if (n > 0) {
            part.previous = h[n - 1];
        }
        out.parts.push_back(std::move(part));
    }
    return out;
}

struct TelescopingReport {
    complex sigma_total;
    complex expected;
    double relative_error;
};

// Compares sum_n sigma_n with sum_n g_n + f_M/M on degree-K partial sums at z.
inline TelescopingReport telescoping_check(const SimpleDecomposition &d, std::span<const complex> z)
{
    TelescopingReport out{};
    for (const auto &p : d.parts) {
        out.sigma_total += partial_sum(p.series, z, d.max_degree);
    }
    for (const auto &g : d.g_rows) {
        out.expected += partial_sum(g, z, d.max_degree);
    }
    const auto m = static_cast<double>(d.f_rows.size());
    out.expected += partial_sum(d.f_rows.back(), z, d.max_degree) / m;
    const double scale = std::max(std::abs(out.expected), 1e-300);
    out.relative_error = std::abs(out.sigma_total - out.expected) / scale;
    return out;
}

struct SumDomainOutcome {
    std::vector<double> point;
    Membership sum;
    Membership intersection;
};

struct SumDomainReport {
    std::size_t points = 0;
    std::size_t decisive = 0;
    std::size_t agreeing = 0;
    // Decisive points where the two classifications differ.
    std::vector<SumDomainOutcome> disagreements;
    // Every disagreement has the parts converging where the sum does not: only
    // the containment D ⊆ ∩ D_j survives.
    bool containment_only = false;

    double fraction() const noexcept
    {
        return decisive == 0 ? 1.0 : static_cast<double>(agreeing) / static_cast<double>(decisive);
    }
};

// Compares the domain of sum(parts) (or of `reference`, when the parts are a
// truncation of an infinite family) with the intersection of the parts'
// domains on a grid.
inline SumDomainReport sum_domain_check(const std::vector<SeriesSpec> &parts, const Grid &grid,
                                        std::int64_t max_degree = default_degree, double epsilon = default_epsilon,
                                        const std::optional<SeriesSpec> &reference = std::nullopt)
{
    detail::require(!parts.empty(), errc::invalid_argument, "sum_domain_check needs at least one part");
    const auto n = parts.front().dimension();
    for (const auto &p : parts) {
        detail::require(p.dimension() == n, errc::dimension_mismatch, "parts disagree in dimension");
    }
    detail::require(grid.dimension() == n, errc::dimension_mismatch, "grid does not match series dimension");
    for (std::int64_t k = 0; k <= max_degree; ++k) {
        for_each_index_of_degree(n, k, [&](const MultiIndex &j) {
            std::size_t holders = 0;
            for (const auto &p : parts) {
                holders += detail::rule_may_be_nonzero(p.rule(), j) ? 1 : 0;
            }
            detail::require(holders <= 1, errc::supports_overlap, "parts share the monomial " + to_string(j));
        });
    }
    const auto total = reference ? *reference : sum_of(parts);
    const auto total_table = TailTable::for_degree(total, max_degree);
    std::vector<TailTable> tables;
    for (const auto &p : parts) {
        tables.push_back(TailTable::for_degree(p, max_degree));
    }

    SumDomainReport out;
    out.points = grid.size();
    bool only_containment = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto s = grid.point(i);
        const auto sum_class = classify(total_table, s, epsilon).membership;
        auto meet = Membership::inside;
        for (const auto &t : tables) {
            const auto c = classify(t, s, epsilon).membership;
            if (c == Membership::outside) {
                meet = Membership::outside;
                break;
            }
            if (c == Membership::unknown) {
                meet = Membership::unknown;
            }
        }
        if (sum_class == Membership::unknown || meet == Membership::unknown) {
            continue;
        }
        ++out.decisive;
        if (sum_class == meet) {
            ++out.agreeing;
        } else {
            only_containment = only_containment && meet == Membership::inside;
            out.disagreements.push_back({s, sum_class, meet});
        }
    }
    out.containment_only = !out.disagreements.empty() && only_containment;
    return out;
}

} // namespace reinhardt

#endif
