#ifndef REINHARDT_SERIES_HPP
#define REINHARDT_SERIES_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include <reinhardt/error.hpp>
#include <reinhardt/family.hpp>
#include <reinhardt/index.hpp>
#include <reinhardt/sampled_function.hpp>

namespace reinhardt
{

using complex = std::complex<double>;

inline constexpr double infinity = std::numeric_limits<double>::infinity();

// Finite map J -> c_J; absent indices have coefficient zero.
struct ExplicitTable {
    std::map<MultiIndex, complex> terms;
};

// c_J = 1 for every J.
struct FullGeometric {
};

// c_{k J0} = ratio^k for k >= 1, zero elsewhere.
struct RayGeometric {
    MultiIndex direction;
    complex ratio;
};

// c_J = exp(-|J| h(alpha^n)) on row n of a generated index family, zero
// elsewhere. The weights must contain a value for every family direction.
class SupportWeighted
{
public:
    SupportWeighted(SampledFunction weights, FamilyParams params)
    {
        auto data = std::make_shared<Data>();
        data->weights = std::move(weights);
        data->family = build_family(std::move(params));
        const auto &dirs = data->family.params.directions;
        data->row_weight.reserve(dirs.size());
        for (std::size_t n = 0; n < dirs.size(); ++n) {
            auto v = data->weights.lookup(dirs[n]);
            detail::require(v.has_value(), errc::invalid_argument,
                            "support-weighted rule has no weight for family direction " + std::to_string(n));
            data->row_weight.push_back(*v);
            for (const auto &j : data->family.rows[n]) {
                data->row_of.emplace(j, n);
            }
        }
        m_data = std::move(data);
    }

    const SampledFunction &weights() const noexcept
    {
        return m_data->weights;
    }
    const IndexFamily &family() const noexcept
    {
        return m_data->family;
    }
    std::size_t dimension() const noexcept
    {
        return m_data->family.params.directions.front().dimension();
    }

    std::optional<std::size_t> row_of(const MultiIndex &j) const
    {
        auto it = m_data->row_of.find(j);
        if (it == m_data->row_of.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    // -|J| h(alpha^n), or -inf off the family (or for an infinite weight).
    double log_coefficient(const MultiIndex &j) const
    {
        auto row = row_of(j);
        if (!row) {
            return -infinity;
        }
        const double h = m_data->row_weight[*row];
        if (h == infinity) {
            return -infinity;
        }
        return -static_cast<double>(j.degree()) * h;
    }

private:
    struct Data {
        SampledFunction weights;
        IndexFamily family;
        std::vector<double> row_weight;
        std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> row_of;
    };
    std::shared_ptr<const Data> m_data;
};

struct CoefficientRule;

// Index-wise sum of member rules; like terms combine.
struct Sum {
    std::vector<CoefficientRule> members;
};

struct CoefficientRule {
    std::variant<ExplicitTable, FullGeometric, RayGeometric, SupportWeighted, Sum> node;
};

namespace detail
{

inline std::optional<std::int64_t> ray_multiple(const MultiIndex &base, const MultiIndex &j)
{
    if (j.is_zero()) {
        return std::nullopt;
    }
    std::int64_t m = 0;
    for (std::size_t i = 0; i < base.dimension(); ++i) {
        if (base[i] != 0) {
            if (j[i] % base[i] != 0) {
                return std::nullopt;
            }
            m = j[i] / base[i];
            break;
        }
    }
    if (m < 1) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i < base.dimension(); ++i) {
        if (j[i] != base[i] * m) {
            return std::nullopt;
        }
    }
    return m;
}

// Integer power by squaring; exact for exactly representable results.
template <typename T>
T ipow(T base, std::int64_t exponent)
{
    T out(1);
    while (exponent > 0) {
        if (exponent & 1) {
            out *= base;
        }
        base *= base;
        exponent >>= 1;
    }
    return out;
}

inline complex ray_power(complex ratio, std::int64_t m)
{
    if (ratio.imag() == 0) {
        return {std::pow(ratio.real(), static_cast<double>(m)), 0.0};
    }
    // Squaring keeps Gaussian-integer powers exact.
    return ipow(ratio, m);
}

inline bool rule_may_be_nonzero(const CoefficientRule &rule, const MultiIndex &j)
{
    return std::visit(
        [&](const auto &r) -> bool {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, ExplicitTable>) {
                auto it = r.terms.find(j);
                return it != r.terms.end() && it->second != complex(0);
            } else if constexpr (std::is_same_v<T, FullGeometric>) {
                return true;
            } else if constexpr (std::is_same_v<T, RayGeometric>) {
                return r.ratio != complex(0) && ray_multiple(r.direction, j).has_value();
            } else if constexpr (std::is_same_v<T, SupportWeighted>) {
                return r.log_coefficient(j) != -infinity;
            } else {
                for (const auto &m : r.members) {
                    if (rule_may_be_nonzero(m, j)) {
                        return true;
                    }
                }
                return false;
            }
        },
        rule.node);
}

inline complex rule_value(const CoefficientRule &rule, const MultiIndex &j)
{
    return std::visit(
        [&](const auto &r) -> complex {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, ExplicitTable>) {
                auto it = r.terms.find(j);
                return it == r.terms.end() ? complex(0) : it->second;
            } else if constexpr (std::is_same_v<T, FullGeometric>) {
                return complex(1);
            } else if constexpr (std::is_same_v<T, RayGeometric>) {
                auto m = ray_multiple(r.direction, j);
                return m ? ray_power(r.ratio, *m) : complex(0);
            } else if constexpr (std::is_same_v<T, SupportWeighted>) {
                const double lc = r.log_coefficient(j);
                return lc == -infinity ? complex(0) : complex(std::exp(lc));
            } else {
                complex acc(0);
                for (const auto &m : r.members) {
                    acc += rule_value(m, j);
                }
                return acc;
            }
        },
        rule.node);
}

// |c| = exp(log_abs), c = |c| * phase; zero is log_abs = -inf.
struct LogValue {
    double log_abs = -infinity;
    complex phase{1, 0};
};

inline LogValue to_log_value(complex v)
{
    if (v == complex(0)) {
        return {};
    }
    const double a = std::abs(v);
    return {std::log(a), v / a};
}

inline LogValue rule_log_value(const CoefficientRule &rule, const MultiIndex &j)
{
    return std::visit(
        [&](const auto &r) -> LogValue {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, ExplicitTable>) {
                auto it = r.terms.find(j);
                return it == r.terms.end() ? LogValue{} : to_log_value(it->second);
            } else if constexpr (std::is_same_v<T, FullGeometric>) {
                return {0.0, complex(1)};
            } else if constexpr (std::is_same_v<T, RayGeometric>) {
                auto m = ray_multiple(r.direction, j);
                if (!m || r.ratio == complex(0)) {
                    return {};
                }
                const auto md = static_cast<double>(*m);
                return {md * std::log(std::abs(r.ratio)), std::polar(1.0, md * std::arg(r.ratio))};
            } else if constexpr (std::is_same_v<T, SupportWeighted>) {
                return {r.log_coefficient(j), complex(1)};
            } else {
                // Scale by the largest member magnitude so that huge or tiny
                // members combine without overflow.
                std::vector<LogValue> parts;
                double top = -infinity;
                for (const auto &m : r.members) {
                    auto v = rule_log_value(m, j);
                    if (v.log_abs != -infinity) {
                        top = std::max(top, v.log_abs);
                        parts.push_back(v);
                    }
                }
                if (parts.empty()) {
                    return {};
                }
                if (parts.size() == 1) {
                    return parts.front();
                }
                complex acc(0);
                for (const auto &p : parts) {
                    acc += std::exp(p.log_abs - top) * p.phase;
                }
                auto scaled = to_log_value(acc);
                if (scaled.log_abs == -infinity) {
                    return {};
                }
                return {top + scaled.log_abs, scaled.phase};
            }
        },
        rule.node);
}

inline std::size_t rule_dimension_check(const CoefficientRule &rule, std::size_t n)
{
    std::visit(
        [&](const auto &r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, ExplicitTable>) {
                for (const auto &[j, v] : r.terms) {
                    require(j.dimension() == n, errc::dimension_mismatch,
                            "explicit table index " + to_string(j) + " has the wrong dimension");
                    require(std::isfinite(v.real()) && std::isfinite(v.imag()), errc::invalid_argument,
                            "explicit table coefficients must be finite");
                }
            } else if constexpr (std::is_same_v<T, RayGeometric>) {
                require(r.direction.dimension() == n, errc::dimension_mismatch, "ray direction has the wrong dimension");
                require(!r.direction.is_zero(), errc::invalid_argument, "ray direction must be nonzero");
            } else if constexpr (std::is_same_v<T, SupportWeighted>) {
                require(r.dimension() == n, errc::dimension_mismatch, "support-weighted family has the wrong dimension");
            } else if constexpr (std::is_same_v<T, Sum>) {
                for (const auto &m : r.members) {
                    rule_dimension_check(m, n);
                }
            }
        },
        rule.node);
    return n;
}

} // namespace detail

// A power series sum c_J z^J described by a coefficient rule.
class SeriesSpec
{
public:
    SeriesSpec(std::size_t dimension, CoefficientRule rule, std::string label = {})
        : m_dimension(dimension), m_rule(std::move(rule)), m_label(std::move(label))
    {
        detail::require(m_dimension >= 1, errc::invalid_argument, "series dimension must be at least 1");
        detail::rule_dimension_check(m_rule, m_dimension);
    }

    std::size_t dimension() const noexcept
    {
        return m_dimension;
    }
    const CoefficientRule &rule() const noexcept
    {
        return m_rule;
    }
    const std::string &label() const noexcept
    {
        return m_label;
    }

private:
    std::size_t m_dimension;
    CoefficientRule m_rule;
    std::string m_label;
};

inline SeriesSpec full_geometric(std::size_t n, std::string label = "full_geometric")
{
    return SeriesSpec(n, CoefficientRule{FullGeometric{}}, std::move(label));
}

inline SeriesSpec ray_geometric(MultiIndex direction, complex ratio, std::string label = "ray_geometric")
{
    const auto n = direction.dimension();
    return SeriesSpec(n, CoefficientRule{RayGeometric{std::move(direction), ratio}}, std::move(label));
}

inline SeriesSpec explicit_table(std::size_t n, std::map<MultiIndex, complex> terms, std::string label = "explicit")
{
    return SeriesSpec(n, CoefficientRule{ExplicitTable{std::move(terms)}}, std::move(label));
}

inline SeriesSpec sum_of(const std::vector<SeriesSpec> &members, std::string label = "sum")
{
    detail::require(!members.empty(), errc::invalid_argument, "a sum needs at least one member");
    Sum sum;
    for (const auto &m : members) {
        detail::require(m.dimension() == members.front().dimension(), errc::dimension_mismatch,
                        "sum members disagree in dimension");
        sum.members.push_back(m.rule());
    }
    return SeriesSpec(members.front().dimension(), CoefficientRule{std::move(sum)}, std::move(label));
}

inline void check_dimension(const SeriesSpec &s, const MultiIndex &j)
{
    detail::require(j.dimension() == s.dimension(), errc::dimension_mismatch,
                    "index " + to_string(j) + " does not match series dimension " + std::to_string(s.dimension()));
}

inline void check_dimension(const SeriesSpec &s, std::size_t n)
{
    detail::require(n == s.dimension(), errc::dimension_mismatch,
                    "point of dimension " + std::to_string(n) + " does not match series dimension "
                        + std::to_string(s.dimension()));
}

inline complex coefficient(const SeriesSpec &s, const MultiIndex &j)
{
    check_dimension(s, j);
    return detail::rule_value(s.rule(), j);
}

inline bool may_be_nonzero(const SeriesSpec &s, const MultiIndex &j)
{
    check_dimension(s, j);
    return detail::rule_may_be_nonzero(s.rule(), j);
}

// ln|c_J|, computed without forming c_J where the rule allows it.
inline double log_abs_coefficient(const SeriesSpec &s, const MultiIndex &j)
{
    check_dimension(s, j);
    return detail::rule_log_value(s.rule(), j).log_abs;
}

// ln|c_J| / |J|; -inf for a zero coefficient.
inline double log_abs_coeff_normalized(const SeriesSpec &s, const MultiIndex &j)
{
    detail::require(j.degree() >= 1, errc::invalid_argument, "normalized log-coefficient needs |J| >= 1");
    const double la = log_abs_coefficient(s, j);
    return la == -infinity ? -infinity : la / static_cast<double>(j.degree());
}

// Calls f(J, ln|c_J|) for each index of degree k with a nonzero coefficient.
template <typename F>
void for_each_supported(const SeriesSpec &s, std::int64_t k, F &&f)
{
    for_each_index_of_degree(s.dimension(), k, [&](const MultiIndex &j) {
        if (!detail::rule_may_be_nonzero(s.rule(), j)) {
            return;
        }
        const double la = detail::rule_log_value(s.rule(), j).log_abs;
        if (la != -infinity) {
            f(j, la);
        }
    });
}

namespace detail
{

inline std::vector<double> log_point(std::span<const double> r)
{
    std::vector<double> out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        require(r[i] >= 0 && !std::isnan(r[i]), errc::invalid_argument, "point coordinates must be non-negative");
        out[i] = std::log(r[i]);
    }
    return out;
}

// sum_i j_i ln r_i with 0 * ln 0 read as 0.
inline double log_monomial(const MultiIndex &j, std::span<const double> log_r)
{
    double acc = 0;
    for (std::size_t i = 0; i < log_r.size(); ++i) {
        if (j[i] != 0) {
            acc += static_cast<double>(j[i]) * log_r[i];
        }
    }
    return acc;
}

} // namespace detail

namespace detail
{

// |c| r^J, with a vanishing monomial winning over an infinite coefficient.
inline double abs_term(complex c, std::span<const double> r, const MultiIndex &j)
{
    double mono = 1;
    for (std::size_t i = 0; i < r.size(); ++i) {
        mono *= ipow(r[i], j[i]);
    }
    return mono == 0 ? 0.0 : std::abs(c) * mono;
}

} // namespace detail

// sum over |J| <= K of |c_J| r^J, in ascending degree and lexicographic order
// within a degree; overflow yields +inf.
inline double partial_sum_abs(const SeriesSpec &s, std::span<const double> r, std::int64_t max_degree)
{
    check_dimension(s, r.size());
    for (auto x : r) {
        detail::require(x >= 0 && !std::isnan(x), errc::invalid_argument, "point coordinates must be non-negative");
    }
    double total = 0;
    for (std::int64_t k = 0; k <= max_degree; ++k) {
        double block = 0;
        for_each_index_of_degree(s.dimension(), k, [&](const MultiIndex &j) {
            if (detail::rule_may_be_nonzero(s.rule(), j)) {
                block += detail::abs_term(detail::rule_value(s.rule(), j), r, j);
            }
        });
        total += block;
    }
    return total;
}

// sum over |J| <= K of c_J z^J at a complex point.
inline complex partial_sum(const SeriesSpec &s, std::span<const complex> z, std::int64_t max_degree)
{
    check_dimension(s, z.size());
    complex total(0);
    for (std::int64_t k = 0; k <= max_degree; ++k) {
        complex block(0);
        for_each_index_of_degree(s.dimension(), k, [&](const MultiIndex &j) {
            if (!detail::rule_may_be_nonzero(s.rule(), j)) {
                return;
            }
            complex mono(1);
            for (std::size_t i = 0; i < z.size(); ++i) {
                mono *= detail::ipow(z[i], j[i]);
            }
            block += detail::rule_value(s.rule(), j) * mono;
        });
        total += block;
    }
    return total;
}

// a_k = sum over |J| = k of c_J r^J, k = 0..K: the coefficients of the
// one-variable slice zeta -> g(zeta r).
inline std::vector<complex> slice_coefficients(const SeriesSpec &s, std::span<const double> r, std::int64_t max_degree)
{
    check_dimension(s, r.size());
    for (auto x : r) {
        detail::require(x > 0 && std::isfinite(x), errc::invalid_argument, "slice point coordinates must be positive");
    }
    std::vector<complex> out;
    out.reserve(static_cast<std::size_t>(max_degree + 1));
    for (std::int64_t k = 0; k <= max_degree; ++k) {
        complex block(0);
        for_each_index_of_degree(s.dimension(), k, [&](const MultiIndex &j) {
            if (!detail::rule_may_be_nonzero(s.rule(), j)) {
                return;
            }
            double mono = 1;
            for (std::size_t i = 0; i < r.size(); ++i) {
                mono *= detail::ipow(r[i], j[i]);
            }
            block += detail::rule_value(s.rule(), j) * mono;
        });
        out.push_back(block);
    }
    return out;
}

} // namespace reinhardt

#endif
