#ifndef REINHARDT_IO_HPP
#define REINHARDT_IO_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <reinhardt/convex.hpp>
#include <reinhardt/error.hpp>
#include <reinhardt/family.hpp>
#include <reinhardt/index.hpp>
#include <reinhardt/sampled_function.hpp>
#include <reinhardt/series.hpp>

// JSON formats:
//
//   series   {"dimension": N, "label": "...", "rule": RULE}
//   RULE     {"kind": "full_geometric"}
//            {"kind": "ray_geometric", "direction": [1,1], "ratio": [re, im]}
//            {"kind": "explicit_table", "terms": [{"index": [1,1], "value": [re, im]}, ...]}
//            {"kind": "support_weighted", "weights": SAMPLES,
//             "family": {"base": 8, "stride": 1, "per_row": K, "directions": [[...], ...]}}
//            {"kind": "sum", "members": [RULE, ...]}
//   hdomain  {"dimension": N, "halfspaces": [{"normal": [...], "offset": c}, ...]}
//   SAMPLES  {"directions": [[...], ...], "values": [v, ..., "inf"]}
//
// Complex numbers are [re, im] pairs (a bare number is read as real).
// Extended reals use the strings "inf" and "-inf".

namespace reinhardt::io
{

using json = nlohmann::json;

namespace detail
{

[[noreturn]] inline void bad(const std::string &what)
{
    reinhardt::detail::fail(errc::invalid_argument, what);
}

inline const json &field(const json &j, const char *key, const std::string &where)
{
    if (!j.is_object() || !j.contains(key)) {
        bad(where + ": missing field \"" + key + "\"");
    }
    return j.at(key);
}

} // namespace detail

inline json extended_to_json(double v)
{
    if (v == std::numeric_limits<double>::infinity()) {
        return "inf";
    }
    if (v == -std::numeric_limits<double>::infinity()) {
        return "-inf";
    }
    return v;
}

inline double extended_from_json(const json &j, const std::string &where)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "+inf") {
            return std::numeric_limits<double>::infinity();
        }
        if (s == "-inf") {
            return -std::numeric_limits<double>::infinity();
        }
        detail::bad(where + ": expected a number or \"inf\", got \"" + s + "\"");
    }
    if (!j.is_number()) {
        detail::bad(where + ": expected a number");
    }
    return j.get<double>();
}

inline json complex_to_json(complex c)
{
    return json::array({c.real(), c.imag()});
}

inline complex complex_from_json(const json &j, const std::string &where)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        detail::bad(where + ": complex numbers are [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline std::vector<double> reals_from_json(const json &j, const std::string &where)
{
    if (!j.is_array()) {
        detail::bad(where + ": expected an array of numbers");
    }
    std::vector<double> out;
    for (const auto &x : j) {
        if (!x.is_number()) {
            detail::bad(where + ": expected an array of numbers");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

// Directions are rays: any non-negative nonzero vector is rescaled onto PS_N.
inline SimplexDirection direction_from_json(const json &j, const std::string &where)
{
    try {
        return SimplexDirection::normalized(reals_from_json(j, where));
    } catch (const error &e) {
        detail::bad(where + ": " + e.what());
    }
}

inline json direction_to_json(const SimplexDirection &a)
{
    return a.coords();
}

// Accepts [[...], ...] or {"directions": [[...], ...]}.
inline std::vector<SimplexDirection> directions_from_json(const json &j, const std::string &where)
{
    const json &arr = j.is_object() ? detail::field(j, "directions", where) : j;
    if (!arr.is_array()) {
        detail::bad(where + ": expected a list of directions");
    }
    std::vector<SimplexDirection> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(direction_from_json(arr[i], where + " direction " + std::to_string(i)));
    }
    return out;
}

inline json directions_to_json(const std::vector<SimplexDirection> &dirs)
{
    json arr = json::array();
    for (const auto &d : dirs) {
        arr.push_back(direction_to_json(d));
    }
    return arr;
}

inline MultiIndex index_from_json(const json &j, const std::string &where)
{
    if (!j.is_array()) {
        detail::bad(where + ": multi-index must be an array of integers");
    }
    std::vector<std::int64_t> entries;
    for (const auto &x : j) {
        if (!x.is_number_integer() || x.get<std::int64_t>() < 0) {
            detail::bad(where + ": multi-index entries must be non-negative integers");
        }
        entries.push_back(x.get<std::int64_t>());
    }
    return MultiIndex(std::move(entries));
}

inline json sampled_function_to_json(const SampledFunction &f)
{
    json values = json::array();
    for (auto v : f.values()) {
        values.push_back(extended_to_json(v));
    }
    return {{"directions", directions_to_json(f.directions())}, {"values", std::move(values)}};
}

inline SampledFunction sampled_function_from_json(const json &j, const std::string &where)
{
    auto dirs = directions_from_json(detail::field(j, "directions", where), where);
    const auto &vals = detail::field(j, "values", where);
    if (!vals.is_array()) {
        detail::bad(where + ": \"values\" must be an array");
    }
    std::vector<double> values;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        values.push_back(extended_from_json(vals[i], where + " value " + std::to_string(i)));
    }
    try {
        return SampledFunction(std::move(dirs), std::move(values));
    } catch (const error &e) {
        detail::bad(where + ": " + e.what());
    }
}

inline json family_to_json(const FamilyParams &p)
{
    return {{"base", p.base}, {"stride", p.stride}, {"per_row", p.per_row}, {"directions", directions_to_json(p.directions)}};
}

inline FamilyParams family_from_json(const json &j, const std::string &where)
{
    FamilyParams p;
    p.base = j.value("base", std::int64_t{8});
    p.stride = j.value("stride", std::int64_t{1});
    p.per_row = detail::field(j, "per_row", where).get<std::int64_t>();
    p.directions = directions_from_json(detail::field(j, "directions", where), where);
    return p;
}

inline json rule_to_json(const CoefficientRule &rule)
{
    return std::visit(
        [](const auto &r) -> json {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, ExplicitTable>) {
                json terms = json::array();
                for (const auto &[j, v] : r.terms) {
                    terms.push_back({{"index", j.entries()}, {"value", complex_to_json(v)}});
                }
                return {{"kind", "explicit_table"}, {"terms", std::move(terms)}};
            } else if constexpr (std::is_same_v<T, FullGeometric>) {
                return {{"kind", "full_geometric"}};
            } else if constexpr (std::is_same_v<T, RayGeometric>) {
                return {{"kind", "ray_geometric"}, {"direction", r.direction.entries()}, {"ratio", complex_to_json(r.ratio)}};
            } else if constexpr (std::is_same_v<T, SupportWeighted>) {
                return {{"kind", "support_weighted"},
                        {"weights", sampled_function_to_json(r.weights())},
                        {"family", family_to_json(r.family().params)}};
            } else {
                json members = json::array();
                for (const auto &m : r.members) {
                    members.push_back(rule_to_json(m));
                }
                return {{"kind", "sum"}, {"members", std::move(members)}};
            }
        },
        rule.node);
}

inline CoefficientRule rule_from_json(const json &j, const std::string &where)
{
    const auto kind = detail::field(j, "kind", where);
    if (!kind.is_string()) {
        detail::bad(where + ": \"kind\" must be a string");
    }
    const auto k = kind.get<std::string>();
    if (k == "full_geometric") {
        return {FullGeometric{}};
    }
    if (k == "ray_geometric") {
        return {RayGeometric{index_from_json(detail::field(j, "direction", where), where + " direction"),
                             complex_from_json(detail::field(j, "ratio", where), where + " ratio")}};
    }
    if (k == "explicit_table") {
        ExplicitTable t;
        const auto &terms = detail::field(j, "terms", where);
        if (!terms.is_array()) {
            detail::bad(where + ": \"terms\" must be an array");
        }
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const auto w = where + " term " + std::to_string(i);
            auto idx = index_from_json(detail::field(terms[i], "index", w), w);
            auto val = complex_from_json(detail::field(terms[i], "value", w), w);
            if (!t.terms.emplace(std::move(idx), val).second) {
                detail::bad(w + ": duplicate index");
            }
        }
        return {std::move(t)};
    }
    if (k == "support_weighted") {
        auto weights = sampled_function_from_json(detail::field(j, "weights", where), where + " weights");
        auto family = family_from_json(detail::field(j, "family", where), where + " family");
        return {SupportWeighted(std::move(weights), std::move(family))};
    }
    if (k == "sum") {
        Sum sum;
        const auto &members = detail::field(j, "members", where);
        if (!members.is_array() || members.empty()) {
            detail::bad(where + ": \"members\" must be a non-empty array");
        }
        for (std::size_t i = 0; i < members.size(); ++i) {
            sum.members.push_back(rule_from_json(members[i], where + " member " + std::to_string(i)));
        }
        return {std::move(sum)};
    }
    detail::bad(where + ": unknown rule kind \"" + k + "\"");
}

inline json series_to_json(const SeriesSpec &s)
{
    return {{"dimension", s.dimension()}, {"label", s.label()}, {"rule", rule_to_json(s.rule())}};
}

inline SeriesSpec series_from_json(const json &j, const std::string &where)
{
    const auto &dim = detail::field(j, "dimension", where);
    if (!dim.is_number_integer() || dim.get<std::int64_t>() < 1) {
        detail::bad(where + ": \"dimension\" must be a positive integer");
    }
    try {
        return SeriesSpec(dim.get<std::size_t>(), rule_from_json(detail::field(j, "rule", where), where),
                          j.value("label", std::string{}));
    } catch (const error &e) {
        if (e.code() == errc::invalid_argument) {
            throw;
        }
        reinhardt::detail::fail(e.code(), where + ": " + e.what());
    }
}

inline json hdomain_to_json(const HDomain &d)
{
    json hs = json::array();
    for (const auto &h : d.halfspaces()) {
        hs.push_back({{"normal", direction_to_json(h.normal)}, {"offset", h.offset}});
    }
    return {{"dimension", d.dimension()}, {"halfspaces", std::move(hs)}};
}

// Normals off PS_N are rescaled together with their offsets.
inline HDomain hdomain_from_json(const json &j, const std::string &where)
{
    const auto &dim = detail::field(j, "dimension", where);
    if (!dim.is_number_integer() || dim.get<std::int64_t>() < 1) {
        detail::bad(where + ": \"dimension\" must be a positive integer");
    }
    const auto &hs = detail::field(j, "halfspaces", where);
    if (!hs.is_array()) {
        detail::bad(where + ": \"halfspaces\" must be an array");
    }
    std::vector<HalfSpace> out;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const auto w = where + " half-space " + std::to_string(i);
        auto normal = reals_from_json(detail::field(hs[i], "normal", w), w);
        double sum = 0;
        for (auto x : normal) {
            sum += x;
        }
        const double offset = extended_from_json(detail::field(hs[i], "offset", w), w);
        if (!(sum > 0) || !std::isfinite(offset)) {
            detail::bad(w + ": needs a non-negative nonzero normal and a finite offset");
        }
        out.push_back({direction_from_json(normal, w), offset / sum});
    }
    try {
        return HDomain(dim.get<std::size_t>(), std::move(out));
    } catch (const error &e) {
        reinhardt::detail::fail(e.code(), where + ": " + e.what());
    }
}

inline json parse_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        detail::bad(path + ": cannot open file");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        detail::bad(path + ": malformed JSON (" + e.what() + ")");
    }
}

inline SeriesSpec load_series(const std::string &path)
{
    return series_from_json(parse_json_file(path), path);
}

inline HDomain load_hdomain(const std::string &path)
{
    return hdomain_from_json(parse_json_file(path), path);
}

inline SampledFunction load_sampled_function(const std::string &path)
{
    return sampled_function_from_json(parse_json_file(path), path);
}

inline std::vector<SimplexDirection> load_directions(const std::string &path)
{
    return directions_from_json(parse_json_file(path), path);
}

inline void write_json_file(const std::string &path, const json &j)
{
    std::ofstream out(path);
    if (!out) {
        detail::bad(path + ": cannot open for writing");
    }
    out << j.dump(2) << '\n';
}

} // namespace reinhardt::io

#endif
