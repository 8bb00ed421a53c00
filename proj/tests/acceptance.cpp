// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <reinhardt/reinhardt.hpp>

#include "vertex_oracle.hpp"

using namespace reinhardt;

namespace
{

// Pinned tolerances.
constexpr std::int64_t degree = 64;
constexpr double epsilon = 0.05;
constexpr double alpha_exact = 0.0;
constexpr double growth_tol = 1e-9;
constexpr double c_hat_tol = 0.02;
constexpr double c_hat_window = 0.02;
constexpr double envelope_tol = 0.05;
constexpr double dense_band = 0.1;
constexpr double roundtrip_epsilon = 0.1;
constexpr double roundtrip_band = 0.1;
constexpr double roundtrip_agreement = 0.95;
constexpr double offset_slack = 0.02;
constexpr double telescoping_tol = 1e-12;
constexpr double slice_lo = 0.93;
constexpr double slice_hi = 1.07;
constexpr double lp_tol = 1e-7;

const double ln2 = std::log(2.0);

SimplexDirection dir(double t)
{
    return SimplexDirection({t, 1.0 - t});
}

HDomain third_quadrant()
{
    return HDomain(2, {{dir(1), 0.0}, {dir(0), 0.0}});
}

HDomain wedge()
{
    return HDomain(2, {{dir(1), 0.0}, {dir(0), 0.0}, {dir(0.5), -ln2 / 2}});
}

// Three off-grid normals; none lies on the 11- or 101-point direction grids.
HDomain triangle()
{
    return HDomain(2, {{dir(1.0 / 3.0), 0.3}, {dir(2.0 / 3.0), 0.3}, {dir(0.5), 0.1}});
}

SeriesSpec f0()
{
    return sum_of({full_geometric(2), ray_geometric(MultiIndex{1, 1}, complex(2.0))}, "f0");
}

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char *format, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

Outcome geometric_geometry()
{
    const auto s = full_geometric(2);
    const auto table = TailTable::for_degree(s, degree);
    const auto grid = Grid::square(2, -1, 1, 11);
    std::size_t checked = 0, wrong = 0;
    for (const auto &p : grid.points()) {
        const double exact = std::max(p[0], p[1]);
        if (std::abs(exact) <= epsilon) {
            continue;
        }
        ++checked;
        const auto m = classify(table, p, epsilon).membership;
        wrong += m != (exact < 0 ? Membership::inside : Membership::outside);
    }
    const auto report = agreement_grid(s, grid, degree, epsilon);
    const bool ok = wrong == 0 && report.decisive > 0 && report.agreeing == report.decisive;
    return {ok, fmt("%zu/%zu off-band points match sign(max(s1,s2)); oracle agrees on %zu/%zu decisive points",
                    checked - wrong, checked, report.agreeing, report.decisive)};
}

Outcome elementary_recovery()
{
    const auto s = ray_geometric(MultiIndex{1, 1}, complex(2.0));
    const auto e = elementary_estimate(s, degree);
    const double alpha_err = std::abs(e.halfspace.normal[0] - 0.5) + std::abs(e.halfspace.normal[1] - 0.5);
    const double growth_err = std::abs(e.log_growth - ln2 / 2);
    const auto table = TailTable::for_degree(s, degree);
    std::size_t checked = 0, wrong = 0;
    for (const auto &p : Grid::square(2, -2, 2, 21).points()) {
        const double exact = (p[0] + p[1] + ln2) / 2;
        if (std::abs(exact) <= epsilon) {
            continue;
        }
        ++checked;
        wrong += classify(table, p, epsilon).membership != (exact < 0 ? Membership::inside : Membership::outside);
    }
    const bool ok = alpha_err == alpha_exact && growth_err <= growth_tol && wrong == 0;
    return {ok, fmt("alpha=(%.17g, %.17g), |d-ln2/2|=%.2e, %zu/%zu off-band points match sign(s1+s2+ln2)",
                    e.halfspace.normal[0], e.halfspace.normal[1], growth_err, checked - wrong, checked)};
}

Outcome nonconvex_c()
{
    const auto s = f0();
    const auto dirs = uniform_directions_2d(21);
    const auto c = sample_c_hat(s, dirs, degree, c_hat_window);
    double c_err = 0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        const double expected = i == 10 ? -ln2 / 2 : 0.0;
        c_err = std::max(c_err, std::abs(c.values()[i] - expected));
    }
    double env_err = 0;
    for (const auto &a : uniform_directions_2d(21)) {
        env_err = std::max(env_err, std::abs(convex_closure_value(c, a) - support_value(wedge(), a)));
    }
    const std::vector<double> out{0.8, 0.8}, in{0.6, 0.6};
    const auto p_out = probe(s, out, degree);
    const auto p_in = probe(s, in, degree);
    const bool ok = c_err <= c_hat_tol && env_err <= envelope_tol && p_out.verdict == Convergence::diverges
                    && p_in.verdict == Convergence::converges;
    return {ok, fmt("max |c_hat - c| = %.2e, sup |cl conv c - h| = %.2e, probe(0.8,0.8)=%s, probe(0.6,0.6)=%s", c_err,
                    env_err, std::string(convergence_name(p_out.verdict)).c_str(),
                    std::string(convergence_name(p_in.verdict)).c_str())};
}

struct DenseGap {
    // Disagreements on the check grid outside the band.
    std::size_t off_band = 0;
    // Disagreements on a fine grid, and the widest one's distance to the boundary.
    std::size_t fine = 0;
    double width = 0;
};

DenseGap dense_gap(const HDomain &d, std::size_t directions)
{
    const auto reduced = reduce_to_dense_subset(d, uniform_directions_2d(directions));
    DenseGap g;
    for (const auto &p : Grid::square(2, -2, 2, 21).points()) {
        if (reduced.contains(p) != d.contains(p) && l1_distance_to_boundary(d, p) > dense_band) {
            ++g.off_band;
        }
    }
    constexpr int fine = 201;
    for (int i = 0; i < fine; ++i) {
        for (int j = 0; j < fine; ++j) {
            const std::vector<double> p{-2.0 + 4.0 * i / (fine - 1), -2.0 + 4.0 * j / (fine - 1)};
            if (reduced.contains(p) != d.contains(p)) {
                ++g.fine;
                g.width = std::max(g.width, l1_distance_to_boundary(d, p));
            }
        }
    }
    return g;
}

Outcome dense_subset()
{
    std::size_t off_band = 0, fine101 = 0, fine11 = 0;
    double width101 = 0, width11 = 0;
    for (const auto &d : {third_quadrant(), wedge(), triangle()}) {
        const auto a = dense_gap(d, 101);
        const auto b = dense_gap(d, 11);
        off_band += a.off_band;
        fine101 += a.fine;
        fine11 += b.fine;
        width101 = std::max(width101, a.width);
        width11 = std::max(width11, b.width);
    }
    const bool ok = off_band == 0 && fine11 > fine101 && width11 > width101;
    return {ok, fmt("101 directions: %zu off-band disagreements; fine-grid disagreements %zu -> %zu and band width "
                    "%.3f -> %.3f when coarsening to 11",
                    off_band, fine101, fine11, width101, width11)};
}

SeriesSpec roundtrip_series()
{
    return mainthm_series(wedge(), uniform_directions_2d(25), 8, "wedge round trip");
}

Outcome mainthm_roundtrip()
{
    const auto dirs = uniform_directions_2d(25);
    const auto s = roundtrip_series();
    const auto table = TailTable::for_degree(s, degree);
    std::size_t checked = 0, agree = 0;
    for (const auto &p : Grid::square(2, -2, 2, 21).points()) {
        if (std::abs(wedge().margin(p)) <= roundtrip_band) {
            continue;
        }
        ++checked;
        const auto m = classify(table, p, roundtrip_epsilon).membership;
        agree += m == (wedge().contains(p) ? Membership::inside : Membership::outside);
    }
    double growth_err = 0, alpha_err = 0;
    for (std::size_t n = 0; n < dirs.size(); ++n) {
        const auto e = elementary_estimate(family_row(s, n), degree);
        growth_err = std::max(growth_err, std::abs(e.log_growth + support_value(wedge(), dirs[n])));
        alpha_err = std::max(alpha_err, l1_distance(e.halfspace.normal, dirs[n]));
    }
    const double fraction = static_cast<double>(agree) / static_cast<double>(checked);
    const bool ok = fraction >= roundtrip_agreement && growth_err <= growth_tol && alpha_err <= 2.0 * 2 / 8;
    return {ok, fmt("agreement %.4f on %zu off-band points; rows: max |d+h| = %.2e, max |alpha_hat-alpha| = %.3f",
                    fraction, checked, growth_err, alpha_err)};
}

Outcome elementary_decomposition()
{
    const auto s = f0();
    const auto dirs = uniform_directions_2d(11);
    const auto d = decompose_elementary(s, dirs, degree);
    double worst = -infinity;
    bool all_rows = true;
    for (std::size_t n = 0; n < dirs.size(); ++n) {
        all_rows = all_rows && d.parts[n].halfspace.has_value();
        worst = std::max(worst, d.parts[n].log_growth + support_value(wedge(), dirs[n]));
    }
    bool exact = true;
    double rel = 0;
    for (const auto &r : {std::vector<double>{0.6, 0.6}, std::vector<double>{0.3, 0.9}, std::vector<double>{0.9, 0.2}}) {
        const auto ex = exactness_check(s, d, r);
        exact = exact && ex.partition_exact;
        rel = std::max(rel, std::abs(ex.reassembled_partial - ex.original_partial) / ex.original_partial);
    }
    const bool ok = exact && all_rows && worst <= offset_slack && rel == 0.0;
    return {ok, fmt("partition %s, max(d_n + h(alpha^n)) = %.2e, partial-sum relative error %.1e",
                    exact ? "exact" : "broken", worst, rel)};
}

Outcome simple_decomposition()
{
    const auto dirs = uniform_directions_2d(5);
    const auto d = decompose_simple(full_geometric(2), third_quadrant(), dirs, degree);
    double rel = 0;
    for (const auto &z : {std::vector<complex>{complex(0.5, 0.0), complex(0.5, 0.0)},
                          std::vector<complex>{complex(0.3, 0.4), complex(-0.6, 0.1)}}) {
        rel = std::max(rel, telescoping_check(d, z).relative_error);
    }
    std::size_t mismatches = 0, points = 0;
    for (const auto &p : Grid::square(2, -1, 1, 21).points()) {
        ++points;
        mismatches += d.in_wedges(p) != third_quadrant().contains(p);
    }
    const bool ok = rel <= telescoping_tol && mismatches == 0;
    return {ok, fmt("telescoping relative error %.2e; wedge intersection matches on %zu/%zu grid points", rel,
                    points - mismatches, points)};
}

Outcome pringsheim_slices()
{
    const auto s = roundtrip_series();
    const std::vector<std::vector<double>> boundary{
        {0.0, -1.5}, {-0.2, -ln2 + 0.2}, {-ln2 / 2, -ln2 / 2}, {-0.5, -ln2 + 0.5}, {-1.5, 0.0}};
    double lo = infinity, hi = -infinity;
    bool on_boundary = true;
    for (const auto &p : boundary) {
        on_boundary = on_boundary && std::abs(wedge().margin(p)) < 1e-12;
        const std::vector<double> r{std::exp(p[0]), std::exp(p[1])};
        const double rho = slice_radius(s, r, degree);
        lo = std::min(lo, rho);
        hi = std::max(hi, rho);
    }
    const bool ok = on_boundary && lo >= slice_lo && hi <= slice_hi;
    return {ok, fmt("slice radii at 5 boundary points lie in [%.4f, %.4f]", lo, hi)};
}

SimplexDirection random_direction(std::mt19937_64 &rng, std::size_t n)
{
    std::gamma_distribution<double> g(1.0, 1.0);
    std::vector<double> v(n);
    for (auto &x : v) {
        x = g(rng) + 1e-6;
    }
    return SimplexDirection::normalized(v);
}

Outcome lp_core()
{
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> off(-2.0, 2.0);
    std::uniform_int_distribution<int> extra(1, 6);
    double worst = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
        std::vector<HalfSpace> hs;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> e(n, 0.0);
            e[i] = 1.0;
            hs.push_back({SimplexDirection(e), off(rng)});
        }
        for (int k = extra(rng); k > 0; --k) {
            hs.push_back({random_direction(rng, n), off(rng)});
        }
        const HDomain d(n, hs);
        std::vector<vertex_oracle::Row> rows;
        for (const auto &h : hs) {
            rows.push_back({h.normal.coords(), h.offset});
        }
        const auto a = random_direction(rng, n);
        worst = std::max(worst, std::abs(support_value(d, a) - vertex_oracle::maximize(a.coords(), rows)));
    }

    using Cons = std::vector<LinearConstraint>;
    struct Case {
        std::vector<double> objective;
        Cons constraints;
        bool unbounded;
    };
    const std::vector<Case> cases{
        {{1, 1}, {{{1, 0}, 0}}, true},
        {{0, 1}, {{{1, 0}, -1}}, true},
        {{1, 1, 1}, {{{1, 0, 0}, 0}, {{0, 1, 0}, 0}}, true},
        {{1, -1}, {{{1, 1}, 0}, {{-1, -1}, 5}}, true},
        {{0.2, 0.8}, {{{1, 0}, 0}, {{0.5, 0.5}, 1}}, true},
        {{1, 0}, {{{1, 0}, 0}, {{-1, 0}, -1}}, false},
        {{1, 1}, {{{1, 1}, -1}, {{-1, -1}, 0}}, false},
        {{1, 0, 0}, {{{1, 0, 0}, 0}, {{0, 1, 0}, 0}, {{-1, -1, 0}, -0.5}}, false},
        {{1, 2}, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, 0}, -2}}, false},
        {{0, 0, 0, 1},
         {{{1, 1, 1, 1}, -1}, {{-1, 0, 0, 0}, 0}, {{0, -1, 0, 0}, 0}, {{0, 0, -1, 0}, 0}, {{0, 0, 0, -1}, 0}},
         false},
    };
    std::size_t right = 0;
    for (const auto &c : cases) {
        const auto r = lp_maximize(std::span<const double>(c.objective), std::span<const LinearConstraint>(c.constraints));
        right += c.unbounded ? r.unbounded() : r.infeasible();
    }
    const bool ok = worst <= lp_tol && right == cases.size();
    return {ok, fmt("max |support - vertex oracle| = %.2e over 50 domains; %zu/%zu unbounded/infeasible cases right",
                    worst, right, cases.size())};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
        {"geometric-series geometry", geometric_geometry},
        {"elementary half-space recovery", elementary_recovery},
        {"non-convex c and its convex closure", nonconvex_c},
        {"dense-subset representation", dense_subset},
        {"prescribed-domain round trip", mainthm_roundtrip},
        {"elementary decomposition", elementary_decomposition},
        {"simple (wedge) decomposition", simple_decomposition},
        {"slice radius at the absolute boundary", pringsheim_slices},
        {"LP core", lp_core},
    };
    int failures = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o{false, ""};
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/%zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failures, criteria.size(),
                seconds);
    return failures == 0 ? 0 : 1;
}
