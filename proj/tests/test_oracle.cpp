#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace reinhardt;
using namespace testing_support;

namespace
{

ProbeVerdict at(const SeriesSpec &s, std::vector<double> r, double margin = default_probe_margin, std::int64_t K = 64)
{
    return probe(s, r, K, margin);
}

} // namespace

TEST(Probe, GeometricConverges)
{
    const auto v = at(geometric2(), {0.5, 0.5});
    EXPECT_EQ(v.verdict, Convergence::converges);
    EXPECT_NEAR(v.partial, 4.0, 1e-12);
}

TEST(Probe, GeometricDivergesOutsidePolydisc)
{
    // B_k >= 1.05^k: decisive once the margin is below the 5% excess.
    EXPECT_EQ(at(geometric2(), {1.05, 0.1}, 0.02, 128).verdict, Convergence::diverges);
    EXPECT_EQ(at(geometric2(), {1.3, 0.1}).verdict, Convergence::diverges);
    // With the default 10% margin a 5% excess stays undecided.
    EXPECT_EQ(at(geometric2(), {1.05, 0.1}).verdict, Convergence::inconclusive);
}

TEST(Probe, F0SettlesBidiscClaim)
{
    EXPECT_EQ(at(f0(), {0.8, 0.8}).verdict, Convergence::diverges);
    EXPECT_EQ(at(f0(), {0.6, 0.6}).verdict, Convergence::converges);
}

TEST(Probe, TailRatioTracksGrowth)
{
    const auto v = at(f0(), {0.8, 0.8});
    EXPECT_GT(v.tail_ratio, 1.1);
    const auto w = at(geometric2(), {0.5, 0.5});
    EXPECT_LT(w.tail_ratio, 0.6);
}

TEST(Probe, OverflowDiverges)
{
    const auto v = at(geometric2(), {1e30, 1e30});
    EXPECT_EQ(v.verdict, Convergence::diverges);
    EXPECT_EQ(v.partial, infinity);
}

TEST(Probe, PolynomialIsInconclusive)
{
    const auto p = explicit_table(2, {{MultiIndex{1, 1}, complex(3)}, {MultiIndex{2, 0}, complex(1)}});
    EXPECT_EQ(at(p, {5.0, 5.0}).verdict, Convergence::inconclusive);
    EXPECT_EQ(at(explicit_table(2, {}), {0.5, 0.5}).verdict, Convergence::inconclusive);
}

TEST(Probe, Preconditions)
{
    EXPECT_THROW((void)at(geometric2(), {0.5, 0.5}, 0.1, 16), error);
    EXPECT_THROW((void)at(geometric2(), {0.5, 0.5}, 0.6), error);
    EXPECT_THROW((void)at(geometric2(), {0.5, 0.5}, 0.0), error);
    EXPECT_THROW((void)at(geometric2(), {-0.5, 0.5}), error);
    EXPECT_THROW((void)at(geometric2(), {0.5}), error);
}

TEST(Probe, Monotone)
{
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(0.0, 1.6);
    std::uniform_real_distribution<double> step(0.0, 0.5);
    for (const auto &s : {geometric2(), ray_zw(), f0()}) {
        for (int i = 0; i < 60; ++i) {
            std::vector<double> r{u(rng), u(rng)};
            std::vector<double> r2{r[0] + step(rng), r[1] + step(rng)};
            if (at(s, r).verdict == Convergence::diverges) {
                EXPECT_NE(at(s, r2).verdict, Convergence::converges);
            }
        }
    }
}

TEST(AgreementGrid, Examples)
{
    const auto grid = Grid::square(2, -1, 1, 11);
    const auto g = agreement_grid(geometric2(), grid, 64, 0.05);
    EXPECT_EQ(g.outcomes.size(), 121u);
    EXPECT_GT(g.decisive, 0u);
    EXPECT_EQ(g.fraction(), 1.0);

    const auto r = agreement_grid(ray_zw(), grid, 64, 0.05);
    EXPECT_GT(r.decisive, 0u);
    EXPECT_EQ(r.fraction(), 1.0);

    const auto e = agreement_grid(explicit_table(2, {}), grid, 64, 0.05);
    EXPECT_EQ(e.decisive, 0u);
    EXPECT_EQ(e.fraction(), 1.0);
    for (const auto &o : e.outcomes) {
        EXPECT_EQ(o.probe.verdict, Convergence::inconclusive);
    }
}

TEST(AgreementGrid, NoContradictionsOnCorpus)
{
    const std::vector<SeriesSpec> corpus{
        geometric2(), ray_zw(), f0(), ray_geometric(MultiIndex{2, 1}, complex(1.0 / 3.0)),
        mainthm_series(wedge(), uniform_directions_2d(25), 8)};
    for (const auto &s : corpus) {
        const auto rep = agreement_grid(s, Grid::square(2, -1, 1, 11), 64, 0.05);
        for (const auto &o : rep.outcomes) {
            EXPECT_FALSE(o.estimate.membership == Membership::inside && o.probe.verdict == Convergence::diverges)
                << s.label() << " at " << o.point[0] << ',' << o.point[1];
            EXPECT_FALSE(o.estimate.membership == Membership::outside && o.probe.verdict == Convergence::converges)
                << s.label() << " at " << o.point[0] << ',' << o.point[1];
        }
    }
}

TEST(Grid, RowMajorFirstAxisSlowest)
{
    const auto g = Grid::square(2, -1, 1, 3);
    EXPECT_EQ(g.size(), 9u);
    EXPECT_EQ(g.point(0), (std::vector<double>{-1, -1}));
    EXPECT_EQ(g.point(1), (std::vector<double>{-1, 0}));
    EXPECT_EQ(g.point(3), (std::vector<double>{0, -1}));
    EXPECT_EQ(g.point(8), (std::vector<double>{1, 1}));
    EXPECT_THROW(Grid::square(2, -1, 1, 101), error);
    EXPECT_THROW(Grid({GridAxis{1.0, 0.0, 3}}), error);
}
