#include "hardy/weights.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace hardy;
using namespace hardy::weights;
using geometry::BoundaryPoint;
using geometry::Domain;

namespace {

Vector v1(double t) { return Vector::Constant(1, t); }
Vector v2(double x, double y) { return Vector{{x, y}}; }

Domain unit_square() { return geometry::ConvexPolytope::box(v2(0, 0), v2(1, 1)); }
Domain unit_disk() { return geometry::Ball{v2(0, 0), 1.0}; }

BoundaryPoint at_facet(Vector p, int facet) { return {std::move(p), facet}; }

} // namespace

TEST_CASE("half inverse")
{
    CHECK(half_inverse(infinity) == 0.0);
    CHECK(half_inverse(0.0) == infinity);
    CHECK(half_inverse(1.0) == 0.5);
    CHECK_THROWS_AS(half_inverse(-1.0), InputError);
    // (d + inf)^-2 vanishes
    CHECK(1 / std::pow(0.3 + half_inverse(0.0), 2) == 0.0);
}

TEST_CASE("one-dimensional weights")
{
    auto w = lemma1_weight(1.0, infinity);
    CHECK(w.interior(v1(0.5)) == doctest::Approx(1.25));

    auto zero = lemma1_weight(1.0, 0.0);
    CHECK(zero.interior(v1(0.3)) == 0.0);
    CHECK(zero.boundary(at_facet(v1(0), 0)) == 0.0);

    auto one = lemma1_weight(1.0, 1.0);
    CHECK(one.interior(v1(0.0)) == doctest::Approx(0.25 * (4 + 1 / 2.25)));
    CHECK(one.boundary(at_facet(v1(0), 0)) == doctest::Approx(1.0 / 3.0));
    CHECK(one.boundary(at_facet(v1(1), 1)) == 0.0);

    CHECK(lemma2_weight(2.0, infinity, infinity).interior(v1(0.5)) == doctest::Approx(1.0));
    CHECK(lemma2_weight(2.0, 1.0, 0.0).interior(v1(1.5)) == 0.0);
    CHECK(lemma2_weight(1.0, 1.0, 1.0).interior(v1(0.25)) == doctest::Approx(0.25 / 0.5625));

    // lemma2 with a free right end stays below lemma1 on the left half
    for (double b : {0.5, 1.0, 2.0})
        for (double s : {0.5, 1.0, 10.0, infinity})
            for (int k = 0; k <= 20; ++k)
            {
                double const t = 0.5 * b * k / 20;
                CHECK(lemma2_weight(b, s, 0).interior(v1(t)) <= lemma1_weight(b, s).interior(v1(t)));
            }
}

TEST_CASE("convex weight")
{
    auto ball = convex_weight(unit_disk(), RobinCoefficient::constant(infinity));
    CHECK(ball.interior(v2(0, 0)) == doctest::Approx(0.5));

    auto sq = convex_weight(unit_square(), RobinCoefficient::constant(1.0));
    CHECK(sq.interior(v2(0.5, 0.25)) == doctest::Approx(0.25 * (1 / 0.5625 + 1.0)));
    CHECK(sq.boundary(at_facet(v2(0.5, 0), 2)) == doctest::Approx(0.5));

    auto mixed = convex_weight(unit_square(), RobinCoefficient::per_facet({1, 1, infinity, 1}));
    CHECK(mixed.interior(v2(0.5, 0.1)) == doctest::Approx(26.0));

    // the center is equidistant from all sides; the smallest σ wins
    CHECK(mixed.interior(v2(0.5, 0.5)) == doctest::Approx(0.5));

    CHECK_THROWS_AS(convex_weight(geometry::BallComplement{1.0, 2}, RobinCoefficient::constant(1)),
                    UnsupportedError);

    auto dir = dirichlet_weight(unit_square());
    CHECK(dir.interior(v2(0.5, 0.5)) == doctest::Approx(2.0));
}

TEST_CASE("weights grow with σ and reach the Dirichlet limit")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    std::vector<double> sigmas{0, 0.1, 1, 10, 100, 1e3, 1e6, infinity};
    auto const dir = dirichlet_weight(unit_square());
    for (int k = 0; k < 30; ++k)
    {
        Vector const x = v2(u(rng), u(rng));
        double prev_w = -1, prev_b = -1, prev_l = -1;
        for (double s : sigmas)
        {
            auto w = convex_weight(unit_square(), RobinCoefficient::constant(s));
            double const wi = w.interior(x);
            double const wb = w.boundary(at_facet(v2(x[0], 0), 2));
            double const wl = lemma1_weight(1.0, s).interior(v1(x[0]));
            CHECK(wi >= prev_w);
            CHECK(wb >= prev_b);
            CHECK(wl >= prev_l);
            CHECK(wi <= dir.interior(x) * (1 + 1e-15));
            if (std::isfinite(s))
                CHECK(wb <= s);
            prev_w = wi;
            prev_b = wb;
            prev_l = wl;
        }
        CHECK(prev_w == doctest::Approx(dir.interior(x)).epsilon(1e-15));
    }
}

TEST_CASE("weights scale under dilation")
{
    double const lambda = 2.5;
    auto sigma = RobinCoefficient::per_facet({0.7, 2.0, infinity, 1.3});
    auto w = convex_weight(unit_square(), sigma);
    auto ws = convex_weight(geometry::scaled(unit_square(), lambda), sigma.scaled(lambda));
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int k = 0; k < 50; ++k)
    {
        Vector const x = v2(u(rng), u(rng));
        CHECK(std::abs(ws.interior(lambda * x) - w.interior(x) / (lambda * lambda)) <
              1e-10 * w.interior(x));
        BoundaryPoint y{v2(x[0], 1.0), 3};
        BoundaryPoint ys{lambda * y.position, 3};
        CHECK(std::abs(ws.boundary(ys) - w.boundary(y) / lambda) < 1e-10 * w.boundary(y));
    }
    auto l1 = lemma1_weight(1.0, 2.0);
    auto l1s = lemma1_weight(lambda, 2.0 / lambda);
    CHECK(std::abs(l1s.interior(v1(0.3 * lambda)) - l1.interior(v1(0.3)) / (lambda * lambda)) < 1e-12);
}

TEST_CASE("directional weight μ_σ")
{
    CHECK(mu_sigma(unit_disk(), RobinCoefficient::constant(infinity), v2(0, 0), 4) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mu_sigma(unit_disk(), RobinCoefficient::constant(2.0), v2(0, 0), 4) ==
          doctest::Approx(0.64).epsilon(1e-14));

    auto dir = RobinCoefficient::constant(infinity);
    auto one = RobinCoefficient::constant(1.0);
    auto m = mu_sigma_converged(unit_square(), dir, v2(0.5, 0.25));
    CHECK(m.change < 1e-8);
    CHECK(std::abs(m.value - oracle::mu_square_dirichlet_050_025) < 1e-6);
    auto m1 = mu_sigma_converged(unit_square(), one, v2(0.3, 0.7));
    CHECK(std::abs(m1.value - oracle::mu_square_sigma1_030_070) < 1e-6);

    // independent ray oracle with a per-side coefficient
    std::array<double, 4> const a{0.5 / 0.7, 0.0, 0.5 / 3.0, 0.5};
    auto sides = RobinCoefficient::per_facet({0.7, infinity, 3.0, 1.0});
    double const ref = oracle::square_mu(0.2, 0.6, a, 1 << 16);
    CHECK(std::abs(mu_sigma(unit_square(), sides, v2(0.2, 0.6), 1 << 13) - ref) < 1e-12);

    // domination by the nearest-boundary term
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    for (int k = 0; k < 20; ++k)
    {
        Vector const x = v2(u(rng), u(rng));
        double const d = geometry::distance(unit_square(), x);
        CHECK(mu_sigma(unit_square(), one, x, 64) <= std::pow(d + 0.5, -2));
        CHECK(mu_sigma(unit_square(), dir, x, 64) <= std::pow(d, -2));
    }
    CHECK_THROWS_AS(mu_sigma(geometry::BallComplement{1, 2}, one, v2(2, 0), 4), UnsupportedError);
}

TEST_CASE("general-domain constant")
{
    auto bound = cor_general_bound(unit_disk(), 1.0, 200000);
    CHECK(bound.alpha > 0);
    CHECK(bound.alpha <= std::numbers::pi);
    CHECK(std::abs(bound.alpha - std::numbers::pi / 2) < 0.15);
    CHECK(bound.c_n == doctest::Approx(4 * std::numbers::pi));
    CHECK(bound.K == doctest::Approx(bound.alpha / (16 * bound.c_n)));
    // δ = 0, σ = 1: K (1/4)^-2
    CHECK(bound.K * std::pow(0.25, -2) == doctest::Approx(16 * bound.K));

    auto again = cor_general_bound(unit_disk(), 1.0, 200000);
    CHECK(again.alpha == bound.alpha);
    CHECK(cor_general_bound(unit_disk(), 1.0, 200000, 99).alpha != bound.alpha);
    CHECK_THROWS_AS(cor_general_bound(unit_disk(), 0.0, 100), InputError);
}

TEST_CASE("Robin-Neumann eigenvalue")
{
    CHECK(std::sqrt(-robin_neumann_mu(1.0, -1.0)) == doctest::Approx(oracle::tanh_root_f1_s1).epsilon(1e-12));
    double const fs[] = {0.5, 1, 2};
    double const ss[] = {-0.25, -1, -4};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
        {
            CHECK(robin_neumann_mu(fs[i], ss[j]) == doctest::Approx(oracle::robin_mu_table[i][j]).epsilon(1e-11));
            double const s = oracle::tanh_root(fs[i], -ss[j]);
            CHECK(robin_neumann_mu(fs[i], ss[j]) == doctest::Approx(-s * s).epsilon(1e-11));
        }
    double const tiny = robin_neumann_mu(1.0, -1e-12);
    CHECK(tiny < 0);
    CHECK(std::abs(tiny) <= 1e-11);
    CHECK_THROWS_AS(robin_neumann_mu(1.0, 0.5), InputError);
    CHECK_THROWS_AS(robin_neumann_mu(0.0, -1.0), InputError);
}

TEST_CASE("sign-changing weight")
{
    auto base = geometry::ConvexPolytope::box(v1(0), v1(2));
    geometry::Subgraph sg(base, geometry::profiles::parabolic(v1(0), v1(2), 1.0), "parabolic");
    auto sigma = RobinCoefficient::regions({{v1(0.0), v1(0.9), 1.0}, {v1(1.1), v1(2.0), -1.0}});
    auto w = sign_changing_weight(sg, sigma);
    // f(1) = 1 at the middle of the base, which has σ = 0
    CHECK(w.interior(v2(1.0, 0.5)) == 0.0);

    auto fw = fiber_weight(1.0, 1.0);
    CHECK(fw.interior == doctest::Approx(0.5 / 2.25));
    CHECK(fw.bonus == doctest::Approx(1.0 / 3.0));
    CHECK(fiber_weight(1.0, -1.0).interior == doctest::Approx(oracle::robin_mu_table[1][1]).epsilon(1e-11));
    CHECK(fiber_weight(1.0, 0.0).interior == 0.0);
    CHECK_THROWS_AS(fiber_weight(0.0, 1.0), DomainError);

    double const f = sg.height(v1(0.5));
    CHECK(w.interior(v2(0.5, 0.1)) == doctest::Approx(0.5 / std::pow(f + 0.5, 2)));
    CHECK(w.boundary({v2(0.5, 0.0), 0}) == doctest::Approx(0.5 / (f + 0.5)));
    CHECK(w.boundary({v2(0.5, f), 1}) == 0.0);
    CHECK(w.interior(v2(1.5, 0.1)) < 0);
    CHECK(w.boundary({v2(1.5, 0.0), 0}) == 0.0);
}

TEST_CASE("exterior weight")
{
    CHECK(exterior_weight(1.0, infinity, 3).interior(Vector{{0, 2, 0}}) == doctest::Approx(0.25));
    CHECK(exterior_weight(1.0, 1.0, 2).interior(v2(2, 0)) == doctest::Approx(1 / 9.0 - 1 / 16.0));
    double const r = 3.0;
    double const w5 = exterior_weight_radial(1.0, 0.0, 5, r);
    CHECK(w5 == doctest::Approx(2.0 / (r * r)));
    CHECK(exterior_weight(1.0, 0.0, 3).interior(Vector{{5, 0, 0}}) == 0.0);
}

TEST_CASE("Robin coefficient")
{
    CHECK_THROWS_AS(RobinCoefficient::constant(-1), InputError);
    CHECK_THROWS_AS(RobinCoefficient::per_facet({1, -2}), InputError);
    auto f = RobinCoefficient::per_facet({1, infinity, 0.5});
    CHECK(f.at({v2(0, 0), 1}) == infinity);
    CHECK(f.has_infinite());
    CHECK_THROWS_AS(f.at({v2(0, 0), 5}), InputError);
    CHECK(f.describe() == "facets:1,inf,0.5");
    auto r = RobinCoefficient::regions({{v1(0), v1(1), -2}});
    CHECK(r.is_signed());
    CHECK(r.on_base(v1(0.5)) == -2);
    CHECK(r.on_base(v1(1.5)) == 0);
    CHECK(r.at({v2(0.5, 0.3), geometry::Subgraph::graph_facet}) == 0);
}
