#include "hardy/geometry.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace hardy;
using namespace hardy::geometry;

namespace {

Vector v2(double x, double y) { return Vector{{x, y}}; }
Vector v3(double x, double y, double z) { return Vector{{x, y, z}}; }

Domain unit_square() { return ConvexPolytope::box(v2(0, 0), v2(1, 1)); }
Domain triangle() { return ConvexPolytope::polygon({v2(0, 0), v2(1, 0), v2(0, 1)}); }

} // namespace

TEST_CASE("contains")
{
    CHECK(contains(unit_square(), v2(0.5, 0.5)));
    CHECK_FALSE(contains(unit_square(), v2(1.0, 0.5)));
    CHECK(contains(BallComplement{1.0, 2}, v2(3, 0)));
    CHECK_FALSE(contains(BallComplement{1.0, 2}, v2(0.5, 0)));
    CHECK(contains(Interval{1.0}, Vector::Constant(1, 0.3)));
    CHECK_THROWS_AS(contains(unit_square(), v3(0.5, 0.5, 0.5)), InputError);
}

TEST_CASE("direction normalization")
{
    Direction d(v2(3, 4));
    CHECK(d.vector().norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(Direction(v2(0, 0)), InputError);
    CHECK_THROWS_AS(Direction::from_unit(v2(1, 1)), InputError);
}

TEST_CASE("distance and projection")
{
    SUBCASE("ball in three dimensions")
    {
        Domain ball = Ball{v3(0, 0, 0), 2.0};
        auto r = distance_and_projection(ball, v3(1, 0, 0));
        CHECK(r.distance == doctest::Approx(1.0).epsilon(1e-15));
        CHECK((r.nearest - v3(2, 0, 0)).norm() < 1e-14);
        CHECK(r.unique);
    }
    SUBCASE("square center has four minimizers")
    {
        auto r = distance_and_projection(unit_square(), v2(0.5, 0.5));
        CHECK(r.distance == doctest::Approx(0.5));
        CHECK_FALSE(r.unique);
        CHECK(r.minimizers.size() == 4);
    }
    SUBCASE("triangle against dense boundary sampling")
    {
        std::vector<Eigen::Vector2d> poly{{0, 0}, {1, 0}, {0, 1}};
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0, 1);
        auto const dom = triangle();
        CHECK(distance(dom, v2(0.25, 0.25)) ==
              doctest::Approx(oracle::sampled_boundary_distance(poly, {0.25, 0.25}, 200000))
                  .epsilon(1e-6));
        for (int k = 0; k < 50; ++k)
        {
            double x = u(rng), y = u(rng);
            if (x + y >= 1)
                continue;
            double const ref = oracle::sampled_boundary_distance(poly, {x, y}, 100000);
            CHECK(std::abs(distance(dom, v2(x, y)) - ref) < 1e-5);
        }
    }
    SUBCASE("outside point is rejected")
    {
        CHECK_THROWS_AS(distance_and_projection(unit_square(), v2(2, 2)), DomainError);
    }
    SUBCASE("ball complement and projection consistency")
    {
        Domain ext = BallComplement{1.0, 3};
        auto r = distance_and_projection(ext, v3(0, 3, 4));
        CHECK(r.distance == doctest::Approx(4.0));
        CHECK((r.nearest - v3(0, 0.6, 0.8)).norm() < 1e-14);
    }
}

TEST_CASE("inradius")
{
    CHECK(inradius(unit_square()) == doctest::Approx(0.5));
    CHECK(inradius(Ball{v2(1, 1), 3.0}) == doctest::Approx(3.0));
    CHECK(inradius(Interval{3.0}) == doctest::Approx(1.5));
    CHECK(inradius(triangle()) == doctest::Approx(oracle::triangle_inradius).epsilon(1e-12));
    CHECK_THROWS_AS(inradius(BallComplement{1.0, 2}), UnsupportedError);

    // grid maximum of delta
    auto const dom = triangle();
    double best = 0;
    int const m = 400;
    for (int i = 1; i < m; ++i)
        for (int j = 1; i + j < m; ++j)
            best = std::max(best, distance(dom, v2(double(i) / m, double(j) / m)));
    CHECK(std::abs(inradius(dom) - best) < 1e-3);
}

TEST_CASE("directional distance")
{
    auto d = directional_distance(unit_square(), v2(0.3, 0.5), Direction(v2(1, 0)));
    CHECK(d.distance == doctest::Approx(0.3));
    REQUIRE(d.minimizers.size() == 1);
    CHECK(d.minimizers[0].s == doctest::Approx(-0.3));

    auto c = directional_distance(Ball{v2(0, 0), 1.0}, v2(0, 0), Direction(v2(0.6, 0.8)));
    CHECK(c.distance == doctest::Approx(1.0));
    CHECK(c.minimizers.size() == 2);

    auto i = directional_distance(Interval{1.0}, Vector::Constant(1, 0.5), Direction(Vector::Constant(1, 1.0)));
    CHECK(i.distance == doctest::Approx(0.5));
    CHECK(i.minimizers.size() == 2);

    auto miss = directional_distance(BallComplement{1.0, 2}, v2(0, 3), Direction(v2(1, 0)));
    CHECK(miss.unbounded);
    auto hit = directional_distance(BallComplement{1.0, 2}, v2(0, 3), Direction(v2(0, 1)));
    CHECK_FALSE(hit.unbounded);
    CHECK(hit.distance == doctest::Approx(2.0));
}

TEST_CASE("boundary quadrature")
{
    auto total = [](std::vector<BoundaryNode> const& nodes) {
        double s = 0;
        for (auto const& n : nodes)
            s += n.weight;
        return s;
    };
    for (int res : {1, 3, 17})
        CHECK(total(boundary_quadrature(unit_square(), res)) == doctest::Approx(4.0).epsilon(1e-14));

    for (int m : {16, 32, 64})
    {
        auto nodes = boundary_quadrature(Ball{v2(0, 0), 1.0}, m);
        CHECK(std::abs(total(nodes) - 2 * std::numbers::pi) < 10.0 / (m * m));
        for (auto const& n : nodes)
            CHECK(n.position.norm() == doctest::Approx(1.0).epsilon(1e-14));
    }

    auto ends = boundary_quadrature(Interval{1.0}, 5);
    REQUIRE(ends.size() == 2);
    CHECK(ends[0].position[0] == 0.0);
    CHECK(ends[1].position[0] == 1.0);
    CHECK(ends[0].weight == 1.0);
    CHECK(ends[1].weight == 1.0);

    auto cube = boundary_quadrature(ConvexPolytope::box(v3(0, 0, 0), v3(1, 2, 3)), 4);
    CHECK(total(cube) == doctest::Approx(2 * (2 + 3 + 6)));
}

TEST_CASE("nearest facet")
{
    auto sq = *unit_square().as<ConvexPolytope>();
    auto q = nearest_facet(sq, v2(0.5, 0.1));
    CHECK(q.facet_id == 2);
    CHECK_FALSE(q.ambiguous);
    CHECK(nearest_facet(sq, v2(0.5, 0.5)).ambiguous);
    CHECK_THROWS_AS(nearest_facet(sq, v2(1.5, 0.5)), DomainError);

    auto tri = *triangle().as<ConvexPolytope>();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 200; ++k)
    {
        double x = u(rng), y = u(rng);
        if (x + y >= 1)
            continue;
        int best = 0;
        for (std::size_t j = 1; j < tri.facet_count(); ++j)
            if (tri.slack(j, v2(x, y)) < tri.slack(best, v2(x, y)))
                best = static_cast<int>(j);
        CHECK(nearest_facet(tri, v2(x, y)).facet_id == best);
    }
}

TEST_CASE("distance is 1-Lipschitz and dominated by directional distance")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    std::normal_distribution<double> g;
    auto const dom = triangle();
    int checked = 0;
    while (checked < 10000)
    {
        Vector a = v2(u(rng), u(rng)), b = v2(u(rng), u(rng));
        if (!contains(dom, a) || !contains(dom, b))
            continue;
        CHECK(std::abs(distance(dom, a) - distance(dom, b)) <= (a - b).norm() + 1e-15);
        Direction e(v2(g(rng), g(rng)));
        CHECK(distance(dom, a) <= directional_distance(dom, a, e).distance + 1e-15);
        ++checked;
    }
}

TEST_CASE("translation and dilation")
{
    std::vector<Domain> doms{unit_square(), triangle(), Ball{v2(0.2, -0.1), 0.7}};
    Vector const shift = v2(3.5, -1.25);
    Direction const e(v2(0.3, 0.9));
    for (auto const& d : doms)
    {
        Vector const x = d.as<Ball>() ? v2(0.3, 0.1) : v2(0.2, 0.3);
        auto const t = translated(d, shift);
        auto const s = scaled(d, 2.5);
        CHECK(std::abs(distance(t, x + shift) - distance(d, x)) < 1e-10);
        CHECK(std::abs(inradius(t) - inradius(d)) < 1e-10);
        CHECK(std::abs(directional_distance(t, x + shift, e).distance -
                       directional_distance(d, x, e).distance) < 1e-10);
        CHECK(std::abs(distance(s, 2.5 * x) - 2.5 * distance(d, x)) < 1e-10);
        CHECK(std::abs(inradius(s) - 2.5 * inradius(d)) < 1e-10);
        CHECK(std::abs(directional_distance(s, 2.5 * x, e).distance -
                       2.5 * directional_distance(d, x, e).distance) < 1e-10);
    }
}

TEST_CASE("exact radial distances")
{
    Domain ball = Ball{v3(1, 2, 3), 2.0};
    Domain ext = BallComplement{1.5, 3};
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int k = 0; k < 100; ++k)
    {
        Vector dir = v3(g(rng), g(rng), g(rng)).normalized();
        Vector x = v3(1, 2, 3) + 1.7 * std::abs(std::sin(k + 1.0)) * dir;
        CHECK(distance(ball, x) == doctest::Approx(2.0 - (x - v3(1, 2, 3)).norm()).epsilon(1e-14));
        Vector y = (2.0 + k) * dir;
        CHECK(distance(ext, y) == doctest::Approx(y.norm() - 1.5).epsilon(1e-14));
        auto r = distance_and_projection(ball, x);
        CHECK(std::abs((r.nearest - v3(1, 2, 3)).norm() - 2.0) < 1e-10);
        CHECK(std::abs((x - r.nearest).norm() - r.distance) < 1e-12);
    }
}

TEST_CASE("polytope validation")
{
    std::vector<Halfspace> open{{Direction(v2(1, 0)), 1.0}, {Direction(v2(-1, 0)), 0.0}};
    CHECK_THROWS_AS(ConvexPolytope{open}, InputError);
    auto tri = *triangle().as<ConvexPolytope>();
    CHECK(tri.vertices().size() == 3);
}

TEST_CASE("subgraph")
{
    auto base = ConvexPolytope::box(Vector::Constant(1, 0.0), Vector::Constant(1, 1.0));
    Subgraph sg(base, profiles::parabolic(Vector::Constant(1, 0.0), Vector::Constant(1, 1.0), 1.0), "parabolic");
    Domain d = sg;
    CHECK(d.dimension() == 2);
    CHECK(contains(d, v2(0.5, 0.5)));
    CHECK_FALSE(contains(d, v2(0.5, 1.5)));
    // close to the base the nearest point is straight below
    auto r = distance_and_projection(d, v2(0.5, 0.1));
    CHECK(r.distance == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(r.minimizers.front().facet_id == Subgraph::base_facet);
    auto up = directional_distance(d, v2(0.5, 0.5), Direction(v2(0, 1)));
    CHECK(up.distance == doctest::Approx(0.5).epsilon(1e-10));
    // profile must vanish on the rim
    auto bad = [](Vector const&) { return 1.0; };
    CHECK_THROWS_AS(Subgraph(base, bad), InputError);
}
