#include "oracles.hpp"

#include "hardy/verify.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

using namespace hardy;
using namespace hardy::verify;
using weights::infinity;

namespace {

geometry::Domain unit_square()
{
    return geometry::ConvexPolytope::box(Vector::Zero(2), Vector::Ones(2));
}

geometry::Domain unit_disk()
{
    return geometry::Ball{Point::Zero(2), 1.0};
}

double form(SparseMatrix const& a, Eigen::VectorXd const& u)
{
    return u.dot(a * u);
}

bool symmetric(SparseMatrix const& a)
{
    SparseMatrix const t = a.transpose();
    return (a - t).norm() <= 1e-12 * std::max(1.0, a.norm());
}

Eigen::VectorXd node_values(GridMesh const& mesh, DiscreteForm const& f, std::function<double(double, double)> g)
{
    Eigen::VectorXd u(f.dofs());
    for (int id = 0; id < mesh.node_count(); ++id)
        if (f.dof_of_node[id] >= 0)
            u[f.dof_of_node[id]] = g(mesh.node(id).x(), mesh.node(id).y());
    return u;
}

} // namespace

TEST_CASE("constant function on the unit square sees only the boundary term")
{
    for (double c : {0.5, 2.0})
    {
        auto const mesh = build_grid(unit_square(), 1.0 / 16);
        auto const f = assemble(mesh, weights::RobinCoefficient::constant(c), nullptr);
        Eigen::VectorXd const one = Eigen::VectorXd::Ones(f.dofs());
        CHECK(form(f.robin_form(), one) == doctest::Approx(4 * c).epsilon(1e-12));
        CHECK(form(f.stiffness, one) == doctest::Approx(0).epsilon(1e-12));
        CHECK(form(f.mass, one) == doctest::Approx(1).epsilon(1e-12));
    }
}

TEST_CASE("disk grid tiles the inscribed chord polygon")
{
    for (double h : {1.0 / 16, 1.0 / 32})
    {
        auto const mesh = build_grid(unit_disk(), h);
        double area = 0;
        for (auto const& c : mesh.cells)
            area += c.area;
        CHECK(area < std::numbers::pi);
        CHECK(std::numbers::pi - area < 2 * h * h);
        CHECK(mesh.boundary_length < 2 * std::numbers::pi);
        CHECK(2 * std::numbers::pi - mesh.boundary_length < h * h);
        CHECK(mesh.cut_cells > 0);
        CHECK(mesh.min_area_fraction > 0);

        auto const f = assemble(mesh, weights::RobinCoefficient::constant(3.0), nullptr);
        Eigen::VectorXd const one = Eigen::VectorXd::Ones(f.dofs());
        CHECK(form(f.robin_form(), one) == doctest::Approx(3 * mesh.boundary_length).epsilon(1e-12));
        CHECK(form(f.mass, one) == doctest::Approx(area).epsilon(1e-12));
    }
}

TEST_CASE("assembled matrices are symmetric and constants lie in the stiffness kernel")
{
    auto const domain = unit_disk();
    auto const sigma = weights::RobinCoefficient::constant(1.0);
    auto const w = weights::convex_weight(domain, sigma);
    auto const mesh = build_grid(domain, 1.0 / 12);
    auto const f = assemble(mesh, sigma, &w);
    CHECK(symmetric(f.stiffness));
    CHECK(symmetric(f.boundary_sigma));
    CHECK(symmetric(f.boundary_bonus));
    CHECK(symmetric(f.mass));
    CHECK(symmetric(f.weighted_mass));
    Eigen::VectorXd const row_sums = f.stiffness * Eigen::VectorXd::Ones(f.dofs());
    CHECK(row_sums.cwiseAbs().maxCoeff() < 1e-12);
    Eigen::LLT<Eigen::MatrixXd> const llt(Eigen::MatrixXd(f.mass));
    CHECK(llt.info() == Eigen::Success);
}

TEST_CASE("bilinear stiffness is exact for a linear function")
{
    auto const mesh = build_grid(unit_square(), 1.0 / 8);
    auto const f = assemble(mesh, weights::RobinCoefficient::constant(0.0), nullptr);
    auto const u = node_values(mesh, f, [](double x, double y) { return 2 * x - y; });
    CHECK(form(f.stiffness, u) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("interval form of u = t with Robin 1 at 0 and 0 at 1")
{
    int const cells = 50;
    auto const f = assemble(IntervalMesh{1.0, cells}, EndConditions{1.0, 0.0}, nullptr);
    Eigen::VectorXd u(cells + 1);
    for (int i = 0; i <= cells; ++i)
        u[i] = double(i) / cells;
    CHECK(form(f.robin_form(), u) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(form(f.mass, u) == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("infinite σ at 0 eliminates the end node")
{
    int const cells = 20;
    auto const robin = assemble(IntervalMesh{1.0, cells}, EndConditions{infinity, 0.0}, nullptr);
    auto const neumann = assemble(IntervalMesh{1.0, cells}, EndConditions{0.0, 0.0}, nullptr);
    REQUIRE(robin.dofs() == cells);
    CHECK(robin.eliminated == std::vector<int>{0});
    CHECK(robin.dof_of_node[0] == -1);
    Eigen::MatrixXd const full(neumann.robin_form());
    Eigen::MatrixXd const sub = full.bottomRightCorner(cells, cells);
    CHECK((Eigen::MatrixXd(robin.robin_form()) - sub).norm() < 1e-12);
}

TEST_CASE("infinite σ on a grid eliminates every node touching the boundary")
{
    auto const mesh = build_grid(unit_square(), 1.0 / 8);
    auto const f = assemble(mesh, weights::RobinCoefficient::constant(infinity), nullptr);
    CHECK(f.dofs() == 7 * 7);
    CHECK(f.eliminated.size() == 81 - 49);
    CHECK(f.boundary_sigma.norm() == 0);
    auto const ev = numerics::smallest_eigenpair(numerics::SymmetricPencil(f.robin_form(), f.mass));
    CHECK(ev.value == doctest::Approx(2 * std::numbers::pi * std::numbers::pi).epsilon(0.05));
}

TEST_CASE("non-finite weight raises an assembly error with its location")
{
    HardyWeight w;
    w.interior = [](Point const& x) { return x[0] > 0.5 ? infinity : 1.0; };
    w.boundary = [](geometry::BoundaryPoint const&) { return 0.0; };
    try
    {
        assemble(IntervalMesh{1.0, 4}, EndConditions{1.0, 1.0}, &w);
        FAIL("expected an assembly error");
    }
    catch (AssemblyError const& e)
    {
        CHECK(e.location()[0] > 0.5);
    }
}

TEST_CASE("radial assembly matches direct quadrature of the interpolant")
{
    double const R = 1, outer = 5, sigma = 1.5;
    int const nodes = 401;
    for (int n : {2, 3, 5})
    {
        auto const w = weights::exterior_weight(R, sigma, n);
        auto const f = assemble(RadialMesh{R, outer, nodes, n}, sigma, &w);
        double const h = (outer - R) / (nodes - 1);
        auto u = [&](double r) { return std::sin(r) * (outer - r); };
        Eigen::VectorXd v(nodes - 1);
        for (int i = 0; i + 1 < nodes; ++i)
            v[i] = u(R + i * h);

        double grad = 0, weighted = 0;
        for (int i = 0; i + 1 < nodes; ++i)
        {
            double const a = R + i * h, b = a + h;
            double const ua = u(a), ub = i + 2 == nodes ? 0.0 : u(b);
            double const slope = (ub - ua) / h;
            auto interp = [&](double r) { return ua + slope * (r - a); };
            grad += numerics::quad_1d([&](double r) { return slope * slope * std::pow(r, n - 1); }, a, b, 1).value;
            weighted += numerics::quad_1d(
                            [&](double r) {
                                Point x = Point::Zero(n);
                                x[0] = r;
                                return w.interior(x) * interp(r) * interp(r) * std::pow(r, n - 1);
                            },
                            a,
                            b,
                            1)
                            .value;
        }
        double const boundary = (sigma - w.boundary({Point::Unit(n, 0), 0})) * std::pow(R, n - 1) * u(R) * u(R);
        double const direct = grad + boundary - weighted;
        CHECK(form(f.remainder(), v) == doctest::Approx(direct).epsilon(1e-8));
    }
}

TEST_CASE("interval certification of the Robin weight")
{
    CertifyOptions opt;
    opt.tolerance = 1e-3;
    auto const rep =
        certify_interval(1.0, {1.0, 0.0}, weights::lemma1_weight(1.0, 1.0), {1.0 / 100, 1.0 / 200, 1.0 / 400}, opt);
    CHECK(rep.pass);
    REQUIRE(rep.levels.size() == 3);
    for (auto const& l : rep.levels)
    {
        CHECK(l.solved);
        CHECK(l.lambda_min >= -1e-3);
        CHECK(l.random_quotients.size() == 20);
        for (double q : l.random_quotients)
            CHECK(q >= l.lambda_min - 1e-9);
    }
    CHECK(rep.levels[0].h > rep.levels[2].h);
}

TEST_CASE("zero σ gives a zero weight and a nonnegative form")
{
    auto const domain = geometry::Domain(geometry::Interval{2.0});
    auto const sigma = weights::RobinCoefficient::constant(0.0);
    auto const rep = certify(domain, sigma, weights::lemma1_weight(2.0, 0.0), {0.01});
    CHECK(rep.pass);
    CHECK(rep.levels[0].lambda_min >= -1e-10);
    CHECK(rep.levels[0].lambda_min <= 1e-10);
}

TEST_CASE("Dirichlet weight on the unit square")
{
    auto const domain = unit_square();
    auto const rep = certify(domain,
                             weights::RobinCoefficient::constant(infinity),
                             weights::dirichlet_weight(domain),
                             {1.0 / 32, 1.0 / 64});
    CHECK(rep.pass);
    CHECK(rep.levels.back().lambda_min >= -5e-2);
    CHECK(rep.levels.back().h < rep.levels.front().h);
}

TEST_CASE("convex certification with mixed boundary values on a triangle")
{
    std::vector<Vector> tri{Vector::Zero(2), Vector::Unit(2, 0), Vector::Unit(2, 1)};
    geometry::Domain const domain = geometry::ConvexPolytope::polygon(tri);
    auto const sigma = weights::RobinCoefficient::per_facet({1.0, infinity, 0.5});
    auto const rep = certify(domain, sigma, weights::convex_weight(domain, sigma), {1.0 / 16, 1.0 / 32});
    CHECK(rep.pass);
    CHECK(rep.notes.size() == 2);
}

TEST_CASE("centroid sampling is available")
{
    auto const domain = unit_disk();
    auto const sigma = weights::RobinCoefficient::constant(2.0);
    CertifyOptions opt;
    opt.sampling = WeightSampling::centroid;
    auto const rep = certify(domain, sigma, weights::convex_weight(domain, sigma), {1.0 / 16}, opt);
    CHECK(rep.pass);
}

TEST_CASE("unsupported certification domains are rejected")
{
    geometry::Domain const ext = geometry::BallComplement{1.0, 3};
    auto const sigma = weights::RobinCoefficient::constant(1.0);
    HardyWeight w;
    CHECK_THROWS_AS(certify(ext, sigma, w, {0.1}), UnsupportedError);
    CHECK_THROWS_AS(certify(unit_square(), sigma, weights::convex_weight(unit_square(), sigma), {}), InputError);
}

TEST_CASE("sharpness ratios")
{
    CHECK(sharpness_integral(3, 10, 0.5) == doctest::Approx(oracle::radial_integral_r10).epsilon(1e-12));
    auto const rep = sharpness_scan(3, 1.0, {10, 1e2, 1e3, 1e4});
    REQUIRE(rep.rows.size() == 4);
    for (int k = 0; k < 4; ++k)
    {
        CHECK(rep.rows[k][1] == doctest::Approx(oracle::sharpness_c[k]).epsilon(1e-10));
        CHECK(rep.rows[k][1] > 0.25);
        CHECK(rep.rows[k][2] <= 2 / std::log1p(2 * rep.rows[k][0]));
        if (k > 0)
            CHECK(rep.rows[k][1] < rep.rows[k - 1][1]);
    }
    CHECK(rep.pass);
    CHECK_THROWS_AS(sharpness_scan(3, 0.0, {10}), InputError);
}

TEST_CASE("negative eigenvalue with positive total boundary coefficient")
{
    auto const rep = negative_eigenvalue_demo(1.0, -1.0, 2.0);
    double const e2 = std::exp(-2.0);
    CHECK(rep.quantity("rayleigh_numerator") == doctest::Approx((1 - e2) / 2 - 1 + 2 * e2).epsilon(1e-12));
    CHECK(rep.quantity("boundary_integral") == doctest::Approx(1.0));
    CHECK(rep.quantity("lambda_min") < 0);
    CHECK(rep.quantity("lambda_min") <= rep.quantity("rayleigh_quotient"));
    CHECK(rep.pass);
    CHECK(rep.applicable);

    auto const off = negative_eigenvalue_demo(1.0, 0.0, 2.0);
    CHECK_FALSE(off.applicable);
    CHECK(off.quantity("lambda_min") >= 0);
}

TEST_CASE("exterior radial certification")
{
    CertifyOptions opt;
    opt.tolerance = 1e-6;
    for (double s : {0.0, 1.0, infinity})
    {
        auto const rep = exterior_certify(1.0, s, 3, 20.0, {1000, 2000}, opt);
        CHECK(rep.pass);
    }
    CHECK_THROWS_AS(exterior_certify(1.0, 1.0, 3, 1.0, {100}), InputError);
}

TEST_CASE("exterior Dirichlet form of a cut-off linear function is nonnegative")
{
    int const n = 3, nodes = 2001;
    double const R = 1, outer = 10;
    auto const w = weights::exterior_weight(R, infinity, n);
    auto const f = assemble(RadialMesh{R, outer, nodes, n}, infinity, &w);
    double const h = (outer - R) / (nodes - 1);
    Eigen::VectorXd u(f.dofs());
    for (int i = 1; i + 1 < nodes; ++i)
    {
        double const r = R + i * h;
        double const cutoff = r < 5 ? 1.0 : std::max(0.0, (outer - r) / (outer - 5));
        u[f.dof_of_node[i]] = (r - R) * cutoff;
    }
    CHECK(form(f.remainder(), u) >= 0);
}

TEST_CASE("single fibers with the sign-changing weight")
{
    double const h = 1e-3;
    auto fiber = [h](double f, double s) {
        auto const fw = weights::fiber_weight(f, s);
        HardyWeight w;
        w.interior = [rho = fw.interior](Point const&) { return rho; };
        w.boundary = [bonus = fw.bonus](geometry::BoundaryPoint const& y) { return y.facet_id == 0 ? bonus : 0.0; };
        auto const form = assemble(IntervalMesh{f, static_cast<int>(std::lround(f / h))}, EndConditions{s, 0.0}, &w);
        return numerics::smallest_eigenpair(numerics::SymmetricPencil(form.remainder(), form.mass)).value;
    };
    double const neg = fiber(1.0, -1.0);
    CHECK(neg >= -1e-6);
    CHECK(neg <= 1e-6);
    CHECK(fiber(1.0, 0.0) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(fiber(1.0, 1.0) >= -1e-3);
}

TEST_CASE("subgraph certification over a sine profile")
{
    auto const base = geometry::ConvexPolytope::box(Vector::Zero(1), Vector::Ones(1));
    geometry::Subgraph const g(base, geometry::profiles::sine(Vector::Zero(1), Vector::Ones(1), 1.0), "sine");
    weights::RobinCoefficient::Region neg{Vector::Constant(1, 0.0), Vector::Constant(1, 0.5), -1.0};
    weights::RobinCoefficient::Region pos{Vector::Constant(1, 0.5), Vector::Constant(1, 1.0), 2.0};
    auto const sigma = weights::RobinCoefficient::regions({neg, pos});
    auto const rep = subgraph_certify(g, sigma, {1e-2, 5e-3}, 8);
    CHECK(rep.pass);
    CHECK(rep.rows.size() == 8);
}

TEST_CASE("Robin-Neumann eigenvalue cross-check")
{
    auto const rep = robin_ev_check(1.0, -1.0, 1e-3);
    CHECK(rep.quantity("mu") == doctest::Approx(-oracle::tanh_root_f1_s1 * oracle::tanh_root_f1_s1).epsilon(1e-10));
    CHECK(rep.quantity("difference") <= 1e-4 * std::abs(rep.quantity("mu")));
    CHECK(rep.quantity("C") == doctest::Approx(rep.quantity("difference") / 1e-6));
    CHECK(rep.pass);
}

TEST_CASE("truncated quarter plane")
{
    std::vector<geometry::Halfspace> const hs{{Direction(Eigen::Vector2d(-1, 0)), 0.0},
                                              {Direction(Eigen::Vector2d(0, -1)), 0.0}};
    auto const rep = truncated_convex_certify(hs, {1.0, infinity}, 2.0, {0.25, 0.125});
    CHECK(rep.pass);
    auto const mesh = build_truncated_grid(hs, 2.0, 0.125);
    double area = 0;
    for (auto const& c : mesh.cells)
        area += c.area;
    CHECK(area == doctest::Approx(std::numbers::pi).epsilon(0.01));
}

TEST_CASE("Dirichlet limit approaches the eliminated problem monotonically")
{
    auto const rep = dirichlet_limit(unit_square(), {10, 100, 1000, 1e5}, 1.0 / 16);
    REQUIRE(rep.rows.size() == 5);
    for (std::size_t k = 1; k + 1 < rep.rows.size(); ++k)
        CHECK(rep.rows[k][2] < rep.rows[k - 1][2]);
    CHECK(rep.rows[3][2] < 1e-2);
    CHECK(rep.pass);
}

TEST_CASE("pointwise μ checks on the unit square")
{
    auto const rep = mu_pointwise_check(unit_square(), weights::RobinCoefficient::constant(1.0), 10, 100000, 7);
    CHECK(rep.pass);
    CHECK(rep.quantity("converged") == 10);
    CHECK(rep.quantity("alpha") > 0);
    auto const dir = mu_pointwise_check(unit_square(), weights::RobinCoefficient::constant(infinity), 5);
    CHECK(dir.pass);
}

TEST_CASE("thread cap honours the environment")
{
    setenv("HARDY_ROBIN_THREADS", "3", 1);
    CHECK(thread_cap() == 3);
    setenv("HARDY_ROBIN_THREADS", "junk", 1);
    CHECK(thread_cap() >= 1);
    unsetenv("HARDY_ROBIN_THREADS");

    std::vector<int> hits(100, 0);
    parallel_for(100, [&](int i) { hits[i] += 1; });
    CHECK(std::count(hits.begin(), hits.end(), 1) == 100);
    CHECK_THROWS_AS(parallel_for(4, [](int i) {
                        if (i == 2)
                            throw InputError("boom");
                    }),
                    InputError);
}
