#include "hardy/numerics.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace hardy;
using namespace hardy::numerics;

namespace {

SparseMatrix sparse(Eigen::MatrixXd const& m) { return m.sparseView(); }

// P1 stiffness and mass for -u'' on (0, L) with Dirichlet ends
std::pair<SparseMatrix, SparseMatrix> dirichlet_1d(double length, int cells)
{
    double const h = length / cells;
    int const n = cells - 1;
    std::vector<Eigen::Triplet<double>> k, m;
    for (int i = 0; i < n; ++i)
    {
        k.emplace_back(i, i, 2 / h);
        m.emplace_back(i, i, 4 * h / 6);
        if (i + 1 < n)
        {
            k.emplace_back(i, i + 1, -1 / h);
            k.emplace_back(i + 1, i, -1 / h);
            m.emplace_back(i, i + 1, h / 6);
            m.emplace_back(i + 1, i, h / 6);
        }
    }
    SparseMatrix a(n, n), b(n, n);
    a.setFromTriplets(k.begin(), k.end());
    b.setFromTriplets(m.begin(), m.end());
    return {a, b};
}

} // namespace

TEST_CASE("sphere rules")
{
    for (int n : {1, 2, 3})
    {
        for (int level : {1, 2, 5})
        {
            auto rule = sphere_rule(n, level);
            double sum = 0;
            Vector first = Vector::Zero(n);
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            {
                sum += rule.weights[i];
                first += rule.weights[i] * rule.nodes[i].vector();
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(first.norm() < 1e-14);
        }
    }
    Vector const v{{0.6, 0.8}};
    for (int level : {1, 3, 8})
    {
        auto rule = sphere_rule(2, level);
        double s = 0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            s += rule.weights[i] * std::pow(rule.nodes[i].vector().dot(v), 2);
        CHECK(std::abs(s - 0.5) < 1e-12);
    }
    CHECK_THROWS_AS(sphere_rule(4, 1), UnsupportedError);
    CHECK_THROWS_AS(sphere_rule(0, 1), InputError);
}

TEST_CASE("sphere rule self-convergence in three dimensions")
{
    // a smooth field on the sphere
    auto field = [](Vector const& e) { return 1 / std::pow(1.3 + 0.4 * e[0] - 0.2 * e[2], 2); };
    auto integrate = [&](int level) {
        auto rule = sphere_rule(3, level);
        double s = 0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            s += rule.weights[i] * field(rule.nodes[i].vector());
        return s;
    };
    CHECK(std::abs(integrate(4) - integrate(8)) < 1e-6);
}

TEST_CASE("Gauss-Legendre nodes")
{
    for (int count : {1, 2, 5, 12})
    {
        auto rule = gauss_legendre(count);
        // exact for x^(2 count - 1) and x^(2 count - 2)
        double odd = 0, even = 0, w = 0;
        for (int i = 0; i < count; ++i)
        {
            w += rule.weights[i];
            odd += rule.weights[i] * std::pow(rule.nodes[i], 2 * count - 1);
            even += rule.weights[i] * std::pow(rule.nodes[i], 2 * count - 2);
        }
        CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(std::abs(odd) < 1e-14);
        CHECK(even == doctest::Approx(2.0 / (2 * count - 1)).epsilon(1e-13));
    }
}

TEST_CASE("monotone root")
{
    auto cube = [](double s) { return s * s * s; };
    CHECK(monotone_root(cube, 8.0) == doctest::Approx(2.0).epsilon(1e-12));
    auto st = [](double s) { return s * std::tanh(s); };
    double const s = monotone_root(st, 1.0);
    CHECK(std::abs(s - oracle::tanh_root_f1_s1) < 1e-12);
    CHECK(std::abs(s - oracle::tanh_root(1.0, 1.0)) < 1e-12);
    CHECK(monotone_root(st, 0.0) == 0.0);
    CHECK_THROWS_AS(monotone_root(st, -1.0), NoRootError);
    // independent of the doubling start
    for (double start : {1e-3, 0.5, 7.0, 1e3})
        CHECK(std::abs(monotone_root(st, 1.0, 1e-12, start) - s) < 1e-11);
}

TEST_CASE("composite quadrature")
{
    auto one = quad_1d([](double) { return 1.0; }, 0, 1, 1);
    CHECK(one.value == 1.0);
    auto inv = quad_1d([](double t) { return 1 / ((t + 0.5) * (t + 0.5)); }, 0, 1, 8);
    CHECK(inv.value == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

    auto radial = [](double r) { return r * r / (10.5 - r); };
    auto coarse = quad_1d(radial, 0, 10, 64);
    auto fine = quad_1d(radial, 0, 10, 128);
    CHECK(std::abs(fine.value - oracle::radial_integral_r10) < 1e-10);
    CHECK(std::abs(fine.value - coarse.value) <= coarse.error_estimate);

    try
    {
        quad_1d([](double t) { return 1 / (t - 0.3); }, 0.3, 1, 4);
        quad_1d([](double t) { return std::log(t - 0.5); }, 0, 1, 4);
        FAIL("expected an integrand error");
    }
    catch (IntegrandError const& e)
    {
        CHECK(e.location() < 0.5);
    }
    CHECK_THROWS_AS(quad_1d([](double t) { return t; }, 1, 0, 4), InputError);
}

TEST_CASE("smallest eigenpair")
{
    SUBCASE("diagonal")
    {
        Eigen::MatrixXd a = Eigen::Vector2d(3, 5).asDiagonal();
        auto r = smallest_eigenpair(SymmetricPencil(sparse(a), sparse(Eigen::MatrixXd::Identity(2, 2))));
        CHECK(r.value == doctest::Approx(3.0).epsilon(1e-10));
        CHECK(r.lower <= 3.0);
        CHECK(r.upper >= 3.0);
        CHECK(r.relative_residual <= 1e-10);
    }
    SUBCASE("A equals B")
    {
        std::mt19937_64 rng(1);
        auto m = oracle::random_spd(12, rng);
        auto r = smallest_eigenpair(SymmetricPencil(sparse(m), sparse(m)));
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("Dirichlet Laplacian on (0, pi)")
    {
        auto [a, b] = dirichlet_1d(std::numbers::pi, 1000);
        auto r = smallest_eigenpair(SymmetricPencil(a, b));
        CHECK(std::abs(r.value - 1.0) < 1e-4);
        CHECK(std::abs(r.vector.dot(b * r.vector) - 1.0) < 1e-10);
    }
    SUBCASE("random pencils against a dense solver and under shifts")
    {
        std::mt19937_64 rng(2024);
        std::normal_distribution<double> g;
        for (int trial = 0; trial < 10; ++trial)
        {
            int const n = 5 + trial * 3;
            Eigen::MatrixXd s(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    s(i, j) = g(rng);
            Eigen::MatrixXd a = 0.5 * (s + s.transpose());
            Eigen::MatrixXd b = oracle::random_spd(n, rng);
            double const ref = oracle::dense_smallest(a, b);
            auto r = smallest_eigenpair(SymmetricPencil(sparse(a), sparse(b)));
            CHECK(std::abs(r.value - ref) < 1e-8 * std::max(1.0, std::abs(ref)));
            double const c = 3.7 * g(rng);
            auto shifted = smallest_eigenpair(SymmetricPencil(sparse(a + c * b), sparse(b)));
            CHECK(std::abs(shifted.value - (r.value + c)) < 1e-8);
            CHECK(count_below(SymmetricPencil(sparse(a), sparse(b)), ref + 1e-6) >= 1);
            CHECK(count_below(SymmetricPencil(sparse(a), sparse(b)), ref - 1e-6) == 0);
        }
    }
    SUBCASE("input checks")
    {
        Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
        Eigen::MatrixXd bad = Eigen::Vector2d(1, -1).asDiagonal();
        CHECK_THROWS_AS(SymmetricPencil(sparse(a), sparse(bad)), InputError);
        Eigen::MatrixXd indefinite{{1, 2}, {2, 1}};
        CHECK_THROWS_AS(SymmetricPencil(sparse(a), sparse(indefinite)), InputError);
        Eigen::MatrixXd skew{{1, 2}, {0, 1}};
        CHECK_THROWS_AS(SymmetricPencil(sparse(skew), sparse(a)), InputError);
    }
}

TEST_CASE("rayleigh quotient bounds the smallest eigenvalue")
{
    auto [a, b] = dirichlet_1d(1.0, 200);
    SymmetricPencil p(a, b);
    double const lam = smallest_eigenpair(p).value;
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    for (int k = 0; k < 20; ++k)
    {
        Eigen::VectorXd x(p.size());
        for (Eigen::Index i = 0; i < x.size(); ++i)
            x[i] = g(rng);
        CHECK(rayleigh_quotient(p, x) >= lam);
    }
}
