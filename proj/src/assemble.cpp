#include "hardy/verify.hpp"

#include <cmath>
#include <sstream>

namespace hardy::verify {
namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

struct Builder
{
    Triplets k, s, b, m, w;
};

[[noreturn]] void weight_failure(Point const& x, double value)
{
    std::ostringstream os;
    os << "weight is not finite (" << value << ") at (";
    for (Eigen::Index i = 0; i < x.size(); ++i)
        os << (i ? ", " : "") << x[i];
    os << ")";
    throw AssemblyError(os.str(), x);
}

double checked(double value, Point const& x)
{
    if (!std::isfinite(value))
        weight_failure(x, value);
    return value;
}

SparseMatrix to_dofs(Triplets const& t, std::vector<int> const& dof, int n)
{
    Triplets mapped;
    mapped.reserve(t.size());
    for (auto const& e : t)
    {
        int const r = dof[e.row()];
        int const c = dof[e.col()];
        if (r >= 0 && c >= 0)
            mapped.emplace_back(r, c, e.value());
    }
    SparseMatrix out(n, n);
    out.setFromTriplets(mapped.begin(), mapped.end());
    return out;
}

DiscreteForm finish(Builder const& bld, std::vector<char> const& active, std::vector<char> const& dirichlet, double h)
{
    DiscreteForm f;
    f.h = h;
    f.dof_of_node.assign(active.size(), -1);
    int n = 0;
    for (std::size_t i = 0; i < active.size(); ++i)
    {
        if (!active[i])
            continue;
        if (dirichlet[i])
            f.eliminated.push_back(static_cast<int>(i));
        else
            f.dof_of_node[i] = n++;
    }
    if (n == 0)
        throw AssemblyError("no degrees of freedom remain after elimination", Point());
    f.stiffness = to_dofs(bld.k, f.dof_of_node, n);
    f.boundary_sigma = to_dofs(bld.s, f.dof_of_node, n);
    f.boundary_bonus = to_dofs(bld.b, f.dof_of_node, n);
    f.mass = to_dofs(bld.m, f.dof_of_node, n);
    f.weighted_mass = to_dofs(bld.w, f.dof_of_node, n);
    return f;
}

// P1 elements on sorted nodes with density r^power
DiscreteForm assemble_line(std::vector<double> const& x,
                           int power,
                           EndConditions ends,
                           std::array<double, 2> bonus,
                           std::function<double(double)> const& weight,
                           WeightSampling sampling)
{
    static numerics::GaussRule const rule = numerics::gauss_legendre(5);
    int const n = static_cast<int>(x.size());
    if (n < 2)
        throw InputError("a one-dimensional mesh needs at least one cell");
    auto density = [power](double r) { return power == 0 ? 1.0 : std::pow(r, power); };
    Builder bld;
    double hmax = 0;
    for (int e = 0; e + 1 < n; ++e)
    {
        double const a = x[e], b = x[e + 1], h = b - a;
        hmax = std::max(hmax, h);
        double ke[2][2] = {}, me[2][2] = {}, we[2][2] = {};
        for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        {
            double const xi = 0.5 * (1 + rule.nodes[q]);
            double const r = a + xi * h;
            double const wq = 0.5 * h * rule.weights[q] * density(r);
            double const phi[2] = {1 - xi, xi};
            double const dphi[2] = {-1 / h, 1 / h};
            double const wv = (weight && sampling == WeightSampling::gauss)
                                  ? checked(weight(r), Point::Constant(1, r))
                                  : 0.0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                {
                    ke[i][j] += wq * dphi[i] * dphi[j];
                    me[i][j] += wq * phi[i] * phi[j];
                    we[i][j] += wq * wv * phi[i] * phi[j];
                }
        }
        if (weight && sampling == WeightSampling::centroid)
        {
            double const mid = a + 0.5 * h;
            double const wv = checked(weight(mid), Point::Constant(1, mid));
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    we[i][j] = wv * me[i][j];
        }
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
            {
                bld.k.emplace_back(e + i, e + j, ke[i][j]);
                bld.m.emplace_back(e + i, e + j, me[i][j]);
                if (weight)
                    bld.w.emplace_back(e + i, e + j, we[i][j]);
            }
    }
    std::vector<char> active(n, 1), dirichlet(n, 0);
    auto end_term = [&](int node, double sigma, double b) {
        if (std::isnan(sigma))
            throw InputError("Robin end value is NaN");
        if (sigma == weights::infinity)
        {
            dirichlet[node] = 1;
            return;
        }
        double const d = density(x[node]);
        bld.s.emplace_back(node, node, sigma * d);
        if (b != 0)
            bld.b.emplace_back(node, node, checked(b, Point::Constant(1, x[node])) * d);
    };
    end_term(0, ends.left, bonus[0]);
    end_term(n - 1, ends.right, bonus[1]);
    return finish(bld, active, dirichlet, hmax);
}

std::vector<double> uniform_nodes(double a, double b, int cells)
{
    std::vector<double> x(cells + 1);
    for (int i = 0; i <= cells; ++i)
        x[i] = a + (b - a) * i / cells;
    x.back() = b;
    return x;
}

// Degree-5 seven-point rule on triangles (barycentric coordinates, weights sum to 1)
struct TrianglePoint
{
    double l1, l2, l3, w;
};
constexpr double a1 = 0.059715871789770, b1 = 0.470142064105115, w1 = 0.132394152788506;
constexpr double a2 = 0.797426985353087, b2 = 0.101286507323456, w2 = 0.125939180544827;
constexpr TrianglePoint triangle_rule[7] = {
    {1.0 / 3, 1.0 / 3, 1.0 / 3, 0.225},
    {a1, b1, b1, w1},
    {b1, a1, b1, w1},
    {b1, b1, a1, w1},
    {a2, b2, b2, w2},
    {b2, a2, b2, w2},
    {b2, b2, a2, w2},
};

} // namespace

SparseMatrix DiscreteForm::remainder() const
{
    return stiffness + boundary_sigma - boundary_bonus - weighted_mass;
}

SparseMatrix DiscreteForm::robin_form() const { return stiffness + boundary_sigma; }

DiscreteForm assemble(IntervalMesh const& mesh, EndConditions ends, HardyWeight const* weight, WeightSampling sampling)
{
    if (!(mesh.b > 0) || mesh.cells < 1)
        throw InputError("interval mesh needs b > 0 and at least one cell");
    std::function<double(double)> w;
    std::array<double, 2> bonus{0, 0};
    if (weight)
    {
        w = [weight](double t) { return weight->interior(Point::Constant(1, t)); };
        bonus[0] = weight->boundary({Point::Constant(1, 0.0), 0});
        bonus[1] = weight->boundary({Point::Constant(1, mesh.b), 1});
    }
    return assemble_line(uniform_nodes(0, mesh.b, mesh.cells), 0, ends, bonus, w, sampling);
}

DiscreteForm assemble(IntervalMesh const& mesh, RobinCoefficient const& sigma, HardyWeight const* weight, WeightSampling sampling)
{
    EndConditions const ends{sigma.at({Point::Constant(1, 0.0), 0}), sigma.at({Point::Constant(1, mesh.b), 1})};
    return assemble(mesh, ends, weight, sampling);
}

DiscreteForm assemble(RadialMesh const& mesh, double sigma, HardyWeight const* weight, WeightSampling sampling)
{
    if (!(mesh.R > 0) || !(mesh.outer > mesh.R))
        throw InputError("radial mesh needs 0 < R < outer radius");
    if (mesh.nodes < 3)
        throw InputError("radial mesh needs at least three nodes");
    if (mesh.dimension < 1)
        throw InputError("radial mesh dimension must be positive");
    if (std::isnan(sigma) || sigma < 0)
        throw InputError("radial Robin coefficient must lie in [0, inf]");
    std::function<double(double)> w;
    std::array<double, 2> bonus{0, 0};
    int const n = mesh.dimension;
    if (weight)
    {
        w = [weight, n](double r) {
            Point x = Point::Zero(n);
            x[0] = r;
            return weight->interior(x);
        };
        Point y = Point::Zero(n);
        y[0] = mesh.R;
        bonus[0] = weight->boundary({y, 0});
    }
    return assemble_line(uniform_nodes(mesh.R, mesh.outer, mesh.nodes - 1),
                         n - 1,
                         {sigma, weights::infinity},
                         bonus,
                         w,
                         sampling);
}

DiscreteForm assemble(GridMesh const& mesh, RobinCoefficient const& sigma, HardyWeight const* weight, WeightSampling sampling)
{
    static numerics::GaussRule const line = numerics::gauss_legendre(3);
    int const nn = mesh.node_count();
    std::vector<char> active(nn, 0), dirichlet(nn, 0);
    Builder bld;
    double const hx = mesh.hx, hy = mesh.hy;

    for (auto const& cell : mesh.cells)
    {
        auto const ids = mesh.cell_nodes(cell);
        Eigen::Vector2d const lo = mesh.node(ids[0]);
        auto basis = [&](Eigen::Vector2d const& p, double phi[4], double gx[4], double gy[4]) {
            double const xi = (p.x() - lo.x()) / hx;
            double const eta = (p.y() - lo.y()) / hy;
            phi[0] = (1 - xi) * (1 - eta);
            phi[1] = xi * (1 - eta);
            phi[2] = xi * eta;
            phi[3] = (1 - xi) * eta;
            gx[0] = -(1 - eta) / hx;
            gx[1] = (1 - eta) / hx;
            gx[2] = eta / hx;
            gx[3] = -eta / hx;
            gy[0] = -(1 - xi) / hy;
            gy[1] = -xi / hy;
            gy[2] = xi / hy;
            gy[3] = (1 - xi) / hy;
        };
        for (int a : ids)
            active[a] = 1;

        double ke[4][4] = {}, me[4][4] = {}, we[4][4] = {}, se[4][4] = {}, be[4][4] = {};
        Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
        auto const& poly = cell.polygon;
        for (std::size_t t = 1; t + 1 < poly.size(); ++t)
        {
            Eigen::Vector2d const &p0 = poly[0], &p1 = poly[t], &p2 = poly[t + 1];
            double const area = 0.5 * ((p1 - p0).x() * (p2 - p0).y() - (p1 - p0).y() * (p2 - p0).x());
            if (area <= 0)
                continue;
            centroid += area * (p0 + p1 + p2) / 3;
            for (auto const& q : triangle_rule)
            {
                Eigen::Vector2d const p = q.l1 * p0 + q.l2 * p1 + q.l3 * p2;
                double const wq = q.w * area;
                double phi[4], gx[4], gy[4];
                basis(p, phi, gx, gy);
                double wv = 0;
                if (weight && sampling == WeightSampling::gauss)
                    wv = checked(weight->interior(Point(p)), Point(p));
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                    {
                        ke[i][j] += wq * (gx[i] * gx[j] + gy[i] * gy[j]);
                        me[i][j] += wq * phi[i] * phi[j];
                        we[i][j] += wq * wv * phi[i] * phi[j];
                    }
            }
        }
        if (weight && sampling == WeightSampling::centroid)
        {
            centroid /= cell.area;
            double const wv = checked(weight->interior(Point(centroid)), Point(centroid));
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    we[i][j] = wv * me[i][j];
        }

        for (auto const& seg : cell.boundary)
        {
            Eigen::Vector2d const mid = 0.5 * (seg.a + seg.b);
            double const s = sigma.at({Point(mid), seg.facet});
            double const len = (seg.b - seg.a).norm();
            if (s == weights::infinity)
            {
                // every node whose basis function does not vanish on the segment
                for (Eigen::Vector2d const& p : {seg.a, mid, seg.b})
                {
                    double phi[4], gx[4], gy[4];
                    basis(p, phi, gx, gy);
                    for (int i = 0; i < 4; ++i)
                        if (std::abs(phi[i]) > 1e-12)
                            dirichlet[ids[i]] = 1;
                }
                continue;
            }
            for (std::size_t q = 0; q < line.nodes.size(); ++q)
            {
                Eigen::Vector2d const p = seg.a + 0.5 * (1 + line.nodes[q]) * (seg.b - seg.a);
                double const wq = 0.5 * len * line.weights[q];
                double phi[4], gx[4], gy[4];
                basis(p, phi, gx, gy);
                double const bonus = weight ? checked(weight->boundary({Point(p), seg.facet}), Point(p)) : 0.0;
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                    {
                        se[i][j] += wq * s * phi[i] * phi[j];
                        be[i][j] += wq * bonus * phi[i] * phi[j];
                    }
            }
        }

        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
            {
                bld.k.emplace_back(ids[i], ids[j], ke[i][j]);
                bld.m.emplace_back(ids[i], ids[j], me[i][j]);
                if (weight)
                    bld.w.emplace_back(ids[i], ids[j], we[i][j]);
                if (!cell.boundary.empty())
                {
                    bld.s.emplace_back(ids[i], ids[j], se[i][j]);
                    bld.b.emplace_back(ids[i], ids[j], be[i][j]);
                }
            }
    }
    return finish(bld, active, dirichlet, mesh.h());
}

} // namespace hardy::verify
