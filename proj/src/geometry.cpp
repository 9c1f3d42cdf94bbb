#include "hardy/geometry.hpp"

#include <Eigen/Geometry>

#include "hardy/errors.hpp"
#include "subgraph_detail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hardy {

Direction::Direction(Vector v)
{
    double const norm = v.norm();
    if (v.size() == 0 || !std::isfinite(norm) || norm == 0)
        throw InputError("direction must be a finite nonzero vector");
    v_ = v / norm;
}

Direction Direction::from_unit(Vector v)
{
    if (v.size() == 0 || !v.allFinite() || std::abs(v.norm() - 1.0) > 1e-12)
        throw InputError("direction is not a unit vector");
    return Direction(std::move(v), Unchecked{});
}

Direction Direction::operator-() const
{
    return Direction(-v_, Unchecked{});
}

namespace geometry {
namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

template<class... Ts>
struct Overloaded : Ts...
{
    using Ts::operator()...;
};

void check_dimension(Domain const& domain, Point const& x)
{
    if (x.size() != domain.dimension())
        throw InputError("point has dimension " + std::to_string(x.size())
                         + ", domain has dimension " + std::to_string(domain.dimension()));
    if (!x.allFinite())
        throw InputError("point coordinates must be finite");
}

void require_inside(Domain const& domain, Point const& x)
{
    if (!contains(domain, x))
        throw DomainError("point is not inside the " + domain.variant_name());
}

// Unit-radius sphere nodes about the origin used by ball quadratures.
struct SphereNode
{
    Vector direction;
    double fraction;  // share of the total surface area
};

std::vector<SphereNode> sphere_nodes(int n, int resolution);

std::vector<BoundaryNode>
sphere_quadrature(Point const& center, double radius, int resolution, bool inward)
{
    auto const n = static_cast<int>(center.size());
    double const area = unit_sphere_area(n) * std::pow(radius, n - 1);
    std::vector<BoundaryNode> nodes;
    for (auto const& s : sphere_nodes(n, resolution))
    {
        Vector normal = inward ? Vector(-s.direction) : s.direction;
        nodes.push_back({center + radius * s.direction,
                         area * s.fraction,
                         Direction(std::move(normal)),
                         0});
    }
    return nodes;
}

std::vector<BoundaryNode> polytope_quadrature(ConvexPolytope const& p, int resolution)
{
    std::vector<BoundaryNode> nodes;
    int const n = p.dimension();
    for (std::size_t j = 0; j < p.facet_count(); ++j)
    {
        auto const& fv = p.facet_vertices(static_cast<int>(j));
        Direction const& normal = p.halfspaces()[j].normal;
        int const id = static_cast<int>(j);
        if (n == 1)
        {
            if (!fv.empty())
                nodes.push_back({fv.front(), 1.0, normal, id});
        }
        else if (n == 2)
        {
            if (fv.size() < 2)
                continue;
            Vector const a = fv[0];
            Vector const b = fv[1];
            double const len = (b - a).norm() / resolution;
            for (int k = 0; k < resolution; ++k)
            {
                double const t = (k + 0.5) / resolution;
                nodes.push_back({a + t * (b - a), len, normal, id});
            }
        }
        else if (n == 3)
        {
            if (fv.size() < 3)
                continue;
            Vector c = Vector::Zero(3);
            for (auto const& v : fv)
                c += v;
            c /= static_cast<double>(fv.size());
            for (std::size_t i = 0; i < fv.size(); ++i)
            {
                Eigen::Vector3d const a = c;
                Eigen::Vector3d const b = fv[i];
                Eigen::Vector3d const d = fv[(i + 1) % fv.size()];
                // Regular subdivision into resolution^2 congruent triangles
                double const m = resolution;
                Eigen::Vector3d const u = (b - a) / m;
                Eigen::Vector3d const v = (d - a) / m;
                double const area = 0.5 * u.cross(v).norm();
                for (int r = 0; r < resolution; ++r)
                {
                    for (int s = 0; s + r < resolution; ++s)
                    {
                        Eigen::Vector3d const o = a + r * u + s * v;
                        nodes.push_back({Vector(o + (u + v) / 3.0), area, normal, id});
                        if (r + s + 1 < resolution)
                        {
                            Eigen::Vector3d const g = o + (2.0 * (u + v)) / 3.0;
                            nodes.push_back({Vector(g), area, normal, id});
                        }
                    }
                }
            }
        }
        else
        {
            throw UnsupportedError("boundary quadrature for polytopes is limited to n <= 3");
        }
    }
    return nodes;
}

} // namespace

double unit_ball_volume(int n)
{
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double unit_sphere_area(int n)
{
    return n * unit_ball_volume(n);
}

namespace {
std::vector<SphereNode> sphere_nodes(int n, int resolution)
{
    std::vector<SphereNode> out;
    if (n == 1)
    {
        out.push_back({Vector::Constant(1, -1.0), 0.5});
        out.push_back({Vector::Constant(1, 1.0), 0.5});
    }
    else if (n == 2)
    {
        int const m = std::max(3, resolution);
        for (int k = 0; k < m; ++k)
        {
            double const th = 2 * std::numbers::pi * (k + 0.5) / m;
            out.push_back({Vector{{std::cos(th), std::sin(th)}}, 1.0 / m});
        }
    }
    else if (n == 3)
    {
        // Midpoint rule in z = cos(polar) (exact area per band) x uniform azimuth
        int const nz = std::max(2, resolution);
        int const nphi = 2 * nz;
        for (int i = 0; i < nz; ++i)
        {
            double const z = -1.0 + (2.0 * i + 1.0) / nz;
            double const rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            for (int k = 0; k < nphi; ++k)
            {
                double const ph = 2 * std::numbers::pi * (k + 0.5) / nphi;
                out.push_back({Vector{{rho * std::cos(ph), rho * std::sin(ph), z}},
                               1.0 / (nz * nphi)});
            }
        }
    }
    else
    {
        throw UnsupportedError("sphere boundary quadrature is limited to n <= 3");
    }
    return out;
}
} // namespace

Domain::Domain(Interval v) : shape_(v)
{
    if (!(v.length > 0) || !std::isfinite(v.length))
        throw InputError("interval length must be positive and finite");
}

Domain::Domain(ConvexPolytope v) : shape_(std::move(v)) {}

Domain::Domain(Ball v) : shape_(std::move(v))
{
    auto const& b = std::get<Ball>(shape_);
    if (!(b.radius > 0) || !std::isfinite(b.radius))
        throw InputError("ball radius must be positive and finite");
    if (b.center.size() < 1 || !b.center.allFinite())
        throw InputError("ball center must be a finite point");
}

Domain::Domain(BallComplement v) : shape_(v)
{
    if (!(v.radius > 0) || !std::isfinite(v.radius))
        throw InputError("ball complement radius must be positive and finite");
    if (v.dimension < 1)
        throw InputError("ball complement dimension must be at least 1");
}

Domain::Domain(Subgraph v) : shape_(std::move(v)) {}

int Domain::dimension() const
{
    return std::visit(Overloaded{[](Interval const&) { return 1; },
                                 [](ConvexPolytope const& p) { return p.dimension(); },
                                 [](Ball const& b) { return static_cast<int>(b.center.size()); },
                                 [](BallComplement const& b) { return b.dimension; },
                                 [](Subgraph const& g) { return g.dimension(); }},
                      shape_);
}

bool Domain::bounded() const
{
    return !std::holds_alternative<BallComplement>(shape_);
}

bool Domain::convex() const
{
    return std::holds_alternative<Interval>(shape_)
           || std::holds_alternative<ConvexPolytope>(shape_)
           || std::holds_alternative<Ball>(shape_);
}

std::string Domain::variant_name() const
{
    return std::visit(Overloaded{[](Interval const&) { return "interval"; },
                                 [](ConvexPolytope const&) { return "polytope"; },
                                 [](Ball const&) { return "ball"; },
                                 [](BallComplement const&) { return "ball_complement"; },
                                 [](Subgraph const&) { return "subgraph"; }},
                      shape_);
}

double Domain::scale() const
{
    return std::visit(Overloaded{[](Interval const& i) { return i.length; },
                                 [](ConvexPolytope const& p) { return p.scale(); },
                                 [](Ball const& b) { return 2 * b.radius; },
                                 [](BallComplement const& b) { return 2 * b.radius; },
                                 [](Subgraph const& g) { return g.scale(); }},
                      shape_);
}

bool contains(Domain const& domain, Point const& x)
{
    check_dimension(domain, x);
    return std::visit(
        Overloaded{[&](Interval const& i) { return x[0] > 0 && x[0] < i.length; },
                   [&](ConvexPolytope const& p) {
                       for (std::size_t j = 0; j < p.facet_count(); ++j)
                       {
                           if (!(p.slack(j, x) > 0))
                               return false;
                       }
                       return true;
                   },
                   [&](Ball const& b) { return (x - b.center).norm() < b.radius; },
                   [&](BallComplement const& b) { return x.norm() > b.radius; },
                   [&](Subgraph const& g) { return detail::subgraph_contains(g, x); }},
        domain.shape());
}

ProjectionResult distance_and_projection(Domain const& domain, Point const& x)
{
    check_dimension(domain, x);
    require_inside(domain, x);
    ProjectionResult r;
    std::visit(
        Overloaded{
            [&](Interval const& i) {
                double const left = x[0];
                double const right = i.length - x[0];
                r.distance = std::min(left, right);
                double const tol = tie_tolerance * i.length;
                if (left <= r.distance + tol)
                    r.minimizers.push_back({Vector::Zero(1), 0});
                if (right <= r.distance + tol)
                    r.minimizers.push_back({Vector::Constant(1, i.length), 1});
            },
            [&](ConvexPolytope const& p) {
                double best = inf;
                for (std::size_t j = 0; j < p.facet_count(); ++j)
                    best = std::min(best, p.slack(j, x));
                r.distance = best;
                double const tol = tie_tolerance * std::max(1.0, p.scale());
                for (std::size_t j = 0; j < p.facet_count(); ++j)
                {
                    double const s = p.slack(j, x);
                    if (s <= best + tol)
                        r.minimizers.push_back(
                            {x + s * p.halfspaces()[j].normal.vector(), static_cast<int>(j)});
                }
            },
            [&](Ball const& b) {
                Vector const q = x - b.center;
                double const rho = q.norm();
                r.distance = b.radius - rho;
                if (rho == 0)
                {
                    // Every boundary point is nearest; report the axis points.
                    for (Eigen::Index i = 0; i < q.size(); ++i)
                    {
                        Vector e = Vector::Unit(q.size(), i);
                        r.minimizers.push_back({b.center + b.radius * e, 0});
                        r.minimizers.push_back({b.center - b.radius * e, 0});
                    }
                }
                else
                {
                    r.minimizers.push_back({b.center + (b.radius / rho) * q, 0});
                }
            },
            [&](BallComplement const& b) {
                double const rho = x.norm();
                r.distance = rho - b.radius;
                r.minimizers.push_back({(b.radius / rho) * x, 0});
            },
            [&](Subgraph const& g) { r = detail::subgraph_projection(g, x); }},
        domain.shape());
    r.nearest = r.minimizers.front().position;
    r.unique = r.minimizers.size() == 1;
    return r;
}

double distance(Domain const& domain, Point const& x)
{
    return distance_and_projection(domain, x).distance;
}

double inradius(Domain const& domain)
{
    return std::visit(
        Overloaded{[](Interval const& i) { return 0.5 * i.length; },
                   [](ConvexPolytope const& p) { return p.inradius(); },
                   [](Ball const& b) { return b.radius; },
                   [](BallComplement const&) -> double {
                       throw UnsupportedError("ball complement has infinite inradius");
                   },
                   [](Subgraph const& g) { return detail::subgraph_inradius(g); }},
        domain.shape());
}

DirectionalDistance
directional_distance(Domain const& domain, Point const& x, Direction const& e)
{
    check_dimension(domain, x);
    if (e.dimension() != domain.dimension())
        throw InputError("direction dimension does not match domain");
    require_inside(domain, x);

    // Candidate exits on both sides; collected then reduced to the minimizers.
    std::vector<RayExit> exits;
    bool unbounded = false;
    Vector const& ev = e.vector();

    std::visit(
        Overloaded{
            [&](Interval const& i) {
                exits.push_back({(0.0 - x[0]) / ev[0], {Vector::Zero(1), 0}});
                exits.push_back({(i.length - x[0]) / ev[0], {Vector::Constant(1, i.length), 1}});
            },
            [&](ConvexPolytope const& p) {
                double fwd = inf, bwd = -inf;
                int fwd_id = -1, bwd_id = -1;
                for (std::size_t j = 0; j < p.facet_count(); ++j)
                {
                    double const denom = p.halfspaces()[j].normal.vector().dot(ev);
                    if (denom == 0)
                        continue;
                    double const s = p.slack(j, x) / denom;
                    if (denom > 0 && s < fwd)
                    {
                        fwd = s;
                        fwd_id = static_cast<int>(j);
                    }
                    else if (denom < 0 && s > bwd)
                    {
                        bwd = s;
                        bwd_id = static_cast<int>(j);
                    }
                }
                exits.push_back({fwd, {x + fwd * ev, fwd_id}});
                exits.push_back({bwd, {x + bwd * ev, bwd_id}});
            },
            [&](Ball const& b) {
                Vector const q = x - b.center;
                double const bq = ev.dot(q);
                double const cq = q.squaredNorm() - b.radius * b.radius;
                double const root = std::sqrt(bq * bq - cq);
                // Stable pair: product of roots is cq
                double const s1 = bq > 0 ? -bq - root : -bq + root;
                double const s2 = cq / s1;
                exits.push_back({s1, {x + s1 * ev, 0}});
                exits.push_back({s2, {x + s2 * ev, 0}});
            },
            [&](BallComplement const& b) {
                double const bq = ev.dot(x);
                double const cq = x.squaredNorm() - b.radius * b.radius;
                double const disc = bq * bq - cq;
                if (disc < 0)
                {
                    unbounded = true;
                    return;
                }
                double const root = std::sqrt(disc);
                // Both roots share a sign; keep the one nearer to x.
                double const far = bq > 0 ? -bq - root : -bq + root;
                double const near = far != 0 ? cq / far : 0.0;
                exits.push_back({near, {x + near * ev, 0}});
            },
            [&](Subgraph const& g) {
                auto d = detail::subgraph_directional(g, x, e);
                exits = std::move(d.minimizers);
            }},
        domain.shape());

    DirectionalDistance out;
    if (unbounded || exits.empty())
    {
        out.unbounded = true;
        out.distance = inf;
        return out;
    }
    double best = inf;
    for (auto const& ex : exits)
        best = std::min(best, std::abs(ex.s));
    out.distance = best;
    for (auto const& ex : exits)
    {
        if (std::abs(ex.s) - best <= tie_tolerance * best)
            out.minimizers.push_back(ex);
    }
    return out;
}

std::vector<BoundaryNode> boundary_quadrature(Domain const& domain, int resolution)
{
    if (resolution < 1)
        throw InputError("quadrature resolution must be positive");
    return std::visit(
        Overloaded{
            [](Interval const& i) {
                return std::vector<BoundaryNode>{
                    {Vector::Zero(1), 1.0, Direction(Vector::Constant(1, -1.0)), 0},
                    {Vector::Constant(1, i.length), 1.0, Direction(Vector::Constant(1, 1.0)), 1}};
            },
            [&](ConvexPolytope const& p) { return polytope_quadrature(p, resolution); },
            [&](Ball const& b) { return sphere_quadrature(b.center, b.radius, resolution, false); },
            [&](BallComplement const& b) {
                return sphere_quadrature(Vector::Zero(b.dimension), b.radius, resolution, true);
            },
            [&](Subgraph const& g) { return detail::subgraph_quadrature(g, resolution); }},
        domain.shape());
}

Domain translated(Domain const& domain, Vector const& shift)
{
    if (shift.size() != domain.dimension())
        throw InputError("shift dimension does not match domain");
    return std::visit(
        Overloaded{
            [](Interval const&) -> Domain {
                throw UnsupportedError("intervals are anchored at 0; translate a 1D polytope instead");
            },
            [&](ConvexPolytope const& p) -> Domain {
                std::vector<Halfspace> hs;
                for (auto const& h : p.halfspaces())
                    hs.push_back({h.normal, h.offset + h.normal.vector().dot(shift)});
                return ConvexPolytope(std::move(hs));
            },
            [&](Ball const& b) -> Domain { return Ball{b.center + shift, b.radius}; },
            [](BallComplement const&) -> Domain {
                throw UnsupportedError("ball complement is centered at the origin");
            },
            [&](Subgraph const& g) -> Domain {
                int const k = g.base().dimension();
                if (shift[k] != 0)
                    throw UnsupportedError("subgraph translation must keep the base at t = 0");
                Vector const s = shift.head(k);
                std::vector<Halfspace> hs;
                for (auto const& h : g.base().halfspaces())
                    hs.push_back({h.normal, h.offset + h.normal.vector().dot(s)});
                Profile f = g.profile();
                return Subgraph(ConvexPolytope(std::move(hs)),
                                [f, s](Vector const& y) { return f(y - s); },
                                g.profile_name());
            }},
        domain.shape());
}

Domain scaled(Domain const& domain, double factor)
{
    if (!(factor > 0) || !std::isfinite(factor))
        throw InputError("scale factor must be positive");
    return std::visit(
        Overloaded{[&](Interval const& i) -> Domain { return Interval{factor * i.length}; },
                   [&](ConvexPolytope const& p) -> Domain {
                       std::vector<Halfspace> hs;
                       for (auto const& h : p.halfspaces())
                           hs.push_back({h.normal, factor * h.offset});
                       return ConvexPolytope(std::move(hs));
                   },
                   [&](Ball const& b) -> Domain {
                       return Ball{factor * b.center, factor * b.radius};
                   },
                   [&](BallComplement const& b) -> Domain {
                       return BallComplement{factor * b.radius, b.dimension};
                   },
                   [&](Subgraph const& g) -> Domain {
                       std::vector<Halfspace> hs;
                       for (auto const& h : g.base().halfspaces())
                           hs.push_back({h.normal, factor * h.offset});
                       Profile f = g.profile();
                       return Subgraph(ConvexPolytope(std::move(hs)),
                                       [f, factor](Vector const& y) { return factor * f(y / factor); },
                                       g.profile_name());
                   }},
        domain.shape());
}

} // namespace geometry
} // namespace hardy
