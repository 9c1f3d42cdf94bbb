#include "hardy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hardy::verify {
namespace {

using Vec2 = Eigen::Vector2d;
using Poly = std::vector<Vec2>;

struct ClipPlane
{
    Vec2 normal;
    double offset;
    int tag;
};

// Keeps the part of a convex polygon with normal·p <= offset
Poly clip(Poly const& in, ClipPlane const& plane)
{
    Poly out;
    std::size_t const m = in.size();
    for (std::size_t k = 0; k < m; ++k)
    {
        Vec2 const& p = in[k];
        Vec2 const& q = in[(k + 1) % m];
        double const dp = plane.normal.dot(p) - plane.offset;
        double const dq = plane.normal.dot(q) - plane.offset;
        if (dp <= 0)
            out.push_back(p);
        if ((dp < 0 && dq > 0) || (dp > 0 && dq < 0))
            out.push_back(p + (dp / (dp - dq)) * (q - p));
    }
    return out;
}

double signed_area(Poly const& p)
{
    double a = 0;
    for (std::size_t k = 0; k < p.size(); ++k)
    {
        Vec2 const& u = p[k];
        Vec2 const& v = p[(k + 1) % p.size()];
        a += u.x() * v.y() - u.y() * v.x();
    }
    return 0.5 * a;
}

void drop_duplicates(Poly& p, double eps)
{
    Poly out;
    for (auto const& v : p)
        if (out.empty() || (v - out.back()).norm() > eps)
            out.push_back(v);
    while (out.size() > 1 && (out.front() - out.back()).norm() <= eps)
        out.pop_back();
    p = std::move(out);
}

// Chords between consecutive crossings of a circle with the grid lines
struct ChordSet
{
    Vec2 center;
    double radius = 0;
    std::vector<ClipPlane> planes;
    std::vector<Vec2> arc_midpoints;
};

ChordSet circle_chords(Vec2 center, double radius, Vec2 origin, double hx, double hy, int nx, int ny, int tag)
{
    std::vector<double> angles;
    for (int i = 0; i <= nx; ++i)
    {
        double const dx = origin.x() + i * hx - center.x();
        if (std::abs(dx) < radius)
        {
            double const a = std::acos(dx / radius);
            angles.push_back(a);
            angles.push_back(-a);
        }
    }
    for (int j = 0; j <= ny; ++j)
    {
        double const dy = origin.y() + j * hy - center.y();
        if (std::abs(dy) < radius)
        {
            double const a = std::asin(dy / radius);
            angles.push_back(a);
            angles.push_back(std::numbers::pi - a);
        }
    }
    for (auto& a : angles)
    {
        a = std::fmod(a, 2 * std::numbers::pi);
        if (a < 0)
            a += 2 * std::numbers::pi;
    }
    std::sort(angles.begin(), angles.end());
    std::vector<double> uniq;
    for (double a : angles)
        if (uniq.empty() || a - uniq.back() > 1e-12)
            uniq.push_back(a);
    if (uniq.size() > 1 && uniq.front() + 2 * std::numbers::pi - uniq.back() <= 1e-12)
        uniq.pop_back();
    if (uniq.size() < 3)
        throw InputError("grid is too coarse for the disk");

    ChordSet set;
    set.center = center;
    set.radius = radius;
    for (std::size_t k = 0; k < uniq.size(); ++k)
    {
        double const a0 = uniq[k];
        double const a1 = k + 1 < uniq.size() ? uniq[k + 1] : uniq.front() + 2 * std::numbers::pi;
        double const mid = 0.5 * (a0 + a1);
        Vec2 const normal(std::cos(mid), std::sin(mid));
        Vec2 const p0 = center + radius * Vec2(std::cos(a0), std::sin(a0));
        set.planes.push_back({normal, normal.dot(p0), tag});
        set.arc_midpoints.push_back(center + radius * normal);
    }
    return set;
}

struct GridSpec
{
    Vec2 lower;
    Vec2 upper;
    double h;
};

GridMesh make_grid(GridSpec const& spec)
{
    if (!(spec.h > 0))
        throw InputError("grid size must be positive");
    GridMesh g;
    g.origin = spec.lower;
    Vec2 const width = spec.upper - spec.lower;
    g.nx = std::max(1, static_cast<int>(std::ceil(width.x() / spec.h - 1e-9)));
    g.ny = std::max(1, static_cast<int>(std::ceil(width.y() / spec.h - 1e-9)));
    g.hx = width.x() / g.nx;
    g.hy = width.y() / g.ny;
    return g;
}

// Clips every cell by the planes returned for it and tags boundary edges.
template<class PlanesFor>
void fill_cells(GridMesh& g, PlanesFor const& planes_for)
{
    double const cell_area = g.hx * g.hy;
    double const eps = 1e-10 * g.h();
    for (int j = 0; j < g.ny; ++j)
    {
        for (int i = 0; i < g.nx; ++i)
        {
            Vec2 const lo = g.origin + Vec2(i * g.hx, j * g.hy);
            Poly poly{lo, lo + Vec2(g.hx, 0), lo + Vec2(g.hx, g.hy), lo + Vec2(0, g.hy)};
            std::vector<ClipPlane> const planes = planes_for(lo, lo + Vec2(g.hx, g.hy));
            for (auto const& pl : planes)
            {
                poly = clip(poly, pl);
                if (poly.size() < 3)
                    break;
            }
            drop_duplicates(poly, 1e-14 * g.h());
            if (poly.size() < 3)
                continue;
            double const area = signed_area(poly);
            if (area < 1e-12 * cell_area)
                continue;

            CutCell c;
            c.i = i;
            c.j = j;
            c.area = area;
            for (std::size_t k = 0; k < poly.size(); ++k)
            {
                Vec2 const& a = poly[k];
                Vec2 const& b = poly[(k + 1) % poly.size()];
                for (auto const& pl : planes)
                {
                    if (std::abs(pl.normal.dot(a) - pl.offset) <= eps &&
                        std::abs(pl.normal.dot(b) - pl.offset) <= eps)
                    {
                        c.boundary.push_back({a, b, pl.tag});
                        g.boundary_length += (b - a).norm();
                        break;
                    }
                }
            }
            if (area < cell_area * (1 - 1e-12))
            {
                ++g.cut_cells;
                g.min_area_fraction = std::min(g.min_area_fraction, area / cell_area);
            }
            c.polygon = std::move(poly);
            g.cells.push_back(std::move(c));
        }
    }
    if (g.cells.empty())
        throw AssemblyError("grid has no cells inside the domain", Point(g.origin));
}

// Chords whose arc lies in the box [lo, hi]; all chords when the box holds the center
std::vector<ClipPlane> chords_in_box(ChordSet const& set, Vec2 const& lo, Vec2 const& hi)
{
    std::vector<ClipPlane> out;
    for (std::size_t k = 0; k < set.planes.size(); ++k)
    {
        Vec2 const& m = set.arc_midpoints[k];
        if (m.x() >= lo.x() && m.x() <= hi.x() && m.y() >= lo.y() && m.y() <= hi.y())
            out.push_back(set.planes[k]);
    }
    return out;
}

bool box_inside_disk(ChordSet const& set, Vec2 const& lo, Vec2 const& hi)
{
    for (Vec2 const& c : {lo, Vec2(hi.x(), lo.y()), hi, Vec2(lo.x(), hi.y())})
        if ((c - set.center).norm() >= set.radius)
            return false;
    return true;
}

// Sentinel plane that empties a cell
ClipPlane const empty_plane{Vec2(1, 0), -std::numeric_limits<double>::infinity(), -1};

} // namespace

Eigen::Vector2d GridMesh::node(int id) const
{
    int const i = id % (nx + 1);
    int const j = id / (nx + 1);
    return origin + Eigen::Vector2d(i * hx, j * hy);
}

std::array<int, 4> GridMesh::cell_nodes(CutCell const& c) const
{
    return {node_id(c.i, c.j), node_id(c.i + 1, c.j), node_id(c.i + 1, c.j + 1), node_id(c.i, c.j + 1)};
}

GridMesh build_grid(geometry::Domain const& domain, double h)
{
    if (domain.dimension() != 2)
        throw UnsupportedError("cut-cell grids are two-dimensional");
    if (auto const* poly = domain.as<geometry::ConvexPolytope>())
    {
        Vec2 lo = Vec2::Constant(std::numeric_limits<double>::infinity());
        Vec2 hi = -lo;
        for (auto const& v : poly->vertices())
        {
            lo = lo.cwiseMin(Vec2(v[0], v[1]));
            hi = hi.cwiseMax(Vec2(v[0], v[1]));
        }
        GridMesh g = make_grid({lo, hi, h});
        std::vector<ClipPlane> planes;
        auto const hs = poly->halfspaces();
        for (std::size_t k = 0; k < hs.size(); ++k)
            planes.push_back({Vec2(hs[k].normal[0], hs[k].normal[1]), hs[k].offset, static_cast<int>(k)});
        fill_cells(g, [&](Vec2 const&, Vec2 const&) { return planes; });
        return g;
    }
    if (auto const* ball = domain.as<geometry::Ball>())
    {
        Vec2 const c(ball->center[0], ball->center[1]);
        Vec2 const r = Vec2::Constant(ball->radius);
        GridMesh g = make_grid({c - r, c + r, h});
        auto const chords = circle_chords(c, ball->radius, g.origin, g.hx, g.hy, g.nx, g.ny, 0);
        fill_cells(g, [&](Vec2 const& lo, Vec2 const& hi) {
            auto planes = chords_in_box(chords, lo, hi);
            if (planes.empty() && !box_inside_disk(chords, lo, hi))
                planes.push_back(empty_plane);
            return planes;
        });
        return g;
    }
    throw UnsupportedError("cut-cell grids support polygons and disks, got " + domain.variant_name());
}

GridMesh build_truncated_grid(std::vector<geometry::Halfspace> const& halfspaces, double rho, double h)
{
    if (!(rho > 0))
        throw InputError("truncation radius must be positive");
    std::vector<ClipPlane> facets;
    for (std::size_t k = 0; k < halfspaces.size(); ++k)
    {
        if (halfspaces[k].normal.dimension() != 2)
            throw UnsupportedError("truncated grids are two-dimensional");
        facets.push_back({Vec2(halfspaces[k].normal[0], halfspaces[k].normal[1]),
                          halfspaces[k].offset,
                          static_cast<int>(k)});
    }
    int const cap_tag = static_cast<int>(halfspaces.size());
    GridMesh g = make_grid({Vec2::Constant(-rho), Vec2::Constant(rho), h});
    auto const chords = circle_chords(Vec2::Zero(), rho, g.origin, g.hx, g.hy, g.nx, g.ny, cap_tag);
    fill_cells(g, [&](Vec2 const& lo, Vec2 const& hi) {
        auto planes = facets;
        auto cap = chords_in_box(chords, lo, hi);
        if (cap.empty() && !box_inside_disk(chords, lo, hi))
            planes.push_back(empty_plane);
        planes.insert(planes.end(), cap.begin(), cap.end());
        return planes;
    });
    return g;
}

} // namespace hardy::verify
