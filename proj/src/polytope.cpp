#include "hardy/errors.hpp"
#include "hardy/geometry.hpp"

#include <Eigen/Geometry>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hardy::geometry {
namespace {

// Calls visit(indices) for every k-subset of {0, ..., m-1}.
template<class F>
void for_each_subset(std::size_t m, std::size_t k, F&& visit)
{
    if (k > m)
        return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true)
    {
        visit(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == m - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

struct Plane
{
    Vector normal;
    double offset;
};

// Solves the square system whose rows are the selected planes. Returns false
// when the planes are (numerically) dependent.
bool intersect(std::vector<Plane> const& planes,
               std::vector<std::size_t> const& idx,
               Vector& x)
{
    auto const n = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd a(n, planes[idx[0]].normal.size());
    Vector b(n);
    for (Eigen::Index r = 0; r < n; ++r)
    {
        a.row(r) = planes[idx[r]].normal.transpose();
        b[r] = planes[idx[r]].offset;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(1e-10);
    if (lu.rank() < a.cols())
        return false;
    x = lu.solve(b);
    return x.allFinite();
}

std::vector<Vector> enumerate_vertices(std::vector<Plane> const& planes, int n, double tol)
{
    std::vector<Vector> result;
    Vector x;
    for_each_subset(planes.size(), n, [&](auto const& idx) {
        if (!intersect(planes, idx, x))
            return;
        for (auto const& p : planes)
        {
            if (p.normal.dot(x) > p.offset + tol)
                return;
        }
        for (auto const& v : result)
        {
            if ((v - x).norm() <= 10 * tol)
                return;
        }
        result.push_back(x);
    });
    return result;
}

// Orders coplanar points cyclically around their centroid.
void order_facet(std::vector<Point>& pts, Vector const& normal)
{
    if (pts.size() < 3)
    {
        if (pts.size() == 2 && normal.size() == 2)
        {
            // Counter-clockwise along a 2D boundary: tangent = (-n_y, n_x)
            Vector const t{{-normal[1], normal[0]}};
            if (t.dot(pts[1] - pts[0]) < 0)
                std::swap(pts[0], pts[1]);
        }
        return;
    }
    if (normal.size() != 3)
        return;
    Vector c = Vector::Zero(normal.size());
    for (auto const& p : pts)
        c += p;
    c /= static_cast<double>(pts.size());
    // Orthonormal basis of the facet plane (n = 3)
    Eigen::Vector3d nz = normal.head<3>();
    Eigen::Vector3d u = (std::abs(nz[0]) < 0.9 ? Eigen::Vector3d::UnitX()
                                               : Eigen::Vector3d::UnitY())
                            .cross(nz)
                            .normalized();
    Eigen::Vector3d w = nz.cross(u);
    std::sort(pts.begin(), pts.end(), [&](Point const& a, Point const& b) {
        Eigen::Vector3d da = (a - c).head<3>();
        Eigen::Vector3d db = (b - c).head<3>();
        return std::atan2(da.dot(w), da.dot(u)) < std::atan2(db.dot(w), db.dot(u));
    });
}

} // namespace

ConvexPolytope::ConvexPolytope(std::vector<Halfspace> halfspaces)
    : halfspaces_(std::move(halfspaces))
{
    if (halfspaces_.empty())
        throw InputError("polytope needs at least one halfspace");
    dimension_ = static_cast<int>(halfspaces_.front().normal.dimension());
    if (dimension_ < 1)
        throw InputError("polytope dimension must be at least 1");
    double offset_scale = 1;
    for (auto const& h : halfspaces_)
    {
        if (h.normal.dimension() != dimension_)
            throw InputError("halfspace normals have mixed dimensions");
        if (!std::isfinite(h.offset))
            throw InputError("halfspace offset must be finite");
        offset_scale = std::max(offset_scale, std::abs(h.offset));
    }
    if (halfspaces_.size() < static_cast<std::size_t>(dimension_) + 1)
        throw InputError("polytope is unbounded: fewer than n+1 halfspaces");

    // Bounded iff the recession cone {d : normal_j·d <= 0} is trivial; its
    // vertices inside the unit cube are all zero exactly then.
    {
        std::vector<Plane> cone;
        for (auto const& h : halfspaces_)
            cone.push_back({h.normal.vector(), 0.0});
        for (int i = 0; i < dimension_; ++i)
        {
            Vector e = Vector::Unit(dimension_, i);
            cone.push_back({e, 1.0});
            cone.push_back({-e, 1.0});
        }
        for (auto const& d : enumerate_vertices(cone, dimension_, 1e-12))
        {
            if (d.lpNorm<Eigen::Infinity>() > 1e-9)
                throw InputError("polytope is unbounded");
        }
    }

    std::vector<Plane> planes;
    for (auto const& h : halfspaces_)
        planes.push_back({h.normal.vector(), h.offset});
    double const tol = 1e-10 * offset_scale;
    vertices_ = enumerate_vertices(planes, dimension_, tol);
    if (vertices_.empty())
        throw InputError("polytope is empty");

    scale_ = 0;
    for (auto const& a : vertices_)
        for (auto const& b : vertices_)
            scale_ = std::max(scale_, (a - b).norm());
    if (!(scale_ > 0))
        throw InputError("polytope has empty interior");

    // Largest inscribed ball: maximize r s.t. normal_j·c + r <= offset_j.
    // The optimum sits at a basic solution with n+1 active constraints.
    {
        std::vector<Plane> lifted;
        for (auto const& h : halfspaces_)
        {
            Vector row(dimension_ + 1);
            row.head(dimension_) = h.normal.vector();
            row[dimension_] = 1.0;
            lifted.push_back({row, h.offset});
        }
        double const lp_tol = 1e-10 * std::max(1.0, scale_);
        double best = -1;
        Vector sol;
        for_each_subset(lifted.size(), dimension_ + 1, [&](auto const& idx) {
            if (!intersect(lifted, idx, sol))
                return;
            double const r = sol[dimension_];
            if (r <= best)
                return;
            for (auto const& p : lifted)
            {
                if (p.normal.dot(sol) > p.offset + lp_tol)
                    return;
            }
            best = r;
            center_ = sol.head(dimension_);
        });
        inradius_ = best;
    }
    if (!(inradius_ > 1e-10 * scale_))
        throw InputError("polytope has empty interior (inradius " + std::to_string(inradius_) + ")");

    facet_vertices_.resize(halfspaces_.size());
    double const on_tol = 1e-9 * std::max(1.0, scale_);
    for (std::size_t j = 0; j < halfspaces_.size(); ++j)
    {
        for (auto const& v : vertices_)
        {
            if (std::abs(slack(j, v)) <= on_tol)
                facet_vertices_[j].push_back(v);
        }
        if (dimension_ == 2 || dimension_ == 3)
            order_facet(facet_vertices_[j], halfspaces_[j].normal.vector());
    }
}

ConvexPolytope ConvexPolytope::box(Vector const& lower, Vector const& upper)
{
    if (lower.size() != upper.size() || lower.size() == 0)
        throw InputError("box corners must have equal, positive dimension");
    std::vector<Halfspace> hs;
    for (Eigen::Index i = 0; i < lower.size(); ++i)
    {
        if (!(upper[i] > lower[i]))
            throw InputError("box upper corner must exceed lower corner");
        Vector e = Vector::Unit(lower.size(), i);
        hs.push_back({Direction(-e), -lower[i]});
        hs.push_back({Direction(e), upper[i]});
    }
    return ConvexPolytope(std::move(hs));
}

ConvexPolytope ConvexPolytope::polygon(std::vector<Vector> const& points)
{
    if (points.size() < 3)
        throw InputError("polygon needs at least three points");
    std::vector<Eigen::Vector2d> p;
    for (auto const& q : points)
    {
        if (q.size() != 2)
            throw InputError("polygon points must be planar");
        p.emplace_back(q[0], q[1]);
    }
    std::sort(p.begin(), p.end(), [](auto const& a, auto const& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    auto cross = [](auto const& o, auto const& a, auto const& b) {
        return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
    };
    // Andrew's monotone chain, counter-clockwise
    std::vector<Eigen::Vector2d> hull(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
    {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p[i]) <= 0)
            --k;
        hull[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;)
    {
        while (k >= t && cross(hull[k - 2], hull[k - 1], p[i]) <= 0)
            --k;
        hull[k++] = p[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3)
        throw InputError("polygon points are collinear");

    std::vector<Halfspace> hs;
    for (std::size_t i = 0; i < hull.size(); ++i)
    {
        Eigen::Vector2d const a = hull[i];
        Eigen::Vector2d const b = hull[(i + 1) % hull.size()];
        Vector normal{{b.y() - a.y(), a.x() - b.x()}};
        Direction d(normal);
        hs.push_back({d, d.vector().dot(Vector(a))});
    }
    return ConvexPolytope(std::move(hs));
}

double ConvexPolytope::slack(std::size_t j, Point const& x) const
{
    return halfspaces_[j].offset - halfspaces_[j].normal.vector().dot(x);
}

FacetQuery nearest_facet(ConvexPolytope const& polytope, Point const& x)
{
    if (x.size() != polytope.dimension())
        throw InputError("point dimension does not match polytope");
    double best = std::numeric_limits<double>::infinity();
    int best_id = -1;
    for (std::size_t j = 0; j < polytope.facet_count(); ++j)
    {
        double const s = polytope.slack(j, x);
        if (!(s > 0))
            throw DomainError("point is not inside the polytope");
        if (s < best)
        {
            best = s;
            best_id = static_cast<int>(j);
        }
    }
    double const tol = 1e-12 * std::max(1.0, polytope.scale());
    int ties = 0;
    for (std::size_t j = 0; j < polytope.facet_count(); ++j)
    {
        if (polytope.slack(j, x) <= best + tol)
            ++ties;
    }
    // Lowest id among the tied facets
    for (std::size_t j = 0; j < polytope.facet_count(); ++j)
    {
        if (polytope.slack(j, x) <= best + tol)
        {
            best_id = static_cast<int>(j);
            break;
        }
    }
    return {best_id, ties > 1};
}

} // namespace hardy::geometry
