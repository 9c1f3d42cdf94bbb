#include "hardy/errors.hpp"
#include "hardy/geometry.hpp"
#include "subgraph_detail.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hardy::geometry {
namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

bool in_closed_base(ConvexPolytope const& base, Vector const& y, double tol)
{
    for (std::size_t j = 0; j < base.facet_count(); ++j)
    {
        if (base.slack(j, y) < -tol)
            return false;
    }
    return true;
}

// Vertices of a planar convex polygon in counter-clockwise order.
std::vector<Vector> ordered_polygon(ConvexPolytope const& base)
{
    std::vector<Vector> v = base.vertices();
    Vector c = Vector::Zero(2);
    for (auto const& p : v)
        c += p;
    c /= static_cast<double>(v.size());
    std::sort(v.begin(), v.end(), [&](Vector const& a, Vector const& b) {
        return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
    });
    return v;
}

// Derivative-free local minimization over the closed base by compass search.
template<class F>
Vector compass_minimize(F&& g, Vector y, double step, double min_step,
                        ConvexPolytope const& base)
{
    double gy = g(y);
    double const tol = 1e-14 * std::max(1.0, base.scale());
    for (int iter = 0; iter < 100000 && step > min_step; ++iter)
    {
        bool moved = false;
        for (Eigen::Index i = 0; i < y.size() && !moved; ++i)
        {
            for (double sign : {1.0, -1.0})
            {
                Vector trial = y;
                trial[i] += sign * step;
                if (!in_closed_base(base, trial, tol))
                    continue;
                double const gt = g(trial);
                if (gt < gy)
                {
                    y = std::move(trial);
                    gy = gt;
                    moved = true;
                    break;
                }
            }
        }
        if (!moved)
            step *= 0.5;
    }
    return y;
}

} // namespace

Subgraph::Subgraph(ConvexPolytope base, Profile profile, std::string profile_name)
    : base_(std::move(base)), profile_(std::move(profile)), profile_name_(std::move(profile_name))
{
    int const k = base_.dimension();
    if (k < 1 || k > 2)
        throw UnsupportedError("subgraph domains are supported for n = 2 and n = 3");
    if (!profile_)
        throw InputError("subgraph profile is empty");

    double const tol = 1e-12 * base_.scale();
    std::vector<Vector> rim;
    if (k == 1)
    {
        double lo = base_.vertices()[0][0];
        double hi = base_.vertices()[1][0];
        if (lo > hi)
            std::swap(lo, hi);
        int const m = 256;
        sample_spacing_ = (hi - lo) / m;
        for (int i = 0; i <= m; ++i)
            base_samples_.push_back(Vector::Constant(1, lo + (hi - lo) * i / m));
        rim = {Vector::Constant(1, lo), Vector::Constant(1, hi)};
    }
    else
    {
        Vector lo = base_.vertices()[0], hi = base_.vertices()[0];
        for (auto const& v : base_.vertices())
        {
            lo = lo.cwiseMin(v);
            hi = hi.cwiseMax(v);
        }
        int const m = 64;
        sample_spacing_ = (hi - lo).maxCoeff() / m;
        for (int i = 0; i <= m; ++i)
        {
            for (int j = 0; j <= m; ++j)
            {
                Vector y{{lo[0] + (hi[0] - lo[0]) * i / m, lo[1] + (hi[1] - lo[1]) * j / m}};
                if (in_closed_base(base_, y, tol))
                    base_samples_.push_back(y);
            }
        }
        auto const poly = ordered_polygon(base_);
        for (std::size_t i = 0; i < poly.size(); ++i)
        {
            Vector const a = poly[i];
            Vector const b = poly[(i + 1) % poly.size()];
            int const pieces = std::max(1, static_cast<int>(std::ceil((b - a).norm() / sample_spacing_)));
            for (int s = 0; s < pieces; ++s)
                rim.push_back(a + (b - a) * (static_cast<double>(s) / pieces));
        }
        base_samples_.insert(base_samples_.end(), rim.begin(), rim.end());
    }

    for (auto const& y : base_samples_)
    {
        double const f = profile_(y);
        if (!std::isfinite(f))
            throw InputError("subgraph profile is not finite on the base");
        max_height_ = std::max(max_height_, f);
    }
    if (!(max_height_ > 0))
        throw InputError("subgraph profile must be positive inside the base");
    for (auto const& y : base_samples_)
    {
        bool interior = true;
        for (std::size_t j = 0; j < base_.facet_count(); ++j)
            interior = interior && base_.slack(j, y) > tol;
        if (interior && !(profile_(y) > 0))
            throw InputError("subgraph profile must be positive inside the base");
    }
    for (auto const& y : rim)
    {
        if (std::abs(profile_(y)) > 1e-9 * max_height_)
            throw InputError("subgraph profile must vanish on the boundary of the base");
    }
}

double Subgraph::scale() const
{
    return std::max(base_.scale(), max_height_);
}

namespace profiles {

Profile parabolic(Vector const& lower, Vector const& upper, double height)
{
    if (!(height > 0))
        throw InputError("profile height must be positive");
    return [lower, upper, height](Vector const& y) {
        double f = height;
        for (Eigen::Index i = 0; i < y.size(); ++i)
        {
            double const s = (2 * y[i] - lower[i] - upper[i]) / (upper[i] - lower[i]);
            f *= 1 - s * s;
        }
        return f;
    };
}

Profile sine(Vector const& lower, Vector const& upper, double height)
{
    if (!(height > 0))
        throw InputError("profile height must be positive");
    return [lower, upper, height](Vector const& y) {
        double f = height;
        for (Eigen::Index i = 0; i < y.size(); ++i)
        {
            double const s = (y[i] - lower[i]) / (upper[i] - lower[i]);
            // sin(pi s) vanishes exactly at the box faces
            f *= (s <= 0 || s >= 1) ? 0.0 : std::sin(std::numbers::pi * s);
        }
        return f;
    };
}

Profile distance(ConvexPolytope const& base, double height)
{
    if (!(height > 0))
        throw InputError("profile height must be positive");
    double const r = base.inradius();
    return [base, height, r](Vector const& y) {
        double best = inf;
        for (std::size_t j = 0; j < base.facet_count(); ++j)
            best = std::min(best, base.slack(j, y));
        return height * std::max(0.0, best) / r;
    };
}

} // namespace profiles

namespace detail {

bool subgraph_contains(Subgraph const& g, Point const& x)
{
    int const k = g.base().dimension();
    Vector const y = x.head(k);
    for (std::size_t j = 0; j < g.base().facet_count(); ++j)
    {
        if (!(g.base().slack(j, y) > 0))
            return false;
    }
    double const t = x[k];
    return t > 0 && t < g.height(y);
}

ProjectionResult subgraph_projection(Subgraph const& g, Point const& x)
{
    int const k = g.base().dimension();
    Vector const xp = x.head(k);
    double const t = x[k];
    auto sq = [&](Vector const& y) {
        double const dz = t - g.height(y);
        return (xp - y).squaredNorm() + dz * dz;
    };

    // Seed candidates from the sample grid, at least three spacings apart.
    auto const& samples = g.base_samples();
    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        ranked.emplace_back(sq(samples[i]), i);
    std::sort(ranked.begin(), ranked.end());
    std::vector<Vector> seeds;
    double const sep = 3 * g.sample_spacing();
    double const cutoff = ranked.front().first + 4 * sep * (std::sqrt(ranked.front().first) + sep);
    for (auto const& [val, idx] : ranked)
    {
        if (seeds.size() >= 6 || val > cutoff)
            break;
        bool far = true;
        for (auto const& s : seeds)
            far = far && (s - samples[idx]).norm() > sep;
        if (far)
            seeds.push_back(samples[idx]);
    }

    struct Candidate
    {
        double dist;
        BoundaryPoint point;
    };
    std::vector<Candidate> cands;
    cands.push_back({t, {[&] {
                             Vector p = x;
                             p[k] = 0;
                             return p;
                         }(),
                         Subgraph::base_facet}});
    double const min_step = 1e-13 * g.scale();
    for (auto const& s : seeds)
    {
        Vector y = compass_minimize(sq, s, g.sample_spacing(), min_step, g.base());
        Vector p(k + 1);
        p.head(k) = y;
        p[k] = g.height(y);
        cands.push_back({std::sqrt(sq(y)), {p, Subgraph::graph_facet}});
    }

    double best = inf;
    for (auto const& c : cands)
        best = std::min(best, c.dist);
    ProjectionResult r;
    r.distance = best;
    double const tol = 1e-9 * g.scale();
    std::sort(cands.begin(), cands.end(), [](auto const& a, auto const& b) { return a.dist < b.dist; });
    for (auto const& c : cands)
    {
        if (c.dist > best + tol)
            continue;
        bool duplicate = false;
        for (auto const& m : r.minimizers)
            duplicate = duplicate || (m.position - c.point.position).norm() <= 1e3 * tol;
        if (!duplicate)
            r.minimizers.push_back(c.point);
    }
    return r;
}

double subgraph_inradius(Subgraph const& g)
{
    Domain const domain(g);
    int const k = g.base().dimension();
    int const n = k + 1;
    Vector lo = g.base().vertices()[0], hi = g.base().vertices()[0];
    for (auto const& v : g.base().vertices())
    {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    int const m = (n == 2) ? 48 : 16;
    double best = -1;
    Vector best_x;
    Vector x(n);
    std::vector<int> idx(n, 1);
    // Interior grid points of the bounding box
    while (true)
    {
        for (int i = 0; i < k; ++i)
            x[i] = lo[i] + (hi[i] - lo[i]) * idx[i] / m;
        x[k] = g.max_height() * idx[k] / m;
        if (contains(domain, x))
        {
            double const d = distance(domain, x);
            if (d > best)
            {
                best = d;
                best_x = x;
            }
        }
        int c = 0;
        while (c < n && ++idx[c] >= m)
            idx[c++] = 1;
        if (c == n)
            break;
    }
    if (best < 0)
        throw DegenerateError("no interior grid point found in subgraph");

    // Compass ascent on the distance function
    double step = std::max((hi - lo).maxCoeff(), g.max_height()) / m;
    double const min_step = 1e-9 * g.scale();
    while (step > min_step)
    {
        bool moved = false;
        for (int i = 0; i < n && !moved; ++i)
        {
            for (double sign : {1.0, -1.0})
            {
                Vector trial = best_x;
                trial[i] += sign * step;
                if (!contains(domain, trial))
                    continue;
                double const d = distance(domain, trial);
                if (d > best)
                {
                    best = d;
                    best_x = std::move(trial);
                    moved = true;
                    break;
                }
            }
        }
        if (!moved)
            step *= 0.5;
    }
    return best;
}

DirectionalDistance subgraph_directional(Subgraph const& g, Point const& x, Direction const& e)
{
    Domain const domain(g);
    int const k = g.base().dimension();
    double const scale = g.scale();
    double const ds = scale / 2000;
    DirectionalDistance out;
    for (double sign : {1.0, -1.0})
    {
        Vector const dir = sign * e.vector();
        double inside = 0;
        double outside = ds;
        while (contains(domain, x + outside * dir))
        {
            inside = outside;
            outside += ds;
            if (outside > 8 * scale)
                throw DegenerateError("ray did not leave the bounded subgraph");
        }
        while (outside - inside > 1e-14 * scale)
        {
            double const mid = 0.5 * (inside + outside);
            if (mid == inside || mid == outside)
                break;
            (contains(domain, x + mid * dir) ? inside : outside) = mid;
        }
        Point p = x + outside * dir;
        Vector const y = p.head(k);
        double const f = in_closed_base(g.base(), y, 1e-9 * scale) ? g.height(y) : 0.0;
        int const facet = std::abs(p[k]) <= std::abs(p[k] - f) ? Subgraph::base_facet
                                                               : Subgraph::graph_facet;
        out.minimizers.push_back({sign * outside, {p, facet}});
    }
    return out;
}

std::vector<BoundaryNode> subgraph_quadrature(Subgraph const& g, int resolution)
{
    int const k = g.base().dimension();
    std::vector<BoundaryNode> nodes;
    auto lift = [&](Vector const& y) {
        Vector p(k + 1);
        p.head(k) = y;
        p[k] = g.height(y);
        return p;
    };
    auto flat = [&](Vector const& y) {
        Vector p = Vector::Zero(k + 1);
        p.head(k) = y;
        return p;
    };
    Vector down = Vector::Zero(k + 1);
    down[k] = -1;
    Direction const down_dir(down);

    if (k == 1)
    {
        double lo = g.base().vertices()[0][0];
        double hi = g.base().vertices()[1][0];
        if (lo > hi)
            std::swap(lo, hi);
        double const h = (hi - lo) / resolution;
        for (int i = 0; i < resolution; ++i)
        {
            Vector const ym = Vector::Constant(1, lo + (i + 0.5) * h);
            nodes.push_back({flat(ym), h, down_dir, Subgraph::base_facet});
            Vector const a = lift(Vector::Constant(1, lo + i * h));
            Vector const b = lift(Vector::Constant(1, lo + (i + 1) * h));
            Vector const chord = b - a;
            nodes.push_back({lift(ym), chord.norm(), Direction(Vector{{-chord[1], chord[0]}}),
                             Subgraph::graph_facet});
        }
        return nodes;
    }

    auto const poly = ordered_polygon(g.base());
    Vector c = Vector::Zero(2);
    for (auto const& p : poly)
        c += p;
    c /= static_cast<double>(poly.size());
    double const m = resolution;
    auto emit = [&](Vector const& p0, Vector const& p1, Vector const& p2) {
        Eigen::Vector2d const e1 = p1 - p0, e2 = p2 - p0;
        double const area = 0.5 * std::abs(e1.x() * e2.y() - e1.y() * e2.x());
        Vector const centroid = (p0 + p1 + p2) / 3.0;
        nodes.push_back({flat(centroid), area, down_dir, Subgraph::base_facet});
        Eigen::Vector3d const q0 = lift(p0), q1 = lift(p1), q2 = lift(p2);
        Eigen::Vector3d normal = (q1 - q0).cross(q2 - q0);
        if (normal.z() < 0)
            normal = -normal;
        nodes.push_back({lift(centroid), 0.5 * normal.norm(), Direction(Vector(normal)),
                         Subgraph::graph_facet});
    };
    for (std::size_t i = 0; i < poly.size(); ++i)
    {
        Vector const u = (poly[i] - c) / m;
        Vector const v = (poly[(i + 1) % poly.size()] - c) / m;
        for (int r = 0; r < resolution; ++r)
        {
            for (int s = 0; s + r < resolution; ++s)
            {
                Vector const o = c + r * u + s * v;
                emit(o, o + u, o + v);
                if (r + s + 1 < resolution)
                    emit(o + u, o + u + v, o + v);
            }
        }
    }
    return nodes;
}

} // namespace detail
} // namespace hardy::geometry
