#pragma once

#include "hardy/errors.hpp"

#include <Eigen/Core>

#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace hardy {

using Vector = Eigen::VectorXd;
using Point = Eigen::VectorXd;

//---------------------------------------------------------------------------//
/*!
 * Unit vector in R^n.
 *
 * Construction normalizes; \c from_unit additionally insists the input is
 * already normalized to 1e-12.
 */
class Direction
{
  public:
    explicit Direction(Vector v);
    static Direction from_unit(Vector v);

    Vector const& vector() const { return v_; }
    Eigen::Index dimension() const { return v_.size(); }
    double operator[](Eigen::Index i) const { return v_[i]; }
    Direction operator-() const;

  private:
    struct Unchecked
    {
    };
    Direction(Vector v, Unchecked) : v_(std::move(v)) {}

    Vector v_;
};

namespace geometry {

/// Closed halfspace {x : normal·x <= offset}; the normal points outward.
struct Halfspace
{
    Direction normal;
    double offset;
};

/// The open interval (0, length).
struct Interval
{
    double length;
};

//---------------------------------------------------------------------------//
/*!
 * Bounded convex polytope given as an intersection of halfspaces.
 *
 * Construction validates boundedness and a nonempty interior, enumerates
 * vertices, and solves the inscribed-ball linear program. Facet ids are the
 * halfspace indices.
 */
class ConvexPolytope
{
  public:
    explicit ConvexPolytope(std::vector<Halfspace> halfspaces);

    static ConvexPolytope box(Vector const& lower, Vector const& upper);
    //! Convex hull of planar points (any order)
    static ConvexPolytope polygon(std::vector<Vector> const& points);

    int dimension() const { return dimension_; }
    std::span<Halfspace const> halfspaces() const { return halfspaces_; }
    std::size_t facet_count() const { return halfspaces_.size(); }
    std::vector<Point> const& vertices() const { return vertices_; }
    //! Vertices on facet j, ordered around the facet for n = 2, 3
    std::vector<Point> const& facet_vertices(int j) const { return facet_vertices_[j]; }

    double inradius() const { return inradius_; }
    Point const& chebyshev_center() const { return center_; }
    //! Length scale used for relative tolerances
    double scale() const { return scale_; }

    //! offset_j - normal_j·x; positive inside
    double slack(std::size_t j, Point const& x) const;

  private:
    std::vector<Halfspace> halfspaces_;
    int dimension_;
    std::vector<Point> vertices_;
    std::vector<std::vector<Point>> facet_vertices_;
    double inradius_ = 0;
    Point center_;
    double scale_ = 1;
};

using Profile = std::function<double(Vector const&)>;

//---------------------------------------------------------------------------//
/*!
 * Region {(x', t) : x' in A, 0 < t < f(x')} between a base A and a profile f.
 *
 * The base is a convex polytope in R^{n-1} (a segment for n = 2, a box or
 * convex polygon for n = 3). The profile must be positive in A and vanish on
 * its boundary; both are checked on a sample grid at construction.
 *
 * Facet 0 is the base {t = 0}, facet 1 is the graph of f. The lateral part
 * collapses onto the rim of the base because f vanishes there.
 */
class Subgraph
{
  public:
    Subgraph(ConvexPolytope base, Profile profile, std::string profile_name = "custom");

    int dimension() const { return base_.dimension() + 1; }
    ConvexPolytope const& base() const { return base_; }
    double height(Vector const& base_point) const { return profile_(base_point); }
    Profile const& profile() const { return profile_; }
    std::string const& profile_name() const { return profile_name_; }
    double max_height() const { return max_height_; }
    //! Points of the closed base used for sampled searches
    std::vector<Vector> const& base_samples() const { return base_samples_; }
    double sample_spacing() const { return sample_spacing_; }
    double scale() const;

    static constexpr int base_facet = 0;
    static constexpr int graph_facet = 1;

  private:
    ConvexPolytope base_;
    Profile profile_;
    std::string profile_name_;
    std::vector<Vector> base_samples_;
    double sample_spacing_ = 0;
    double max_height_ = 0;
};

namespace profiles {
//! h · prod (1 - s_i^2) with s_i the box coordinate mapped to [-1, 1]
Profile parabolic(Vector const& lower, Vector const& upper, double height);
//! h · prod sin(pi (x_i - lower_i) / width_i)
Profile sine(Vector const& lower, Vector const& upper, double height);
//! h · dist(x', boundary of base) / inradius(base)
Profile distance(ConvexPolytope const& base, double height);
} // namespace profiles

struct Ball
{
    Point center;
    double radius;
};

/// R^n minus the closed ball of the given radius about the origin.
struct BallComplement
{
    double radius;
    int dimension;
};

//---------------------------------------------------------------------------//
/*!
 * One of the supported open regions.
 */
class Domain
{
  public:
    using Shape = std::variant<Interval, ConvexPolytope, Ball, BallComplement, Subgraph>;

    Domain(Interval v);
    Domain(ConvexPolytope v);
    Domain(Ball v);
    Domain(BallComplement v);
    Domain(Subgraph v);

    Shape const& shape() const { return shape_; }
    template<class T>
    T const* as() const
    {
        return std::get_if<T>(&shape_);
    }

    int dimension() const;
    bool bounded() const;
    bool convex() const;
    std::string variant_name() const;
    //! Characteristic length for relative tolerances
    double scale() const;

  private:
    Shape shape_;
};

/// A location on the boundary tagged with the facet it belongs to.
struct BoundaryPoint
{
    Point position;
    int facet_id = 0;
};

/// Surface quadrature node with outer normal.
struct BoundaryNode
{
    Point position;
    double weight;
    Direction normal;
    int facet_id = 0;

    BoundaryPoint point() const { return {position, facet_id}; }
};

struct ProjectionResult
{
    Point nearest;
    double distance = 0;
    bool unique = true;
    //! Every boundary point attaining the distance (first equals nearest)
    std::vector<BoundaryPoint> minimizers;
};

struct RayExit
{
    double s;
    BoundaryPoint point;
};

struct DirectionalDistance
{
    double distance = 0;
    //! One or two signed parameters s with |s| = distance
    std::vector<RayExit> minimizers;
    //! Set when neither ray direction leaves the domain
    bool unbounded = false;
};

struct FacetQuery
{
    int facet_id;
    bool ambiguous;
};

bool contains(Domain const& domain, Point const& x);

ProjectionResult distance_and_projection(Domain const& domain, Point const& x);

//! Shorthand for distance_and_projection(domain, x).distance
double distance(Domain const& domain, Point const& x);

double inradius(Domain const& domain);

DirectionalDistance
directional_distance(Domain const& domain, Point const& x, Direction const& e);

std::vector<BoundaryNode> boundary_quadrature(Domain const& domain, int resolution);

FacetQuery nearest_facet(ConvexPolytope const& polytope, Point const& x);

Domain translated(Domain const& domain, Vector const& shift);
Domain scaled(Domain const& domain, double factor);

//! Volume of the unit ball in R^n
double unit_ball_volume(int n);
//! Surface area of the unit sphere in R^n
double unit_sphere_area(int n);

// Relative tolerance deciding whether two exit parameters coincide
inline constexpr double tie_tolerance = 1e-12;

} // namespace geometry
} // namespace hardy
