#pragma once

#include "hardy/geometry.hpp"

#include <limits>
#include <string>
#include <vector>

namespace hardy::weights {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

/*!
 * Boundary coefficient σ with values in [0, +inf].
 *
 * Constant and per-facet coefficients are nonnegative; +inf marks a
 * Dirichlet part of the boundary. Region tables assign values over boxes in
 * the base of a subgraph region and may be negative: they describe σ on the
 * flat part {t = 0}, and the coefficient vanishes on the graph.
 */
class RobinCoefficient
{
  public:
    enum class Kind
    {
        constant,
        facets,
        regions
    };

    //! Axis-aligned box in base coordinates (inclusive bounds)
    struct Region
    {
        Vector lower;
        Vector upper;
        double value;
    };

    static RobinCoefficient constant(double value);
    static RobinCoefficient per_facet(std::vector<double> values);
    static RobinCoefficient regions(std::vector<Region> regions, double fallback = 0.0);

    Kind kind() const { return kind_; }

    double at(geometry::BoundaryPoint const& y) const;
    //! Region value at a base point; constant value for constant coefficients
    double on_base(Vector const& base_point) const;

    double supremum() const;
    double infimum() const;
    bool is_signed() const { return infimum() < 0; }
    bool has_infinite() const { return supremum() == infinity; }

    //! σ / factor, the coefficient of the domain dilated by factor
    RobinCoefficient scaled(double factor) const;

    double constant_value() const { return value_; }
    std::vector<double> const& facet_values() const { return facets_; }
    std::vector<Region> const& region_table() const { return regions_; }

    std::string describe() const;

  private:
    RobinCoefficient() = default;

    Kind kind_ = Kind::constant;
    double value_ = 0;
    std::vector<double> facets_;
    std::vector<Region> regions_;
};

} // namespace hardy::weights
