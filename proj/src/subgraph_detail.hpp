#pragma once

#include "hardy/geometry.hpp"

namespace hardy::geometry::detail {

bool subgraph_contains(Subgraph const& g, Point const& x);
ProjectionResult subgraph_projection(Subgraph const& g, Point const& x);
double subgraph_inradius(Subgraph const& g);
DirectionalDistance subgraph_directional(Subgraph const& g, Point const& x, Direction const& e);
std::vector<BoundaryNode> subgraph_quadrature(Subgraph const& g, int resolution);

} // namespace hardy::geometry::detail
