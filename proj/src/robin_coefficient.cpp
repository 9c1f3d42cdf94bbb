#include "hardy/robin_coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hardy::weights {
namespace {

void check_nonnegative(double v)
{
    if (std::isnan(v) || v < 0)
        throw InputError("Robin coefficient must lie in [0, inf]");
}

std::string format_value(double v)
{
    if (v == infinity)
        return "inf";
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

RobinCoefficient RobinCoefficient::constant(double value)
{
    check_nonnegative(value);
    RobinCoefficient c;
    c.kind_ = Kind::constant;
    c.value_ = value;
    return c;
}

RobinCoefficient RobinCoefficient::per_facet(std::vector<double> values)
{
    if (values.empty())
        throw InputError("per-facet Robin coefficient needs at least one value");
    for (double v : values)
        check_nonnegative(v);
    RobinCoefficient c;
    c.kind_ = Kind::facets;
    c.facets_ = std::move(values);
    return c;
}

RobinCoefficient RobinCoefficient::regions(std::vector<Region> regions, double fallback)
{
    for (auto const& r : regions)
    {
        if (r.lower.size() != r.upper.size() || r.lower.size() == 0)
            throw InputError("region bounds must have matching positive dimension");
        if ((r.lower.array() > r.upper.array()).any())
            throw InputError("region lower bound exceeds upper bound");
        if (!std::isfinite(r.value))
            throw InputError("region Robin values must be finite");
    }
    if (!std::isfinite(fallback))
        throw InputError("region fallback must be finite");
    RobinCoefficient c;
    c.kind_ = Kind::regions;
    c.regions_ = std::move(regions);
    c.value_ = fallback;
    return c;
}

double RobinCoefficient::on_base(Vector const& base_point) const
{
    switch (kind_)
    {
    case Kind::constant:
        return value_;
    case Kind::regions:
        for (auto const& r : regions_)
        {
            if (r.lower.size() != base_point.size())
                throw InputError("region dimension does not match the base point");
            if ((base_point.array() >= r.lower.array()).all() &&
                (base_point.array() <= r.upper.array()).all())
                return r.value;
        }
        return value_;
    case Kind::facets:
        break;
    }
    throw UnsupportedError("per-facet coefficients have no base representation");
}

double RobinCoefficient::at(geometry::BoundaryPoint const& y) const
{
    switch (kind_)
    {
    case Kind::constant:
        return value_;
    case Kind::facets:
        if (y.facet_id < 0 || static_cast<std::size_t>(y.facet_id) >= facets_.size())
            throw InputError("facet id " + std::to_string(y.facet_id) + " has no Robin value");
        return facets_[y.facet_id];
    case Kind::regions:
        if (y.facet_id != geometry::Subgraph::base_facet)
            return 0.0;
        return on_base(y.position.head(y.position.size() - 1));
    }
    return value_;
}

double RobinCoefficient::supremum() const
{
    switch (kind_)
    {
    case Kind::facets:
        return *std::max_element(facets_.begin(), facets_.end());
    case Kind::regions: {
        double s = value_;
        for (auto const& r : regions_)
            s = std::max(s, r.value);
        return s;
    }
    case Kind::constant:
        break;
    }
    return value_;
}

double RobinCoefficient::infimum() const
{
    switch (kind_)
    {
    case Kind::facets:
        return *std::min_element(facets_.begin(), facets_.end());
    case Kind::regions: {
        double s = value_;
        for (auto const& r : regions_)
            s = std::min(s, r.value);
        return s;
    }
    case Kind::constant:
        break;
    }
    return value_;
}

RobinCoefficient RobinCoefficient::scaled(double factor) const
{
    if (!(factor > 0) || !std::isfinite(factor))
        throw InputError("scale factor must be positive and finite");
    RobinCoefficient c = *this;
    c.value_ /= factor;
    for (auto& v : c.facets_)
        v /= factor;
    for (auto& r : c.regions_)
    {
        r.lower *= factor;
        r.upper *= factor;
        r.value /= factor;
    }
    return c;
}

std::string RobinCoefficient::describe() const
{
    std::ostringstream os;
    switch (kind_)
    {
    case Kind::constant:
        os << format_value(value_);
        break;
    case Kind::facets:
        os << "facets:";
        for (std::size_t i = 0; i < facets_.size(); ++i)
            os << (i ? "," : "") << format_value(facets_[i]);
        break;
    case Kind::regions:
        os << "regions:";
        for (std::size_t i = 0; i < regions_.size(); ++i)
        {
            auto const& r = regions_[i];
            os << (i ? ";" : "");
            for (Eigen::Index k = 0; k < r.lower.size(); ++k)
                os << (k ? "," : "") << r.lower[k] << "," << r.upper[k];
            os << "=" << format_value(r.value);
        }
        if (value_ != 0)
            os << ";default=" << format_value(value_);
        break;
    }
    return os.str();
}

} // namespace hardy::weights
