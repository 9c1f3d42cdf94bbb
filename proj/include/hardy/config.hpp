#pragma once

#include "hardy/geometry.hpp"
#include "hardy/robin_coefficient.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hardy::config {

/// Invalid or missing configuration entry; field() names the key.
class ConfigError : public InputError
{
  public:
    ConfigError(std::string field, std::string const& what)
        : InputError(field + ": " + what), field_(std::move(field))
    {
    }
    std::string const& field() const { return field_; }

  private:
    std::string field_;
};

using Section = std::map<std::string, std::string>;

/*!
 * Experiment description read from an INI file.
 *
 * Sections: [run] (experiment, resolutions, tol, seed, out, weight and any
 * experiment-specific keys), [domain] (see parse_domain) and [sigma] (key
 * spec, see parse_sigma).
 */
struct RunConfig
{
    std::string experiment;
    std::optional<geometry::Domain> domain;
    std::string sigma = "1";
    std::string weight;
    std::vector<double> resolutions;
    std::optional<double> tolerance;
    std::filesystem::path out;
    std::uint64_t seed = 12345;
    //! Remaining [run] keys
    Section parameters;
    std::string source;

    //! Parameter lookup with a fallback; ConfigError when absent and no fallback
    std::string get(std::string const& key, std::optional<std::string> fallback = std::nullopt) const;
    double number(std::string const& key, std::optional<double> fallback = std::nullopt) const;
};

RunConfig load(std::filesystem::path const& path);
RunConfig parse(std::istream& in, std::string const& source = "<config>");

//! Sections of an INI file as flat maps (section name -> key -> value)
std::map<std::string, Section> read_sections(std::istream& in, std::string const& source);

/*!
 * Domain from the keys of a [domain] section.
 *
 * variant = interval          length
 * variant = polytope          lower/upper (box) | vertices (2D) | normals/offsets
 * variant = ball              center, radius
 * variant = ball_complement   radius, dimension
 * variant = subgraph          base_lower/base_upper | base_vertices, profile, height
 *
 * Points are separated by ';', coordinates by spaces or commas. The profile
 * is parabolic, sine (box bases) or distance.
 */
geometry::Domain parse_domain(Section const& section);

//! Domain from the [domain] section of an INI file
geometry::Domain load_domain(std::filesystem::path const& path);

/*!
 * σ from a compact spec:
 * "2", "inf", "facets:1,inf,0.5,0", "regions:0,0.5=-1;0.5,1=1;default=0".
 *
 * A region lists lower,upper per base coordinate (lo0,hi0,lo1,hi1 in 2D).
 */
weights::RobinCoefficient parse_sigma(std::string const& spec);

double parse_number(std::string const& text, std::string const& field);
std::vector<double> parse_list(std::string const& text, std::string const& field);
std::vector<Vector> parse_points(std::string const& text, std::string const& field);

} // namespace hardy::config
