#include "hardy/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hardy::config {
namespace {

std::string trim(std::string s)
{
    auto const not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::vector<std::string> split(std::string const& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep))
        out.push_back(trim(item));
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

std::string const& require(Section const& s, std::string const& section, std::string const& key)
{
    auto const it = s.find(key);
    if (it == s.end() || it->second.empty())
        throw ConfigError(section + "." + key, "missing required field");
    return it->second;
}

bool has(Section const& s, std::string const& key)
{
    auto const it = s.find(key);
    return it != s.end() && !it->second.empty();
}

Vector to_vector(std::vector<double> const& v)
{
    return Eigen::Map<Vector const>(v.data(), static_cast<Eigen::Index>(v.size()));
}

geometry::ConvexPolytope parse_polytope(Section const& s, std::string const& prefix)
{
    std::string const section = "domain";
    if (has(s, prefix + "lower") || has(s, prefix + "upper"))
    {
        auto const lo = parse_list(require(s, section, prefix + "lower"), section + "." + prefix + "lower");
        auto const hi = parse_list(require(s, section, prefix + "upper"), section + "." + prefix + "upper");
        if (lo.size() != hi.size())
            throw ConfigError(section + "." + prefix + "upper", "dimension differs from " + prefix + "lower");
        return geometry::ConvexPolytope::box(to_vector(lo), to_vector(hi));
    }
    if (has(s, prefix + "vertices"))
        return geometry::ConvexPolytope::polygon(
            parse_points(require(s, section, prefix + "vertices"), section + "." + prefix + "vertices"));
    if (prefix.empty() && (has(s, "normals") || has(s, "offsets")))
    {
        auto const normals = parse_points(require(s, section, "normals"), "domain.normals");
        auto const offsets = parse_list(require(s, section, "offsets"), "domain.offsets");
        if (normals.size() != offsets.size())
            throw ConfigError("domain.offsets", "expected one offset per normal");
        std::vector<geometry::Halfspace> hs;
        for (std::size_t k = 0; k < normals.size(); ++k)
            hs.push_back({Direction(normals[k]), offsets[k]});
        return geometry::ConvexPolytope(std::move(hs));
    }
    throw ConfigError(section + "." + prefix + "lower",
                      "missing required field (or " + prefix + "vertices" + (prefix.empty() ? ", normals/offsets" : "") + ")");
}

} // namespace

double parse_number(std::string const& text, std::string const& field)
{
    std::string const t = trim(text);
    if (t.empty())
        throw ConfigError(field, "expected a number");
    char* end = nullptr;
    double const v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || std::isnan(v))
        throw ConfigError(field, "expected a number, got '" + t + "'");
    return v;
}

std::vector<double> parse_list(std::string const& text, std::string const& field)
{
    std::string t = text;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream is(t);
    std::vector<double> out;
    std::string tok;
    while (is >> tok)
        out.push_back(parse_number(tok, field));
    if (out.empty())
        throw ConfigError(field, "expected at least one number");
    return out;
}

std::vector<Vector> parse_points(std::string const& text, std::string const& field)
{
    std::vector<Vector> out;
    for (auto const& item : split(text, ';'))
    {
        if (item.empty())
            continue;
        auto const v = parse_list(item, field);
        if (!out.empty() && static_cast<std::size_t>(out.front().size()) != v.size())
            throw ConfigError(field, "points have different dimensions");
        out.push_back(to_vector(v));
    }
    if (out.empty())
        throw ConfigError(field, "expected at least one point");
    return out;
}

weights::RobinCoefficient parse_sigma(std::string const& spec)
{
    std::string const s = trim(spec);
    try
    {
        if (s.rfind("facets:", 0) == 0)
            return weights::RobinCoefficient::per_facet(parse_list(s.substr(7), "sigma"));
        if (s.rfind("regions:", 0) == 0)
        {
            std::vector<weights::RobinCoefficient::Region> regions;
            double fallback = 0;
            for (auto const& item : split(s.substr(8), ';'))
            {
                if (item.empty())
                    continue;
                auto const eq = item.find('=');
                if (eq == std::string::npos)
                    throw ConfigError("sigma", "region '" + item + "' lacks '=value'");
                std::string const lhs = trim(item.substr(0, eq));
                double const value = parse_number(item.substr(eq + 1), "sigma");
                if (lhs == "default")
                {
                    fallback = value;
                    continue;
                }
                auto const bounds = parse_list(lhs, "sigma");
                if (bounds.size() % 2 != 0)
                    throw ConfigError("sigma", "region bounds come in lower,upper pairs");
                int const m = static_cast<int>(bounds.size() / 2);
                Vector lo(m), hi(m);
                for (int k = 0; k < m; ++k)
                {
                    lo[k] = bounds[2 * k];
                    hi[k] = bounds[2 * k + 1];
                }
                regions.push_back({lo, hi, value});
            }
            return weights::RobinCoefficient::regions(std::move(regions), fallback);
        }
        return weights::RobinCoefficient::constant(parse_number(s, "sigma"));
    }
    catch (ConfigError const&)
    {
        throw;
    }
    catch (InputError const& e)
    {
        throw ConfigError("sigma", e.what());
    }
}

geometry::Domain parse_domain(Section const& s)
{
    std::string const variant = require(s, "domain", "variant");
    if (variant == "interval")
        return geometry::Interval{parse_number(require(s, "domain", "length"), "domain.length")};
    if (variant == "polytope")
        return parse_polytope(s, "");
    if (variant == "ball")
    {
        auto const c = parse_list(require(s, "domain", "center"), "domain.center");
        double const r = parse_number(require(s, "domain", "radius"), "domain.radius");
        if (!(r > 0))
            throw ConfigError("domain.radius", "must be positive");
        return geometry::Ball{to_vector(c), r};
    }
    if (variant == "ball_complement")
    {
        double const r = parse_number(require(s, "domain", "radius"), "domain.radius");
        double const n = parse_number(require(s, "domain", "dimension"), "domain.dimension");
        if (!(r > 0))
            throw ConfigError("domain.radius", "must be positive");
        if (n < 1 || n != std::floor(n))
            throw ConfigError("domain.dimension", "must be a positive integer");
        return geometry::BallComplement{r, static_cast<int>(n)};
    }
    if (variant == "subgraph")
    {
        auto const base = parse_polytope(s, "base_");
        std::string const profile = require(s, "domain", "profile");
        double const height = has(s, "height") ? parse_number(s.at("height"), "domain.height") : 1.0;
        if (profile == "distance")
            return geometry::Subgraph(base, geometry::profiles::distance(base, height), profile);
        if (profile == "parabolic" || profile == "sine")
        {
            if (!has(s, "base_lower"))
                throw ConfigError("domain.base_lower", "missing required field for the " + profile + " profile");
            auto const lo = to_vector(parse_list(s.at("base_lower"), "domain.base_lower"));
            auto const hi = to_vector(parse_list(s.at("base_upper"), "domain.base_upper"));
            auto f = profile == "sine" ? geometry::profiles::sine(lo, hi, height)
                                       : geometry::profiles::parabolic(lo, hi, height);
            return geometry::Subgraph(base, std::move(f), profile);
        }
        throw ConfigError("domain.profile", "unknown profile '" + profile + "'");
    }
    throw ConfigError("domain.variant", "unknown variant '" + variant + "'");
}

std::map<std::string, Section> read_sections(std::istream& in, std::string const& source)
{
    boost::property_tree::ptree tree;
    try
    {
        boost::property_tree::ini_parser::read_ini(in, tree);
    }
    catch (boost::property_tree::ini_parser_error const& e)
    {
        throw ConfigError(source + ":" + std::to_string(e.line()), e.message());
    }
    std::map<std::string, Section> out;
    for (auto const& [name, section] : tree)
    {
        if (section.empty() && !section.data().empty())
            throw ConfigError(name, "key outside a section");
        for (auto const& [key, value] : section)
            out[name][key] = trim(value.data());
    }
    return out;
}

RunConfig parse(std::istream& in, std::string const& source)
{
    auto const sections = read_sections(in, source);
    RunConfig cfg;
    cfg.source = source;
    auto const run_it = sections.find("run");
    if (run_it == sections.end())
        throw ConfigError("run", "missing section");
    Section run = run_it->second;
    cfg.experiment = require(run, "run", "experiment");
    run.erase("experiment");
    if (has(run, "resolutions"))
        cfg.resolutions = parse_list(run.at("resolutions"), "run.resolutions");
    else if (has(run, "h"))
        cfg.resolutions = parse_list(run.at("h"), "run.h");
    run.erase("resolutions");
    run.erase("h");
    if (has(run, "tol"))
        cfg.tolerance = parse_number(run.at("tol"), "run.tol");
    run.erase("tol");
    if (has(run, "seed"))
    {
        double const seed = parse_number(run.at("seed"), "run.seed");
        if (seed < 0 || seed != std::floor(seed))
            throw ConfigError("run.seed", "must be a nonnegative integer");
        cfg.seed = static_cast<std::uint64_t>(seed);
    }
    run.erase("seed");
    if (has(run, "out"))
        cfg.out = run.at("out");
    run.erase("out");
    if (has(run, "weight"))
        cfg.weight = run.at("weight");
    run.erase("weight");
    cfg.parameters = std::move(run);

    if (auto const it = sections.find("domain"); it != sections.end())
    {
        try
        {
            cfg.domain = parse_domain(it->second);
        }
        catch (ConfigError const&)
        {
            throw;
        }
        catch (InputError const& e)
        {
            throw ConfigError("domain", e.what());
        }
    }
    if (auto const it = sections.find("sigma"); it != sections.end())
    {
        cfg.sigma = require(it->second, "sigma", "spec");
        parse_sigma(cfg.sigma);
    }
    return cfg;
}

RunConfig load(std::filesystem::path const& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError(path.string(), "cannot open file");
    return parse(f, path.string());
}

geometry::Domain load_domain(std::filesystem::path const& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError(path.string(), "cannot open file");
    auto const sections = read_sections(f, path.string());
    auto const it = sections.find("domain");
    if (it == sections.end())
        throw ConfigError("domain", "missing section in " + path.string());
    try
    {
        return parse_domain(it->second);
    }
    catch (ConfigError const&)
    {
        throw;
    }
    catch (InputError const& e)
    {
        throw ConfigError("domain", e.what());
    }
}

std::string RunConfig::get(std::string const& key, std::optional<std::string> fallback) const
{
    auto const it = parameters.find(key);
    if (it != parameters.end() && !it->second.empty())
        return it->second;
    if (fallback)
        return *fallback;
    throw ConfigError("run." + key, "missing required field");
}

double RunConfig::number(std::string const& key, std::optional<double> fallback) const
{
    auto const it = parameters.find(key);
    if (it != parameters.end() && !it->second.empty())
        return parse_number(it->second, "run." + key);
    if (fallback)
        return *fallback;
    throw ConfigError("run." + key, "missing required field");
}

} // namespace hardy::config
