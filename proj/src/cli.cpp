#include "hardy/cli.hpp"

#include "hardy/report.hpp"
#include "hardy/weights.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace hardy::cli {
namespace {

using config::ConfigError;
using config::RunConfig;
using verify::VerificationReport;
using weights::HardyWeight;
using weights::infinity;
using weights::RobinCoefficient;

std::vector<double> resolutions_or(RunConfig const& cfg, std::vector<double> fallback)
{
    return cfg.resolutions.empty() ? fallback : cfg.resolutions;
}

geometry::Domain const& need_domain(RunConfig const& cfg)
{
    if (!cfg.domain)
        throw ConfigError("domain", "missing required domain for experiment " + cfg.experiment);
    return *cfg.domain;
}

double constant_sigma(RunConfig const& cfg)
{
    auto const s = config::parse_sigma(cfg.sigma);
    if (s.kind() != RobinCoefficient::Kind::constant)
        throw ConfigError("sigma", "experiment " + cfg.experiment + " needs a constant σ");
    return s.constant_value();
}

double interval_length(RunConfig const& cfg)
{
    if (cfg.parameters.count("b"))
        return cfg.number("b");
    if (cfg.domain)
        if (auto const* iv = cfg.domain->as<geometry::Interval>())
            return iv->length;
    throw ConfigError("run.b", "missing required field");
}

verify::CertifyOptions options(RunConfig const& cfg)
{
    verify::CertifyOptions opt;
    opt.tolerance = cfg.tolerance;
    opt.seed = cfg.seed;
    std::string const sampling = cfg.get("sampling", "gauss");
    if (sampling == "centroid")
        opt.sampling = verify::WeightSampling::centroid;
    else if (sampling != "gauss")
        throw ConfigError("run.sampling", "expected gauss or centroid");
    return opt;
}

int as_int(double v, std::string const& field)
{
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ConfigError(field, "expected an integer");
    return static_cast<int>(v);
}

std::vector<geometry::Halfspace> parse_halfspaces(std::string const& text)
{
    std::vector<geometry::Halfspace> hs;
    for (auto const& row : config::parse_points(text, "run.halfspaces"))
    {
        if (row.size() < 2)
            throw ConfigError("run.halfspaces", "each halfspace is 'normal... offset'");
        hs.push_back({Direction(row.head(row.size() - 1)), row[row.size() - 1]});
    }
    return hs;
}

HardyWeight named_weight(RunConfig const& cfg, std::string const& name)
{
    if (name == "lemma1")
        return weights::lemma1_weight(interval_length(cfg), constant_sigma(cfg));
    if (name == "lemma2")
    {
        double const s = cfg.parameters.count("sigma1") ? cfg.number("sigma1") : constant_sigma(cfg);
        return weights::lemma2_weight(interval_length(cfg), s, cfg.number("sigma2", s));
    }
    if (name == "exterior")
    {
        auto const* ext = need_domain(cfg).as<geometry::BallComplement>();
        if (!ext)
            throw ConfigError("domain.variant", "the exterior weight needs a ball_complement domain");
        return weights::exterior_weight(ext->radius, constant_sigma(cfg), ext->dimension);
    }
    auto const& domain = need_domain(cfg);
    auto const sigma = config::parse_sigma(cfg.sigma);
    if (name == "convex")
        return weights::convex_weight(domain, sigma);
    if (name == "dirichlet")
        return weights::dirichlet_weight(domain);
    if (name == "mu")
        return weights::mu_weight(domain, sigma, as_int(cfg.number("level", 16), "run.level"));
    if (name == "general")
        return weights::cor_general_bound(domain, constant_sigma(cfg),
                                          static_cast<std::int64_t>(cfg.number("samples", 1e6)), cfg.seed)
            .weight;
    if (name == "sign_changing")
    {
        auto const* g = domain.as<geometry::Subgraph>();
        if (!g)
            throw ConfigError("domain.variant", "the sign-changing weight needs a subgraph domain");
        return weights::sign_changing_weight(*g, sigma);
    }
    throw ConfigError("run.weight", "unknown weight '" + name + "'");
}

std::string fmt(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

} // namespace

VerificationReport execute(RunConfig const& cfg)
{
    auto const& e = cfg.experiment;
    if (e == "lemma1" || e == "lemma2")
    {
        double const b = interval_length(cfg);
        auto opt = options(cfg);
        if (!opt.tolerance)
            opt.tolerance = 1e-3;
        auto const w = named_weight(cfg, e);
        verify::EndConditions ends{0, 0};
        if (e == "lemma1")
            ends = {constant_sigma(cfg), 0.0};
        else
        {
            double const s = cfg.parameters.count("sigma1") ? cfg.number("sigma1") : constant_sigma(cfg);
            ends = {s, cfg.number("sigma2", s)};
        }
        auto rep = verify::certify_interval(b, ends, w, resolutions_or(cfg, {1e-2, 5e-3, 2.5e-3}), opt);
        rep.experiment = e;
        return rep;
    }
    if (e == "convex" || e == "mu" || (e == "dirichlet" && !cfg.parameters.count("sigmas")))
    {
        auto const& domain = need_domain(cfg);
        auto const sigma = e == "dirichlet" ? RobinCoefficient::constant(infinity) : config::parse_sigma(cfg.sigma);
        if (e == "mu" && cfg.parameters.count("points"))
            return verify::mu_pointwise_check(domain,
                                              sigma,
                                              as_int(cfg.number("points"), "run.points"),
                                              static_cast<std::int64_t>(cfg.number("samples", 1e6)),
                                              cfg.seed,
                                              cfg.number("convergence", 1e-8));
        auto const w = named_weight(cfg, cfg.weight.empty() ? e : cfg.weight);
        auto rep = verify::certify(domain, sigma, w, resolutions_or(cfg, {1.0 / 16, 1.0 / 32}), options(cfg));
        rep.experiment = e;
        return rep;
    }
    if (e == "dirichlet")
    {
        auto const res = resolutions_or(cfg, {1.0 / 32});
        return verify::dirichlet_limit(need_domain(cfg),
                                       config::parse_list(cfg.get("sigmas"), "run.sigmas"),
                                       res.front(),
                                       cfg.tolerance.value_or(1e-2),
                                       options(cfg));
    }
    if (e == "subgraph")
    {
        auto const* g = need_domain(cfg).as<geometry::Subgraph>();
        if (!g)
            throw ConfigError("domain.variant", "experiment subgraph needs a subgraph domain");
        return verify::subgraph_certify(*g,
                                        config::parse_sigma(cfg.sigma),
                                        resolutions_or(cfg, {1e-2, 5e-3, 2.5e-3}),
                                        as_int(cfg.number("fibers", 16), "run.fibers"),
                                        options(cfg));
    }
    if (e == "exterior")
    {
        double R = cfg.number("R", 1.0);
        int n = as_int(cfg.number("n", 3), "run.n");
        if (cfg.domain)
        {
            auto const* ext = cfg.domain->as<geometry::BallComplement>();
            if (!ext)
                throw ConfigError("domain.variant", "experiment exterior needs a ball_complement domain");
            R = ext->radius;
            n = ext->dimension;
        }
        std::vector<int> nodes;
        for (double v : config::parse_list(cfg.get("nodes", "2500,5000,10000"), "run.nodes"))
            nodes.push_back(as_int(v, "run.nodes"));
        return verify::exterior_certify(R, constant_sigma(cfg), n, cfg.number("outer", 50.0), nodes, options(cfg));
    }
    if (e == "truncated")
    {
        auto const hs = parse_halfspaces(cfg.get("halfspaces"));
        auto const sigma = config::parse_sigma(cfg.sigma);
        std::vector<double> facet_sigma;
        if (sigma.kind() == RobinCoefficient::Kind::facets)
            facet_sigma = sigma.facet_values();
        else if (sigma.kind() == RobinCoefficient::Kind::constant)
            facet_sigma.assign(hs.size(), sigma.constant_value());
        else
            throw ConfigError("sigma", "experiment truncated needs a constant or per-facet σ");
        return verify::truncated_convex_certify(hs,
                                                facet_sigma,
                                                cfg.number("rho"),
                                                resolutions_or(cfg, {1.0 / 8, 1.0 / 16}),
                                                cfg.number("inradius", infinity),
                                                options(cfg));
    }
    if (e == "sharpness")
    {
        return verify::sharpness_scan(as_int(cfg.number("n", 3), "run.n"),
                                      constant_sigma(cfg),
                                      config::parse_list(cfg.get("radii", "10,100,1000,10000"), "run.radii"),
                                      cfg.number("gap", 2.0));
    }
    if (e == "robin-ev")
    {
        auto const res = resolutions_or(cfg, {1e-3});
        return verify::robin_ev_check(cfg.number("f", 1.0), config::parse_number(cfg.sigma, "sigma"), res.front());
    }
    if (e == "neg-ev-demo")
    {
        auto const res = resolutions_or(cfg, {1e-3});
        return verify::negative_eigenvalue_demo(
            interval_length(cfg), cfg.number("sigma0"), cfg.number("sigma_b"), res.front());
    }
    throw ConfigError("run.experiment", "unknown experiment '" + e + "'");
}

int exit_code(VerificationReport const& rep)
{
    if (rep.solver_failure)
        return exit_solver;
    return rep.pass ? exit_pass : exit_violation;
}

int run(RunConfig const& cfg, std::ostream& out, std::ostream& err)
{
    try
    {
        auto const rep = execute(cfg);
        out << report::summary(rep);
        if (!cfg.out.empty())
            for (auto const& p : report::write(rep, cfg.out))
                out << "wrote " << p.string() << '\n';
        return exit_code(rep);
    }
    catch (numerics::SolverError const& e)
    {
        err << "solver failure: " << e.what() << '\n';
        return exit_solver;
    }
    catch (Error const& e)
    {
        err << "input error: " << e.what() << '\n';
        return exit_input;
    }
    catch (std::filesystem::filesystem_error const& e)
    {
        err << "input error: " << e.what() << '\n';
        return exit_input;
    }
}

std::vector<Point> read_points(std::istream& in)
{
    std::vector<Point> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        auto const first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        try
        {
            auto const v = config::parse_list(line, "points:" + std::to_string(lineno));
            if (!pts.empty() && pts.front().size() != static_cast<Eigen::Index>(v.size()))
                throw ConfigError("points:" + std::to_string(lineno), "dimension differs from the first point");
            pts.push_back(Eigen::Map<Vector const>(v.data(), static_cast<Eigen::Index>(v.size())));
        }
        catch (ConfigError const&)
        {
            if (pts.empty() && lineno == 1)
                continue;  // header
            throw;
        }
    }
    if (pts.empty())
        throw ConfigError("points", "no points given");
    return pts;
}

void weight_eval(RunConfig const& cfg, std::vector<Point> const& points, std::ostream& os)
{
    std::string const name = cfg.weight.empty() ? "convex" : cfg.weight;
    auto const w = named_weight(cfg, name);
    std::optional<geometry::Domain> domain = cfg.domain;
    if (!domain && (name == "lemma1" || name == "lemma2"))
        domain = geometry::Interval{interval_length(cfg)};
    int const n = static_cast<int>(points.front().size());

    for (int d = 0; d < n; ++d)
        os << 'x' << d << ',';
    os << "weight,distance";
    for (int d = 0; d < n; ++d)
        os << ",p" << d;
    os << ",flags\n";
    for (auto const& x : points)
    {
        for (int d = 0; d < n; ++d)
            os << fmt(x[d]) << ',';
        std::string flags;
        double value = std::nan(""), dist = std::nan("");
        Point p = Point::Constant(n, std::nan(""));
        try
        {
            if (domain && !geometry::contains(*domain, x))
                throw DomainError("outside");
            if (domain)
            {
                auto const proj = geometry::distance_and_projection(*domain, x);
                dist = proj.distance;
                p = proj.nearest;
                if (!proj.unique)
                    flags = "singular";
            }
            value = w.interior(x);
        }
        catch (DomainError const&)
        {
            flags = "outside";
        }
        os << fmt(value) << ',' << fmt(dist);
        for (int d = 0; d < n; ++d)
            os << ',' << fmt(p[d]);
        os << ',' << flags << '\n';
    }
}

void geometry_probe(geometry::Domain const& domain,
                    std::vector<Point> const& points,
                    std::optional<Vector> const& direction,
                    std::ostream& os)
{
    int const n = domain.dimension();
    std::optional<Direction> e;
    if (direction)
        e = Direction(*direction);
    for (int d = 0; d < n; ++d)
        os << 'x' << d << ',';
    os << "inside,distance";
    for (int d = 0; d < n; ++d)
        os << ",p" << d;
    os << ",unique,facet";
    if (e)
        os << ",directional_distance,exit_s";
    os << '\n';
    for (auto const& x : points)
    {
        if (x.size() != n)
            throw InputError("point dimension does not match the domain");
        for (int d = 0; d < n; ++d)
            os << fmt(x[d]) << ',';
        bool const inside = geometry::contains(domain, x);
        os << (inside ? 1 : 0);
        if (!inside)
        {
            os << ",nan";
            for (int d = 0; d < n; ++d)
                os << ",nan";
            os << ",,";
            if (e)
                os << ",nan,nan";
            os << '\n';
            continue;
        }
        auto const proj = geometry::distance_and_projection(domain, x);
        os << ',' << fmt(proj.distance);
        for (int d = 0; d < n; ++d)
            os << ',' << fmt(proj.nearest[d]);
        os << ',' << (proj.unique ? 1 : 0) << ','
           << (proj.minimizers.empty() ? -1 : proj.minimizers.front().facet_id);
        if (e)
        {
            auto const dd = geometry::directional_distance(domain, x, *e);
            os << ',' << fmt(dd.unbounded ? infinity : dd.distance) << ','
               << fmt(dd.minimizers.empty() ? std::nan("") : dd.minimizers.front().s);
        }
        os << '\n';
    }
}

int main(int argc, char const* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Hardy weights and inequality certification for Robin Laplacians", "hardy-robin"};
    app.require_subcommand(1);

    std::map<std::string, std::string> store;
    std::string domain_path, sigma_spec, h, resolutions, tol, out_path, seed, weight, points_path, direction,
        config_path;

    auto common = [&](CLI::App* sub, bool with_domain) {
        sub->set_help_flag("--help", "Print this help message and exit");
        if (with_domain)
            sub->add_option("--domain", domain_path, "Domain config file ([domain] section)");
        sub->add_option("--sigma", sigma_spec, "σ spec: 2, inf, facets:..., regions:...");
        sub->add_option("--h", h, "Mesh size");
        sub->add_option("--resolutions", resolutions, "Comma-separated mesh sizes");
        sub->add_option("--tol", tol, "Fixed pass tolerance");
        sub->add_option("--out", out_path, "JSON report path; CSV traces are written next to it");
        sub->add_option("--seed", seed, "Random seed");
        sub->add_option("--sampling", store["sampling"], "Weight sampling: gauss or centroid");
    };
    auto param = [&](CLI::App* sub, std::string const& flag, std::string const& key, std::string const& help) {
        sub->add_option(flag, store[key], help);
    };

    auto* verify_cmd = app.add_subcommand("verify", "Certify a Hardy inequality");
    verify_cmd->require_subcommand(1);

    auto* lemma1 = verify_cmd->add_subcommand("lemma1", "Interval with Robin σ at 0 and a free end");
    common(lemma1, true);
    param(lemma1, "--b", "b", "Interval length");

    auto* lemma2 = verify_cmd->add_subcommand("lemma2", "Interval with Robin σ1 at 0 and σ2 at b");
    common(lemma2, true);
    param(lemma2, "--b", "b", "Interval length");
    param(lemma2, "--sigma1", "sigma1", "σ at 0");
    param(lemma2, "--sigma2", "sigma2", "σ at b");

    auto* convex = verify_cmd->add_subcommand("convex", "Bounded convex domain, convex weight");
    common(convex, true);
    param(convex, "--weight", "weight_override", "Weight: convex, dirichlet, mu, general");

    auto* mu = verify_cmd->add_subcommand("mu", "Directional weight μ_σ");
    common(mu, true);
    param(mu, "--level", "level", "Sphere-rule level for the certification weight");
    param(mu, "--points", "points", "Pointwise checks at this many random points instead");
    param(mu, "--samples", "samples", "Monte Carlo samples for the general-domain constant");

    auto* dirichlet = verify_cmd->add_subcommand("dirichlet", "Dirichlet weight, or the σ = k limit with --sigmas");
    common(dirichlet, true);
    param(dirichlet, "--sigmas", "sigmas", "Comma-separated finite σ values for the limit check");

    auto* subgraph = verify_cmd->add_subcommand("subgraph", "Sign-changing σ on a subgraph region");
    common(subgraph, true);
    param(subgraph, "--fibers", "fibers", "Fibers per base axis");

    auto* exterior = verify_cmd->add_subcommand("exterior", "Radial check outside a ball");
    common(exterior, true);
    param(exterior, "--R", "R", "Ball radius");
    param(exterior, "--n", "n", "Dimension");
    param(exterior, "--outer", "outer", "Outer truncation radius");
    param(exterior, "--nodes", "nodes", "Comma-separated radial node counts");

    auto* truncated = verify_cmd->add_subcommand("truncated", "Unbounded polyhedral set cut by a ball");
    common(truncated, false);
    param(truncated, "--halfspaces", "halfspaces", "'nx ny offset; ...'");
    param(truncated, "--rho", "rho", "Truncation radius");
    param(truncated, "--inradius", "inradius", "Inradius of the untruncated set");

    auto* sharpness = app.add_subcommand("sharpness", "Sharpness of the constant 1/4 on balls");
    common(sharpness, false);
    param(sharpness, "--n", "n", "Dimension");
    param(sharpness, "--radii", "radii", "Comma-separated radii");
    param(sharpness, "--gap", "gap", "Constant in the log bound");

    auto* robin_ev = app.add_subcommand("robin-ev", "Robin-Neumann eigenvalue cross-check");
    common(robin_ev, false);
    param(robin_ev, "--f", "f", "Interval length");

    auto* neg = app.add_subcommand("neg-ev-demo", "Negative eigenvalue with positive total σ");
    common(neg, false);
    param(neg, "--b", "b", "Interval length");
    param(neg, "--sigma0", "sigma0", "σ at 0");
    param(neg, "--sigma-b", "sigma_b", "σ at b");

    auto* weight_cmd = app.add_subcommand("weight", "Weight evaluation");
    weight_cmd->require_subcommand(1);
    auto* eval = weight_cmd->add_subcommand("eval", "Evaluate a weight at points from CSV");
    common(eval, true);
    eval->add_option("--weight", weight, "convex, dirichlet, mu, general, lemma1, lemma2, exterior, sign_changing");
    eval->add_option("--points", points_path, "Points CSV (- for stdin)")->required();
    param(eval, "--b", "b", "Interval length for lemma weights");
    param(eval, "--level", "level", "Sphere-rule level for mu");

    auto* geometry_cmd = app.add_subcommand("geometry", "Geometry queries");
    geometry_cmd->require_subcommand(1);
    auto* probe = geometry_cmd->add_subcommand("probe", "δ, projection and d_e at points from CSV");
    probe->add_option("--domain", domain_path, "Domain config file")->required();
    probe->add_option("--points", points_path, "Points CSV (- for stdin)")->required();
    probe->add_option("--direction", direction, "Direction for d_e, e.g. '1 0'");
    probe->add_option("--out", out_path, "CSV output path (stdout if omitted)");

    auto* run_cmd = app.add_subcommand("run", "Run an experiment from an INI config");
    run_cmd->add_option("--config", config_path, "Config file")->required();
    run_cmd->add_option("--out", out_path, "Override the report path");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        std::ostringstream o, er;
        int const code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? exit_pass : exit_input;
    }

    try
    {
        auto open_points = [&]() {
            if (points_path == "-")
                return read_points(std::cin);
            std::ifstream f(points_path);
            if (!f)
                throw ConfigError("points", "cannot open " + points_path);
            return read_points(f);
        };
        auto write_csv = [&](auto const& body) {
            if (out_path.empty())
            {
                body(out);
                return;
            }
            std::ofstream f(out_path);
            if (!f)
                throw ConfigError("out", "cannot write " + out_path);
            body(f);
            out << "wrote " << out_path << '\n';
        };

        if (run_cmd->parsed())
        {
            auto cfg = config::load(config_path);
            if (!out_path.empty())
                cfg.out = out_path;
            return run(cfg, out, err);
        }
        if (probe->parsed())
        {
            auto const domain = config::load_domain(domain_path);
            auto const pts = open_points();
            std::optional<Vector> dir;
            if (!direction.empty())
            {
                auto const v = config::parse_list(direction, "direction");
                dir = Eigen::Map<Vector const>(v.data(), static_cast<Eigen::Index>(v.size()));
            }
            write_csv([&](std::ostream& os) { geometry_probe(domain, pts, dir, os); });
            return exit_pass;
        }

        RunConfig cfg;
        CLI::App* chosen = nullptr;
        for (auto* sub : {lemma1, lemma2, convex, mu, dirichlet, subgraph, exterior, truncated, sharpness,
                          robin_ev, neg, eval})
            if (sub->parsed())
                chosen = sub;
        cfg.experiment = chosen->get_name();
        if (!domain_path.empty())
            cfg.domain = config::load_domain(domain_path);
        if (!sigma_spec.empty())
            cfg.sigma = sigma_spec;
        if (!resolutions.empty())
            cfg.resolutions = config::parse_list(resolutions, "resolutions");
        else if (!h.empty())
            cfg.resolutions = config::parse_list(h, "h");
        if (!tol.empty())
            cfg.tolerance = config::parse_number(tol, "tol");
        if (!seed.empty())
        {
            double const s = config::parse_number(seed, "seed");
            if (s < 0 || s != std::floor(s))
                throw ConfigError("seed", "must be a nonnegative integer");
            cfg.seed = static_cast<std::uint64_t>(s);
        }
        cfg.out = out_path;
        for (auto const& [k, v] : store)
            if (!v.empty())
                cfg.parameters[k] = v;
        if (cfg.parameters.count("weight_override"))
        {
            cfg.weight = cfg.parameters["weight_override"];
            cfg.parameters.erase("weight_override");
        }

        if (chosen == eval)
        {
            cfg.weight = weight;
            auto const pts = open_points();
            cfg.out.clear();
            write_csv([&](std::ostream& os) { weight_eval(cfg, pts, os); });
            return exit_pass;
        }
        return run(cfg, out, err);
    }
    catch (Error const& e)
    {
        err << "input error: " << e.what() << '\n';
        return exit_input;
    }
}

} // namespace hardy::cli
