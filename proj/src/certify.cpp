#include "hardy/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace hardy::verify {

using geometry::Domain;
using weights::half_inverse;
using weights::infinity;

int thread_cap()
{
    int cap = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (char const* env = std::getenv("HARDY_ROBIN_THREADS"))
    {
        char* end = nullptr;
        long const v = std::strtol(env, &end, 10);
        if (end != env && v > 0)
            cap = static_cast<int>(v);
    }
    return cap;
}

void parallel_for(int count, std::function<void(int)> const& f)
{
    int const workers = std::min(thread_cap(), count);
    if (workers <= 1)
    {
        for (int i = 0; i < count; ++i)
            f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
    {
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++)
            {
                try
                {
                    f(i);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

double VerificationReport::quantity(std::string const& name) const
{
    for (auto const& [k, v] : quantities)
        if (k == name)
            return v;
    throw InputError("report has no quantity named " + name);
}

namespace {

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// Uniform double in [0, 1) from the top 53 bits
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

LevelResult solve_level(SparseMatrix const& a, SparseMatrix const& b, double h, double tol, CertifyOptions const& opt)
{
    LevelResult r;
    r.h = h;
    r.dofs = static_cast<int>(a.rows());
    r.tolerance = tol;
    numerics::SymmetricPencil const pencil(a, b);
    try
    {
        auto const ev = numerics::smallest_eigenpair(pencil, opt.eigen_tol);
        r.solved = true;
        r.lambda_min = ev.value;
        r.lower = ev.lower;
        r.upper = ev.upper;
        r.residual = ev.residual;
        r.relative_residual = ev.relative_residual;
        r.iterations = ev.iterations;
    }
    catch (numerics::SolverError const& e)
    {
        r.solved = false;
        r.diagnostic = e.what();
        auto const& best = e.best_iterate();
        r.lambda_min = best.value;
        r.lower = best.lower;
        r.upper = best.upper;
        r.residual = best.residual;
        r.relative_residual = best.relative_residual;
        r.iterations = best.iterations;
        return r;
    }
    std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(r.dofs));
    double const slack = 1e-9 * std::max(1.0, std::abs(r.lambda_min));
    for (int k = 0; k < opt.random_vectors; ++k)
    {
        Eigen::VectorXd x(r.dofs);
        for (Eigen::Index i = 0; i < x.size(); ++i)
            x[i] = 2 * unit_uniform(rng) - 1;
        double const q = numerics::rayleigh_quotient(pencil, x);
        r.random_quotients.push_back(q);
        if (q < r.lambda_min - slack)
            r.variational_ok = false;
    }
    return r;
}

LevelResult solve_form(DiscreteForm const& form, double tol, CertifyOptions const& opt)
{
    return solve_level(form.remainder(), form.mass, form.h, tol, opt);
}

// Every level solved, above -tol, negative parts not growing, variational checks ok
void grade(VerificationReport& rep)
{
    rep.solver_failure = false;
    bool ok = !rep.levels.empty();
    double prev_neg = infinity;
    for (auto const& l : rep.levels)
    {
        if (!l.solved)
        {
            rep.solver_failure = true;
            ok = false;
            continue;
        }
        double const neg = -std::min(l.lambda_min, 0.0);
        double const slack = 1e-9 * std::max(1.0, std::abs(l.lambda_min));
        if (l.lambda_min < -l.tolerance)
            ok = false;
        if (neg > prev_neg + slack)
            ok = false;
        if (!l.variational_ok)
            ok = false;
        prev_neg = neg;
    }
    rep.pass = ok;
}

std::vector<double> sorted_coarse_to_fine(std::vector<double> h)
{
    if (h.empty())
        throw InputError("at least one resolution is required");
    for (double v : h)
        if (!(v > 0))
            throw InputError("resolutions must be positive");
    std::sort(h.begin(), h.end(), std::greater<>());
    return h;
}

} // namespace

double default_tolerance(Domain const& domain, double h)
{
    return domain.dimension() == 1 ? 1e-3 : 5 * h;
}

VerificationReport certify_interval(double b,
                                    EndConditions ends,
                                    HardyWeight const& weight,
                                    std::vector<double> const& resolutions,
                                    CertifyOptions const& options)
{
    auto const hs = sorted_coarse_to_fine(resolutions);
    VerificationReport rep;
    rep.experiment = "interval";
    rep.provenance = weight.provenance;
    rep.parameters = {{"b", fmt(b)}, {"sigma_left", fmt(ends.left)}, {"sigma_right", fmt(ends.right)}};
    rep.levels.resize(hs.size());
    parallel_for(static_cast<int>(hs.size()), [&](int k) {
        int const cells = std::max(1, static_cast<int>(std::lround(b / hs[k])));
        auto const form = assemble(IntervalMesh{b, cells}, ends, &weight, options.sampling);
        rep.levels[k] = solve_form(form, options.tolerance.value_or(1e-3), options);
    });
    grade(rep);
    return rep;
}

VerificationReport certify(Domain const& domain,
                           RobinCoefficient const& sigma,
                           HardyWeight const& weight,
                           std::vector<double> const& resolutions,
                           CertifyOptions const& options)
{
    if (auto const* iv = domain.as<geometry::Interval>())
    {
        EndConditions const ends{sigma.at({Point::Constant(1, 0.0), 0}),
                                 sigma.at({Point::Constant(1, iv->length), 1})};
        auto rep = certify_interval(iv->length, ends, weight, resolutions, options);
        rep.parameters.emplace_back("sigma", sigma.describe());
        return rep;
    }
    if (domain.dimension() != 2 || !(domain.as<geometry::ConvexPolytope>() || domain.as<geometry::Ball>()))
        throw UnsupportedError("grid certification supports intervals, polygons and disks");

    auto const hs = sorted_coarse_to_fine(resolutions);
    VerificationReport rep;
    rep.experiment = "grid";
    rep.provenance = weight.provenance;
    rep.parameters = {{"domain", domain.variant_name()}, {"sigma", sigma.describe()}};
    rep.levels.resize(hs.size());
    std::vector<std::string> quality(hs.size());
    parallel_for(static_cast<int>(hs.size()), [&](int k) {
        auto const mesh = build_grid(domain, hs[k]);
        auto const form = assemble(mesh, sigma, &weight, options.sampling);
        rep.levels[k] = solve_form(form, options.tolerance.value_or(default_tolerance(domain, mesh.h())), options);
        quality[k] = "h=" + fmt(mesh.h()) + ": " + std::to_string(mesh.cut_cells) +
                     " cut cells, smallest area fraction " + fmt(mesh.min_area_fraction);
    });
    for (auto& q : quality)
        rep.notes.push_back(std::move(q));
    grade(rep);
    return rep;
}

double sharpness_integral(int n, double R, double a)
{
    if (n < 1 || !(R > 0) || !(a > 0) || !std::isfinite(a))
        throw InputError("sharpness integral needs n >= 1, R > 0 and finite a > 0");
    double const top = R + a;
    auto const res = numerics::quad_1d(
        [=](double v) { return std::pow(std::max(0.0, top - std::exp(v)), n - 1); },
        std::log(a),
        std::log(top),
        400);
    return res.value;
}

VerificationReport sharpness_scan(int n, double sigma, std::vector<double> const& radii, double gap_constant)
{
    if (!(sigma > 0) || !std::isfinite(sigma))
        throw InputError("sharpness scan needs a finite σ > 0");
    if (radii.empty())
        throw InputError("sharpness scan needs radii");
    VerificationReport rep;
    rep.experiment = "sharpness";
    rep.provenance = "sharpness of the constant 1/4 for the Robin Hardy weight";
    rep.parameters = {{"n", std::to_string(n)}, {"sigma", fmt(sigma)}, {"gap_constant", fmt(gap_constant)}};
    rep.columns = {"R", "c", "c_minus_quarter", "log_bound"};
    double const a = half_inverse(sigma);
    bool ok = true;
    double prev = infinity;
    for (double R : radii)
    {
        double const I = sharpness_integral(n, R, a);
        double const c = 0.25 + std::pow(R, n - 1) / (2 * I);
        double const bound = gap_constant / std::log1p(2 * sigma * R);
        rep.rows.push_back({R, c, c - 0.25, bound});
        if (!(c > 0.25) || !(c < prev) || c - 0.25 > bound)
            ok = false;
        prev = c;
    }
    rep.pass = ok;
    return rep;
}

VerificationReport negative_eigenvalue_demo(double b, double sigma0, double sigma_b, double h)
{
    if (!(b > 0) || !(h > 0))
        throw InputError("demo needs b > 0 and h > 0");
    VerificationReport rep;
    rep.experiment = "neg-ev-demo";
    rep.provenance = "negative Robin eigenvalue with positive total boundary coefficient";
    rep.parameters = {{"b", fmt(b)}, {"sigma0", fmt(sigma0)}, {"sigma_b", fmt(sigma_b)}, {"h", fmt(h)}};

    auto u = [](double t) { return std::exp(-t); };
    double const grad = numerics::quad_1d([&](double t) { return u(t) * u(t); }, 0, b, 64).value;
    double const l2 = grad;  // |u'| = |u| for e^{-t}
    double const numerator = grad + sigma0 * u(0) * u(0) + sigma_b * u(b) * u(b);
    double const rq = numerator / l2;

    int const cells = std::max(1, static_cast<int>(std::lround(b / h)));
    auto const form = assemble(IntervalMesh{b, cells}, EndConditions{sigma0, sigma_b}, nullptr);
    CertifyOptions opt;
    auto level = solve_level(form.robin_form(), form.mass, b / cells, 0.0, opt);
    rep.levels.push_back(level);

    double const total = sigma0 + sigma_b;
    rep.quantities = {{"boundary_integral", total},
                      {"rayleigh_numerator", numerator},
                      {"rayleigh_quotient", rq},
                      {"lambda_min", level.lambda_min}};
    if (!(sigma0 < 0))
    {
        rep.applicable = false;
        rep.notes.push_back("not applicable: σ0 >= 0 leaves no negative boundary part");
        rep.pass = level.solved && level.lambda_min >= -1e-10;
        return rep;
    }
    rep.solver_failure = !level.solved;
    rep.pass = level.solved && total > 0 && rq < 0 && level.lambda_min < 0 && level.lambda_min <= rq &&
               level.variational_ok;
    return rep;
}

VerificationReport exterior_certify(double R,
                                    double sigma,
                                    int n,
                                    double outer,
                                    std::vector<int> const& node_counts,
                                    CertifyOptions const& options)
{
    if (!(outer > R))
        throw InputError("outer radius must exceed R");
    if (node_counts.empty())
        throw InputError("at least one node count is required");
    auto counts = node_counts;
    std::sort(counts.begin(), counts.end());
    auto const weight = weights::exterior_weight(R, sigma, n);
    VerificationReport rep;
    rep.experiment = "exterior";
    rep.provenance = weight.provenance;
    rep.parameters = {{"R", fmt(R)}, {"sigma", fmt(sigma)}, {"n", std::to_string(n)}, {"outer", fmt(outer)}};
    rep.levels.resize(counts.size());
    parallel_for(static_cast<int>(counts.size()), [&](int k) {
        auto const form = assemble(RadialMesh{R, outer, counts[k], n}, sigma, &weight, options.sampling);
        rep.levels[k] = solve_form(form, options.tolerance.value_or(1e-6), options);
    });
    grade(rep);
    return rep;
}

VerificationReport subgraph_certify(geometry::Subgraph const& domain,
                                    RobinCoefficient const& sigma,
                                    std::vector<double> const& resolutions,
                                    int fibers_per_axis,
                                    CertifyOptions const& options)
{
    if (fibers_per_axis < 1)
        throw InputError("at least one fiber per axis is required");
    auto const hs = sorted_coarse_to_fine(resolutions);
    auto const& base = domain.base();
    int const m = base.dimension();

    // fiber feet: midpoints of a regular grid over the bounding box of the base
    Vector lo = Vector::Constant(m, infinity), hi = Vector::Constant(m, -infinity);
    for (auto const& v : base.vertices())
    {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    std::vector<Vector> feet;
    int const total = m == 1 ? fibers_per_axis : fibers_per_axis * fibers_per_axis;
    for (int k = 0; k < total; ++k)
    {
        Vector p(m);
        int rest = k;
        for (int d = 0; d < m; ++d)
        {
            p[d] = lo[d] + (hi[d] - lo[d]) * ((rest % fibers_per_axis) + 0.5) / fibers_per_axis;
            rest /= fibers_per_axis;
        }
        if (geometry::contains(base, p))
            feet.push_back(p);
    }
    if (feet.empty())
        throw InputError("no fibers inside the base");

    VerificationReport rep;
    rep.experiment = "subgraph";
    rep.provenance = "Robin Hardy inequality on subgraph regions with sign-changing σ";
    rep.parameters = {{"profile", domain.profile_name()}, {"sigma", sigma.describe()},
                      {"fibers", std::to_string(feet.size())}};
    rep.columns = {"fiber", "f", "sigma", "weight", "bonus", "lambda_min"};
    for (int d = 0; d < m; ++d)
        rep.columns.insert(rep.columns.begin() + 1 + d, "x" + std::to_string(d));

    int const nf = static_cast<int>(feet.size());
    std::vector<std::vector<LevelResult>> per(hs.size(), std::vector<LevelResult>(nf));
    parallel_for(nf * static_cast<int>(hs.size()), [&](int job) {
        int const k = job / nf, i = job % nf;
        double const f = domain.height(feet[i]);
        double const s = sigma.on_base(feet[i]);
        auto const fw = weights::fiber_weight(f, s);
        HardyWeight w;
        w.interior = [rho = fw.interior](Point const&) { return rho; };
        w.boundary = [bonus = fw.bonus](geometry::BoundaryPoint const& y) { return y.facet_id == 0 ? bonus : 0.0; };
        int const cells = std::max(1, static_cast<int>(std::ceil(f / hs[k])));
        auto const form = assemble(IntervalMesh{f, cells}, EndConditions{s, 0.0}, &w, options.sampling);
        per[k][i] = solve_form(form, options.tolerance.value_or(1e-6), options);
        per[k][i].h = hs[k];
    });

    for (std::size_t k = 0; k < hs.size(); ++k)
    {
        auto worst = std::min_element(per[k].begin(), per[k].end(), [](auto const& a, auto const& b) {
            if (a.solved != b.solved)
                return !a.solved;
            return a.lambda_min < b.lambda_min;
        });
        LevelResult agg = *worst;
        for (auto const& l : per[k])
            agg.variational_ok = agg.variational_ok && l.variational_ok;
        rep.levels.push_back(agg);
    }
    for (int i = 0; i < nf; ++i)
    {
        double const f = domain.height(feet[i]);
        double const s = sigma.on_base(feet[i]);
        auto const fw = weights::fiber_weight(f, s);
        std::vector<double> row{double(i)};
        for (int d = 0; d < m; ++d)
            row.push_back(feet[i][d]);
        row.insert(row.end(), {f, s, fw.interior, fw.bonus, per.back()[i].lambda_min});
        rep.rows.push_back(std::move(row));
    }
    grade(rep);
    return rep;
}

VerificationReport robin_ev_check(double f, double sigma, double h)
{
    double const mu = weights::robin_neumann_mu(f, sigma);
    int const cells = std::max(1, static_cast<int>(std::lround(f / h)));
    double const hh = f / cells;
    auto const form = assemble(IntervalMesh{f, cells}, EndConditions{sigma, 0.0}, nullptr);
    CertifyOptions opt;
    opt.eigen_tol = 1e-12;
    auto level = solve_level(form.robin_form(), form.mass, hh, 0.0, opt);

    VerificationReport rep;
    rep.experiment = "robin-ev";
    rep.provenance = "lowest Robin-Neumann eigenvalue of an interval";
    rep.parameters = {{"f", fmt(f)}, {"sigma", fmt(sigma)}, {"h", fmt(hh)}};
    double const diff = std::abs(level.lambda_min - mu);
    rep.quantities = {{"mu", mu},
                      {"lambda_h", level.lambda_min},
                      {"difference", diff},
                      {"C", diff / (hh * hh)},
                      {"tolerance", 1e-4 * std::max(1.0, std::abs(mu))}};
    rep.levels.push_back(level);
    rep.solver_failure = !level.solved;
    rep.pass = level.solved && diff <= 1e-4 * std::max(1.0, std::abs(mu));
    return rep;
}

VerificationReport truncated_convex_certify(std::vector<geometry::Halfspace> const& halfspaces,
                                            std::vector<double> const& facet_sigma,
                                            double rho,
                                            std::vector<double> const& resolutions,
                                            double domain_inradius,
                                            CertifyOptions const& options)
{
    if (halfspaces.empty() || halfspaces.size() != facet_sigma.size())
        throw InputError("one Robin value per halfspace is required");
    if (!(domain_inradius > 0))
        throw InputError("inradius must be positive");
    auto const hs = sorted_coarse_to_fine(resolutions);

    auto values = facet_sigma;
    values.push_back(infinity);
    auto const sigma = RobinCoefficient::per_facet(values);

    // weights of the untruncated set: δ is the smallest facet slack
    HardyWeight w;
    w.interior = [=](Point const& x) {
        double d = infinity, s = infinity;
        for (std::size_t j = 0; j < halfspaces.size(); ++j)
        {
            double const slack = halfspaces[j].offset - halfspaces[j].normal.vector().dot(x);
            if (slack < d - geometry::tie_tolerance * std::max(1.0, d))
            {
                d = slack;
                s = facet_sigma[j];
            }
            else if (std::abs(slack - d) <= geometry::tie_tolerance * std::max(1.0, d))
                s = std::min(s, facet_sigma[j]);
        }
        double const a = half_inverse(s);
        return 0.25 / ((d + a) * (d + a)) + 0.25 / ((domain_inradius + a) * (domain_inradius + a));
    };
    w.boundary = [=](geometry::BoundaryPoint const& y) {
        if (y.facet_id < 0 || y.facet_id >= static_cast<int>(facet_sigma.size()))
            return 0.0;
        return 0.5 / (domain_inradius + half_inverse(facet_sigma[y.facet_id]));
    };
    w.provenance = "Robin Hardy inequality on unbounded convex sets (truncation)";

    VerificationReport rep;
    rep.experiment = "truncated";
    rep.provenance = w.provenance;
    rep.parameters = {{"rho", fmt(rho)}, {"sigma", sigma.describe()}, {"inradius", fmt(domain_inradius)}};
    rep.levels.resize(hs.size());
    parallel_for(static_cast<int>(hs.size()), [&](int k) {
        auto const mesh = build_truncated_grid(halfspaces, rho, hs[k]);
        auto const form = assemble(mesh, sigma, &w, options.sampling);
        rep.levels[k] = solve_form(form, options.tolerance.value_or(5 * mesh.h()), options);
    });
    grade(rep);
    return rep;
}

VerificationReport dirichlet_limit(Domain const& domain,
                                   std::vector<double> const& sigmas,
                                   double h,
                                   double tolerance,
                                   CertifyOptions const& options)
{
    if (sigmas.empty())
        throw InputError("at least one finite σ is required");
    auto ks = sigmas;
    std::sort(ks.begin(), ks.end());
    auto const mesh = build_grid(domain, h);

    VerificationReport rep;
    rep.experiment = "dirichlet-limit";
    rep.provenance = "Dirichlet limit of the Robin Hardy inequality";
    rep.parameters = {{"domain", domain.variant_name()}, {"h", fmt(mesh.h())}, {"tolerance", fmt(tolerance)}};
    rep.columns = {"sigma", "lambda_min", "distance_to_dirichlet"};

    std::vector<double> all = ks;
    all.push_back(infinity);
    rep.levels.resize(all.size());
    parallel_for(static_cast<int>(all.size()), [&](int k) {
        auto const sigma = RobinCoefficient::constant(all[k]);
        auto const w = weights::convex_weight(domain, sigma);
        auto const form = assemble(mesh, sigma, &w, options.sampling);
        rep.levels[k] = solve_form(form, infinity, options);
    });
    double const target = rep.levels.back().lambda_min;
    bool ok = std::all_of(rep.levels.begin(), rep.levels.end(), [](auto const& l) { return l.solved; });
    rep.solver_failure = !ok;
    double prev = infinity;
    for (std::size_t k = 0; k < ks.size(); ++k)
    {
        double const d = std::abs(rep.levels[k].lambda_min - target);
        rep.rows.push_back({ks[k], rep.levels[k].lambda_min, d});
        if (d > prev)
            ok = false;
        prev = d;
    }
    rep.rows.push_back({infinity, target, 0.0});
    rep.quantities = {{"lambda_dirichlet", target}, {"final_distance", prev}};
    rep.pass = ok && prev <= tolerance;
    return rep;
}

VerificationReport mu_pointwise_check(Domain const& domain,
                                      RobinCoefficient const& sigma,
                                      int points,
                                      std::int64_t mc_samples,
                                      std::uint64_t seed,
                                      double convergence_tol)
{
    if (points < 1)
        throw InputError("at least one point is required");
    if (!domain.bounded())
        throw UnsupportedError("μ_σ checks need a bounded domain");
    int const n = domain.dimension();

    // seeded points in the bounding box of the domain, kept when inside
    Vector lo, hi;
    if (auto const* poly = domain.as<geometry::ConvexPolytope>())
    {
        lo = Vector::Constant(n, infinity);
        hi = -lo;
        for (auto const& v : poly->vertices())
        {
            lo = lo.cwiseMin(v);
            hi = hi.cwiseMax(v);
        }
    }
    else if (auto const* ball = domain.as<geometry::Ball>())
    {
        lo = ball->center.array() - ball->radius;
        hi = ball->center.array() + ball->radius;
    }
    else if (auto const* iv = domain.as<geometry::Interval>())
    {
        lo = Vector::Zero(1);
        hi = Vector::Constant(1, iv->length);
    }
    else
    {
        throw UnsupportedError("μ_σ checks support intervals, polytopes and balls");
    }
    std::mt19937_64 rng(seed);
    std::vector<Point> xs;
    while (static_cast<int>(xs.size()) < points)
    {
        Point p(n);
        for (int d = 0; d < n; ++d)
            p[d] = lo[d] + (hi[d] - lo[d]) * unit_uniform(rng);
        if (geometry::contains(domain, p))
            xs.push_back(p);
    }

    bool const constant_positive = sigma.kind() == RobinCoefficient::Kind::constant && sigma.constant_value() > 0 &&
                                   std::isfinite(sigma.constant_value());
    std::optional<weights::GeneralBound> bound;
    if (constant_positive)
        bound = weights::cor_general_bound(domain, sigma.constant_value(), mc_samples, seed);

    VerificationReport rep;
    rep.experiment = "mu";
    rep.provenance = "directional Robin Hardy weight μ_σ";
    rep.parameters = {{"domain", domain.variant_name()}, {"sigma", sigma.describe()},
                      {"points", std::to_string(points)}, {"seed", std::to_string(seed)}};
    rep.columns = {"point"};
    for (int d = 0; d < n; ++d)
        rep.columns.push_back("x" + std::to_string(d));
    for (auto const* c : {"mu", "level", "change", "delta", "domination_bound", "chain_lhs"})
        rep.columns.emplace_back(c);

    std::vector<weights::MuResult> mus(xs.size());
    parallel_for(static_cast<int>(xs.size()),
                 [&](int i) { mus[i] = weights::mu_sigma_converged(domain, sigma, xs[i], convergence_tol); });

    double const a_sup = half_inverse(sigma.supremum());
    int converged = 0, dominated = 0, chain = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        double const delta = geometry::distance(domain, xs[i]);
        double const dom_bound = 1 / ((delta + a_sup) * (delta + a_sup));
        double const lhs = bound ? bound->weight.interior(xs[i]) : std::nan("");
        converged += mus[i].change < convergence_tol;
        dominated += mus[i].value <= dom_bound * (1 + 1e-12);
        chain += bound ? (lhs <= 0.25 * mus[i].value) : 1;
        std::vector<double> row{double(i)};
        for (int d = 0; d < n; ++d)
            row.push_back(xs[i][d]);
        row.insert(row.end(), {mus[i].value, double(mus[i].level), mus[i].change, delta, dom_bound, lhs});
        rep.rows.push_back(std::move(row));
    }
    int const np = static_cast<int>(xs.size());
    rep.quantities = {{"converged", double(converged)}, {"dominated", double(dominated)}, {"chain_holds", double(chain)}};
    if (bound)
    {
        rep.quantities.emplace_back("alpha", bound->alpha);
        rep.quantities.emplace_back("c_n", bound->c_n);
        rep.quantities.emplace_back("K", bound->K);
    }
    rep.pass = converged == np && dominated == np && chain == np;
    return rep;
}

} // namespace hardy::verify
