#include "hardy/weights.hpp"

#include "hardy/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace hardy::weights {

using geometry::BoundaryPoint;
using geometry::Domain;

double half_inverse(double sigma)
{
    if (std::isnan(sigma) || sigma < 0)
        throw InputError("half_inverse needs σ in [0, inf]");
    if (sigma == 0)
        return infinity;
    if (sigma == infinity)
        return 0;
    return 0.5 / sigma;
}

namespace {

double inv_sq(double v) { return 1 / (v * v); }

void check_length(double b)
{
    if (!(b > 0) || !std::isfinite(b))
        throw InputError("interval length must be positive and finite");
}

// Uniform double in [0, 1) from the top 53 bits
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

HardyWeight lemma1_weight(double b, double sigma)
{
    check_length(b);
    double const a = half_inverse(sigma);
    double const far = 0.25 * inv_sq(b + a);
    HardyWeight w;
    w.interior = [=](Point const& x) { return 0.25 * inv_sq(x[0] + a) + far; };
    w.boundary = [=](BoundaryPoint const& y) { return y.facet_id == 0 ? 0.5 / (b + a) : 0.0; };
    w.provenance = "one-dimensional Robin Hardy inequality on (0, b)";
    return w;
}

HardyWeight lemma2_weight(double b, double sigma1, double sigma2)
{
    check_length(b);
    double const a1 = half_inverse(sigma1);
    double const a2 = half_inverse(sigma2);
    HardyWeight w;
    w.interior = [=](Point const& x) {
        double const t = x[0];
        return t <= 0.5 * b ? 0.25 * inv_sq(t + a1) : 0.25 * inv_sq(b - t + a2);
    };
    w.boundary = [](BoundaryPoint const&) { return 0.0; };
    w.provenance = "two-sided Robin Hardy inequality on (0, b)";
    return w;
}

HardyWeight convex_weight(Domain const& domain, RobinCoefficient const& sigma)
{
    if (!domain.bounded() || !domain.convex())
        throw UnsupportedError("convex_weight needs a bounded convex domain, got " + domain.variant_name());
    if (sigma.is_signed())
        throw InputError("convex_weight needs σ >= 0");
    double const r_in = geometry::inradius(domain);
    HardyWeight w;
    w.interior = [=](Point const& x) {
        auto const p = geometry::distance_and_projection(domain, x);
        double s = infinity;
        for (auto const& m : p.minimizers)
            s = std::min(s, sigma.at(m));
        double const a = half_inverse(s);
        return 0.25 * inv_sq(p.distance + a) + 0.25 * inv_sq(r_in + a);
    };
    w.boundary = [=](BoundaryPoint const& y) { return 0.5 / (r_in + half_inverse(sigma.at(y))); };
    w.provenance = "Robin Hardy inequality on bounded convex domains";
    return w;
}

HardyWeight dirichlet_weight(Domain const& domain)
{
    auto w = convex_weight(domain, RobinCoefficient::constant(infinity));
    w.provenance = "Dirichlet Hardy inequality on bounded convex domains";
    return w;
}

double mu_sigma(Domain const& domain, RobinCoefficient const& sigma, Point const& x, int level)
{
    if (!domain.bounded())
        throw UnsupportedError("μ_σ is evaluated on bounded domains only");
    if (sigma.is_signed())
        throw InputError("μ_σ needs σ >= 0");
    if (!geometry::contains(domain, x))
        throw DomainError("μ_σ evaluation point lies outside the domain");
    auto const rule = numerics::sphere_rule(domain.dimension(), level);
    double sum = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    {
        auto const d = geometry::directional_distance(domain, x, rule.nodes[i]);
        if (d.unbounded)
            continue;
        if (d.minimizers.empty() || !std::isfinite(d.distance))
            throw DomainError("exit point along a sphere-rule direction could not be resolved");
        double s = 0;
        for (auto const& m : d.minimizers)
            s = std::max(s, sigma.at(m.point));
        sum += rule.weights[i] * inv_sq(d.distance + half_inverse(s));
    }
    return sum;
}

MuResult mu_sigma_converged(Domain const& domain,
                            RobinCoefficient const& sigma,
                            Point const& x,
                            double tol,
                            int start_level,
                            int max_level)
{
    if (!(tol > 0) || start_level < 1 || max_level < start_level)
        throw InputError("invalid μ_σ convergence parameters");
    int level = start_level;
    double const resolve = domain.scale() / std::max(geometry::distance(domain, x), 1e-300);
    while (level * 2 <= max_level && 8.0 * level < 2 * std::numbers::pi * resolve)
        level *= 2;
    double prev = mu_sigma(domain, sigma, x, level);
    double change = infinity;
    while (level < max_level)
    {
        level *= 2;
        double const next = mu_sigma(domain, sigma, x, level);
        change = std::abs(next - prev) / std::max(1.0, std::abs(next));
        prev = next;
        if (change < tol)
            break;
    }
    return {prev, level, change};
}

HardyWeight mu_weight(Domain const& domain, RobinCoefficient const& sigma, int level)
{
    HardyWeight w;
    w.interior = [=](Point const& x) { return 0.25 * mu_sigma(domain, sigma, x, level); };
    w.boundary = [](BoundaryPoint const&) { return 0.0; };
    w.provenance = "Robin Hardy inequality with the directional weight μ_σ";
    return w;
}

GeneralBound cor_general_bound(Domain const& domain, double sigma, std::int64_t samples, std::uint64_t seed)
{
    if (!(sigma > 0))
        throw InputError("the general-domain bound needs a constant σ > 0");
    if (samples < 1)
        throw InputError("sample count must be positive");
    if (!domain.bounded())
        throw UnsupportedError("the general-domain bound needs a bounded domain");
    int const n = domain.dimension();

    auto nodes = geometry::boundary_quadrature(domain, n == 1 ? 1 : 8);
    std::size_t const stride = std::max<std::size_t>(1, nodes.size() / 32);
    std::vector<Point> anchors;
    for (std::size_t i = 0; i < nodes.size(); i += stride)
        anchors.push_back(nodes[i].position);

    double const r_in = geometry::inradius(domain);
    std::vector<double> radii;
    for (int k = 0; k < 8; ++k)
        radii.push_back(r_in * std::ldexp(1.0, -k));

    std::int64_t const pairs = static_cast<std::int64_t>(anchors.size() * radii.size());
    std::int64_t const per_pair = std::max<std::int64_t>(1, samples / pairs);
    double const v_n = geometry::unit_ball_volume(n);

    std::mt19937_64 rng(seed);
    double alpha = infinity;
    Point y(n);
    Vector u(n);
    for (auto const& a : anchors)
    {
        for (double r : radii)
        {
            std::int64_t outside = 0;
            for (std::int64_t k = 0; k < per_pair; ++k)
            {
                // rejection sampling of the unit ball
                do
                {
                    for (int i = 0; i < n; ++i)
                        u[i] = 2 * unit_uniform(rng) - 1;
                } while (u.squaredNorm() >= 1);
                y = a + r * u;
                if (!geometry::contains(domain, y))
                    ++outside;
            }
            alpha = std::min(alpha, v_n * static_cast<double>(outside) / static_cast<double>(per_pair));
        }
    }
    if (!(alpha > 0))
        throw DegenerateError("estimated exterior volume ratio is not positive");

    GeneralBound out;
    out.alpha = alpha;
    out.c_n = std::ldexp(v_n, n);
    out.K = alpha / (16 * out.c_n);
    out.sigma = sigma;
    out.samples = per_pair * pairs;
    double const K = out.K;
    double const q = 0.5 * half_inverse(sigma);
    out.weight.interior = [=](Point const& x) { return K * inv_sq(geometry::distance(domain, x) + q); };
    out.weight.boundary = [](BoundaryPoint const&) { return 0.0; };
    out.weight.provenance = "Robin Hardy inequality on general bounded domains with constant σ";
    return out;
}

double robin_neumann_mu(double f, double sigma)
{
    if (!(f > 0) || !std::isfinite(f))
        throw InputError("fiber height f must be positive and finite");
    if (!(sigma < 0) || !std::isfinite(sigma))
        throw InputError("robin_neumann_mu needs a finite σ < 0");
    double const s = numerics::monotone_root([f](double s) { return s * std::tanh(f * s); }, -sigma);
    return -s * s;
}

FiberWeight fiber_weight(double f, double sigma)
{
    if (!(f > 0))
        throw DomainError("profile must be positive inside the base");
    if (sigma > 0)
    {
        double const a = half_inverse(sigma);
        return {0.5 * inv_sq(f + a), 0.5 / (f + a)};
    }
    if (sigma < 0)
        return {robin_neumann_mu(f, sigma), 0.0};
    return {0.0, 0.0};
}

HardyWeight sign_changing_weight(geometry::Subgraph const& domain, RobinCoefficient const& sigma)
{
    if (sigma.kind() == RobinCoefficient::Kind::facets)
        throw InputError("the sign-changing weight needs a base coefficient");
    HardyWeight w;
    w.interior = [=](Point const& x) {
        Vector const base = x.head(x.size() - 1);
        return fiber_weight(domain.height(base), sigma.on_base(base)).interior;
    };
    w.boundary = [=](BoundaryPoint const& y) {
        if (y.facet_id != geometry::Subgraph::base_facet)
            return 0.0;
        Vector const base = y.position.head(y.position.size() - 1);
        double const f = domain.height(base);
        // the rim of the base carries no weight
        if (f <= 0)
            return 0.0;
        return fiber_weight(f, sigma.on_base(base)).bonus;
    };
    w.provenance = "Robin Hardy inequality on subgraph regions with sign-changing σ";
    return w;
}

double exterior_weight_radial(double R, double sigma, int n, double r)
{
    double const a = half_inverse(sigma);
    return 0.25 * inv_sq(r - R + a) + 0.25 * (n - 1) * (n - 3) * inv_sq(r);
}

HardyWeight exterior_weight(double R, double sigma, int n)
{
    if (!(R > 0) || !std::isfinite(R))
        throw InputError("ball radius must be positive and finite");
    if (n < 2)
        throw InputError("exterior weight needs n >= 2");
    half_inverse(sigma);
    HardyWeight w;
    w.interior = [=](Point const& x) { return exterior_weight_radial(R, sigma, n, x.norm()); };
    w.boundary = [](BoundaryPoint const&) { return 0.0; };
    w.provenance = "Robin Hardy inequality outside a ball";
    return w;
}

} // namespace hardy::weights
