#include "hardy/numerics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hardy::numerics {

namespace {
// P_n(x) and P_{n-1}(x) by the three-term recurrence
std::pair<double, double> legendre(int n, double x)
{
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k)
    {
        double const p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, p0};
}
} // namespace

GaussRule gauss_legendre(int count)
{
    if (count < 1)
        throw InputError("Gauss-Legendre rule needs at least one node");
    GaussRule rule;
    rule.nodes.resize(count);
    rule.weights.resize(count);
    int const half = (count + 1) / 2;
    for (int i = 0; i < half; ++i)
    {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
        double dp = 1;
        for (int it = 0; it < 100; ++it)
        {
            auto const [pn, pm] = legendre(count, x);
            dp = count * (x * pn - pm) / (x * x - 1);
            double const dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        auto const [pn, pm] = legendre(count, x);
        dp = count * (x * pn - pm) / (x * x - 1);
        double const w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[count - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[count - 1 - i] = w;
    }
    if (count % 2 == 1)
        rule.nodes[half - 1] = 0;
    return rule;
}

SphereRule sphere_rule(int n, int level)
{
    if (level < 1)
        throw InputError("sphere rule level must be positive");
    SphereRule rule;
    rule.dimension = n;
    if (n == 1)
    {
        rule.nodes = {Direction(Vector::Constant(1, 1.0)), Direction(Vector::Constant(1, -1.0))};
        rule.weights = {0.5, 0.5};
    }
    else if (n == 2)
    {
        int const m = 8 * level;
        for (int k = 0; k < m; ++k)
        {
            double const th = 2 * std::numbers::pi * (k + 0.5) / m;
            rule.nodes.emplace_back(Vector{{std::cos(th), std::sin(th)}});
            rule.weights.push_back(1.0 / m);
        }
    }
    else if (n == 3)
    {
        auto const gl = gauss_legendre(4 * level);
        int const nphi = 8 * level;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i)
        {
            double const z = gl.nodes[i];
            double const rho = std::sqrt(std::max(0.0, 1 - z * z));
            for (int k = 0; k < nphi; ++k)
            {
                double const ph = 2 * std::numbers::pi * (k + 0.5) / nphi;
                rule.nodes.emplace_back(Vector{{rho * std::cos(ph), rho * std::sin(ph), z}});
                rule.weights.push_back(0.5 * gl.weights[i] / nphi);
            }
        }
    }
    else if (n < 1)
    {
        throw InputError("sphere rule dimension must be positive");
    }
    else
    {
        throw UnsupportedError("sphere rules are provided for n <= 3 only");
    }
    return rule;
}

double monotone_root(std::function<double(double)> const& g, double target, double tol, double start)
{
    if (!(tol > 0) || !(start > 0))
        throw InputError("monotone_root needs positive tolerance and start");
    if (!std::isfinite(target))
        throw InputError("monotone_root target must be finite");
    double const g0 = g(0.0);
    if (target < g0)
        throw NoRootError("target lies below g(0); no nonnegative root");
    if (target == g0)
        return 0.0;

    double lo = 0, hi = start;
    int doublings = 0;
    while (g(hi) < target)
    {
        lo = hi;
        hi *= 2;
        if (++doublings > 1100 || !std::isfinite(hi))
            throw NoRootError("no bracket found for monotone_root");
    }
    double const res_tol = tol * std::max(1.0, std::abs(target));
    for (int it = 0; it < 4000; ++it)
    {
        double const mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        double const gm = g(mid);
        if (gm < target)
            lo = mid;
        else
            hi = mid;
        if (std::abs(gm - target) <= res_tol && hi - lo <= tol * std::max(1.0, mid))
            break;
    }
    double const glo = g(lo), ghi = g(hi);
    return (target - glo <= ghi - target) ? lo : hi;
}

QuadratureResult quad_1d(std::function<double(double)> const& f, double a, double b, int panels)
{
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw InputError("quad_1d needs a finite interval with a < b");
    if (panels < 1)
        throw InputError("quad_1d needs at least one panel");
    static GaussRule const rule = gauss_legendre(5);
    auto composite = [&](int p) {
        double const h = (b - a) / p;
        double sum = 0;
        for (int i = 0; i < p; ++i)
        {
            double const mid = a + (i + 0.5) * h;
            double part = 0;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            {
                double const x = mid + 0.5 * h * rule.nodes[k];
                double const v = f(x);
                if (!std::isfinite(v))
                {
                    std::ostringstream os;
                    os << "integrand is not finite at x = " << x;
                    throw IntegrandError(os.str(), x);
                }
                part += rule.weights[k] * v;
            }
            sum += 0.5 * h * part;
        }
        return sum;
    };
    double const coarse = composite(panels);
    double const fine = composite(2 * panels);
    return {fine, std::abs(fine - coarse)};
}

} // namespace hardy::numerics
