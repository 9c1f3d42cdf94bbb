#pragma once

#include "hardy/geometry.hpp"
#include "hardy/robin_coefficient.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace hardy::weights {

/*!
 * 1/(2σ) on [0, +inf], with 0 -> +inf and +inf -> 0.
 *
 * Every weight goes through this so that (d + 1/(2σ))^-2 is 0 at σ = 0 and
 * d^-2 at σ = +inf without special cases.
 */
double half_inverse(double sigma);

/// Right-hand side of a Hardy inequality.
struct HardyWeight
{
    //! Interior weight, 1/length^2
    std::function<double(Point const&)> interior;
    //! Boundary weight subtracted from σ, 1/length
    std::function<double(geometry::BoundaryPoint const&)> boundary;
    std::string provenance;
};

//! Interval (0, b) with Robin σ at 0 and a free end at b
HardyWeight lemma1_weight(double b, double sigma);

//! Interval (0, b) with Robin σ1 at 0 and σ2 at b; no boundary term
HardyWeight lemma2_weight(double b, double sigma1, double sigma2);

/*!
 * ¼(δ + 1/(2σ(p)))^-2 + ¼(R_in + 1/(2σ(p)))^-2 inside, ½(R_in + 1/(2σ))^-1 on
 * the boundary, for bounded convex domains.
 *
 * Where the projection p(x) is not unique the smallest σ over the nearest
 * points is used.
 */
HardyWeight convex_weight(geometry::Domain const& domain, RobinCoefficient const& sigma);

//! ¼δ^-2 + ¼R_in^-2 (the σ = +inf case of convex_weight)
HardyWeight dirichlet_weight(geometry::Domain const& domain);

/*!
 * Average over unit directions e of (d_e(x) + 1/(2σ_e(x)))^-2.
 *
 * σ_e is the largest σ over the nearest exits along ±e. Directions without an
 * exit are left out. Only bounded domains in dimension <= 3.
 */
double mu_sigma(geometry::Domain const& domain,
                RobinCoefficient const& sigma,
                Point const& x,
                int level);

struct MuResult
{
    double value;
    int level;
    //! |μ(level) - μ(level / 2)| / max(1, |μ(level)|)
    double change;
};

/*!
 * μ_σ by level doubling until successive values differ by less than tol.
 *
 * Doubling starts no coarser than an angular spacing of about δ(x)/scale, so
 * exit windows of that width near the boundary are sampled before the
 * comparison (levels stay below max_level).
 */
MuResult mu_sigma_converged(geometry::Domain const& domain,
                            RobinCoefficient const& sigma,
                            Point const& x,
                            double tol = 1e-8,
                            int start_level = 4,
                            int max_level = 1 << 16);

//! ¼μ_σ inside at a fixed sphere level, no boundary term
HardyWeight mu_weight(geometry::Domain const& domain, RobinCoefficient const& sigma, int level);

struct GeneralBound
{
    //! Smallest sampled |B_r(a) \ Ω| / r^n
    double alpha;
    //! 2^n V_n
    double c_n;
    //! alpha / (16 c_n)
    double K;
    double sigma;
    std::int64_t samples;
    HardyWeight weight;
};

/*!
 * Constant K and weight K(δ + 1/(4σ))^-2 for a constant σ > 0.
 *
 * alpha is estimated by Monte Carlo over boundary points a and radii r, with
 * the sample budget split evenly between the (a, r) pairs. The generator is
 * seeded, so the estimate is reproducible.
 */
GeneralBound cor_general_bound(geometry::Domain const& domain,
                               double sigma,
                               std::int64_t samples,
                               std::uint64_t seed = 20240607);

/// μ < 0 with √(-μ) tanh(f √(-μ)) = -σ, for σ < 0 and f > 0.
double robin_neumann_mu(double f, double sigma);

/// Interior value and boundary bonus of the sign-changing weight on one fiber.
struct FiberWeight
{
    double interior;
    double bonus;
};
FiberWeight fiber_weight(double f, double sigma);

/*!
 * Weight for a subgraph region with a sign-changing σ on the base.
 *
 * ½(f + 1/(2σ))^-2 over the positive part of σ, μ from robin_neumann_mu over
 * the negative part, zero elsewhere; boundary bonus ½(f + 1/(2σ))^-1 on the
 * positive part of the base.
 */
HardyWeight sign_changing_weight(geometry::Subgraph const& domain, RobinCoefficient const& sigma);

/*!
 * ¼(|x| - R + 1/(2σ))^-2 + (n-1)(n-3)/4 |x|^-2 on the complement of B_R.
 *
 * The second term is negative in dimension 2.
 */
HardyWeight exterior_weight(double R, double sigma, int n);

//! Radial profile of exterior_weight
double exterior_weight_radial(double R, double sigma, int n, double r);

} // namespace hardy::weights
