#pragma once

#include "hardy/geometry.hpp"
#include "hardy/numerics.hpp"
#include "hardy/robin_coefficient.hpp"
#include "hardy/weights.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hardy::verify {

using numerics::SparseMatrix;
using weights::HardyWeight;
using weights::RobinCoefficient;

/// Problem with assembling a discrete form (non-finite weight, empty mesh).
class AssemblyError : public Error
{
  public:
    AssemblyError(std::string const& what, Point location)
        : Error(what), location_(std::move(location))
    {
    }
    Point const& location() const { return location_; }

  private:
    Point location_;
};

//---------------------------------------------------------------------------//
// Meshes
//---------------------------------------------------------------------------//

//! Uniform P1 mesh of (0, b)
struct IntervalMesh
{
    double b;
    int cells;
};

/*!
 * Uniform P1 mesh of (R, outer) for radial functions in R^n.
 *
 * Integrals carry the factor r^(n-1); the outer end is Dirichlet.
 */
struct RadialMesh
{
    double R;
    double outer;
    int nodes;
    int dimension;
};

/// Polygon cell of a cut-cell grid: a grid square clipped to the domain.
struct CutCell
{
    struct Segment
    {
        Eigen::Vector2d a;
        Eigen::Vector2d b;
        int facet;
    };

    int i = 0;
    int j = 0;
    //! Counter-clockwise vertices of the clipped region
    std::vector<Eigen::Vector2d> polygon;
    //! Pieces of the domain boundary inside the cell
    std::vector<Segment> boundary;
    double area = 0;
};

/*!
 * Tensor grid of bilinear elements with cells clipped to a polygonal domain.
 *
 * Disks are replaced by the inscribed polygon whose vertices are the
 * crossings of the circle with the grid lines, so the clipped cells tile a
 * convex polygon inside the disk.
 */
struct GridMesh
{
    Eigen::Vector2d origin;
    double hx = 0;
    double hy = 0;
    int nx = 0;
    int ny = 0;
    std::vector<CutCell> cells;

    int node_count() const { return (nx + 1) * (ny + 1); }
    int node_id(int i, int j) const { return j * (nx + 1) + i; }
    Eigen::Vector2d node(int id) const;
    double h() const { return std::max(hx, hy); }
    std::array<int, 4> cell_nodes(CutCell const& c) const;

    // quality metrics
    int cut_cells = 0;
    double min_area_fraction = 1;
    double boundary_length = 0;
};

GridMesh build_grid(geometry::Domain const& domain, double h);

/*!
 * Grid for the truncation Ω ∩ B_rho of a polyhedral convex set Ω.
 *
 * Facet tags 0..m-1 follow the halfspaces; the spherical cap gets tag m.
 */
GridMesh build_truncated_grid(std::vector<geometry::Halfspace> const& halfspaces, double rho, double h);

//---------------------------------------------------------------------------//
// Assembly
//---------------------------------------------------------------------------//

enum class WeightSampling
{
    //! Weight evaluated at every interior quadrature point
    gauss,
    //! Weight frozen at the element centroid
    centroid
};

/*!
 * Matrices of the Robin form and the Hardy-weight forms on retained nodes.
 *
 * Nodes on a Dirichlet (σ = +inf) part are eliminated.
 */
struct DiscreteForm
{
    SparseMatrix stiffness;
    //! ∫ σ u v over finite-σ boundary
    SparseMatrix boundary_sigma;
    //! ∫ w_b u v over finite-σ boundary
    SparseMatrix boundary_bonus;
    SparseMatrix mass;
    SparseMatrix weighted_mass;
    //! Node id -> dof index, -1 if the node is not a dof
    std::vector<int> dof_of_node;
    std::vector<int> eliminated;
    double h = 0;

    int dofs() const { return static_cast<int>(mass.rows()); }
    //! K + M_σ - M_b - M_W
    SparseMatrix remainder() const;
    //! K + M_σ
    SparseMatrix robin_form() const;
};

//! Robin values at the two ends of a one-dimensional problem; may be negative or +inf
struct EndConditions
{
    double left;
    double right;
};

DiscreteForm assemble(IntervalMesh const& mesh,
                      EndConditions ends,
                      HardyWeight const* weight,
                      WeightSampling sampling = WeightSampling::gauss);

DiscreteForm assemble(IntervalMesh const& mesh,
                      RobinCoefficient const& sigma,
                      HardyWeight const* weight,
                      WeightSampling sampling = WeightSampling::gauss);

DiscreteForm assemble(RadialMesh const& mesh,
                      double sigma,
                      HardyWeight const* weight,
                      WeightSampling sampling = WeightSampling::gauss);

/*!
 * Bilinear cut-cell assembly. The boundary coefficient of a segment is σ at
 * its midpoint with the segment's facet tag.
 */
DiscreteForm assemble(GridMesh const& mesh,
                      RobinCoefficient const& sigma,
                      HardyWeight const* weight,
                      WeightSampling sampling = WeightSampling::gauss);

//---------------------------------------------------------------------------//
// Reports
//---------------------------------------------------------------------------//

struct LevelResult
{
    double h = 0;
    int dofs = 0;
    double tolerance = 0;
    bool solved = false;
    double lambda_min = 0;
    double lower = 0;
    double upper = 0;
    double residual = 0;
    double relative_residual = 0;
    int iterations = 0;
    //! Rayleigh quotients of seeded random vectors
    std::vector<double> random_quotients;
    bool variational_ok = true;
    std::string diagnostic;
};

struct VerificationReport
{
    std::string experiment;
    std::string provenance;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<LevelResult> levels;
    //! Named scalar results (Rayleigh quotients, constants, ...)
    std::vector<std::pair<std::string, double>> quantities;
    //! Plot-ready trace
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> notes;
    bool pass = false;
    bool solver_failure = false;
    bool applicable = true;

    double quantity(std::string const& name) const;
};

/// Common knobs of the certification drivers.
struct CertifyOptions
{
    //! Fixed tolerance; the default schedule is used when empty
    std::optional<double> tolerance;
    WeightSampling sampling = WeightSampling::gauss;
    double eigen_tol = 1e-10;
    int random_vectors = 20;
    std::uint64_t seed = 12345;
};

//! Default tolerance schedule: 5h on grids, 1e-3 on intervals
double default_tolerance(geometry::Domain const& domain, double h);

/*!
 * Certify Q_σ[u] - ∫W u² - ∫ w_b u² >= 0 on a refinement ladder.
 *
 * Intervals use P1 elements, two-dimensional polytopes and disks the
 * cut-cell grid. The report passes when every level is solved, every λ_min
 * is at least -tol(h), the negative parts |min(λ_min, 0)| do not grow under
 * refinement and every sampled Rayleigh quotient is at least λ_min.
 */
VerificationReport certify(geometry::Domain const& domain,
                           RobinCoefficient const& sigma,
                           HardyWeight const& weight,
                           std::vector<double> const& resolutions,
                           CertifyOptions const& options = {});

//! One-dimensional certification with possibly negative end coefficients
VerificationReport certify_interval(double b,
                                    EndConditions ends,
                                    HardyWeight const& weight,
                                    std::vector<double> const& resolutions,
                                    CertifyOptions const& options = {});

/*!
 * c(R) = Q_σ[u_R] / ∫(δ + 1/(2σ))^-2 u_R² on the ball B_R in R^n for
 * u_R = (R + 1/(2σ) - |x|)^(1/2).
 *
 * Reduces to c(R) = 1/4 + R^(n-1) / (2 I(R)) with I(R) = ∫_0^R r^(n-1) /
 * (R + 1/(2σ) - r) dr. Passes when every c(R) > 1/4, c decreases strictly
 * and c(R) - 1/4 <= gap_constant / log(1 + 2σR).
 */
VerificationReport sharpness_scan(int n, double sigma, std::vector<double> const& radii, double gap_constant = 2.0);

//! I(R) above, by composite Gauss–Legendre after u = log(R + a - r)
double sharpness_integral(int n, double R, double a);

/*!
 * One-dimensional Robin problem on (0, b) with σ0 < 0 at 0 and σb at b.
 *
 * Reports the Rayleigh quotient of e^{-t} and the discrete λ_min; passes when
 * both are negative although σ0 + σb > 0.
 */
VerificationReport negative_eigenvalue_demo(double b, double sigma0, double sigma_b, double h = 1e-3);

/*!
 * Radial certification outside the ball of radius R in R^n with Dirichlet
 * at outer; resolutions are node counts. Default tolerance 1e-6.
 */
VerificationReport exterior_certify(double R,
                                    double sigma,
                                    int n,
                                    double outer,
                                    std::vector<int> const& node_counts,
                                    CertifyOptions const& options = {});

/*!
 * Fiberwise certification of the sign-changing weight on a subgraph region.
 *
 * Each fiber (0, f(x')) carries Robin σ(x') at t = 0 and a free end at f(x').
 * λ_min per level is the minimum over fibers. Default tolerance 1e-6.
 */
VerificationReport subgraph_certify(geometry::Subgraph const& domain,
                                    RobinCoefficient const& sigma,
                                    std::vector<double> const& resolutions,
                                    int fibers_per_axis = 16,
                                    CertifyOptions const& options = {});

/*!
 * Lowest eigenvalue of -u'' on (0, f) with Robin σ < 0 at 0 and Neumann at f
 * against robin_neumann_mu; reports the difference and C = |difference| / h².
 */
VerificationReport robin_ev_check(double f, double sigma, double h = 1e-3);

/*!
 * Certification on Ω ∩ B_rho for an unbounded polyhedral convex Ω with the
 * weights of Ω itself and Dirichlet conditions on the spherical cap.
 * domain_inradius is the inradius of Ω (infinite for cones and half-planes).
 */
VerificationReport truncated_convex_certify(std::vector<geometry::Halfspace> const& halfspaces,
                                            std::vector<double> const& facet_sigma,
                                            double rho,
                                            std::vector<double> const& resolutions,
                                            double domain_inradius = weights::infinity,
                                            CertifyOptions const& options = {});

/*!
 * λ_min of the convex-weight remainder for σ = k on the whole boundary
 * against the eliminated σ = +inf problem at one grid size.
 */
VerificationReport dirichlet_limit(geometry::Domain const& domain,
                                   std::vector<double> const& sigmas,
                                   double h,
                                   double tolerance = 1e-2,
                                   CertifyOptions const& options = {});

/*!
 * Pointwise checks of μ_σ at seeded random points: level-doubling
 * convergence, domination by (δ + 1/(2 sup σ))^-2 and, for constant σ > 0,
 * K(δ + 1/(4σ))^-2 <= ¼μ_σ with the Monte Carlo constant K.
 */
VerificationReport mu_pointwise_check(geometry::Domain const& domain,
                                      RobinCoefficient const& sigma,
                                      int points,
                                      std::int64_t mc_samples = 1000000,
                                      std::uint64_t seed = 2024,
                                      double convergence_tol = 1e-8);

//---------------------------------------------------------------------------//
// Parallel helpers
//---------------------------------------------------------------------------//

//! Worker cap from HARDY_ROBIN_THREADS, else the hardware concurrency
int thread_cap();

//! Runs f(0..count-1) on up to thread_cap() threads
void parallel_for(int count, std::function<void(int)> const& f);

} // namespace hardy::verify
