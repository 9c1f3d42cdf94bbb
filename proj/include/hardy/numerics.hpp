#pragma once

#include "hardy/errors.hpp"
#include "hardy/geometry.hpp"

#include <Eigen/SparseCore>

#include <filesystem>
#include <functional>
#include <vector>

namespace hardy::numerics {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Quadrature on the unit sphere for the normalized surface measure.
struct SphereRule
{
    int dimension = 0;
    std::vector<Direction> nodes;
    std::vector<double> weights;
};

/*!
 * Sphere rule of the given refinement level.
 *
 * n = 1: the two points ±1. n = 2: 8·level equally spaced midpoint angles.
 * n = 3: 4·level Gauss–Legendre nodes in cos(polar) times 8·level uniform
 * azimuths. Every rule is invariant under e -> -e and its weights sum to 1.
 */
SphereRule sphere_rule(int n, int level);

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int count);

/*!
 * Solve g(s) = target for an increasing g on [0, inf).
 *
 * The bracket is grown by doubling from \c start, then bisected until the
 * residual is below tol·max(1, |target|) and the bracket is below
 * tol·max(1, s). Throws NoRootError when target < g(0).
 */
double monotone_root(std::function<double(double)> const& g,
                     double target,
                     double tol = 1e-12,
                     double start = 1.0);

struct QuadratureResult
{
    double value;
    //! |Q(2p) - Q(p)| for p panels; value is Q(2p)
    double error_estimate;
};

/// Composite 5-point Gauss–Legendre on [a, b].
QuadratureResult
quad_1d(std::function<double(double)> const& f, double a, double b, int panels);

//---------------------------------------------------------------------------//
/*!
 * Symmetric definite pencil (A, B) for A v = λ B v.
 */
class SymmetricPencil
{
  public:
    SymmetricPencil(SparseMatrix a, SparseMatrix b);

    SparseMatrix const& a() const { return a_; }
    SparseMatrix const& b() const { return b_; }
    Eigen::Index size() const { return a_.rows(); }

  private:
    SparseMatrix a_;
    SparseMatrix b_;
};

struct Eigenpair
{
    double value = 0;
    Eigen::VectorXd vector;  // B-normalized
    //! Inertia bracket: no eigenvalue below lower, at least one <= upper
    double lower = 0;
    double upper = 0;
    double residual = 0;           // ||A v - λ B v||
    double relative_residual = 0;  // residual / ((||A||_1 + |λ| ||B||_1) ||v||)
    int iterations = 0;
    int factorizations = 0;
};

class SolverError : public Error
{
  public:
    SolverError(std::string const& what, Eigenpair best)
        : Error(what), best_(std::move(best))
    {
    }
    Eigenpair const& best_iterate() const { return best_; }

  private:
    Eigenpair best_;
};

inline constexpr int eigen_iteration_cap = 10000;

/*!
 * Smallest eigenpair of a symmetric definite pencil.
 *
 * Sylvester inertia of A - sB (sparse LDLᵀ) brackets the smallest eigenvalue
 * by bisection to width tol·max(1, |λ|); inverse iteration at the lower
 * bracket then recovers the eigenvector and the Rayleigh quotient.
 */
Eigenpair smallest_eigenpair(SymmetricPencil const& pencil, double tol = 1e-10);

//! Number of eigenvalues of the pencil strictly below the shift
int count_below(SymmetricPencil const& pencil, double shift);

//! Rayleigh quotient xᵀAx / xᵀBx
double rayleigh_quotient(SymmetricPencil const& pencil, Eigen::VectorXd const& x);

//! Matrix Market coordinate export for debugging
void write_coordinate(std::filesystem::path const& path, SparseMatrix const& m);

} // namespace hardy::numerics
