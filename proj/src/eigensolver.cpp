#include "hardy/numerics.hpp"

#include <Eigen/SparseCholesky>
#include <unsupported/Eigen/SparseExtra>

#include <cmath>
#include <random>

namespace hardy::numerics {
namespace {

double max_abs(SparseMatrix const& m)
{
    double v = 0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(m, k); it; ++it)
            v = std::max(v, std::abs(it.value()));
    return v;
}

// Sparse LDLᵀ of A - sB on a fixed union pattern; the symbolic analysis is
// done once per pencil.
class ShiftedFactor
{
  public:
    explicit ShiftedFactor(SymmetricPencil const& p) : p_(p)
    {
        SparseMatrix pattern = p.a() + p.b();
        ldlt_.analyzePattern(pattern);
    }

    bool factorize(double shift)
    {
        SparseMatrix m = p_.a() - shift * p_.b();
        ldlt_.factorize(m);
        ++count_;
        return ldlt_.info() == Eigen::Success;
    }

    int negatives() const
    {
        auto const d = ldlt_.vectorD();
        int neg = 0;
        for (Eigen::Index i = 0; i < d.size(); ++i)
            neg += d[i] < 0 ? 1 : 0;
        return neg;
    }

    Eigen::VectorXd solve(Eigen::VectorXd const& rhs) const { return ldlt_.solve(rhs); }
    int factorizations() const { return count_; }

  private:
    SymmetricPencil const& p_;
    Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt_;
    int count_ = 0;
};

// Negative count at (a slight perturbation of) the shift; the shift is moved
// off exact singularities where the factorization breaks down.
int inertia(ShiftedFactor& f, double& shift)
{
    for (int attempt = 0; attempt < 8; ++attempt)
    {
        if (f.factorize(shift))
            return f.negatives();
        shift += 1e-12 * std::max(1.0, std::abs(shift)) * (attempt + 1);
    }
    throw SolverError("LDL factorization failed near shift " + std::to_string(shift), Eigenpair{});
}

} // namespace

SymmetricPencil::SymmetricPencil(SparseMatrix a, SparseMatrix b) : a_(std::move(a)), b_(std::move(b))
{
    if (a_.rows() != a_.cols() || b_.rows() != b_.cols() || a_.rows() != b_.rows())
        throw InputError("pencil matrices must be square and of equal size");
    if (a_.rows() == 0)
        throw InputError("pencil is empty");
    a_.makeCompressed();
    b_.makeCompressed();
    auto check_symmetric = [](SparseMatrix const& m, char const* name) {
        SparseMatrix const t = m.transpose();
        double const diff = max_abs(SparseMatrix(m - t));
        if (diff > 1e-12 * std::max(1e-300, max_abs(m)))
            throw InputError(std::string("pencil matrix ") + name + " is not symmetric");
    };
    check_symmetric(a_, "A");
    check_symmetric(b_, "B");
    for (Eigen::Index i = 0; i < b_.rows(); ++i)
    {
        if (!(b_.coeff(i, i) > 0))
            throw InputError("pencil matrix B must have a positive diagonal");
    }
    Eigen::SimplicialLLT<SparseMatrix> llt(b_);
    if (llt.info() != Eigen::Success)
        throw InputError("pencil matrix B is not positive definite");
}

double rayleigh_quotient(SymmetricPencil const& pencil, Eigen::VectorXd const& x)
{
    return x.dot(pencil.a() * x) / x.dot(pencil.b() * x);
}

int count_below(SymmetricPencil const& pencil, double shift)
{
    ShiftedFactor f(pencil);
    return inertia(f, shift);
}

Eigenpair smallest_eigenpair(SymmetricPencil const& pencil, double tol)
{
    if (!(tol > 0))
        throw InputError("eigen-solver tolerance must be positive");
    auto const n = pencil.size();
    ShiftedFactor factor(pencil);
    Eigenpair out;

    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i)
        x[i] = unif(rng);

    // Upper bracket from a Rayleigh quotient, lower bracket by widening steps.
    double const rho0 = rayleigh_quotient(pencil, x);
    double hi = rho0 + tol * std::max(1.0, std::abs(rho0));
    for (int k = 0; inertia(factor, hi) == 0; ++k)
    {
        if (k > 200)
            throw SolverError("could not find an upper bracket", out);
        hi += std::max(1.0, std::abs(hi));
    }
    double step = std::max(1.0, std::abs(rho0));
    double lo = rho0 - step;
    for (int k = 0; inertia(factor, lo) > 0; ++k)
    {
        if (k > 200)
            throw SolverError("could not find a lower bracket", out);
        hi = std::min(hi, lo);
        step *= 4;
        lo = rho0 - step;
    }

    // Bisection on the Sylvester count
    for (int k = 0; k < eigen_iteration_cap; ++k)
    {
        if (hi - lo <= tol * std::max({1.0, std::abs(lo), std::abs(hi)}))
            break;
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        if (inertia(factor, mid) == 0)
            lo = mid;
        else
            hi = mid;
    }
    out.lower = lo;
    out.upper = hi;

    // Inverse iteration at the lower bracket
    if (!factor.factorize(lo))
    {
        lo -= tol * std::max(1.0, std::abs(lo));
        out.lower = lo;
        if (!factor.factorize(lo))
            throw SolverError("shifted factorization failed at the lower bracket", out);
    }
    auto const norm1 = [](SparseMatrix const& m) {
        double best = 0;
        for (Eigen::Index j = 0; j < m.outerSize(); ++j)
        {
            double col = 0;
            for (SparseMatrix::InnerIterator it(m, j); it; ++it)
                col += std::abs(it.value());
            best = std::max(best, col);
        }
        return best;
    };
    double const a_norm = norm1(pencil.a());
    double const b_norm = norm1(pencil.b());
    double rho = rho0;
    double best_rel = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= eigen_iteration_cap; ++it)
    {
        Eigen::VectorXd y = factor.solve(pencil.b() * x);
        double const bnorm = std::sqrt(y.dot(pencil.b() * y));
        if (!(bnorm > 0) || !std::isfinite(bnorm))
            throw SolverError("inverse iteration broke down", out);
        x = y / bnorm;
        Eigen::VectorXd const ax = pencil.a() * x;
        Eigen::VectorXd const bx = pencil.b() * x;
        double const next = x.dot(ax);
        double const res = (ax - next * bx).norm();
        double const denom = std::max((a_norm + std::abs(next) * b_norm) * x.norm(), 1e-300);
        double const rel = res / denom;
        bool const settled = std::abs(next - rho) <= 1e-14 * std::max(1.0, std::abs(next));
        rho = next;
        out.iterations = it;
        if (rel < best_rel)
        {
            best_rel = rel;
            out.value = rho;
            out.vector = x;
            out.residual = res;
            out.relative_residual = rel;
        }
        if (rel <= std::max(tol, 1e-12) || (settled && it >= 3 && rel <= 1e-6))
        {
            out.factorizations = factor.factorizations();
            return out;
        }
    }
    out.factorizations = factor.factorizations();
    throw SolverError("inverse iteration did not converge within the iteration cap", out);
}

void write_coordinate(std::filesystem::path const& path, SparseMatrix const& m)
{
    if (!Eigen::saveMarket(m, path.string()))
        throw InputError("could not write matrix to " + path.string());
}

} // namespace hardy::numerics
