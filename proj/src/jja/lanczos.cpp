#include "jja/lanczos.hpp"

#include "jja/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

namespace jja {

namespace {

Eigen::VectorXcd random_unit_vector(Index dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXcd v(dim);
    for (Index i = 0; i < dim; ++i) v[i] = Complex(dist(rng), dist(rng));
    v.normalize();
    return v;
}

/// One pass of modified Gram-Schmidt against the stored basis, done twice.
void reorthogonalize(const std::vector<Eigen::VectorXcd>& basis, Eigen::VectorXcd& w) {
    for (int pass = 0; pass < 2; ++pass)
        for (const Eigen::VectorXcd& v : basis) w -= v.dot(w) * v;
}

} // namespace

LanczosResult lowest_eigenpairs(const SparseMatrixC& h, const LanczosOptions& options) {
    const Index dim = h.rows();
    if (h.cols() != dim) throw ContractViolation("lowest_eigenpairs: matrix must be square");
    const int k = options.num_eigenpairs;
    if (k < 1 || k > dim) throw ContractViolation("lowest_eigenpairs: bad num_eigenpairs");

    // Tiny problems: dense directly.
    if (dim <= 64) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver{Eigen::MatrixXcd(h)};
        LanczosResult res;
        res.converged = true;
        for (int i = 0; i < k; ++i) {
            res.eigenvalues.push_back(solver.eigenvalues()[i]);
            res.eigenvectors.push_back(solver.eigenvectors().col(i));
            res.residuals.push_back(
                (h * solver.eigenvectors().col(i) -
                 Complex(solver.eigenvalues()[i]) * solver.eigenvectors().col(i))
                    .norm());
        }
        return res;
    }

    const int max_m = static_cast<int>(std::min<Index>(options.max_iterations, dim));
    std::vector<Eigen::VectorXcd> basis;
    basis.reserve(max_m);
    std::vector<double> alpha, beta; // tridiagonal entries

    basis.push_back(random_unit_vector(dim, options.seed));
    Eigen::VectorXcd w;
    LanczosResult res;

    for (int m = 1; m <= max_m; ++m) {
        const Eigen::VectorXcd& v = basis.back();
        w = h * v;
        const double a = std::real(v.dot(w));
        alpha.push_back(a);
        w -= Complex(a) * v;
        if (basis.size() > 1) w -= Complex(beta.back()) * basis[basis.size() - 2];
        reorthogonalize(basis, w);
        const double b = w.norm();

        const bool check_now = (m % 10 == 0) || m == max_m || b < 1e-13 || m == dim;
        if (check_now && m >= k) {
            Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
            for (int i = 0; i < m; ++i) {
                tri(i, i) = alpha[i];
                if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[i];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tsolver(tri);
            // Residual of Ritz pair i is |beta_m * y_i(m-1)|.
            bool all_ok = true;
            for (int i = 0; i < k; ++i) {
                const double r = std::abs(b * tsolver.eigenvectors()(m - 1, i));
                if (r > options.tolerance) all_ok = false;
            }
            if (all_ok || b < 1e-13 || m == dim) {
                res.iterations = m;
                res.converged = true;
                for (int i = 0; i < k; ++i) {
                    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(dim);
                    for (int j = 0; j < m; ++j)
                        x += Complex(tsolver.eigenvectors()(j, i)) * basis[j];
                    x.normalize();
                    const double lambda = tsolver.eigenvalues()[i];
                    const double resid = (h * x - Complex(lambda) * x).norm();
                    if (resid > options.tolerance) res.converged = false;
                    res.eigenvalues.push_back(lambda);
                    res.eigenvectors.push_back(std::move(x));
                    res.residuals.push_back(resid);
                }
                if (res.converged) return res;
                if (b < 1e-13 || m == dim) {
                    std::ostringstream msg;
                    msg << "lowest_eigenpairs: Krylov space exhausted at m=" << m
                        << " with residual above tolerance " << options.tolerance;
                    throw SolverError(msg.str());
                }
                res.eigenvalues.clear();
                res.eigenvectors.clear();
                res.residuals.clear();
            }
        }
        if (b < 1e-13) break; // invariant subspace found
        beta.push_back(b);
        basis.push_back(w / b);
    }

    // TODO: thick restart for sectors that need more than max_iterations basis vectors.
    std::ostringstream msg;
    msg << "lowest_eigenpairs: not converged after " << max_m << " iterations (tolerance "
        << options.tolerance << ")";
    throw SolverError(msg.str());
}

void krylov_propagate(const SparseMatrixC& h, Eigen::VectorXcd& psi, double dt, double tol,
                      int krylov_dim) {
    const Index dim = h.rows();
    if (h.cols() != dim || psi.size() != dim)
        throw ContractViolation("krylov_propagate: dimension mismatch");
    if (dt == 0.0) return;

    const Complex minus_i(0.0, -1.0);
    double remaining = dt;
    double step = dt;
    int halvings_budget = 200;

    while (std::abs(remaining) > 1e-15 * std::abs(dt)) {
        if (std::abs(step) > std::abs(remaining)) step = remaining;
        const int m_max = static_cast<int>(std::min<Index>(krylov_dim, dim));

        // Build the Krylov basis once per step attempt group; reuse for halved steps.
        std::vector<Eigen::VectorXcd> basis;
        basis.reserve(m_max);
        std::vector<double> alpha, beta;
        const double psi_norm = psi.norm();
        basis.push_back(psi / psi_norm);
        bool breakdown = false;
        for (int j = 0; j < m_max; ++j) {
            Eigen::VectorXcd w = h * basis[j];
            const double a = std::real(basis[j].dot(w));
            alpha.push_back(a);
            w -= Complex(a) * basis[j];
            if (j > 0) w -= Complex(beta.back()) * basis[j - 1];
            reorthogonalize(basis, w);
            const double b = w.norm();
            if (b < 1e-14) {
                breakdown = true; // exact invariant subspace: expm is exact
                break;
            }
            if (j + 1 < m_max) {
                beta.push_back(b);
                basis.push_back(w / b);
            } else {
                beta.push_back(b); // kept for the error estimate
            }
        }
        const int m = static_cast<int>(basis.size());

        // Try the step, halving until the local error estimate passes.
        while (true) {
            Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
            for (int i = 0; i < m; ++i) {
                tri(i, i) = alpha[i];
                if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[i];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tsolver(tri);
            Eigen::VectorXcd phase(m);
            for (int i = 0; i < m; ++i)
                phase[i] = std::exp(minus_i * (tsolver.eigenvalues()[i] * step));
            const Eigen::VectorXd e1 = tsolver.eigenvectors().row(0).transpose();
            Eigen::VectorXcd small = tsolver.eigenvectors() *
                                     (phase.array() * e1.array().cast<Complex>()).matrix();

            const double err =
                breakdown || m >= dim ? 0.0 : std::abs(beta.back()) * std::abs(small[m - 1]);
            if (err <= tol) {
                Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim);
                for (int j = 0; j < m; ++j) next += small[j] * basis[j];
                psi = psi_norm * next;
                remaining -= step;
                if (err <= 0.25 * tol) step *= 2.0; // relax after an easy step
                break;
            }
            if (halvings_budget == 0)
                throw SolverError("krylov_propagate: step control exhausted without meeting "
                                  "the error tolerance");
            step *= 0.5;
            --halvings_budget;
        }
    }
}

} // namespace jja
