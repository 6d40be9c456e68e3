#pragma once

// Lanczos iteration with full reorthogonalization, used two ways: lowest
// eigenpairs of a sparse Hermitian matrix, and short-step Krylov propagation
// exp(-i dt H) ψ. Start vectors are drawn from a fixed internal seed so
// repeated runs are bit-reproducible.

#include "jja/hilbert.hpp"

namespace jja {

struct LanczosOptions {
    int num_eigenpairs = 1;
    double tolerance = 1e-8;    ///< residual ‖Hx − Ex‖ per pair
    int max_iterations = 1200;
    std::uint64_t seed = 0x6a6a5eedULL;
};

struct LanczosResult {
    std::vector<double> eigenvalues;
    std::vector<Eigen::VectorXcd> eigenvectors;
    std::vector<double> residuals;
    int iterations = 0;
    bool converged = false;
};

/// Lowest-k eigenpairs of a Hermitian sparse matrix. Does not itself verify
/// hermiticity; callers pass matrices built as Hermitian.
LanczosResult lowest_eigenpairs(const SparseMatrixC& h, const LanczosOptions& options);

/// ψ ← exp(-i dt H) ψ by the Lanczos approximation, subdividing the step
/// until the local error estimate is below tol. Preserves the norm to
/// machine accuracy.
void krylov_propagate(const SparseMatrixC& h, Eigen::VectorXcd& psi, double dt,
                      double tol = 1e-12, int krylov_dim = 40);

} // namespace jja
