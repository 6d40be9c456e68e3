#pragma once

// Unitary propagation under a fixed Hermitian operator: exact
// eigendecomposition for dense-sized problems, Krylov stepping above.

#include "jja/hilbert.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace jja {

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    std::map<std::string, std::vector<double>> observables;
};

/// ψ(t_k) = exp(−iH(t_k − t_0)) ψ0 on an ascending time grid (ψ0 is the
/// state at times[0]). Named observables are sampled at every grid point.
/// Throws ContractViolation for a non-Hermitian H and SolverError if the
/// norm drifts beyond 1e−9.
Trajectory evolve(const Operator& h, const StateVector& psi0, const std::vector<double>& times,
                  const std::vector<std::pair<std::string, Operator>>& observables = {});

} // namespace jja
