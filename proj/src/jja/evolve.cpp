#include "jja/evolve.hpp"

#include "jja/errors.hpp"
#include "jja/lanczos.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace jja {

Trajectory evolve(const Operator& h, const StateVector& psi0, const std::vector<double>& times,
                  const std::vector<std::pair<std::string, Operator>>& observables) {
    if (!(*h.space() == *psi0.space()))
        throw ContractViolation("evolve: state and Hamiltonian live on different spaces");
    if (h.hermiticity_defect() > 1e-12)
        throw ContractViolation("evolve: Hamiltonian is not Hermitian");
    if (times.empty()) throw ContractViolation("evolve: empty time grid");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1]))
            throw ContractViolation("evolve: time grid must be strictly ascending");
    for (const auto& [name, op] : observables) {
        (void)name;
        if (!(*op.space() == *h.space()))
            throw ContractViolation("evolve: observable lives on a different space");
    }

    Trajectory traj;
    traj.times = times;
    traj.states.reserve(times.size());
    for (const auto& [name, op] : observables) traj.observables[name] = {};

    const Index dim = h.dimension();
    const Complex minus_i(0.0, -1.0);

    auto sample = [&](const Eigen::VectorXcd& amps) {
        if (std::abs(amps.norm() - 1.0) > 1e-9) {
            std::ostringstream msg;
            msg << "evolve: norm drift " << std::abs(amps.norm() - 1.0) << " exceeds 1e-9";
            throw SolverError(msg.str());
        }
        StateVector state(h.space(), amps);
        for (const auto& [name, op] : observables)
            traj.observables[name].push_back(state.expectation(op));
        traj.states.push_back(std::move(state));
    };

    if (dim <= 4096) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.dense());
        if (solver.info() != Eigen::Success)
            throw SolverError("evolve: eigendecomposition failed");
        const Eigen::VectorXcd c0 = solver.eigenvectors().adjoint() * psi0.amplitudes();
        for (double t : times) {
            const double dt = t - times.front();
            Eigen::VectorXcd phases(dim);
            for (Index i = 0; i < dim; ++i)
                phases[i] = std::exp(minus_i * (solver.eigenvalues()[i] * dt));
            sample(solver.eigenvectors() * (phases.array() * c0.array()).matrix());
        }
    } else {
        Eigen::VectorXcd psi = psi0.amplitudes();
        sample(psi);
        for (std::size_t k = 1; k < times.size(); ++k) {
            krylov_propagate(h.matrix(), psi, times[k] - times[k - 1]);
            sample(psi);
        }
    }
    return traj;
}

} // namespace jja
