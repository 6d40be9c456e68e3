#include "jja/qed.hpp"

#include "jja/errors.hpp"
#include "jja/operators.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jja {

void QedSpec::validate() const {
    if (fock_cutoff < 1) throw std::invalid_argument("QedSpec: fock_cutoff must be >= 1");
    for (double x : {qubit_bz, qubit_bx, resonator_freq, coupling_g})
        if (!std::isfinite(x)) throw std::invalid_argument("QedSpec: energies must be finite");
}

SpacePtr jc_space(int fock_cutoff) {
    return std::make_shared<HilbertSpace>(
        std::vector<Site>{Site{SiteKind::TwoLevel, 2}, Site{SiteKind::Oscillator, fock_cutoff + 1}});
}

Operator jc_hamiltonian(const QedSpec& spec) {
    spec.validate();
    const SpacePtr space = jc_space(spec.fock_cutoff);
    const Operator sz = site_operator(space, 0, SiteOperatorKind::Sz);
    const Operator sx = site_operator(space, 0, SiteOperatorKind::Sx);
    const Operator num = site_operator(space, 1, SiteOperatorKind::NumOp);
    // |e⟩⟨g| on the qubit is the S^z-lowering operator in this basis.
    const Operator raise_q = site_operator(space, 0, SiteOperatorKind::SMinus);
    const Operator lower_q = site_operator(space, 0, SiteOperatorKind::SPlus);
    const Operator a = site_operator(space, 1, SiteOperatorKind::A);
    const Operator adag = site_operator(space, 1, SiteOperatorKind::ADag);

    SparseMatrixC h = Complex(-spec.qubit_bz) * sz.matrix();
    if (spec.qubit_bx != 0.0) h += Complex(-spec.qubit_bx) * sx.matrix();
    h += Complex(spec.resonator_freq) * num.matrix();
    h += Complex(-spec.coupling_g) * ((a * raise_q).matrix() + (adag * lower_q).matrix());
    return Operator(space, std::move(h), true);
}

Operator excited_population(const SpacePtr& space) {
    // |e⟩⟨e| = 1/2 − S^z on the qubit site.
    const Operator sz = site_operator(space, 0, SiteOperatorKind::Sz);
    const Operator id = identity_op(space);
    return 0.5 * id - sz;
}

Operator photon_number(const SpacePtr& space) {
    return site_operator(space, 1, SiteOperatorKind::NumOp);
}

Operator excitation_number(const SpacePtr& space) {
    return photon_number(space) + excited_population(space);
}

StateVector excited_vacuum(const SpacePtr& space) {
    return StateVector::basis_state(space, {1, 0});
}

Trajectory rabi_trajectory(const QedSpec& spec, const std::vector<double>& times) {
    const Operator h = jc_hamiltonian(spec);
    const SpacePtr& space = h.space();
    Trajectory traj = evolve(h, excited_vacuum(space), times,
                             {{"P_e", excited_population(space)},
                              {"n_phot", photon_number(space)},
                              {"N_exc", excitation_number(space)}});
    // Cutoff adequacy: a single initial excitation must never reach the top
    // Fock level.
    for (const StateVector& state : traj.states) {
        if (top_level_weight(state) > 1e-8)
            throw SolverError("rabi_trajectory: top Fock level occupied beyond 1e-8; "
                              "increase fock_cutoff");
    }
    return traj;
}

std::vector<DressedRow> dressed_spectrum(const QedSpec& spec_template,
                                         const std::vector<double>& detunings) {
    spec_template.validate();
    std::vector<DressedRow> rows;
    rows.reserve(detunings.size());
    for (double delta : detunings) {
        QedSpec spec = spec_template;
        spec.qubit_bz = spec.resonator_freq + delta;
        const Operator h = jc_hamiltonian(spec);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.dense());
        DressedRow row;
        row.detuning = delta;
        for (int i = 0; i < 4; ++i)
            row.levels[i] = i < solver.eigenvalues().size() ? solver.eigenvalues()[i] : 0.0;
        row.splitting = row.levels[2] - row.levels[1];
        rows.push_back(row);
    }
    return rows;
}

} // namespace jja
