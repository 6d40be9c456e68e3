#pragma once

// Jaynes-Cummings model of one qubit coupled to the array's center-of-mass
// mode, in model units (energies in units of ω_p, ħ = 1).
//
// The qubit Hamiltonian is −B_z S^z − B_x S^x, so for B_z > 0 the excited
// state |e⟩ is the S^z = −1/2 basis state. The rotating-wave coupling
// −g(a|e⟩⟨g| + a†|g⟩⟨e|) exchanges one excitation with the mode, conserves
// N_exc = a†a + |e⟩⟨e| when B_x = 0, and is resonant at B_z = ν₀.

#include "jja/evolve.hpp"
#include "jja/hilbert.hpp"

#include <array>
#include <vector>

namespace jja {

struct QedSpec {
    double qubit_bz = 1.0;      ///< qubit level splitting (units of ν₀-like energy)
    double qubit_bx = 0.0;
    double resonator_freq = 1.0; ///< ν₀ = ω_p in model units
    double coupling_g = 0.0;
    int fock_cutoff = 8;        ///< n_max

    void validate() const;
};

/// TwoLevel ⊗ Oscillator(n_max); qubit is site 0.
SpacePtr jc_space(int fock_cutoff);

Operator jc_hamiltonian(const QedSpec& spec);

/// |e⟩⟨e| on the qubit.
Operator excited_population(const SpacePtr& space);
/// a†a on the mode.
Operator photon_number(const SpacePtr& space);
/// a†a + |e⟩⟨e|.
Operator excitation_number(const SpacePtr& space);

/// |e, 0⟩ — excited qubit, vacuum mode.
StateVector excited_vacuum(const SpacePtr& space);

/// Trajectory from |e,0⟩ with observables P_e, n_phot, N_exc.
Trajectory rabi_trajectory(const QedSpec& spec, const std::vector<double>& times);

struct DressedRow {
    double detuning;               ///< Δ = B_z − ν₀
    std::array<double, 4> levels;  ///< lowest four eigenvalues, ascending
    double splitting;              ///< levels[2] − levels[1] (single-excitation doublet)
};

/// Lowest levels of the JC Hamiltonian with B_z = ν₀ + Δ over a detuning
/// grid; exhibits the avoided crossing with minimum splitting 2g at Δ = 0.
std::vector<DressedRow> dressed_spectrum(const QedSpec& spec_template,
                                         const std::vector<double>& detunings);

} // namespace jja
