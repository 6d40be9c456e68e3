#pragma once

// 1D spinless Holstein model on the qubit-array hardware mapping: N two-level
// sites (Jordan-Wigner fermions) each coupled to a local truncated phonon
// mode. Model units ħ = 1; energies are usually quoted in units of the
// phonon frequency ω.
//
//   H = −t Σ (S_i^+ S_{i+1}^− + h.c.) + ω Σ a_i†a_i − g Σ S_i^z (a_i + a_i†)
//       [− λ Σ (a_i+a_i†)⁴ − B_z Σ S_i^z − B_x Σ S_i^x]
//
// which is Eq.-for-Eq. the fermion model with hopping t, local coupling
// −g(n_i − 1/2)(a_i + a_i†) and, through the hardware mapping, t = J/4 and
// ω = ω_p. Periodic boundary couples the spin ring bond (N−1,0); this is the
// ring the hardware builds and differs from the periodic fermion model by a
// parity boundary term.

#include "jja/hilbert.hpp"
#include "jja/operators.hpp"

#include <functional>
#include <string>
#include <vector>

namespace jja {

struct HolsteinSpec {
    int n_sites = 4;
    double hopping = 1.0;       ///< t
    double phonon_freq = 1.0;   ///< ω
    double coupling = 0.0;      ///< g
    Boundary boundary = Boundary::Open;
    int phonon_cutoff = 4;      ///< n_max
    double anharmonic_lambda = 0.0; ///< λ_scaled, see oscillator_hamiltonian
    double chemical_bz = 0.0;   ///< uniform −B_z Σ S^z term
    double leakage_bx = 0.0;    ///< uniform −B_x Σ S^x term (breaks number conservation)
    int filling = -1;           ///< fermion count; −1 means n_sites/2

    void validate() const;
    int resolved_filling() const;
    Index total_dimension() const;

    /// Hardware mapping: inter-qubit exchange J gives t = J/4; the local
    /// junction oscillators run at ω = ω_p.
    static HolsteinSpec from_hardware(int n_sites, double exchange_j, double omega_p,
                                      double coupling_g, int phonon_cutoff);
};

/// N spins followed by N oscillators, so JW strings stay on two-level sites.
SpacePtr holstein_space(const HolsteinSpec& spec);

/// The individual Hamiltonian terms with unit coefficients, for callers that
/// recombine them along a ramp path.
struct HolsteinParts {
    SpacePtr space;
    Operator hopping;      ///< Σ (S_i^+ S_{i+1}^− + h.c.)
    Operator phonon;       ///< Σ a_i†a_i
    Operator coupling;     ///< Σ S_i^z (a_i + a_i†)
    Operator anharmonic;   ///< Σ (a_i + a_i†)⁴
    Operator field_sz;     ///< Σ S_i^z
    Operator field_sx;     ///< Σ S_i^x
    Operator staggered_sz; ///< Σ (−1)^i S_i^z
};

HolsteinParts holstein_parts(const HolsteinSpec& spec);

/// Full Hamiltonian in the spin⊗phonon representation.
Operator holstein_hamiltonian(const HolsteinSpec& spec);

/// Cross-check route: the same model composed directly from Jordan-Wigner
/// fermion operators (hopping −t Σ f†f + h.c., coupling via f†f − 1/2).
/// Requires leakage_bx = 0 and Open boundary.
Operator holstein_hamiltonian_via_jw(const HolsteinSpec& spec);

/// Fermion-number sector at the requested filling.
SectorProjector filling_sector(const HolsteinSpec& spec);

struct GroundStateResult {
    std::vector<double> energies;
    std::vector<StateVector> states; ///< embedded in the full space
    std::vector<double> residuals;
    double top_level_weight = 0.0;   ///< ground-state weight on the phonon cutoff level
    bool cutoff_warning = false;     ///< top_level_weight > 1e−6
};

/// Lowest k eigenpairs of h within the sector (residual < 1e−8 each).
/// Dense solve for small sectors, Lanczos above, dense fallback up to 4096.
/// Throws ContractViolation when h does not conserve the sector quantity.
GroundStateResult ground_state(const Operator& h, const SectorProjector& sector, int k);

/// ⟨n_i⟩ = ⟨S_i^z⟩ + 1/2 per two-level site.
std::vector<double> density_profile(const StateVector& state);

/// Staggered density-density structure factor
/// S_π = (4/N²) Σ_{ij} (−1)^{i−j} ⟨(n_i−1/2)(n_j−1/2)⟩ ∈ [0, 1].
double cdw_structure_factor(const StateVector& state);

struct RampSchedule {
    double total_time = 0.0;
    int steps = 1;
    /// s ∈ [0,1] → (t(s), g(s)); must satisfy t(0) = g(0) = 0.
    std::function<std::pair<double, double>(double)> path;
    /// Optional protocol extension: staggered pinning field h(s) = (1−s)·pin_field
    /// that makes the staggered start the unique initial ground state. Zero
    /// reproduces the bare turn-on protocol.
    double pin_field = 0.0;

    static RampSchedule linear(double total_time, int steps, double t_target, double g_target,
                               double pin_field = 0.0);
    void validate() const;
};

struct RampResult {
    StateVector final_state;
    double fidelity = 0.0;            ///< |⟨GS(final)|ψ(T)⟩|²
    double number_drift = 0.0;        ///< max |⟨N_f⟩ − filling| over the ramp
    double max_top_level_weight = 0.0;
    bool cutoff_warning = false;      ///< top-level weight exceeded 1e−4 at some step
};

/// Piecewise-constant propagation of the staggered product state
/// |1010...⟩ ⊗ vacuum along the schedule path. When B_x = 0 the propagation
/// runs in the fermion-number sector (the Hamiltonian is exactly block
/// diagonal); total_time = 0 degenerates to the quench overlap.
RampResult adiabatic_ramp(const HolsteinSpec& spec, const RampSchedule& schedule);

struct PhasePoint {
    double t_over_omega = 0.0;
    double g_over_omega = 0.0;
    double ground_energy = 0.0;
    double excitation_gap = 0.0;
    double cdw_order = 0.0;
    std::vector<double> density;
    bool solver_ok = true;
    std::string error;
};

/// One PhasePoint per (t/ω, g/ω) grid cell, row-major with t outer. Points
/// are independent and distributed over `workers` threads; per-point solver
/// failures are recorded in-row and the scan continues.
std::vector<PhasePoint> phase_scan(const HolsteinSpec& spec_template,
                                   const std::vector<double>& t_over_omega_grid,
                                   const std::vector<double>& g_over_omega_grid,
                                   int workers = 1);

} // namespace jja
