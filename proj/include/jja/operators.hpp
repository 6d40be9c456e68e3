#pragma once

// Site operators, Jordan-Wigner fermions, and the spin-chain / free-fermion /
// oscillator Hamiltonians built from them. Spin convention: S = σ/2 with
// [S^x,S^y] = iS^z and basis |↑⟩ = (1,0), so the fermion number operator is
// exactly f_n†f_n = S_n^z + 1/2.

#include "jja/hilbert.hpp"

namespace jja {

enum class SiteOperatorKind { Sx, Sy, Sz, SPlus, SMinus, A, ADag, NumOp, Phi };

enum class Boundary { Open, Periodic };

/// Single-site operator embedded into the full space (identity elsewhere).
/// Spin kinds act on TwoLevel sites, boson kinds on Oscillator sites; a
/// mismatch raises ContractViolation. Phi is phi_scale · (a + a†).
Operator site_operator(const SpacePtr& space, int site, SiteOperatorKind kind,
                       double phi_scale = 1.0);

/// Jordan-Wigner fermion annihilator f_n = S_n^− Π_{m<n}(−2 S_m^z); the
/// string factor is the product form of exp[iπ Σ_{m<n}(S_m^z+1/2)]. All
/// sites in the string range 0..n must be TwoLevel.
Operator jw_fermion(const SpacePtr& space, int n);

/// Max entrywise deviation over all m,n of {f_m,f_n}, {f_m†,f_n†} and
/// {f_m,f_n†} − δ_mn·I from zero, dense check for 1 <= n_sites <= 8.
double verify_fermion_algebra(int n_sites);

/// H = −J_xy Σ (S^x S^x + S^y S^y) + J_z Σ S^z S^z − B_z Σ S^z on n_sites
/// two-level sites; Periodic adds the (N−1,0) bond.
Operator xxz_hamiltonian(int n_sites, double j_xy, double j_z, double b_z, Boundary boundary);

/// H = −(J_xy/2) Σ (f†_n f_{n+1} + h.c.) + J_z Σ (f†f−1/2)(f†f−1/2), built
/// from Jordan-Wigner operators. Open boundary only: the periodic chain maps
/// to fermions with a parity-dependent boundary term, which is deliberately
/// unsupported (UnsupportedError).
Operator free_fermion_hamiltonian(int n_sites, double j_xy, double j_z, Boundary boundary);

struct OscillatorHamiltonian {
    Operator op;
    /// Set when the quartic term is strong enough that the lowest eigenstate
    /// is no longer a perturbed ground state (dominant |0⟩ component lost).
    bool level_reordering = false;
};

/// Single truncated oscillator H = ω(a†a + 1/2) − λ_scaled (a+a†)⁴ with a
/// hard cutoff a†|n_max⟩ = 0.
OscillatorHamiltonian oscillator_hamiltonian(int n_max, double omega, double lambda_scaled = 0.0);

/// Σ S^z over all TwoLevel sites.
Operator total_sz(const SpacePtr& space);

/// Σ (S^z + 1/2) over all TwoLevel sites (total fermion number).
Operator total_fermion_number(const SpacePtr& space);

} // namespace jja
