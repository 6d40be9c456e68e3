#pragma once

// Normal-mode analysis of a biased Josephson junction network: nonlinear
// equilibrium, quadratic expansion into stiffness/mass matrices, generalized
// eigensolve, closed-form clean spectra, and center-of-mass-mode quality
// under scaling and disorder.
//
// Model units: phases are dimensionless, the stiffness matrix is measured in
// units of E_J and the (diagonal) mass matrix in units of C(Φ₀/2π)², so raw
// mode frequencies come out in units of ω_p0 = sqrt(2π I_c / Φ₀ C). Spectra
// exposed to callers are rescaled to units of the biased plasma frequency
// ω_p = ω_p0 (1−i_b²)^{1/4}.

#include "jja/core_model.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace jja {

enum class Topology { Chain, Complete };

/// Junction network: N islands each grounded through a biased vertical
/// junction and coupled by horizontal junctions of Josephson energy K² E_J.
/// Chain couples nearest neighbours (N−1 junctions), Complete couples every
/// pair (N(N−1)/2 junctions). Multiplier lists model residual fabrication
/// disorder as factors on the junction Josephson energies; empty means clean.
struct ArraySpec {
    Topology topology = Topology::Chain;
    int n_sites = 1;
    JunctionParams junction;
    std::vector<double> vertical_ej_multipliers;
    std::vector<double> horizontal_ej_multipliers;

    int edge_count() const;
    bool is_clean() const;
    void validate() const;

    /// Edge list in deterministic order: chain by left site, complete
    /// lexicographic (i<j).
    std::vector<std::pair<int, int>> edges() const;
};

enum class FrequencyUnit { OmegaP, RadPerSec };

/// Sorted normal modes. eigenvectors.col(s) is mode s, orthonormal under the
/// mass inner product (with unit mass in model units this is the Euclidean
/// one, matching the b_i^s normalization of the quantized-phase expansion).
struct ModeSpectrum {
    std::vector<double> frequencies; ///< ascending
    Eigen::MatrixXd eigenvectors;    ///< N x N, column s = mode s
    Eigen::VectorXd mass_diagonal;
    FrequencyUnit unit = FrequencyUnit::OmegaP;
};

struct ComQualityReport {
    double gap = 0.0;          ///< ν₁ − ν₀ in units of ω_p
    double com_overlap = 0.0;  ///< |<b⁰, uniform>|² in the mass inner product
    std::int64_t n_max_for_margin = 0; ///< largest N with Δν₀₁ >= margin·g
};

/// Phases θ_i solving the node current-conservation conditions, by damped
/// Newton iteration from the uniform guess arcsin(i_b). Residual current
/// imbalance < 1e−12 at every node; throws SolverError after 200 iterations.
std::vector<double> solve_equilibrium(const ArraySpec& spec);

/// Residual i_b − v_i sinθ_i − K² Σ_e h_e sin(θ_i−θ_j) at each node,
/// in units of I_c. Used by solve_equilibrium and as a direct check.
std::vector<double> equilibrium_residual(const ArraySpec& spec,
                                         const std::vector<double>& phases);

struct SystemMatrices {
    Eigen::MatrixXd stiffness;  ///< symmetric, units of E_J
    Eigen::VectorXd mass;       ///< diagonal, units of C(Φ₀/2π)² (all ones)
};

/// Second-order expansion of the network potential about the equilibrium,
/// assembled per edge plus per-site grounding terms.
SystemMatrices build_system_matrices(const ArraySpec& spec,
                                     const std::vector<double>& equilibrium);

/// Generalized symmetric eigenproblem ν² M b = V b, reduced to standard form
/// through the diagonal mass square root. Frequencies in sqrt(stiffness
/// unit / mass unit); eigenvectors mass-orthonormal, sign-fixed so the
/// largest-magnitude entry is positive. Throws ContractViolation for a
/// non-symmetric stiffness and SolverError when a negative eigenvalue
/// signals an unstable mode.
ModeSpectrum normal_modes(const Eigen::MatrixXd& stiffness, const Eigen::VectorXd& mass);

/// Full pipeline equilibrium → matrices → modes, rescaled to ω_p units.
ModeSpectrum array_mode_spectrum(const ArraySpec& spec);

/// Rescale an ω_p-unit spectrum to rad/s.
ModeSpectrum to_si(const ModeSpectrum& spectrum, const JunctionParams& junction);

/// Closed-form clean spectrum in ω_p units: chain
/// ν_s = ω_p sqrt(1 + (4K²/cosθ⁰) sin²(sπ/2N)); complete network
/// {ω_p} ∪ {ω_p sqrt(1 + NK²/cosθ⁰)} with multiplicity N−1.
/// Throws UnsupportedError for disordered specs.
std::vector<double> analytic_spectrum(const ArraySpec& spec);

/// Gap, COM-mode overlap with the uniform vector, and the largest N keeping
/// the asymptotic gap Δν₀₁ = (π²K²/2N²cosθ⁰) ω_p at least margin·g.
/// g is given in units of ω_p.
ComQualityReport com_quality(const ArraySpec& spec, double g_over_omega_p, double margin);

/// Zero-point phase amplitudes: entry (i,s) = (2π/Φ₀) sqrt(ħ/2Cν_s) b_i^s,
/// the coefficient of (a_s + a_s†) in the phase operator at site i. The
/// spectrum must be in ω_p units and stable (ν_s > 0 for all s).
Eigen::MatrixXd zero_point_amplitudes(const ModeSpectrum& spectrum,
                                      const JunctionParams& junction);

/// Apply uniform random disorder multipliers of amplitude ±pct% (seeded) to a
/// clean spec; used by the CLI and disorder studies.
ArraySpec with_random_disorder(const ArraySpec& spec, double vertical_pct,
                               double horizontal_pct, std::uint64_t seed);

} // namespace jja
