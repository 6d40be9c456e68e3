#pragma once

// Device-parameter records and the SI-unit formulas of the junction-array
// model. Everything downstream works in dimensionless model units (hbar = 1,
// energies in units of the plasma frequency or a user-chosen phonon
// frequency); this module is the only place SI quantities appear.

namespace jja {

/// A current-biased Josephson junction (the vertical/grounding junctions of
/// the array). K is the horizontal/vertical critical-current ratio factor:
/// coupling junctions carry Josephson energy K² E_J.
struct JunctionParams {
    double critical_current = 0.0; ///< I_c [A]
    double capacitance = 0.0;      ///< C [F]
    double bias_ratio = 0.0;       ///< i_b = I_b/I_c, 0 <= i_b < 1
    double k_factor = 1.0;         ///< K >= 1

    void validate() const;
};

/// Inductive charge-qubit coupling to the array's center-of-mass mode.
struct QedCouplingParams {
    double mutual_inductance = 0.0;    ///< M [H]
    double qubit_critical_current = 0.0; ///< I_c^Q of the qubit dc-SQUID [A]
    int array_size = 1;                ///< N

    void validate() const;
};

/// Inductor-shunted dc-SQUID used as a tunable anharmonic oscillator.
struct ShuntedSquidParams {
    double inductance = 0.0;       ///< L [H]
    double critical_current = 0.0; ///< I_c of the dc-SQUID [A]

    void validate() const;
};

/// Equilibrium junction phase arcsin(i_b) in [0, pi/2).
/// Throws std::domain_error outside 0 <= i_b < 1 (junction switched).
double equilibrium_phase(double bias_ratio);

/// Josephson energy E_J = I_c Φ₀ / 2π [J].
double josephson_energy(const JunctionParams& p);

/// Plasma frequency sqrt(2π I_c / Φ₀ C) (1 − i_b²)^{1/4} [rad/s].
double plasma_frequency(const JunctionParams& p);

/// Charge-qubit/COM-mode coupling rate g/ħ [rad/s], evaluating
/// (M/2)(I_c cosθ⁰) I_c^Q (2π/Φ₀) sqrt(ħ / 2 C ω_p N) and dividing by ħ.
double qed_coupling_g(const JunctionParams& j, const QedCouplingParams& q);

struct EffectiveInductance {
    double inductance;     ///< L' = L (1 − 2π L I_c / Φ₀) [H]
    double quartic_coeff;  ///< λ = (I_c/24)(2π/Φ₀)³ [J/Wb⁴]
};

/// Small-screening expansion of the shunted SQUID. Precondition
/// 2π L I_c / Φ₀ < 0.1; throws std::domain_error when violated.
EffectiveInductance effective_inductance(const ShuntedSquidParams& s);

struct AnharmonicOscillatorParams {
    double omega;         ///< 1/sqrt(L' C_J) [rad/s]
    double lambda_scaled; ///< λ Φ_zp⁴ / ħ [rad/s]; quartic term is −λ_scaled (a+a†)⁴ in ħ=1 units
};

/// Model-unit parameters of the shunted-SQUID phonon mode: frequency and the
/// quartic coefficient with the zero-point flux amplitude absorbed,
/// Φ_zp² = (ħ/2) sqrt(L'/C_J).
AnharmonicOscillatorParams anharmonic_oscillator_params(const ShuntedSquidParams& s,
                                                        double junction_capacitance);

} // namespace jja
