#include "jja/core_model.hpp"

#include "jja/constants.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace jja {

namespace {

[[noreturn]] void fail_domain(const std::string& msg) { throw std::domain_error(msg); }

} // namespace

void JunctionParams::validate() const {
    if (!(critical_current > 0.0)) fail_domain("JunctionParams: critical_current must be > 0");
    if (!(capacitance > 0.0)) fail_domain("JunctionParams: capacitance must be > 0");
    if (!(bias_ratio >= 0.0 && bias_ratio < 1.0))
        fail_domain("JunctionParams: bias_ratio must satisfy 0 <= i_b < 1");
    if (!(k_factor >= 1.0)) fail_domain("JunctionParams: k_factor must be >= 1");
}

void QedCouplingParams::validate() const {
    if (!(mutual_inductance > 0.0)) fail_domain("QedCouplingParams: mutual_inductance must be > 0");
    if (!(qubit_critical_current > 0.0))
        fail_domain("QedCouplingParams: qubit_critical_current must be > 0");
    if (array_size < 1) fail_domain("QedCouplingParams: array_size must be >= 1");
}

void ShuntedSquidParams::validate() const {
    if (!(inductance > 0.0)) fail_domain("ShuntedSquidParams: inductance must be > 0");
    if (!(critical_current > 0.0)) fail_domain("ShuntedSquidParams: critical_current must be > 0");
}

double equilibrium_phase(double bias_ratio) {
    if (!(bias_ratio >= 0.0 && bias_ratio < 1.0)) {
        std::ostringstream msg;
        msg << "equilibrium_phase: bias ratio " << bias_ratio
            << " outside [0,1); junction has no stable equilibrium";
        fail_domain(msg.str());
    }
    return std::asin(bias_ratio);
}

double josephson_energy(const JunctionParams& p) {
    p.validate();
    return p.critical_current * constants::flux_quantum / (2.0 * constants::pi);
}

double plasma_frequency(const JunctionParams& p) {
    p.validate();
    const double omega0 = std::sqrt(2.0 * constants::pi * p.critical_current /
                                    (constants::flux_quantum * p.capacitance));
    return omega0 * std::pow(1.0 - p.bias_ratio * p.bias_ratio, 0.25);
}

double qed_coupling_g(const JunctionParams& j, const QedCouplingParams& q) {
    j.validate();
    q.validate();
    const double cos_theta0 = std::cos(equilibrium_phase(j.bias_ratio));
    const double omega_p = plasma_frequency(j);
    const double g_joule = 0.5 * q.mutual_inductance * j.critical_current * cos_theta0 *
                           q.qubit_critical_current *
                           (2.0 * constants::pi / constants::flux_quantum) *
                           std::sqrt(constants::hbar /
                                     (2.0 * j.capacitance * omega_p * q.array_size));
    return g_joule / constants::hbar;
}

EffectiveInductance effective_inductance(const ShuntedSquidParams& s) {
    s.validate();
    const double screening = 2.0 * constants::pi * s.inductance * s.critical_current /
                             constants::flux_quantum;
    if (!(screening < 0.1)) {
        std::ostringstream msg;
        msg << "effective_inductance: 2*pi*L*I_c/Phi_0 = " << screening
            << " >= 0.1; the quartic expansion of the SQUID potential is invalid";
        fail_domain(msg.str());
    }
    const double two_pi_over_phi0 = 2.0 * constants::pi / constants::flux_quantum;
    return EffectiveInductance{
        s.inductance * (1.0 - screening),
        s.critical_current / 24.0 * two_pi_over_phi0 * two_pi_over_phi0 * two_pi_over_phi0,
    };
}

AnharmonicOscillatorParams anharmonic_oscillator_params(const ShuntedSquidParams& s,
                                                        double junction_capacitance) {
    if (!(junction_capacitance > 0.0))
        fail_domain("anharmonic_oscillator_params: capacitance must be > 0");
    const EffectiveInductance eff = effective_inductance(s);
    const double omega = 1.0 / std::sqrt(eff.inductance * junction_capacitance);
    // Flux zero-point amplitude of the L'C oscillator: Φ_zp² = (ħ/2) sqrt(L'/C).
    const double phi_zp_sq =
        0.5 * constants::hbar * std::sqrt(eff.inductance / junction_capacitance);
    const double lambda_scaled = eff.quartic_coeff * phi_zp_sq * phi_zp_sq / constants::hbar;
    return AnharmonicOscillatorParams{omega, lambda_scaled};
}

} // namespace jja
