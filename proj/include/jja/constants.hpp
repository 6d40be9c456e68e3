#pragma once

#include <numbers>

namespace jja::constants {

/// The ratio of circumference to diameter.
inline constexpr double pi = std::numbers::pi_v<double>;

/// Φ₀ — magnetic flux quantum h/2e [Wb].
inline constexpr double flux_quantum = 2.067833848e-15;

/// ħ — reduced Planck constant [J·s].
inline constexpr double hbar = 1.054571817e-34;

} // namespace jja::constants
