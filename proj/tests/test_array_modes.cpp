#include "jja/array_modes.hpp"

#include "jja/constants.hpp"
#include "jja/core_model.hpp"
#include "jja/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace jja;

namespace {

ArraySpec chain_spec(int n, double k_factor, double ib) {
    ArraySpec spec;
    spec.topology = Topology::Chain;
    spec.n_sites = n;
    spec.junction = JunctionParams{0.5e-6, 1e-12, ib, k_factor};
    return spec;
}

ArraySpec complete_spec(int n, double k_factor, double ib) {
    ArraySpec spec = chain_spec(n, k_factor, ib);
    spec.topology = Topology::Complete;
    return spec;
}

} // namespace

TEST_CASE("equilibrium of clean arrays is uniform arcsin(ib)") {
    for (double ib : {0.0, 0.5, 0.97}) {
        const auto theta = solve_equilibrium(chain_spec(7, 5.0, ib));
        for (double th : theta) CHECK(th == doctest::Approx(std::asin(ib)).epsilon(1e-12));
    }
    const auto theta0 = solve_equilibrium(chain_spec(5, 1.0, 0.0));
    for (double th : theta0) CHECK(th == 0.0);
}

TEST_CASE("disordered equilibrium satisfies current conservation") {
    ArraySpec spec = chain_spec(3, 1.0, 0.5);
    spec.vertical_ej_multipliers = {1.0, 0.9, 1.0};
    const auto theta = solve_equilibrium(spec);
    // Direct substitution into the node equations.
    const auto residual = equilibrium_residual(spec, theta);
    for (double r : residual) CHECK(std::abs(r) < 1e-12);
    // The weak middle junction must carry its bias at a larger phase.
    CHECK(theta[1] > theta[0]);
    CHECK(theta[0] != doctest::Approx(std::asin(0.5)).epsilon(1e-6));
}

TEST_CASE("no-equilibrium detection near critical bias") {
    ArraySpec spec = chain_spec(3, 1.0, 0.98);
    // A strongly weakened junction cannot carry the bias current even with help.
    spec.vertical_ej_multipliers = {1.0, 0.05, 1.0};
    spec.junction.k_factor = 1.0;
    CHECK_THROWS_AS(solve_equilibrium(spec), SolverError);
}

TEST_CASE("stiffness matrix entries") {
    SUBCASE("N=2 chain by hand expansion") {
        const ArraySpec spec = chain_spec(2, 1.0, 0.0);
        const auto sys = build_system_matrices(spec, solve_equilibrium(spec));
        CHECK(sys.stiffness(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(sys.stiffness(1, 1) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(sys.stiffness(0, 1) == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(sys.stiffness(1, 0) == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(sys.mass.size() == 2);
        CHECK(sys.mass[0] == 1.0);
    }
    SUBCASE("clean chain matches the tridiagonal closed form, N >= 3") {
        const int n = 6;
        const double k_factor = 3.0, ib = 0.5;
        const ArraySpec spec = chain_spec(n, k_factor, ib);
        const auto sys = build_system_matrices(spec, solve_equilibrium(spec));
        const double k2 = k_factor * k_factor;
        const double cos_theta = std::cos(std::asin(ib));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double expected = 0.0;
                if (i == j)
                    expected = k2 * (2.0 + cos_theta / k2 - (i == 0 ? 1.0 : 0.0) -
                                     (i == n - 1 ? 1.0 : 0.0));
                else if (i == j - 1 || i == j + 1)
                    expected = -k2;
                CHECK(sys.stiffness(i, j) == doctest::Approx(expected).epsilon(1e-12));
            }
        }
        SUBCASE("row sums leave only the grounding term") {
            for (int i = 0; i < n; ++i)
                CHECK(sys.stiffness.row(i).sum() == doctest::Approx(cos_theta).epsilon(1e-12));
        }
    }
    SUBCASE("complete N=3") {
        const ArraySpec spec = complete_spec(3, 1.0, 0.0);
        const auto sys = build_system_matrices(spec, solve_equilibrium(spec));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(sys.stiffness(i, j) == doctest::Approx(i == j ? 3.0 : -1.0).epsilon(1e-14));
    }
    SUBCASE("explicit unit multipliers reproduce the clean matrix exactly") {
        ArraySpec spec = chain_spec(5, 2.0, 0.3);
        const auto clean = build_system_matrices(spec, solve_equilibrium(spec));
        spec.vertical_ej_multipliers.assign(5, 1.0);
        spec.horizontal_ej_multipliers.assign(4, 1.0);
        const auto marked = build_system_matrices(spec, solve_equilibrium(spec));
        CHECK((clean.stiffness - marked.stiffness).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("dimension mismatch") {
        const ArraySpec spec = chain_spec(3, 1.0, 0.0);
        CHECK_THROWS_AS(build_system_matrices(spec, {0.0, 0.0}), std::invalid_argument);
    }
}

TEST_CASE("normal modes") {
    SUBCASE("N=2 chain closed form") {
        const ModeSpectrum modes = array_mode_spectrum(chain_spec(2, 1.0, 0.0));
        REQUIRE(modes.frequencies.size() == 2);
        CHECK(modes.frequencies[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(modes.frequencies[1] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
        CHECK(modes.eigenvectors(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(modes.eigenvectors(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("complete N=3: COM at omega_p, doubly degenerate upper level") {
        const ModeSpectrum modes = array_mode_spectrum(complete_spec(3, 1.0, 0.0));
        CHECK(modes.frequencies[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(modes.frequencies[1] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(modes.frequencies[2] == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("single junction") {
        const ModeSpectrum modes = array_mode_spectrum(chain_spec(1, 1.0, 0.3));
        REQUIRE(modes.frequencies.size() == 1);
        CHECK(modes.frequencies[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("SI rescaling") {
        const ArraySpec spec = chain_spec(2, 1.0, 0.5);
        const ModeSpectrum modes = array_mode_spectrum(spec);
        const ModeSpectrum si = to_si(modes, spec.junction);
        const double omega_p = plasma_frequency(spec.junction);
        CHECK(si.unit == FrequencyUnit::RadPerSec);
        CHECK(si.frequencies[1] ==
              doctest::Approx(modes.frequencies[1] * omega_p).epsilon(1e-14));
        CHECK_THROWS_AS(to_si(si, spec.junction), ContractViolation);
    }
    SUBCASE("mass-orthonormal eigenvectors") {
        const ArraySpec spec = chain_spec(37, 5.0, 0.5);
        const auto sys = build_system_matrices(spec, solve_equilibrium(spec));
        const ModeSpectrum modes = normal_modes(sys.stiffness, sys.mass);
        const Eigen::MatrixXd gram = modes.eigenvectors.transpose() *
                                     modes.mass_diagonal.asDiagonal() * modes.eigenvectors;
        CHECK((gram - Eigen::MatrixXd::Identity(37, 37)).cwiseAbs().maxCoeff() < 1e-10);
    }
    SUBCASE("contract violations") {
        Eigen::MatrixXd bad(2, 2);
        bad << 1.0, 2.0, 0.0, 1.0;
        CHECK_THROWS_AS(normal_modes(bad, Eigen::VectorXd::Ones(2)), ContractViolation);
        Eigen::MatrixXd unstable(2, 2);
        unstable << -1.0, 0.0, 0.0, 1.0;
        CHECK_THROWS_AS(normal_modes(unstable, Eigen::VectorXd::Ones(2)), SolverError);
    }
}

TEST_CASE("analytic spectrum") {
    SUBCASE("s = 0 is the plasma frequency") {
        for (double ib : {0.0, 0.5, 0.97})
            CHECK(analytic_spectrum(chain_spec(9, 20.0, ib))[0] == 1.0);
    }
    SUBCASE("chain N=2 cross-check against the eigensolver") {
        const auto nu = analytic_spectrum(chain_spec(2, 1.0, 0.0));
        CHECK(nu[1] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    }
    SUBCASE("numerical agreement across a parameter sweep") {
        for (int n : {2, 3, 10, 41}) {
            for (double k_factor : {1.0, 5.0, 20.0}) {
                for (double ib : {0.0, 0.5, 0.97}) {
                    const ArraySpec spec = chain_spec(n, k_factor, ib);
                    const auto analytic = analytic_spectrum(spec);
                    const auto numeric = array_mode_spectrum(spec).frequencies;
                    for (int s = 0; s < n; ++s)
                        CHECK(std::abs(numeric[s] - analytic[s]) / analytic[s] < 1e-10);
                }
            }
        }
    }
    SUBCASE("complete network formula") {
        const auto nu = analytic_spectrum(complete_spec(3, 1.0, 0.0));
        CHECK(nu[0] == doctest::Approx(1.0));
        CHECK(nu[1] == doctest::Approx(2.0));
        CHECK(nu[2] == doctest::Approx(2.0));
    }
    SUBCASE("disordered spec is rejected") {
        ArraySpec spec = chain_spec(4, 1.0, 0.0);
        spec.vertical_ej_multipliers = {1.0, 0.99, 1.0, 1.0};
        CHECK_THROWS_AS(analytic_spectrum(spec), UnsupportedError);
    }
}

TEST_CASE("COM quality report") {
    SUBCASE("scaling limit lands at a few hundred") {
        // omega_p/2pi = 10 GHz, g/2pi = 50 MHz, margin 10.
        const ArraySpec spec = chain_spec(4, 20.0, 0.97);
        const ComQualityReport report = com_quality(spec, 50e6 / 10e9, 10.0);
        CHECK(report.n_max_for_margin == 402);
    }
    SUBCASE("clean chain has unit COM overlap") {
        const ComQualityReport report = com_quality(chain_spec(40, 20.0, 0.97), 0.005, 10.0);
        CHECK(report.com_overlap == doctest::Approx(1.0).epsilon(1e-12));
        const auto nu = analytic_spectrum(chain_spec(40, 20.0, 0.97));
        CHECK(report.gap == doctest::Approx(nu[1] - nu[0]).epsilon(1e-10));
    }
    SUBCASE("one percent disorder leaves the COM mode intact") {
        const ArraySpec spec =
            with_random_disorder(chain_spec(50, 20.0, 0.97), 1.0, 0.0, /*seed=*/12345);
        const ComQualityReport report = com_quality(spec, 0.005, 10.0);
        CHECK(report.com_overlap > 0.99);
    }
    SUBCASE("argument validation") {
        CHECK_THROWS_AS(com_quality(chain_spec(4, 1.0, 0.0), 0.0, 10.0), std::invalid_argument);
        CHECK_THROWS_AS(com_quality(chain_spec(4, 1.0, 0.0), 0.005, 0.5), std::invalid_argument);
    }
}

TEST_CASE("zero-point amplitudes") {
    const JunctionParams junction{0.5e-6, 1e-12, 0.0, 1.0};
    SUBCASE("single junction value") {
        const ModeSpectrum modes = array_mode_spectrum(chain_spec(1, 1.0, 0.0));
        const Eigen::MatrixXd amp = zero_point_amplitudes(modes, junction);
        const double omega_p = plasma_frequency(junction);
        const double expected = 2.0 * constants::pi / constants::flux_quantum *
                                std::sqrt(constants::hbar / (2.0 * 1e-12 * omega_p));
        CHECK(amp(0, 0) == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("uniform COM column") {
        const int n = 6;
        const ModeSpectrum modes = array_mode_spectrum(chain_spec(n, 2.0, 0.0));
        const Eigen::MatrixXd amp = zero_point_amplitudes(modes, junction);
        for (int i = 1; i < n; ++i)
            CHECK(amp(i, 0) == doctest::Approx(amp(0, 0)).epsilon(1e-12));
    }
    SUBCASE("completeness sum rule") {
        const int n = 5;
        const ModeSpectrum modes = array_mode_spectrum(chain_spec(n, 2.0, 0.5));
        const Eigen::MatrixXd amp = zero_point_amplitudes(modes, junction);
        const double omega_p = plasma_frequency(junction);
        const double scale = 2.0 * 1e-12 / constants::hbar *
                             std::pow(constants::flux_quantum / (2.0 * constants::pi), 2);
        for (int i = 0; i < n; ++i) {
            double sum = 0.0;
            for (int s = 0; s < n; ++s)
                sum += amp(i, s) * amp(i, s) * modes.frequencies[s] * omega_p;
            CHECK(sum * scale == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    SUBCASE("zero-frequency mode is singular") {
        ModeSpectrum fake;
        fake.frequencies = {0.0, 1.0};
        fake.eigenvectors = Eigen::MatrixXd::Identity(2, 2);
        fake.mass_diagonal = Eigen::VectorXd::Ones(2);
        CHECK_THROWS_AS(zero_point_amplitudes(fake, junction), SolverError);
    }
}
