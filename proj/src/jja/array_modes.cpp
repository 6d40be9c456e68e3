#include "jja/array_modes.hpp"

#include "jja/constants.hpp"
#include "jja/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace jja {

int ArraySpec::edge_count() const {
    return topology == Topology::Chain ? n_sites - 1 : n_sites * (n_sites - 1) / 2;
}

bool ArraySpec::is_clean() const {
    auto all_one = [](const std::vector<double>& v) {
        for (double x : v)
            if (x != 1.0) return false;
        return true;
    };
    return all_one(vertical_ej_multipliers) && all_one(horizontal_ej_multipliers);
}

void ArraySpec::validate() const {
    junction.validate();
    if (n_sites < 1) throw std::invalid_argument("ArraySpec: n_sites must be >= 1");
    if (!vertical_ej_multipliers.empty() &&
        static_cast<int>(vertical_ej_multipliers.size()) != n_sites)
        throw std::invalid_argument("ArraySpec: vertical multiplier list must have one entry per site");
    if (!horizontal_ej_multipliers.empty() &&
        static_cast<int>(horizontal_ej_multipliers.size()) != edge_count())
        throw std::invalid_argument("ArraySpec: horizontal multiplier list must have one entry per coupling junction");
    for (double v : vertical_ej_multipliers)
        if (!(v > 0.0)) throw std::invalid_argument("ArraySpec: vertical multipliers must be > 0");
    for (double h : horizontal_ej_multipliers)
        if (!(h > 0.0)) throw std::invalid_argument("ArraySpec: horizontal multipliers must be > 0");
}

std::vector<std::pair<int, int>> ArraySpec::edges() const {
    std::vector<std::pair<int, int>> e;
    if (topology == Topology::Chain) {
        e.reserve(n_sites - 1);
        for (int i = 0; i + 1 < n_sites; ++i) e.emplace_back(i, i + 1);
    } else {
        e.reserve(edge_count());
        for (int i = 0; i < n_sites; ++i)
            for (int j = i + 1; j < n_sites; ++j) e.emplace_back(i, j);
    }
    return e;
}

namespace {

double vertical_mult(const ArraySpec& spec, int i) {
    return spec.vertical_ej_multipliers.empty() ? 1.0 : spec.vertical_ej_multipliers[i];
}

double horizontal_mult(const ArraySpec& spec, int e) {
    return spec.horizontal_ej_multipliers.empty() ? 1.0 : spec.horizontal_ej_multipliers[e];
}

} // namespace

std::vector<double> equilibrium_residual(const ArraySpec& spec,
                                         const std::vector<double>& phases) {
    const double k2 = spec.junction.k_factor * spec.junction.k_factor;
    std::vector<double> r(spec.n_sites);
    for (int i = 0; i < spec.n_sites; ++i)
        r[i] = spec.junction.bias_ratio - vertical_mult(spec, i) * std::sin(phases[i]);
    const auto edge_list = spec.edges();
    for (std::size_t e = 0; e < edge_list.size(); ++e) {
        const auto [i, j] = edge_list[e];
        const double cur = k2 * horizontal_mult(spec, static_cast<int>(e)) *
                           std::sin(phases[i] - phases[j]);
        r[i] -= cur;
        r[j] += cur;
    }
    return r;
}

std::vector<double> solve_equilibrium(const ArraySpec& spec) {
    spec.validate();
    const int n = spec.n_sites;
    const double theta0 = equilibrium_phase(spec.junction.bias_ratio);
    std::vector<double> theta(n, theta0);

    auto inf_norm = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    };

    std::vector<double> r = equilibrium_residual(spec, theta);
    double rn = inf_norm(r);
    constexpr double tol = 1e-12;
    constexpr int max_iter = 200;

    for (int iter = 0; iter < max_iter && rn >= tol; ++iter) {
        // Newton direction: H Δ = r, with H the stiffness (−∂r/∂θ) in E_J units.
        const SystemMatrices sys = build_system_matrices(spec, theta);
        Eigen::VectorXd rhs(n);
        for (int i = 0; i < n; ++i) rhs[i] = r[i];
        const Eigen::VectorXd delta = sys.stiffness.ldlt().solve(rhs);

        double alpha = 1.0;
        std::vector<double> trial(n);
        for (int back = 0; back < 40; ++back, alpha *= 0.5) {
            for (int i = 0; i < n; ++i) trial[i] = theta[i] + alpha * delta[i];
            const std::vector<double> rt = equilibrium_residual(spec, trial);
            if (inf_norm(rt) < rn) {
                theta = trial;
                r = rt;
                rn = inf_norm(r);
                break;
            }
            if (back == 39) {
                throw SolverError("solve_equilibrium: line search stalled; bias too close to "
                                  "critical for this disorder realization");
            }
        }
    }
    if (rn >= tol)
        throw SolverError("solve_equilibrium: no equilibrium found within 200 Newton iterations");
    return theta;
}

SystemMatrices build_system_matrices(const ArraySpec& spec,
                                     const std::vector<double>& equilibrium) {
    spec.validate();
    if (static_cast<int>(equilibrium.size()) != spec.n_sites)
        throw std::invalid_argument("build_system_matrices: equilibrium length does not match n_sites");

    const int n = spec.n_sites;
    const double k2 = spec.junction.k_factor * spec.junction.k_factor;
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        v(i, i) = vertical_mult(spec, i) * std::cos(equilibrium[i]);
    const auto edge_list = spec.edges();
    for (std::size_t e = 0; e < edge_list.size(); ++e) {
        const auto [i, j] = edge_list[e];
        const double w = k2 * horizontal_mult(spec, static_cast<int>(e)) *
                         std::cos(equilibrium[i] - equilibrium[j]);
        v(i, i) += w;
        v(j, j) += w;
        v(i, j) -= w;
        v(j, i) -= w;
    }
    return SystemMatrices{std::move(v), Eigen::VectorXd::Ones(n)};
}

ModeSpectrum normal_modes(const Eigen::MatrixXd& stiffness, const Eigen::VectorXd& mass) {
    const int n = static_cast<int>(stiffness.rows());
    if (stiffness.cols() != n || mass.size() != n)
        throw ContractViolation("normal_modes: dimension mismatch");
    const double scale = std::max(1.0, stiffness.cwiseAbs().maxCoeff());
    if ((stiffness - stiffness.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw ContractViolation("normal_modes: stiffness matrix is not symmetric");
    for (int i = 0; i < n; ++i)
        if (!(mass[i] > 0.0)) throw ContractViolation("normal_modes: mass must be positive");

    // Reduce ν² M b = V b to the standard symmetric problem for y = M^{1/2} b.
    const Eigen::VectorXd inv_sqrt_m = mass.cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd a =
        inv_sqrt_m.asDiagonal() * stiffness * inv_sqrt_m.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success)
        throw SolverError("normal_modes: eigensolver failed to converge");

    ModeSpectrum spec;
    spec.frequencies.resize(n);
    spec.eigenvectors.resize(n, n);
    spec.mass_diagonal = mass;
    for (int s = 0; s < n; ++s) {
        const double lambda = solver.eigenvalues()[s];
        if (lambda < -1e-10 * scale) {
            std::ostringstream msg;
            msg << "normal_modes: unstable system, mode " << s << " has eigenvalue " << lambda;
            throw SolverError(msg.str());
        }
        spec.frequencies[s] = std::sqrt(std::max(lambda, 0.0));
        Eigen::VectorXd b = inv_sqrt_m.asDiagonal() * solver.eigenvectors().col(s);
        int arg = 0;
        b.cwiseAbs().maxCoeff(&arg);
        if (b[arg] < 0.0) b = -b;
        spec.eigenvectors.col(s) = b;
    }
    return spec;
}

ModeSpectrum array_mode_spectrum(const ArraySpec& spec) {
    const std::vector<double> theta = solve_equilibrium(spec);
    const SystemMatrices sys = build_system_matrices(spec, theta);
    ModeSpectrum modes = normal_modes(sys.stiffness, sys.mass);
    // Raw frequencies are in units of ω_p0; ω_p = ω_p0 sqrt(cosθ⁰).
    const double cos_theta0 = std::cos(equilibrium_phase(spec.junction.bias_ratio));
    for (double& f : modes.frequencies) f /= std::sqrt(cos_theta0);
    modes.unit = FrequencyUnit::OmegaP;
    return modes;
}

ModeSpectrum to_si(const ModeSpectrum& spectrum, const JunctionParams& junction) {
    if (spectrum.unit != FrequencyUnit::OmegaP)
        throw ContractViolation("to_si: spectrum is not in omega_p units");
    ModeSpectrum out = spectrum;
    const double omega_p = plasma_frequency(junction);
    for (double& f : out.frequencies) f *= omega_p;
    out.unit = FrequencyUnit::RadPerSec;
    return out;
}

std::vector<double> analytic_spectrum(const ArraySpec& spec) {
    spec.validate();
    if (!spec.is_clean())
        throw UnsupportedError("analytic_spectrum: closed form exists only for clean arrays; "
                               "use normal_modes for disordered specs");
    const int n = spec.n_sites;
    const double k2 = spec.junction.k_factor * spec.junction.k_factor;
    const double cos_theta0 = std::cos(equilibrium_phase(spec.junction.bias_ratio));
    std::vector<double> nu(n);
    if (spec.topology == Topology::Chain) {
        for (int s = 0; s < n; ++s) {
            const double sn = std::sin(s * constants::pi / (2.0 * n));
            nu[s] = std::sqrt(1.0 + 4.0 * k2 / cos_theta0 * sn * sn);
        }
    } else {
        nu[0] = 1.0;
        const double upper = std::sqrt(1.0 + n * k2 / cos_theta0);
        for (int s = 1; s < n; ++s) nu[s] = upper;
    }
    return nu;
}

ComQualityReport com_quality(const ArraySpec& spec, double g_over_omega_p, double margin) {
    spec.validate();
    if (!(g_over_omega_p > 0.0)) throw std::invalid_argument("com_quality: g must be > 0");
    if (!(margin >= 1.0)) throw std::invalid_argument("com_quality: margin must be >= 1");

    ComQualityReport report;
    const ModeSpectrum modes = array_mode_spectrum(spec);
    report.gap = spec.n_sites > 1 ? modes.frequencies[1] - modes.frequencies[0] : 0.0;

    const int n = spec.n_sites;
    const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
    const double overlap =
        modes.eigenvectors.col(0).dot(modes.mass_diagonal.asDiagonal() * uniform);
    report.com_overlap = overlap * overlap;

    // Largest N with (π² K² / 2 N² cosθ⁰) >= margin · g/ω_p.
    const double k = spec.junction.k_factor;
    const double cos_theta0 = std::cos(equilibrium_phase(spec.junction.bias_ratio));
    const double n_real =
        constants::pi * k / std::sqrt(2.0 * cos_theta0 * margin * g_over_omega_p);
    report.n_max_for_margin = static_cast<std::int64_t>(std::floor(n_real * (1.0 + 1e-14)));
    return report;
}

Eigen::MatrixXd zero_point_amplitudes(const ModeSpectrum& spectrum,
                                      const JunctionParams& junction) {
    junction.validate();
    if (spectrum.unit != FrequencyUnit::OmegaP)
        throw ContractViolation("zero_point_amplitudes: spectrum must be in omega_p units");
    const int n = static_cast<int>(spectrum.frequencies.size());
    const double omega_p = plasma_frequency(junction);
    Eigen::MatrixXd amp(n, n);
    for (int s = 0; s < n; ++s) {
        const double nu_si = spectrum.frequencies[s] * omega_p;
        if (!(nu_si > 0.0)) {
            std::ostringstream msg;
            msg << "zero_point_amplitudes: mode " << s << " has zero frequency, amplitude singular";
            throw SolverError(msg.str());
        }
        const double prefactor = 2.0 * constants::pi / constants::flux_quantum *
                                 std::sqrt(constants::hbar / (2.0 * junction.capacitance * nu_si));
        amp.col(s) = prefactor * spectrum.eigenvectors.col(s);
    }
    return amp;
}

ArraySpec with_random_disorder(const ArraySpec& spec, double vertical_pct,
                               double horizontal_pct, std::uint64_t seed) {
    ArraySpec out = spec;
    std::mt19937_64 rng(seed);
    if (vertical_pct > 0.0) {
        std::uniform_real_distribution<double> dist(1.0 - vertical_pct / 100.0,
                                                    1.0 + vertical_pct / 100.0);
        out.vertical_ej_multipliers.resize(spec.n_sites);
        for (double& v : out.vertical_ej_multipliers) v = dist(rng);
    }
    if (horizontal_pct > 0.0) {
        std::uniform_real_distribution<double> dist(1.0 - horizontal_pct / 100.0,
                                                    1.0 + horizontal_pct / 100.0);
        out.horizontal_ej_multipliers.resize(spec.edge_count());
        for (double& h : out.horizontal_ej_multipliers) h = dist(rng);
    }
    out.validate();
    return out;
}

} // namespace jja
