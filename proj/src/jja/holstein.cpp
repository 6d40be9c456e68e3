#include "jja/holstein.hpp"

#include "jja/errors.hpp"
#include "jja/lanczos.hpp"

#include <Eigen/Eigenvalues>

#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace jja {

void HolsteinSpec::validate() const {
    if (n_sites < 2) throw std::invalid_argument("HolsteinSpec: n_sites must be >= 2");
    if (phonon_cutoff < 1) throw std::invalid_argument("HolsteinSpec: phonon_cutoff must be >= 1");
    if (filling != -1 && (filling < 0 || filling > n_sites))
        throw std::invalid_argument("HolsteinSpec: filling must be in [0, n_sites]");
    if (!(phonon_freq > 0.0)) throw std::invalid_argument("HolsteinSpec: phonon_freq must be > 0");
    const Index dim = total_dimension();
    if (dim > 2'000'000) {
        std::ostringstream msg;
        msg << "HolsteinSpec: total dimension " << dim << " exceeds the sparse budget 2e6";
        throw ResourceError(msg.str());
    }
}

int HolsteinSpec::resolved_filling() const {
    return filling == -1 ? n_sites / 2 : filling;
}

Index HolsteinSpec::total_dimension() const {
    Index dim = 1;
    for (int i = 0; i < n_sites; ++i) {
        dim *= 2;
        dim *= phonon_cutoff + 1;
        if (dim > (Index(1) << 50)) return dim; // already far past any budget
    }
    return dim;
}

HolsteinSpec HolsteinSpec::from_hardware(int n_sites, double exchange_j, double omega_p,
                                         double coupling_g, int phonon_cutoff) {
    HolsteinSpec spec;
    spec.n_sites = n_sites;
    spec.hopping = exchange_j / 4.0;
    spec.phonon_freq = omega_p;
    spec.coupling = coupling_g;
    spec.phonon_cutoff = phonon_cutoff;
    return spec;
}

SpacePtr holstein_space(const HolsteinSpec& spec) {
    spec.validate();
    return HilbertSpace::spin_phonon_chain(spec.n_sites, spec.phonon_cutoff);
}

HolsteinParts holstein_parts(const HolsteinSpec& spec) {
    const SpacePtr space = holstein_space(spec);
    const int n = spec.n_sites;
    const Index dim = space->dimension();

    SparseMatrixC hop(dim, dim), phon(dim, dim), coup(dim, dim), anh(dim, dim);
    SparseMatrixC fsz(dim, dim), fsx(dim, dim), stag(dim, dim);

    const int n_bonds = spec.boundary == Boundary::Periodic ? n : n - 1;
    for (int b = 0; b < n_bonds; ++b) {
        const int i = b;
        const int j = (b + 1) % n;
        const Operator sp_i = site_operator(space, i, SiteOperatorKind::SPlus);
        const Operator sm_i = site_operator(space, i, SiteOperatorKind::SMinus);
        const Operator sp_j = site_operator(space, j, SiteOperatorKind::SPlus);
        const Operator sm_j = site_operator(space, j, SiteOperatorKind::SMinus);
        hop += (sp_i * sm_j + sm_i * sp_j).matrix();
    }
    for (int i = 0; i < n; ++i) {
        const int osc = n + i;
        const Operator num = site_operator(space, osc, SiteOperatorKind::NumOp);
        const Operator phi = site_operator(space, osc, SiteOperatorKind::Phi);
        const Operator sz = site_operator(space, i, SiteOperatorKind::Sz);
        const Operator sx = site_operator(space, i, SiteOperatorKind::Sx);
        phon += num.matrix();
        coup += (sz * phi).matrix();
        const Operator phi2 = phi * phi;
        anh += (phi2 * phi2).matrix();
        fsz += sz.matrix();
        fsx += sx.matrix();
        stag += Complex(i % 2 == 0 ? 1.0 : -1.0) * sz.matrix();
    }

    return HolsteinParts{space,
                         Operator(space, std::move(hop), true),
                         Operator(space, std::move(phon), true),
                         Operator(space, std::move(coup), true),
                         Operator(space, std::move(anh), true),
                         Operator(space, std::move(fsz), true),
                         Operator(space, std::move(fsx), true),
                         Operator(space, std::move(stag), true)};
}

namespace {

SparseMatrixC combine_parts(const HolsteinParts& parts, double t, double omega, double g,
                            double lambda, double bz, double bx, double stag_h) {
    SparseMatrixC h = Complex(-t) * parts.hopping.matrix();
    h += Complex(omega) * parts.phonon.matrix();
    if (g != 0.0) h += Complex(-g) * parts.coupling.matrix();
    if (lambda != 0.0) h += Complex(-lambda) * parts.anharmonic.matrix();
    if (bz != 0.0) h += Complex(-bz) * parts.field_sz.matrix();
    if (bx != 0.0) h += Complex(-bx) * parts.field_sx.matrix();
    if (stag_h != 0.0) h += Complex(-stag_h) * parts.staggered_sz.matrix();
    return h;
}

} // namespace

Operator holstein_hamiltonian(const HolsteinSpec& spec) {
    const HolsteinParts parts = holstein_parts(spec);
    return Operator(parts.space,
                    combine_parts(parts, spec.hopping, spec.phonon_freq, spec.coupling,
                                  spec.anharmonic_lambda, spec.chemical_bz, spec.leakage_bx, 0.0),
                    true);
}

Operator holstein_hamiltonian_via_jw(const HolsteinSpec& spec) {
    spec.validate();
    if (spec.leakage_bx != 0.0)
        throw ContractViolation("holstein_hamiltonian_via_jw: B_x has no fermion form");
    if (spec.boundary != Boundary::Open)
        throw UnsupportedError("holstein_hamiltonian_via_jw: open boundary only");
    const SpacePtr space = holstein_space(spec);
    const int n = spec.n_sites;
    const Index dim = space->dimension();
    const Operator id = identity_op(space);

    SparseMatrixC h(dim, dim);
    for (int i = 0; i + 1 < n; ++i) {
        const Operator f_i = jw_fermion(space, i);
        const Operator f_j = jw_fermion(space, i + 1);
        h += Complex(-spec.hopping) *
             (f_i.adjoint() * f_j + f_j.adjoint() * f_i).matrix();
    }
    for (int i = 0; i < n; ++i) {
        const int osc = n + i;
        const Operator num = site_operator(space, osc, SiteOperatorKind::NumOp);
        const Operator phi = site_operator(space, osc, SiteOperatorKind::Phi);
        const Operator f_i = jw_fermion(space, i);
        const Operator dens = f_i.adjoint() * f_i - 0.5 * id;
        h += Complex(spec.phonon_freq) * num.matrix();
        h += Complex(-spec.coupling) * (dens * phi).matrix();
        if (spec.anharmonic_lambda != 0.0) {
            const Operator phi2 = phi * phi;
            h += Complex(-spec.anharmonic_lambda) * (phi2 * phi2).matrix();
        }
        // −B_z Σ S^z enters as −B_z Σ (f†f − 1/2).
        if (spec.chemical_bz != 0.0) h += Complex(-spec.chemical_bz) * dens.matrix();
    }
    return Operator(space, std::move(h), true);
}

SectorProjector filling_sector(const HolsteinSpec& spec) {
    return SectorProjector(holstein_space(spec), ConservedQuantity::FermionNumber,
                           spec.resolved_filling());
}

GroundStateResult ground_state(const Operator& h, const SectorProjector& sector, int k) {
    if (k < 1) throw ContractViolation("ground_state: k must be >= 1");
    const SparseMatrixC hs = sector.project(h, /*check_block_structure=*/true);
    const Index sdim = sector.dimension();
    if (k > sdim) throw ContractViolation("ground_state: k exceeds the sector dimension");

    std::vector<double> energies;
    std::vector<Eigen::VectorXcd> vectors;
    std::vector<double> residuals;

    auto dense_solve = [&]() {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver{Eigen::MatrixXcd(hs)};
        if (solver.info() != Eigen::Success)
            throw SolverError("ground_state: dense eigensolver failed");
        for (int i = 0; i < k; ++i) {
            energies.push_back(solver.eigenvalues()[i]);
            vectors.push_back(solver.eigenvectors().col(i));
            residuals.push_back((hs * vectors.back() -
                                 Complex(energies.back()) * vectors.back())
                                    .norm());
        }
    };

    if (sdim <= 1024) {
        dense_solve();
    } else {
        LanczosOptions opts;
        opts.num_eigenpairs = k;
        opts.tolerance = 1e-8;
        try {
            LanczosResult res = lowest_eigenpairs(hs, opts);
            energies = std::move(res.eigenvalues);
            vectors = std::move(res.eigenvectors);
            residuals = std::move(res.residuals);
        } catch (const SolverError&) {
            if (sdim > 4096) throw;
            dense_solve(); // slow but certain
        }
    }

    GroundStateResult out;
    out.energies = std::move(energies);
    out.residuals = std::move(residuals);
    for (const Eigen::VectorXcd& v : vectors)
        out.states.emplace_back(sector.space(), sector.embed(v));
    out.top_level_weight = top_level_weight(out.states.front());
    out.cutoff_warning = out.top_level_weight > 1e-6;
    return out;
}

std::vector<double> density_profile(const StateVector& state) {
    const HilbertSpace& space = *state.space();
    std::vector<int> spin_sites;
    for (int kk = 0; kk < space.site_count(); ++kk)
        if (space.site(kk).kind == SiteKind::TwoLevel) spin_sites.push_back(kk);
    std::vector<double> dens(spin_sites.size(), 0.0);
    const Eigen::VectorXcd& amps = state.amplitudes();
    for (Index idx = 0; idx < space.dimension(); ++idx) {
        const double w = std::norm(amps[idx]);
        if (w == 0.0) continue;
        for (std::size_t i = 0; i < spin_sites.size(); ++i)
            if (space.local_index(idx, spin_sites[i]) == 0) dens[i] += w;
    }
    return dens;
}

double cdw_structure_factor(const StateVector& state) {
    const HilbertSpace& space = *state.space();
    std::vector<int> spin_sites;
    for (int kk = 0; kk < space.site_count(); ++kk)
        if (space.site(kk).kind == SiteKind::TwoLevel) spin_sites.push_back(kk);
    const int n = static_cast<int>(spin_sites.size());
    const Eigen::VectorXcd& amps = state.amplitudes();
    // Σ_{ij} (−1)^{i−j} Sz_i Sz_j = (Σ_i (−1)^i Sz_i)², diagonal in this basis.
    double total = 0.0;
    for (Index idx = 0; idx < space.dimension(); ++idx) {
        const double w = std::norm(amps[idx]);
        if (w == 0.0) continue;
        double stag = 0.0;
        for (int i = 0; i < n; ++i) {
            const double sz = space.local_index(idx, spin_sites[i]) == 0 ? 0.5 : -0.5;
            stag += (i % 2 == 0 ? 1.0 : -1.0) * sz;
        }
        total += w * stag * stag;
    }
    return 4.0 / (double(n) * double(n)) * total;
}

RampSchedule RampSchedule::linear(double total_time, int steps, double t_target, double g_target,
                                  double pin_field) {
    RampSchedule sched;
    sched.total_time = total_time;
    sched.steps = steps;
    sched.path = [t_target, g_target](double s) {
        return std::pair<double, double>{s * t_target, s * g_target};
    };
    sched.pin_field = pin_field;
    return sched;
}

void RampSchedule::validate() const {
    if (!(total_time >= 0.0)) throw std::invalid_argument("RampSchedule: total_time must be >= 0");
    if (steps < 1) throw std::invalid_argument("RampSchedule: steps must be >= 1");
    if (!path) throw std::invalid_argument("RampSchedule: missing path");
    const auto [t0, g0] = path(0.0);
    if (std::abs(t0) > 1e-12 || std::abs(g0) > 1e-12)
        throw std::invalid_argument("RampSchedule: path must start at t(0) = g(0) = 0");
}

namespace {

std::vector<int> staggered_local_indices(const HolsteinSpec& spec) {
    const int n = spec.n_sites;
    const int f = spec.resolved_filling();
    std::vector<int> local(2 * n, 0);
    // Spins: occupied = local 0; fill even sites first, then odd.
    std::vector<int> order;
    for (int i = 0; i < n; i += 2) order.push_back(i);
    for (int i = 1; i < n; i += 2) order.push_back(i);
    for (int i = 0; i < n; ++i) local[i] = 1; // all empty
    for (int i = 0; i < f; ++i) local[order[i]] = 0;
    // Oscillators: vacuum.
    for (int i = 0; i < n; ++i) local[n + i] = 0;
    return local;
}

} // namespace

RampResult adiabatic_ramp(const HolsteinSpec& spec, const RampSchedule& schedule) {
    spec.validate();
    schedule.validate();
    const HolsteinParts parts = holstein_parts(spec);
    const SpacePtr& space = parts.space;
    const int f = spec.resolved_filling();

    const StateVector init = StateVector::basis_state(space, staggered_local_indices(spec));

    // Final-point sector ground state as the fidelity reference.
    const auto [t_final, g_final] = schedule.path(1.0);
    HolsteinSpec final_spec = spec;
    final_spec.hopping = t_final;
    final_spec.coupling = g_final;
    const Operator h_final = holstein_hamiltonian(final_spec);

    const bool sector_path = spec.leakage_bx == 0.0;
    RampResult result{init, 0.0, 0.0, 0.0, false};

    if (sector_path) {
        const SectorProjector sector(space, ConservedQuantity::FermionNumber, f);
        const GroundStateResult gs = ground_state(h_final, sector, 1);

        // Projected parts combine cheaply along the path.
        const SparseMatrixC hop_s = sector.project(parts.hopping);
        const SparseMatrixC phon_s = sector.project(parts.phonon);
        const SparseMatrixC coup_s = sector.project(parts.coupling);
        const SparseMatrixC anh_s = sector.project(parts.anharmonic);
        const SparseMatrixC fsz_s = sector.project(parts.field_sz);
        const SparseMatrixC stag_s = sector.project(parts.staggered_sz);

        Eigen::VectorXcd psi = sector.restrict(init.amplitudes());

        // Cutoff indicator: basis states with any oscillator at n_max.
        Eigen::VectorXd top_indicator(sector.dimension());
        for (Index i = 0; i < sector.dimension(); ++i) {
            const Index idx = sector.basis_indices()[i];
            bool top = false;
            for (int kk = 0; kk < space->site_count() && !top; ++kk)
                top = space->site(kk).kind == SiteKind::Oscillator &&
                      space->local_index(idx, kk) == space->site(kk).dim - 1;
            top_indicator[i] = top ? 1.0 : 0.0;
        }

        if (schedule.total_time > 0.0) {
            const double dt = schedule.total_time / schedule.steps;
            for (int step = 0; step < schedule.steps; ++step) {
                const double s = (step + 0.5) / schedule.steps;
                const auto [t_s, g_s] = schedule.path(s);
                SparseMatrixC h = Complex(-t_s) * hop_s;
                h += Complex(spec.phonon_freq) * phon_s;
                if (g_s != 0.0) h += Complex(-g_s) * coup_s;
                if (spec.anharmonic_lambda != 0.0) h += Complex(-spec.anharmonic_lambda) * anh_s;
                if (spec.chemical_bz != 0.0) h += Complex(-spec.chemical_bz) * fsz_s;
                if (schedule.pin_field != 0.0)
                    h += Complex(-(1.0 - s) * schedule.pin_field) * stag_s;
                krylov_propagate(h, psi, dt);

                const double w = (top_indicator.array() * psi.cwiseAbs2().array()).sum();
                result.max_top_level_weight = std::max(result.max_top_level_weight, w);
            }
        }
        // In the sector the fermion number is fixed by construction; report
        // the measured expectation drift anyway.
        double n_exp = 0.0;
        for (Index i = 0; i < sector.dimension(); ++i)
            n_exp += std::norm(psi[i]) *
                     basis_quantum_number(*space, sector.basis_indices()[i],
                                          ConservedQuantity::FermionNumber);
        result.number_drift = std::abs(n_exp - f);

        const Eigen::VectorXcd gs_sector = sector.restrict(gs.states.front().amplitudes());
        result.fidelity = std::norm(gs_sector.dot(psi));
        result.final_state = StateVector(space, sector.embed(psi));
    } else {
        // Full-space propagation; the reference is the unrestricted ground state.
        LanczosOptions opts;
        opts.num_eigenpairs = 1;
        const LanczosResult gs = lowest_eigenpairs(h_final.matrix(), opts);

        Eigen::VectorXcd psi = init.amplitudes();
        const Operator number_op = total_fermion_number(space);
        if (schedule.total_time > 0.0) {
            const double dt = schedule.total_time / schedule.steps;
            for (int step = 0; step < schedule.steps; ++step) {
                const double s = (step + 0.5) / schedule.steps;
                const auto [t_s, g_s] = schedule.path(s);
                HolsteinSpec step_spec = spec;
                step_spec.hopping = t_s;
                step_spec.coupling = g_s;
                SparseMatrixC h = holstein_hamiltonian(step_spec).matrix();
                if (schedule.pin_field != 0.0)
                    h += Complex(-(1.0 - s) * schedule.pin_field) * parts.staggered_sz.matrix();
                krylov_propagate(h, psi, dt);

                const double n_exp = std::real(psi.dot(number_op.matrix() * psi));
                result.number_drift = std::max(result.number_drift, std::abs(n_exp - f));
                result.max_top_level_weight =
                    std::max(result.max_top_level_weight, top_level_weight(*space, psi));
            }
        }
        result.fidelity = std::norm(gs.eigenvectors.front().dot(psi));
        result.final_state = StateVector(space, psi);
    }

    result.cutoff_warning = result.max_top_level_weight > 1e-4;
    return result;
}

std::vector<PhasePoint> phase_scan(const HolsteinSpec& spec_template,
                                   const std::vector<double>& t_over_omega_grid,
                                   const std::vector<double>& g_over_omega_grid,
                                   int workers) {
    if (workers < 1) workers = 1;
    const std::size_t n_points = t_over_omega_grid.size() * g_over_omega_grid.size();
    std::vector<PhasePoint> points(n_points);

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (std::size_t p = next.fetch_add(1); p < n_points; p = next.fetch_add(1)) {
            const std::size_t ti = p / g_over_omega_grid.size();
            const std::size_t gi = p % g_over_omega_grid.size();
            PhasePoint& point = points[p];
            point.t_over_omega = t_over_omega_grid[ti];
            point.g_over_omega = g_over_omega_grid[gi];
            try {
                HolsteinSpec spec = spec_template;
                spec.hopping = point.t_over_omega * spec.phonon_freq;
                spec.coupling = point.g_over_omega * spec.phonon_freq;
                const Operator h = holstein_hamiltonian(spec);
                const GroundStateResult gs = ground_state(h, filling_sector(spec), 2);
                point.ground_energy = gs.energies[0];
                point.excitation_gap = gs.energies[1] - gs.energies[0];
                point.cdw_order = cdw_structure_factor(gs.states.front());
                point.density = density_profile(gs.states.front());
            } catch (const std::exception& e) {
                point.solver_ok = false;
                point.error = e.what();
            }
        }
    };

    if (workers == 1 || n_points <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        const int n_threads = static_cast<int>(std::min<std::size_t>(workers, n_points));
        pool.reserve(n_threads);
        for (int w = 0; w < n_threads; ++w) pool.emplace_back(work);
        for (std::thread& th : pool) th.join();
    }
    return points;
}

} // namespace jja
