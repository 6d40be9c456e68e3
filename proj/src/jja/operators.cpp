#include "jja/operators.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <vector>

namespace jja {

namespace {

using Triplet = Eigen::Triplet<Complex>;

/// Local matrix of one operator kind on a site of dimension d.
std::vector<Triplet> local_matrix(SiteOperatorKind kind, int d, double phi_scale) {
    std::vector<Triplet> t;
    const Complex i_unit(0.0, 1.0);
    switch (kind) {
    case SiteOperatorKind::Sx:
        t.emplace_back(0, 1, 0.5);
        t.emplace_back(1, 0, 0.5);
        break;
    case SiteOperatorKind::Sy:
        t.emplace_back(0, 1, -0.5 * i_unit);
        t.emplace_back(1, 0, 0.5 * i_unit);
        break;
    case SiteOperatorKind::Sz:
        t.emplace_back(0, 0, 0.5);
        t.emplace_back(1, 1, -0.5);
        break;
    case SiteOperatorKind::SPlus:
        t.emplace_back(0, 1, 1.0);
        break;
    case SiteOperatorKind::SMinus:
        t.emplace_back(1, 0, 1.0);
        break;
    case SiteOperatorKind::A:
        for (int n = 1; n < d; ++n) t.emplace_back(n - 1, n, std::sqrt(double(n)));
        break;
    case SiteOperatorKind::ADag:
        for (int n = 1; n < d; ++n) t.emplace_back(n, n - 1, std::sqrt(double(n)));
        break;
    case SiteOperatorKind::NumOp:
        for (int n = 1; n < d; ++n) t.emplace_back(n, n, double(n));
        break;
    case SiteOperatorKind::Phi:
        for (int n = 1; n < d; ++n) {
            t.emplace_back(n - 1, n, phi_scale * std::sqrt(double(n)));
            t.emplace_back(n, n - 1, phi_scale * std::sqrt(double(n)));
        }
        break;
    }
    return t;
}

bool is_spin_kind(SiteOperatorKind kind) {
    switch (kind) {
    case SiteOperatorKind::Sx:
    case SiteOperatorKind::Sy:
    case SiteOperatorKind::Sz:
    case SiteOperatorKind::SPlus:
    case SiteOperatorKind::SMinus:
        return true;
    default:
        return false;
    }
}

bool is_hermitian_kind(SiteOperatorKind kind) {
    switch (kind) {
    case SiteOperatorKind::Sx:
    case SiteOperatorKind::Sy:
    case SiteOperatorKind::Sz:
    case SiteOperatorKind::NumOp:
    case SiteOperatorKind::Phi:
        return true;
    default:
        return false;
    }
}

} // namespace

Operator site_operator(const SpacePtr& space, int site, SiteOperatorKind kind,
                       double phi_scale) {
    if (site < 0 || site >= space->site_count())
        throw ContractViolation("site_operator: site index out of range");
    const Site& s = space->site(site);
    if (is_spin_kind(kind) && s.kind != SiteKind::TwoLevel)
        throw ContractViolation("site_operator: spin operator requested on an oscillator site");
    if (!is_spin_kind(kind) && s.kind != SiteKind::Oscillator)
        throw ContractViolation("site_operator: boson operator requested on a two-level site");

    const std::vector<Triplet> local = local_matrix(kind, s.dim, phi_scale);
    const Index right = space->stride(site);
    const Index left = space->dimension() / (right * s.dim);

    std::vector<Triplet> triplets;
    triplets.reserve(local.size() * static_cast<std::size_t>(left * right));
    for (Index l = 0; l < left; ++l) {
        const Index base = l * s.dim * right;
        for (const Triplet& e : local) {
            const Index row0 = base + e.row() * right;
            const Index col0 = base + e.col() * right;
            for (Index r = 0; r < right; ++r)
                triplets.emplace_back(static_cast<int>(row0 + r), static_cast<int>(col0 + r),
                                      e.value());
        }
    }
    SparseMatrixC m(space->dimension(), space->dimension());
    m.setFromTriplets(triplets.begin(), triplets.end());
    return Operator(space, std::move(m), is_hermitian_kind(kind));
}

Operator jw_fermion(const SpacePtr& space, int n) {
    if (n < 0 || n >= space->site_count())
        throw ContractViolation("jw_fermion: site index out of range");
    for (int m = 0; m <= n; ++m)
        if (space->site(m).kind != SiteKind::TwoLevel)
            throw ContractViolation("jw_fermion: oscillator site inside the string range 0..n");

    // f_n flips |↑⟩_n → |↓⟩_n with the string sign Π_{m<n}(−2 S_m^z).
    const Index dim = space->dimension();
    const Index stride_n = space->stride(n);
    std::vector<Triplet> triplets;
    triplets.reserve(dim / 2);
    for (Index col = 0; col < dim; ++col) {
        if (space->local_index(col, n) != 0) continue; // S^− annihilates |↓⟩
        double sign = 1.0;
        for (int m = 0; m < n; ++m)
            if (space->local_index(col, m) == 0) sign = -sign;
        triplets.emplace_back(static_cast<int>(col + stride_n), static_cast<int>(col), sign);
    }
    SparseMatrixC m(dim, dim);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return Operator(space, std::move(m), false);
}

double verify_fermion_algebra(int n_sites) {
    if (n_sites < 1 || n_sites > 8) {
        std::ostringstream msg;
        msg << "verify_fermion_algebra: dense check supports 1..8 sites, got " << n_sites;
        throw ResourceError(msg.str());
    }
    const SpacePtr space = HilbertSpace::spin_chain(n_sites);
    std::vector<Eigen::MatrixXcd> f;
    f.reserve(n_sites);
    for (int n = 0; n < n_sites; ++n) f.push_back(jw_fermion(space, n).dense());

    const Eigen::MatrixXcd id =
        Eigen::MatrixXcd::Identity(space->dimension(), space->dimension());
    double max_dev = 0.0;
    auto anti = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
        return Eigen::MatrixXcd(a * b + b * a);
    };
    for (int m = 0; m < n_sites; ++m) {
        for (int n = 0; n < n_sites; ++n) {
            max_dev = std::max(max_dev, anti(f[m], f[n]).cwiseAbs().maxCoeff());
            max_dev =
                std::max(max_dev, anti(f[m].adjoint(), f[n].adjoint()).cwiseAbs().maxCoeff());
            Eigen::MatrixXcd mixed = anti(f[m], f[n].adjoint());
            if (m == n) mixed -= id;
            max_dev = std::max(max_dev, mixed.cwiseAbs().maxCoeff());
        }
    }
    return max_dev;
}

Operator xxz_hamiltonian(int n_sites, double j_xy, double j_z, double b_z, Boundary boundary) {
    if (n_sites < 2) throw ContractViolation("xxz_hamiltonian: needs at least 2 sites");
    const SpacePtr space = HilbertSpace::spin_chain(n_sites);
    SparseMatrixC h(space->dimension(), space->dimension());
    const int n_bonds = boundary == Boundary::Periodic ? n_sites : n_sites - 1;
    for (int b = 0; b < n_bonds; ++b) {
        const int i = b;
        const int j = (b + 1) % n_sites;
        const Operator sp_i = site_operator(space, i, SiteOperatorKind::SPlus);
        const Operator sm_i = site_operator(space, i, SiteOperatorKind::SMinus);
        const Operator sp_j = site_operator(space, j, SiteOperatorKind::SPlus);
        const Operator sm_j = site_operator(space, j, SiteOperatorKind::SMinus);
        const Operator sz_i = site_operator(space, i, SiteOperatorKind::Sz);
        const Operator sz_j = site_operator(space, j, SiteOperatorKind::Sz);
        // S^x S^x + S^y S^y = (S^+ S^- + S^- S^+)/2
        h += Complex(-0.5 * j_xy) * (sp_i * sm_j + sm_i * sp_j).matrix();
        h += Complex(j_z) * (sz_i * sz_j).matrix();
    }
    if (b_z != 0.0) h += Complex(-b_z) * total_sz(space).matrix();
    return Operator(space, std::move(h), true);
}

Operator free_fermion_hamiltonian(int n_sites, double j_xy, double j_z, Boundary boundary) {
    if (n_sites < 2) throw ContractViolation("free_fermion_hamiltonian: needs at least 2 sites");
    if (boundary == Boundary::Periodic)
        throw UnsupportedError(
            "free_fermion_hamiltonian: the periodic spin ring maps to fermions with a "
            "parity-dependent boundary string term; only Open boundary is provided");
    const SpacePtr space = HilbertSpace::spin_chain(n_sites);
    const Operator id = identity_op(space);
    SparseMatrixC h(space->dimension(), space->dimension());
    for (int n = 0; n + 1 < n_sites; ++n) {
        const Operator f_n = jw_fermion(space, n);
        const Operator f_n1 = jw_fermion(space, n + 1);
        const Operator hop = f_n.adjoint() * f_n1 + f_n1.adjoint() * f_n;
        h += Complex(-0.5 * j_xy) * hop.matrix();
        const Operator dens_n = f_n.adjoint() * f_n - 0.5 * id;
        const Operator dens_n1 = f_n1.adjoint() * f_n1 - 0.5 * id;
        h += Complex(j_z) * (dens_n * dens_n1).matrix();
    }
    return Operator(space, std::move(h), true);
}

OscillatorHamiltonian oscillator_hamiltonian(int n_max, double omega, double lambda_scaled) {
    if (n_max < 1) throw ContractViolation("oscillator_hamiltonian: n_max must be >= 1");
    if (lambda_scaled != 0.0 && n_max < 2)
        throw ContractViolation("oscillator_hamiltonian: anharmonic term needs n_max >= 2");
    const SpacePtr space = HilbertSpace::single_oscillator(n_max);
    const Operator num = site_operator(space, 0, SiteOperatorKind::NumOp);
    const Operator id = identity_op(space);
    Operator h = omega * (num + 0.5 * id);
    bool reordered = false;
    if (lambda_scaled != 0.0) {
        const Operator phi = site_operator(space, 0, SiteOperatorKind::Phi);
        const Operator phi2 = phi * phi;
        h = Operator(space, h.matrix() - Complex(lambda_scaled) * (phi2 * phi2).matrix(), true);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.dense());
        reordered = std::norm(solver.eigenvectors()(0, 0)) <= 0.5;
    }
    return OscillatorHamiltonian{std::move(h), reordered};
}

Operator total_sz(const SpacePtr& space) {
    SparseMatrixC m(space->dimension(), space->dimension());
    for (int k = 0; k < space->site_count(); ++k)
        if (space->site(k).kind == SiteKind::TwoLevel)
            m += site_operator(space, k, SiteOperatorKind::Sz).matrix();
    return Operator(space, std::move(m), true);
}

Operator total_fermion_number(const SpacePtr& space) {
    int n_spins = 0;
    for (int k = 0; k < space->site_count(); ++k)
        if (space->site(k).kind == SiteKind::TwoLevel) ++n_spins;
    SparseMatrixC m = total_sz(space).matrix();
    SparseMatrixC id(space->dimension(), space->dimension());
    id.setIdentity();
    m += Complex(0.5 * n_spins) * id;
    return Operator(space, std::move(m), true);
}

} // namespace jja
