#include "jja/hilbert.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace jja {

HilbertSpace::HilbertSpace(std::vector<Site> sites) : sites_(std::move(sites)) {
    if (sites_.empty()) throw std::invalid_argument("HilbertSpace: needs at least one site");
    for (const Site& s : sites_) {
        const int min_dim = s.kind == SiteKind::TwoLevel ? 2 : 2; // n_max >= 1
        if (s.dim < min_dim) throw std::invalid_argument("HilbertSpace: site dimension too small");
        if (s.kind == SiteKind::TwoLevel && s.dim != 2)
            throw std::invalid_argument("HilbertSpace: TwoLevel site must have dimension 2");
    }
    strides_.assign(sites_.size(), 1);
    for (int k = static_cast<int>(sites_.size()) - 2; k >= 0; --k)
        strides_[k] = strides_[k + 1] * sites_[k + 1].dim;
    dim_ = strides_[0] * sites_[0].dim;
    if (dim_ <= 0 || dim_ > (Index(1) << 40))
        throw ResourceError("HilbertSpace: total dimension overflows the supported range");
}

std::shared_ptr<const HilbertSpace> HilbertSpace::spin_chain(int n_sites) {
    std::vector<Site> sites(n_sites, Site{SiteKind::TwoLevel, 2});
    return std::make_shared<HilbertSpace>(std::move(sites));
}

std::shared_ptr<const HilbertSpace> HilbertSpace::single_oscillator(int n_max) {
    return std::make_shared<HilbertSpace>(std::vector<Site>{Site{SiteKind::Oscillator, n_max + 1}});
}

std::shared_ptr<const HilbertSpace> HilbertSpace::spin_phonon_chain(int n_sites, int n_max) {
    std::vector<Site> sites;
    sites.reserve(2 * n_sites);
    for (int i = 0; i < n_sites; ++i) sites.push_back(Site{SiteKind::TwoLevel, 2});
    for (int i = 0; i < n_sites; ++i) sites.push_back(Site{SiteKind::Oscillator, n_max + 1});
    return std::make_shared<HilbertSpace>(std::move(sites));
}

bool HilbertSpace::operator==(const HilbertSpace& other) const {
    if (sites_.size() != other.sites_.size()) return false;
    for (std::size_t k = 0; k < sites_.size(); ++k)
        if (sites_[k].kind != other.sites_[k].kind || sites_[k].dim != other.sites_[k].dim)
            return false;
    return true;
}

Operator::Operator(SpacePtr space, SparseMatrixC matrix, bool hermitian)
    : space_(std::move(space)), mat_(std::move(matrix)), hermitian_(hermitian) {
    if (!space_) throw ContractViolation("Operator: null space");
    if (mat_.rows() != space_->dimension() || mat_.cols() != space_->dimension())
        throw ContractViolation("Operator: matrix dimensions do not match the space");
    mat_.makeCompressed();
}

double Operator::hermiticity_defect() const {
    SparseMatrixC diff = mat_ - SparseMatrixC(mat_.adjoint());
    double m = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SparseMatrixC::InnerIterator it(diff, k); it; ++it)
            m = std::max(m, std::abs(it.value()));
    return m;
}

double Operator::max_abs() const {
    double m = 0.0;
    for (int k = 0; k < mat_.outerSize(); ++k)
        for (SparseMatrixC::InnerIterator it(mat_, k); it; ++it)
            m = std::max(m, std::abs(it.value()));
    return m;
}

Operator Operator::adjoint() const {
    return Operator(space_, SparseMatrixC(mat_.adjoint()), hermitian_);
}

Eigen::MatrixXcd Operator::dense() const {
    if (dimension() > 4096) {
        std::ostringstream msg;
        msg << "Operator::dense: dimension " << dimension() << " exceeds the dense budget 4096";
        throw ResourceError(msg.str());
    }
    return Eigen::MatrixXcd(mat_);
}

Eigen::VectorXcd Operator::apply(const Eigen::VectorXcd& v) const {
    if (v.size() != dimension())
        throw ContractViolation("Operator::apply: vector dimension mismatch");
    return mat_ * v;
}

void Operator::require_same_space(const Operator& other) const {
    if (!(*space_ == *other.space_))
        throw ContractViolation("Operator: operands live on different spaces");
}

Operator Operator::operator+(const Operator& rhs) const {
    require_same_space(rhs);
    return Operator(space_, mat_ + rhs.mat_, hermitian_ && rhs.hermitian_);
}

Operator Operator::operator-(const Operator& rhs) const {
    require_same_space(rhs);
    return Operator(space_, mat_ - rhs.mat_, hermitian_ && rhs.hermitian_);
}

Operator Operator::operator*(const Operator& rhs) const {
    require_same_space(rhs);
    return Operator(space_, SparseMatrixC(mat_ * rhs.mat_), false);
}

Operator operator*(Complex scalar, const Operator& op) {
    const bool herm = op.hermitian_ && scalar.imag() == 0.0;
    return Operator(op.space_, SparseMatrixC(scalar * op.mat_), herm);
}

Operator operator*(double scalar, const Operator& op) {
    return Complex(scalar, 0.0) * op;
}

Operator identity_op(const SpacePtr& space) {
    SparseMatrixC id(space->dimension(), space->dimension());
    id.setIdentity();
    return Operator(space, std::move(id), true);
}

StateVector::StateVector(SpacePtr space, Eigen::VectorXcd amplitudes)
    : space_(std::move(space)), amps_(std::move(amplitudes)) {
    if (!space_) throw ContractViolation("StateVector: null space");
    if (amps_.size() != space_->dimension())
        throw ContractViolation("StateVector: amplitude vector does not match the space dimension");
    if (std::abs(amps_.norm() - 1.0) > 1e-9)
        throw ContractViolation("StateVector: amplitudes are not normalized");
}

StateVector StateVector::basis_state(SpacePtr space, const std::vector<int>& local_indices) {
    if (static_cast<int>(local_indices.size()) != space->site_count())
        throw ContractViolation("StateVector::basis_state: one local index per site required");
    Index idx = 0;
    for (int k = 0; k < space->site_count(); ++k) {
        if (local_indices[k] < 0 || local_indices[k] >= space->site(k).dim)
            throw ContractViolation("StateVector::basis_state: local index out of range");
        idx += static_cast<Index>(local_indices[k]) * space->stride(k);
    }
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(space->dimension());
    amps[idx] = 1.0;
    return StateVector(std::move(space), std::move(amps));
}

double StateVector::expectation(const Operator& op) const {
    if (!(*space_ == *op.space()))
        throw ContractViolation("StateVector::expectation: operator lives on a different space");
    const Complex val = amps_.dot(op.matrix() * amps_);
    if (std::abs(val.imag()) > 1e-9)
        throw ContractViolation("StateVector::expectation: expectation has a large imaginary part "
                                "(operator not hermitian?)");
    return val.real();
}

Complex StateVector::overlap(const StateVector& other) const {
    if (!(*space_ == *other.space_))
        throw ContractViolation("StateVector::overlap: states live on different spaces");
    return amps_.dot(other.amps_);
}

double basis_quantum_number(const HilbertSpace& space, Index basis_index,
                            ConservedQuantity quantity) {
    double q = 0.0;
    for (int k = 0; k < space.site_count(); ++k) {
        const int local = space.local_index(basis_index, k);
        switch (quantity) {
        case ConservedQuantity::TotalSz:
            if (space.site(k).kind == SiteKind::TwoLevel) q += local == 0 ? 0.5 : -0.5;
            break;
        case ConservedQuantity::FermionNumber:
            if (space.site(k).kind == SiteKind::TwoLevel) q += local == 0 ? 1.0 : 0.0;
            break;
        case ConservedQuantity::ExcitationNumber:
            q += space.site(k).kind == SiteKind::TwoLevel ? (local == 1 ? 1.0 : 0.0)
                                                          : static_cast<double>(local);
            break;
        }
    }
    return q;
}

SectorProjector::SectorProjector(SpacePtr space, ConservedQuantity quantity, double eigenvalue)
    : space_(std::move(space)), quantity_(quantity), eigenvalue_(eigenvalue) {
    const Index dim = space_->dimension();
    full_to_sector_.assign(dim, -1);
    for (Index idx = 0; idx < dim; ++idx) {
        if (std::abs(basis_quantum_number(*space_, idx, quantity_) - eigenvalue_) < 1e-9) {
            full_to_sector_[idx] = static_cast<Index>(indices_.size());
            indices_.push_back(idx);
        }
    }
    if (indices_.empty())
        throw ContractViolation("SectorProjector: no basis state carries the requested eigenvalue");
}

SparseMatrixC SectorProjector::project(const Operator& op, bool check_block_structure) const {
    if (!(*space_ == *op.space()))
        throw ContractViolation("SectorProjector: operator lives on a different space");
    const SparseMatrixC& m = op.matrix();
    std::vector<Eigen::Triplet<Complex>> triplets;
    triplets.reserve(m.nonZeros());
    for (int k = 0; k < m.outerSize(); ++k) {
        for (SparseMatrixC::InnerIterator it(m, k); it; ++it) {
            const Index r = full_to_sector_[it.row()];
            const Index c = full_to_sector_[it.col()];
            if (r >= 0 && c >= 0) {
                triplets.emplace_back(static_cast<int>(r), static_cast<int>(c), it.value());
            } else if (check_block_structure && (r >= 0) != (c >= 0) &&
                       std::abs(it.value()) > 1e-12) {
                throw ContractViolation("SectorProjector: operator couples the sector to its "
                                        "complement (does not conserve the quantity)");
            }
        }
    }
    SparseMatrixC out(dimension(), dimension());
    out.setFromTriplets(triplets.begin(), triplets.end());
    out.makeCompressed();
    return out;
}

Eigen::VectorXcd SectorProjector::restrict(const Eigen::VectorXcd& full) const {
    if (full.size() != space_->dimension())
        throw ContractViolation("SectorProjector::restrict: dimension mismatch");
    Eigen::VectorXcd out(dimension());
    for (Index i = 0; i < dimension(); ++i) out[i] = full[indices_[i]];
    return out;
}

Eigen::VectorXcd SectorProjector::embed(const Eigen::VectorXcd& sector) const {
    if (sector.size() != dimension())
        throw ContractViolation("SectorProjector::embed: dimension mismatch");
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(space_->dimension());
    for (Index i = 0; i < dimension(); ++i) out[indices_[i]] = sector[i];
    return out;
}

double top_level_weight(const HilbertSpace& space, const Eigen::VectorXcd& amplitudes) {
    if (amplitudes.size() != space.dimension())
        throw ContractViolation("top_level_weight: dimension mismatch");
    double w = 0.0;
    for (Index idx = 0; idx < space.dimension(); ++idx) {
        for (int k = 0; k < space.site_count(); ++k) {
            if (space.site(k).kind == SiteKind::Oscillator &&
                space.local_index(idx, k) == space.site(k).dim - 1) {
                w += std::norm(amplitudes[idx]);
                break;
            }
        }
    }
    return w;
}

double top_level_weight(const StateVector& state) {
    return top_level_weight(*state.space(), state.amplitudes());
}

} // namespace jja
