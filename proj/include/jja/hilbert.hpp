#pragma once

// Labeled tensor-product Hilbert spaces (two-level sites and truncated
// oscillators), sparse operators on them, normalized state vectors, and
// conserved-quantity sector projectors.
//
// Basis convention: site 0 is the slowest (most significant) tensor factor;
// a basis index decomposes as idx = Σ_k local_k · stride_k. For a TwoLevel
// site local index 0 is |↑⟩ (S^z = +1/2, fermion-occupied under the
// Jordan-Wigner map), local index 1 is |↓⟩.

#include "jja/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace jja {

using Complex = std::complex<double>;
using SparseMatrixC = Eigen::SparseMatrix<Complex>;
using Index = std::int64_t;

enum class SiteKind { TwoLevel, Oscillator };

struct Site {
    SiteKind kind;
    int dim; ///< 2 for TwoLevel, n_max+1 for Oscillator
};

class HilbertSpace {
public:
    explicit HilbertSpace(std::vector<Site> sites);

    static std::shared_ptr<const HilbertSpace> spin_chain(int n_sites);
    static std::shared_ptr<const HilbertSpace> single_oscillator(int n_max);
    /// N two-level sites followed by N local oscillators (spins first so the
    /// Jordan-Wigner string never crosses an oscillator site).
    static std::shared_ptr<const HilbertSpace> spin_phonon_chain(int n_sites, int n_max);

    int site_count() const { return static_cast<int>(sites_.size()); }
    const Site& site(int k) const { return sites_[k]; }
    Index dimension() const { return dim_; }
    Index stride(int k) const { return strides_[k]; }
    int local_index(Index basis_index, int k) const {
        return static_cast<int>((basis_index / strides_[k]) % sites_[k].dim);
    }

    bool operator==(const HilbertSpace& other) const;

private:
    std::vector<Site> sites_;
    std::vector<Index> strides_;
    Index dim_ = 1;
};

using SpacePtr = std::shared_ptr<const HilbertSpace>;

/// Sparse operator on a HilbertSpace. Immutable after construction; the
/// hermitian flag is set by builders that guarantee it and carried through
/// flag-preserving arithmetic.
class Operator {
public:
    Operator(SpacePtr space, SparseMatrixC matrix, bool hermitian = false);

    const SpacePtr& space() const { return space_; }
    const SparseMatrixC& matrix() const { return mat_; }
    bool hermitian_flag() const { return hermitian_; }
    Index dimension() const { return space_->dimension(); }

    /// max |A − A†| entry.
    double hermiticity_defect() const;
    double max_abs() const;

    Operator adjoint() const;
    /// Dense conversion, guarded to dimension <= 4096.
    Eigen::MatrixXcd dense() const;
    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

    Operator operator+(const Operator& rhs) const;
    Operator operator-(const Operator& rhs) const;
    Operator operator*(const Operator& rhs) const; ///< operator product
    friend Operator operator*(Complex scalar, const Operator& op);
    friend Operator operator*(double scalar, const Operator& op);

    /// Structural space-compatibility check; throws ContractViolation.
    void require_same_space(const Operator& other) const;

private:
    SpacePtr space_;
    SparseMatrixC mat_;
    bool hermitian_;
};

Operator identity_op(const SpacePtr& space);

/// Normalized complex amplitude vector over a HilbertSpace.
class StateVector {
public:
    StateVector(SpacePtr space, Eigen::VectorXcd amplitudes);

    /// Product basis state from per-site local indices.
    static StateVector basis_state(SpacePtr space, const std::vector<int>& local_indices);

    const SpacePtr& space() const { return space_; }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    double norm() const { return amps_.norm(); }

    /// <ψ|O|ψ> as a real number; throws if the imaginary part exceeds 1e-9.
    double expectation(const Operator& op) const;
    Complex overlap(const StateVector& other) const;

private:
    SpacePtr space_;
    Eigen::VectorXcd amps_;
};

enum class ConservedQuantity { TotalSz, FermionNumber, ExcitationNumber };

/// Quantum number of one basis state: total S^z over two-level sites, total
/// fermion number Σ(S^z+1/2), or total excitation number (qubit excited
/// population plus oscillator quanta; the excited state is local index 1).
double basis_quantum_number(const HilbertSpace& space, Index basis_index,
                            ConservedQuantity quantity);

/// Projector onto the eigenspace of a conserved quantity, stored as the list
/// of basis indices with the requested eigenvalue.
class SectorProjector {
public:
    SectorProjector(SpacePtr space, ConservedQuantity quantity, double eigenvalue);

    const SpacePtr& space() const { return space_; }
    ConservedQuantity quantity() const { return quantity_; }
    double eigenvalue() const { return eigenvalue_; }
    Index dimension() const { return static_cast<Index>(indices_.size()); }
    const std::vector<Index>& basis_indices() const { return indices_; }

    /// Sector-restricted matrix P A P. With check_block_structure, any matrix
    /// element coupling the sector to its complement above 1e-12 raises
    /// ContractViolation (the operator does not conserve the quantity).
    SparseMatrixC project(const Operator& op, bool check_block_structure = false) const;

    Eigen::VectorXcd restrict(const Eigen::VectorXcd& full) const;
    Eigen::VectorXcd embed(const Eigen::VectorXcd& sector) const;

private:
    SpacePtr space_;
    ConservedQuantity quantity_;
    double eigenvalue_;
    std::vector<Index> indices_;
    std::vector<Index> full_to_sector_; ///< -1 when outside the sector
};

/// Total weight of a state on basis states where at least one oscillator
/// site sits at its truncation level n_max. Used for cutoff-adequacy checks.
double top_level_weight(const StateVector& state);
double top_level_weight(const HilbertSpace& space, const Eigen::VectorXcd& amplitudes);

} // namespace jja
