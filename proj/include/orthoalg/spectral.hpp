#pragma once

#include "orthoalg/hermitian.hpp"
#include "orthoalg/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace orthoalg {

// ── Projection ────────────────────────────────────────────────────────────
//
// An orthogonal projection carried in two synchronized forms: the dim x dim
// matrix and a dim x rank orthonormal column basis of its range. The basis
// is what the subspace algebra (meet / join / ordering) actually computes
// with; the matrix form is for residual tests and reconstruction.

class Projection {
public:
    // Validates: Hermitian, idempotent within proj_tol, spectrum within
    // proj_tol of {0,1}. Throws InvalidProjection otherwise.
    static Projection from_matrix(const Matrix& m, const Tolerances& tol);

    // Builds VV† from orthonormal columns. Validates ‖V†V − I‖ ≤ proj_tol.
    static Projection from_basis(const Matrix& orthonormal_cols, const Tolerances& tol);

    static Projection zero(int dim);
    static Projection identity(int dim);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    int rank() const { return static_cast<int>(basis_.cols()); }
    const Matrix& matrix() const { return matrix_; }
    const Matrix& basis() const { return basis_; }

private:
    Projection(Matrix matrix, Matrix basis)
        : matrix_(std::move(matrix)), basis_(std::move(basis)) {}

    Matrix matrix_;  // dim x dim, Hermitian idempotent
    Matrix basis_;   // dim x rank, orthonormal columns spanning the range
};

// Largest subprojection contained in both: intersection of ranges, computed
// from principal angles between the two range bases (cosine ≥ 1 − proj_tol
// counts as a shared direction).
Projection proj_meet(const Projection& p, const Projection& q, const Tolerances& tol);

// Smallest projection dominating both: projection onto ran(P) + ran(Q),
// computed by an SVD rank cut of the concatenated bases. The singular-value
// cutoff sqrt(proj_tol) makes join consistent with meet under
// complementation: P ∨ Q = I − ((I−P) ∧ (I−Q)) within proj_tol.
Projection proj_join(const Projection& p, const Projection& q, const Tolerances& tol);

// Subprojection test P ≤ Q, i.e. QP = P within proj_tol (operator norm).
bool proj_leq(const Projection& p, const Projection& q, const Tolerances& tol);

// I − P, revalidated through from_matrix.
Projection proj_complement(const Projection& p, const Tolerances& tol);

// ── BorelSet ──────────────────────────────────────────────────────────────
//
// In finite dimension a spectral measure only ever sees finitely many
// points, so a Borel set is represented by the finite set of real points it
// may contain. Points within zero_abs of 0 are snapped to exactly 0 so that
// "contains 0" is a well-defined question.

class BorelSet {
public:
    BorelSet() = default;
    BorelSet(std::vector<double> points, const Tolerances& tol);

    const std::vector<double>& points() const { return points_; }
    bool empty() const { return points_.empty(); }
    bool contains_zero() const;
    bool contains(double x) const;  // exact membership, post-snap

private:
    std::vector<double> points_;  // sorted, deduplicated
};

// ── SpectralDecomposition ─────────────────────────────────────────────────

struct SpectralAtom {
    double value = 0.0;  // exactly 0.0 for the kernel atom
    Projection proj;
};

// Finite resolution of a Hermitian matrix: strictly increasing atom values
// with mutually orthogonal projections summing to the identity. Produced by
// decompose(); constructible directly for hand-built resolutions (validated
// either way, throwing InvalidResolution).
class SpectralDecomposition {
public:
    SpectralDecomposition(std::vector<SpectralAtom> atoms, double norm,
                          double value_match_tol, bool cluster_ambiguity,
                          const Tolerances& tol);

    int dim() const { return atoms_.front().proj.dim(); }
    const std::vector<SpectralAtom>& atoms() const { return atoms_; }

    // Operator norm of the decomposed matrix (max |eigenvalue|).
    double norm() const { return norm_; }

    // The clustering threshold that was in force: two spectral values closer
    // than this are indistinguishable to every atom-matching operation.
    double value_match_tol() const { return value_match_tol_; }

    // True when some eigenvalue cluster had diameter above the threshold, so
    // the atom split depended on the merge order. Reported, never thrown.
    bool cluster_ambiguity() const { return cluster_ambiguity_; }

    const Tolerances& tolerances() const { return tol_; }

    // Index of the exact-0 atom, if present.
    std::optional<int> zero_atom_index() const;
    std::vector<int> nonzero_atom_indices() const;

    // Atom index whose value is within value_match_tol of x (the snap/merge
    // rules make this unique when it exists).
    std::optional<int> atom_near(double x) const;

private:
    std::vector<SpectralAtom> atoms_;
    double norm_ = 0.0;
    double value_match_tol_ = 0.0;
    bool cluster_ambiguity_ = false;
    Tolerances tol_;
};

// Eigendecompose and cluster: eigenvalues within zero_abs * max(1,‖H‖) of 0
// snap to exactly 0; sorted eigenvalues chain-merge while consecutive gaps
// stay within cluster_rel * max(1,‖H‖); each cluster becomes one atom whose
// value is the cluster mean (exactly 0 for the snapped cluster).
SpectralDecomposition decompose(const HermitianMatrix& h, const Tolerances& tol);

// P^H(Δ): sum of the atom projections whose value matches a point of Δ.
Projection spectral_projection(const SpectralDecomposition& d, const BorelSet& delta);

// (P_H, N_H): projections onto range and null space, P + N = I.
std::pair<Projection, Projection> range_null_projections(const SpectralDecomposition& d);

// Σ value·proj from any orthogonal resolution of the identity. Validates
// pairwise orthogonality and completeness (throws InvalidResolution).
HermitianMatrix reconstruct(const std::vector<SpectralAtom>& atoms, const Tolerances& tol);

// ── Partition ─────────────────────────────────────────────────────────────
//
// A partition of a finite point set into disjoint nonempty blocks. Used by
// the lattice tests: the meet is an infimum over all partitions of the
// shared spectrum, and refining a partition can only shrink the blockwise
// projection sum.

struct Partition {
    std::vector<std::vector<double>> blocks;

    // Validates: blocks nonempty, pairwise disjoint, union equal to
    // `parent` (exact point equality; callers pass snapped values).
    Partition(const std::vector<double>& parent, std::vector<std::vector<double>> blocks_in);
};

}  // namespace orthoalg
