#pragma once

#include "orthoalg/spectral.hpp"

#include <optional>
#include <vector>

namespace orthoalg {

// ── Observable ────────────────────────────────────────────────────────────
//
// A Hermitian matrix together with its spectral decomposition, computed once
// at construction. All algebraic relations (⊥, ⊕, ⪯) are answered from the
// decomposition and cross-checked against direct matrix identities.

class Observable {
public:
    Observable(HermitianMatrix m, const Tolerances& tol);
    Observable(const Matrix& raw, const Tolerances& tol);

    static Observable zero(int dim, const Tolerances& tol);

    int dim() const { return matrix_.dim(); }
    const HermitianMatrix& hermitian() const { return matrix_; }
    const Matrix& matrix() const { return matrix_.entries(); }
    const SpectralDecomposition& decomposition() const { return decomp_; }
    const Tolerances& tolerances() const { return decomp_.tolerances(); }
    double norm() const { return decomp_.norm(); }
    bool is_zero() const { return decomp_.nonzero_atom_indices().empty(); }

private:
    HermitianMatrix matrix_;
    SpectralDecomposition decomp_;
};

// ── Orthogonality ─────────────────────────────────────────────────────────

// The five equivalent readings of A ⊥ B, all evaluated:
//   ranges    ‖P_B P_A‖ ≤ tol            (every range pair angle is right)
//   a_in_nb   ‖N_B P_A − P_A‖ ≤ tol      (ran A inside null B)
//   b_in_na   ‖N_A P_B − P_B‖ ≤ tol      (ran B inside null A)
//   ab_zero   ‖AB‖ ≤ tol·scale           (matrix product vanishes)
//   ba_zero   ‖BA‖ ≤ tol·scale
// Any disagreement between the five is an internal-consistency failure and
// throws EquivalenceViolation; it is never resolved silently.
struct OrthogonalityReport {
    bool verdict = false;
    bool ranges = false, a_in_nb = false, b_in_na = false, ab_zero = false, ba_zero = false;
    double r_ranges = 0, r_a_in_nb = 0, r_b_in_na = 0, r_ab = 0, r_ba = 0;
};

OrthogonalityReport is_orthogonal(const Observable& a, const Observable& b);

// Partial sum A ⊕ B = A + B, defined only when A ⊥ B (throws NotOrthogonal).
Observable oplus(const Observable& a, const Observable& b);

// ── Induced order ─────────────────────────────────────────────────────────

// A ⪯ B decided two independent ways:
//   algebraic       ‖A² − BA‖ ≤ tol·scale
//   atomwise        every nonzero atom of A matches a nonzero atom of B at
//                   the same value with eigenspace containment P^A ≤ P^B
// Disagreement throws EquivalenceViolation. When the verdict is true the
// complement C = B − A is returned: A ⊥ C and A ⊕ C = B.
struct OrderReport {
    bool verdict = false;
    bool algebraic = false;
    bool atomwise = false;
    double algebraic_residual = 0.0;
    std::optional<Observable> witness;  // present iff verdict
};

OrderReport leq(const Observable& a, const Observable& b);

// Principality: from B ⊥ C, B ⪯ A, C ⪯ A conclude B ⊕ C ⪯ A.
// Throws PreconditionFailed if the hypotheses do not hold.
bool check_principal(const Observable& b, const Observable& c, const Observable& a);

// A ⪯ B with B positive semidefinite forces the Loewner inequality A ≤ B
// (while ⪯ itself is strictly stronger than Loewner order). Throws
// PreconditionFailed unless A ⪯ B and B ⪰ 0.
bool check_loewner_consequence(const Observable& a, const Observable& b);

// Loewner comparison A ≤ B: min-eig(B − A) ≥ −proj_tol·max(1,‖A‖,‖B‖).
bool loewner_leq(const Observable& a, const Observable& b);

// ── Atom matching ─────────────────────────────────────────────────────────

// One-to-one matching of nonzero atoms by value, greedy nearest-first, with
// matching tolerance max of the two decompositions' value_match_tol.
struct AtomMatch {
    std::vector<std::pair<int, int>> pairs;  // (atom index in a, atom index in b)
    std::vector<int> only_a, only_b;         // unmatched nonzero atoms
    double tol = 0.0;
};

AtomMatch match_nonzero_atoms(const Observable& a, const Observable& b);

}  // namespace orthoalg
