#pragma once

#include "orthoalg/observable.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace orthoalg {

// ── Meet ──────────────────────────────────────────────────────────────────
//
// The infimum of A and B under ⪯ always exists, and the partition infimum
// over the shared spectrum collapses to a single closed form: match nonzero
// atoms by value, intersect the matched eigenspaces, and sum
//
//     A ∧ B = Σ_λ λ · ( P^A({λ}) ∧ P^B({λ}) )
//
// over the matched values λ (matched value = midpoint of the pair). Atoms
// with no partner on the other side contribute nothing.
Observable meet(const Observable& a, const Observable& b);

// Iterated meet over a nonempty family (meet is associative up to tolerance;
// folding left is the canonical order). Throws EmptyFamily.
Observable meet_family(const std::vector<Observable>& family);

// ── Join ──────────────────────────────────────────────────────────────────

// A and B admit an upper bound iff distinct nonzero spectral values see
// orthogonal eigenspaces: P^A({λ}) P^B({μ}) = 0 whenever λ ≠ μ (as atoms).
// Equivalently, P^A(Δ1) P^B(Δ2) = 0 for all disjoint Borel sets avoiding 0.
struct JoinPrecondition {
    bool holds = true;
    double max_cross_residual = 0.0;
    // Atom values of the offending pair when the precondition fails.
    std::optional<std::pair<double, double>> violating_values;
};

JoinPrecondition join_precondition(const Observable& a, const Observable& b);

// When the precondition holds the join exists and equals
//
//     A ∨ B = Σ_λ λ · ( (P^A ∨ P^B)({λ}) )     (atom join at each value)
//
// where matched values use joined eigenspaces, unmatched atoms pass through,
// and the kernel atom is N_A ∧ N_B. When it fails there is no upper bound at
// all: `result` is empty and `precondition` says which values collide.
struct JoinOutcome {
    std::optional<Observable> result;
    JoinPrecondition precondition;
    bool ok() const { return result.has_value(); }
};

JoinOutcome join(const Observable& a, const Observable& b);

// Iterated join; stops at the first failing precondition. Throws EmptyFamily.
JoinOutcome join_family(const std::vector<Observable>& family);

// ── Simultaneous diagonalization ──────────────────────────────────────────

// For orthogonal A, B: a unitary U with U†AU and U†BU both diagonal,
// assembled from the atom bases of A, of B, and of the joint kernel.
// Throws NotOrthogonal when A ⊥ B fails.
Matrix common_abelian_witness(const Observable& a, const Observable& b);

// ── Axiom sweep ───────────────────────────────────────────────────────────

enum class SpectrumStyle {
    well_separated,  // integer-valued spectra, gaps ~1
    clustered,       // eigenvalue gaps at exactly 10x the cluster threshold
};

struct AxiomFailure {
    std::string axiom;
    std::uint64_t trial = 0;
    std::string detail;
    double residual = 0.0;
};

struct AxiomResult {
    std::uint64_t checks = 0;
    std::vector<AxiomFailure> failures;
};

// Randomized check of the six axioms on freshly generated instances:
//   OA1  x ⊥ y  ⇒  y ⊥ x  and  x ⊕ y = y ⊕ x           (sum exact)
//   OA2  pairwise-orthogonal triple sums associate: y ⊥ z, x ⊥ (y ⊕ z)
//        ⇒ x ⊕ y defined, (x ⊕ y) ⊥ z, sums equal
//   GOA3 x ⊥ y, x ⊕ y = x ⊕ z with y,z from the same orthogonal pool
//        ⇒ y = z (cancellation, via z' = (x ⊕ y) − x)
//   GOA4 x ⊥ y and x ⊕ y = 0  ⇒  x = y = 0
//   GOA5 0 ⊥ x and 0 ⊕ x = x
//   GOA6 x ⊥ x  ⇒  x = 0
// Each trial draws its own deterministic generator stream from (seed, trial),
// so reports are reproducible and failures can be replayed in isolation.
struct AxiomReport {
    std::uint64_t trials = 0;
    int dim = 0;
    std::uint64_t seed = 0;
    std::map<std::string, AxiomResult> axioms;
    bool all_passed() const;
    std::uint64_t total_checks() const;
    std::uint64_t total_failures() const;
};

AxiomReport axiom_suite(std::uint64_t trials, int dim, std::uint64_t seed,
                        const Tolerances& tol,
                        SpectrumStyle style = SpectrumStyle::well_separated);

// ── Position/momentum demo ────────────────────────────────────────────────

// Truncated harmonic-oscillator position Q and momentum P on an n-level
// system: every pair of nonzero eigenspaces intersects trivially, so
// Q ∧ P = 0 even though the canonical commutator survives truncation only
// approximately (the residual ‖QP − PQ − iħI‖ grows with the cutoff and is
// reported, not asserted).
struct HeisenbergPairSample {
    double q_value = 0.0, p_value = 0.0;
    int meet_rank = 0;
};

struct HeisenbergReport {
    int n = 0;
    double hbar = 1.0;
    double meet_norm = 0.0;          // ‖Q ∧ P‖, expected ≈ 0
    int max_pair_rank = 0;           // max rank of P^Q({λ}) ∧ P^P({μ})
    double commutator_residual = 0.0;
    std::vector<HeisenbergPairSample> pairs;
    std::string note;
};

HeisenbergReport heisenberg_demo(int n, double hbar, const Tolerances& tol);

}  // namespace orthoalg
