#pragma once

#include "orthoalg/generators.hpp"
#include "orthoalg/observable.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace orthoalg::oracle {

// ── Exact combinatorial model ─────────────────────────────────────────────
//
// On simultaneously diagonal observables every notion becomes integer
// bookkeeping: coordinates replace eigenspaces, exact equality replaces
// tolerances. This model is computed with no floating point at all, so it
// can sit in judgment over the matrix implementation.

struct DiagonalObservable {
    std::vector<std::int64_t> values;  // diagonal entries, 0 = kernel

    int dim() const { return static_cast<int>(values.size()); }
    bool operator==(const DiagonalObservable& o) const { return values == o.values; }
};

// a ⊥ b: supports disjoint (no coordinate nonzero in both).
bool oracle_orthogonal(const DiagonalObservable& a, const DiagonalObservable& b);

// a ⪯ b: every nonzero coordinate of a equals that coordinate of b.
bool oracle_leq(const DiagonalObservable& a, const DiagonalObservable& b);

// a ∧ b by definition: the pointwise infimum over every partition of the
// combined nonzero value set (coordinate survives a partition iff both
// values are nonzero and fall in the same block). Exhaustive over all set
// partitions; throws TooManyAtoms when the combined value set exceeds 5.
DiagonalObservable oracle_meet_bruteforce(const DiagonalObservable& a,
                                          const DiagonalObservable& b);

// a ∧ b by the closed form: keep coordinates where a and b agree and are
// nonzero. The brute-force enumeration must reproduce this exactly.
DiagonalObservable oracle_meet_closed_form(const DiagonalObservable& a,
                                           const DiagonalObservable& b);

struct OracleJoinOutcome {
    std::optional<DiagonalObservable> result;
    std::optional<int> violating_coordinate;  // set iff no upper bound
    bool ok() const { return result.has_value(); }
};

// a ∨ b: defined iff no coordinate carries two different nonzero values;
// then the join takes the nonzero value wherever either has one.
OracleJoinOutcome oracle_join(const DiagonalObservable& a, const DiagonalObservable& b);

// Lift into the matrix world: U diag(a) U†. Checks ‖U†U − I‖ ≤ proj_tol
// (throws NotUnitary). Conjugating a and b by the *same* unitary preserves
// every relation, which is what makes differential testing sound.
Observable embed(const DiagonalObservable& a, const Matrix& u, const Tolerances& tol);

// ── Set partitions ────────────────────────────────────────────────────────

// Visits every partition of {0..n-1} exactly once as a restricted-growth
// string (rgs[i] = block id of element i, rgs[0] = 0, each new id one more
// than the running max). Lexicographic order, deterministic.
void for_each_set_partition(int n, const std::function<void(const std::vector<int>&)>& visit);

std::uint64_t count_set_partitions(int n);

// fine refines coarse: every fine-block sits inside one coarse-block.
bool is_refinement(const std::vector<int>& fine_rgs, const std::vector<int>& coarse_rgs);

// ── Differential sweep ────────────────────────────────────────────────────
//
// Per trial: draw a random integer diagonal pair and one shared random
// unitary; ask the matrix implementation and the integer oracle the same
// questions; any disagreement is a finding. Matrix results are compared
// after embedding, within proj_tol * max(1, scale).

struct DifferentialFinding {
    std::uint64_t trial = 0;
    std::string check;   // "orth" | "leq" | "meet" | "meet_bruteforce" | "join"
    std::string detail;
    DiagonalObservable a, b;
    std::uint64_t unitary_stream = 0;  // replay: random_unitary(dim, Rng(seed, stream))
};

struct DifferentialReport {
    std::uint64_t trials = 0;
    int dim = 0;
    std::uint64_t seed = 0;
    std::uint64_t checks = 0;
    std::vector<DifferentialFinding> findings;
    bool all_passed() const { return findings.empty(); }
};

DifferentialReport differential_sweep(std::uint64_t trials, int dim, std::uint64_t seed,
                                      const Tolerances& tol);

}  // namespace orthoalg::oracle
