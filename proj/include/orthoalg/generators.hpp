#pragma once

#include "orthoalg/lattice.hpp"
#include "orthoalg/observable.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace orthoalg {

// ── Deterministic randomness ──────────────────────────────────────────────
//
// All draws go through mt19937_64 raw output (whose sequence the standard
// pins down exactly) instead of std distributions (whose mappings it does
// not), so a (seed, trial) pair replays the same instance everywhere.

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t seed, std::uint64_t stream);  // per-trial substream

    std::uint64_t next() { return engine_(); }
    double real01();                    // uniform [0, 1)
    double normal();                    // standard normal, Box–Muller
    int index(int n);                   // uniform {0, …, n−1}
    int int_range(int lo, int hi);      // uniform {lo, …, hi}
    double pick(const std::vector<double>& values);

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// ── Random instances ──────────────────────────────────────────────────────

// Haar-ish random unitary: QR of a complex Gaussian matrix with the phase
// convention R_ii > 0.
Matrix random_unitary(int dim, Rng& rng);

// Dense Hermitian matrix with Gaussian entries (continuous spectrum;
// generically non-degenerate and non-commuting with anything).
Observable random_observable(int dim, Rng& rng, const Tolerances& tol);

// `count` mutually orthogonal observables: partition {0..dim-1} into
// disjoint index blocks (plus slack left for the joint kernel), fill each
// block with spectrum-style values, then conjugate everything by one shared
// random unitary so the instances are dense.
std::vector<Observable> random_orthogonal_tuple(int dim, int count, Rng& rng,
                                                const Tolerances& tol, SpectrumStyle style);

// A ⪯ B by construction: B random with style values, A = Σ λ·(random
// subprojection of B's λ-eigenspace) over a subset of B's atoms.
std::pair<Observable, Observable> random_comparable_pair(int dim, Rng& rng,
                                                         const Tolerances& tol,
                                                         SpectrumStyle style);

// A ⪯ B ⪯ C by iterating the subprojection construction.
std::array<Observable, 3> random_chain(int dim, Rng& rng, const Tolerances& tol,
                                       SpectrumStyle style);

// Pair mixes for the relation sweeps: cycles through orthogonal pairs,
// range-overlapping commuting pairs, generic non-commuting pairs,
// comparable pairs, and perturbed near-comparable pairs.
enum class PairKind {
    orthogonal,
    overlapping,
    generic,
    comparable,
    near_comparable,
};

std::pair<Observable, Observable> random_pair(PairKind kind, int dim, Rng& rng,
                                              const Tolerances& tol, SpectrumStyle style);

// Spectrum-style value pools. well_separated draws from nonzero integers in
// [-3, 3]; clustered draws base values in ±[0.1, 0.5] (keeping ‖H‖ < 1) and
// then splits them by gaps of exactly 10 * cluster_rel * max(1, ‖H‖), the
// smallest separation the decomposition contract promises to resolve.
std::vector<double> style_values(SpectrumStyle style, int count, Rng& rng,
                                 const Tolerances& tol);

}  // namespace orthoalg
