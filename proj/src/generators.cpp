#include "orthoalg/generators.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace orthoalg {

// ── Rng ───────────────────────────────────────────────────────────────────

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 1))) {}

double Rng::real01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u = 1.0 - real01();  // (0, 1], keeps the log finite
    double r = std::sqrt(-2.0 * std::log(u));
    double theta = 2.0 * M_PI * real01();
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

int Rng::index(int n) {
    if (n <= 0) throw Error("Rng::index: empty range");
    return static_cast<int>(engine_() % static_cast<std::uint64_t>(n));
}

int Rng::int_range(int lo, int hi) {
    if (hi < lo) throw Error("Rng::int_range: inverted range");
    return lo + index(hi - lo + 1);
}

double Rng::pick(const std::vector<double>& values) {
    return values[static_cast<std::size_t>(index(static_cast<int>(values.size())))];
}

// ── Random instances ──────────────────────────────────────────────────────

Matrix random_unitary(int dim, Rng& rng) {
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);

    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        cplx d = r(i, i);
        cplx phase = (std::abs(d) == 0.0) ? cplx(1.0, 0.0) : d / std::abs(d);
        q.col(i) *= phase;
    }
    return q;
}

Observable random_observable(int dim, Rng& rng, const Tolerances& tol) {
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
    return Observable(Matrix(0.5 * (g + g.adjoint())), tol);
}

std::vector<double> style_values(SpectrumStyle style, int count, Rng& rng,
                                 const Tolerances& tol) {
    std::vector<double> out;
    out.reserve(count);
    if (style == SpectrumStyle::well_separated) {
        static const std::vector<double> pool = {-3, -2, -1, 1, 2, 3};
        for (int i = 0; i < count; ++i) out.push_back(rng.pick(pool));
        return out;
    }

    // Clustered: base magnitudes in [0.1, 0.5] keep the operator norm below
    // 1, so the effective cluster threshold is exactly cluster_rel and the
    // pair gap below is exactly 10x it -- the tightest split the
    // decomposition contract promises to keep apart.
    std::vector<double> bases;
    for (int s : {-1, 1})
        for (int k = 0; k <= 8; ++k) bases.push_back(s * (0.1 + 0.05 * k));
    const double gap = 10.0 * tol.cluster_rel;

    std::vector<int> order(bases.size());
    std::iota(order.begin(), order.end(), 0);
    for (int i = static_cast<int>(order.size()) - 1; i > 0; --i)
        std::swap(order[i], order[rng.index(i + 1)]);

    for (std::size_t b = 0; out.size() < static_cast<std::size_t>(count); ++b) {
        if (b >= order.size()) throw Error("style_values: clustered pool exhausted");
        double base = bases[order[b]];
        out.push_back(base);
        if (out.size() < static_cast<std::size_t>(count)) out.push_back(base + gap);
    }
    // Occasional repeated value so multi-dimensional atoms appear.
    if (count >= 2 && rng.index(3) == 0) out[count - 1] = out[0];
    return out;
}

namespace {

// Random composition: split `total` into `parts` pieces, each at least 1.
std::vector<int> random_composition(int total, int parts, Rng& rng) {
    std::vector<int> sizes(parts, 1);
    for (int extra = total - parts; extra > 0; --extra) sizes[rng.index(parts)] += 1;
    return sizes;
}

Matrix random_subunitary_columns(int dim, int keep, Rng& rng) {
    return random_unitary(dim, rng).leftCols(keep);
}

// Keep a random nonempty sub-eigenspace of selected atoms of `parent`,
// producing something strictly below it in the induced order.
Observable random_subobservable(const Observable& parent, Rng& rng, const Tolerances& tol) {
    const auto& d = parent.decomposition();
    auto nonzero = d.nonzero_atom_indices();
    Matrix m = Matrix::Zero(parent.dim(), parent.dim());
    if (nonzero.empty()) return Observable(m, tol);
    bool any = false;
    for (int idx : nonzero) {
        if (rng.index(2) == 0 && !(idx == nonzero.back() && !any)) continue;
        any = true;
        const auto& atom = d.atoms()[idx];
        int keep = rng.int_range(1, atom.proj.rank());
        Matrix sub = atom.proj.basis() * random_subunitary_columns(atom.proj.rank(), keep, rng);
        m += atom.value * (sub * sub.adjoint());
    }
    return Observable(m, tol);
}

}  // namespace

std::vector<Observable> random_orthogonal_tuple(int dim, int count, Rng& rng,
                                                const Tolerances& tol, SpectrumStyle style) {
    if (count < 1 || dim < count + 1)
        throw Error("random_orthogonal_tuple: need dim > count");

    // Disjoint index blocks, some slack kept aside as a joint kernel.
    int slack = rng.int_range(1, std::max(1, dim - count));
    std::vector<int> sizes = random_composition(dim - slack, count, rng);

    std::vector<int> perm(dim);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = dim - 1; i > 0; --i) std::swap(perm[i], perm[rng.index(i + 1)]);

    Matrix u = random_unitary(dim, rng);
    std::vector<Observable> out;
    out.reserve(count);
    int offset = 0;
    for (int member = 0; member < count; ++member) {
        std::vector<double> values = style_values(style, sizes[member], rng, tol);
        Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
        for (int k = 0; k < sizes[member]; ++k) diag(perm[offset + k]) = values[k];
        offset += sizes[member];
        Matrix m = u * diag.asDiagonal() * u.adjoint();
        out.emplace_back(m, tol);
    }
    return out;
}

std::pair<Observable, Observable> random_comparable_pair(int dim, Rng& rng,
                                                         const Tolerances& tol,
                                                         SpectrumStyle style) {
    int natoms = rng.int_range(2, std::min(4, dim - 1));
    int used = rng.int_range(natoms, dim);
    std::vector<int> mult = random_composition(used, natoms, rng);
    std::vector<double> values = style_values(style, natoms, rng, tol);

    Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
    int offset = 0;
    for (int i = 0; i < natoms; ++i)
        for (int k = 0; k < mult[i]; ++k) diag(offset++) = values[i];

    Matrix u = random_unitary(dim, rng);
    Observable b(Matrix(u * diag.asDiagonal() * u.adjoint()), tol);
    Observable a = random_subobservable(b, rng, tol);
    return {a, b};
}

std::array<Observable, 3> random_chain(int dim, Rng& rng, const Tolerances& tol,
                                       SpectrumStyle style) {
    auto [b, c] = random_comparable_pair(dim, rng, tol, style);
    Observable a = random_subobservable(b, rng, tol);
    return {a, b, c};
}

std::pair<Observable, Observable> random_pair(PairKind kind, int dim, Rng& rng,
                                              const Tolerances& tol, SpectrumStyle style) {
    switch (kind) {
        case PairKind::orthogonal: {
            auto tuple = random_orthogonal_tuple(dim, 2, rng, tol, style);
            return {tuple[0], tuple[1]};
        }
        case PairKind::overlapping: {
            // Same eigenbasis, supports forced to overlap: commuting but
            // generally neither orthogonal nor comparable.
            int ka = rng.int_range(2, dim - 1);
            int kb = rng.int_range(2, dim - 1);
            int start_b = rng.int_range(0, ka - 1);  // overlap at start_b..
            std::vector<double> va = style_values(style, ka, rng, tol);
            std::vector<double> vb = style_values(style, kb, rng, tol);
            Eigen::VectorXd da = Eigen::VectorXd::Zero(dim), db = Eigen::VectorXd::Zero(dim);
            for (int i = 0; i < ka; ++i) da(i) = va[i];
            for (int i = 0; i < kb; ++i) db((start_b + i) % dim) = vb[i];
            Matrix u = random_unitary(dim, rng);
            return {Observable(Matrix(u * da.asDiagonal() * u.adjoint()), tol),
                    Observable(Matrix(u * db.asDiagonal() * u.adjoint()), tol)};
        }
        case PairKind::generic:
            return {random_observable(dim, rng, tol), random_observable(dim, rng, tol)};
        case PairKind::comparable:
            return random_comparable_pair(dim, rng, tol, style);
        case PairKind::near_comparable: {
            auto [a, b] = random_comparable_pair(dim, rng, tol, style);
            Matrix m = a.matrix();
            if (rng.index(2) == 0 || a.is_zero()) {
                // Dense rank-one bump, large against every tolerance.
                Matrix v(dim, 1);
                for (int i = 0; i < dim; ++i) v(i, 0) = cplx(rng.normal(), rng.normal());
                v /= std::sqrt(std::max(1e-300, (v.adjoint() * v)(0, 0).real()));
                m += 1e-3 * std::max(1.0, b.norm()) * (v * v.adjoint());
            } else {
                // Shift one atom value off its partner in b.
                const auto& d = a.decomposition();
                auto nz = d.nonzero_atom_indices();
                int idx = nz[static_cast<std::size_t>(rng.index(static_cast<int>(nz.size())))];
                m += 1e-3 * std::max(1.0, b.norm()) * d.atoms()[idx].proj.matrix();
            }
            return {Observable(m, tol), b};
        }
    }
    throw Error("random_pair: unknown kind");
}

}  // namespace orthoalg
