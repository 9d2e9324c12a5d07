#include "orthoalg/observable.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace orthoalg {

Observable::Observable(HermitianMatrix m, const Tolerances& tol)
    : matrix_(std::move(m)), decomp_(decompose(matrix_, tol)) {}

Observable::Observable(const Matrix& raw, const Tolerances& tol)
    : Observable(HermitianMatrix(raw, tol), tol) {}

Observable Observable::zero(int dim, const Tolerances& tol) {
    return Observable(HermitianMatrix::zero(dim, tol), tol);
}

// ── Orthogonality ─────────────────────────────────────────────────────────

OrthogonalityReport is_orthogonal(const Observable& a, const Observable& b) {
    require_same_dim(a.dim(), b.dim(), "is_orthogonal");
    const Tolerances& tol = a.tolerances();

    auto [pa, na] = range_null_projections(a.decomposition());
    auto [pb, nb] = range_null_projections(b.decomposition());

    OrthogonalityReport rep;
    rep.r_ranges = operator_norm(Matrix(pb.matrix() * pa.matrix()));
    rep.r_a_in_nb = operator_norm(Matrix(nb.matrix() * pa.matrix() - pa.matrix()));
    rep.r_b_in_na = operator_norm(Matrix(na.matrix() * pb.matrix() - pb.matrix()));
    rep.r_ab = operator_norm(Matrix(a.matrix() * b.matrix()));
    rep.r_ba = operator_norm(Matrix(b.matrix() * a.matrix()));

    const double sa = std::max(1.0, a.norm());
    const double sb = std::max(1.0, b.norm());
    rep.ranges = rep.r_ranges <= tol.proj_tol;
    rep.a_in_nb = rep.r_a_in_nb <= tol.proj_tol;
    rep.b_in_na = rep.r_b_in_na <= tol.proj_tol;
    rep.ab_zero = rep.r_ab <= tol.proj_tol * sa * sb;
    rep.ba_zero = rep.r_ba <= tol.proj_tol * sa * sb;

    const bool all = rep.ranges && rep.a_in_nb && rep.b_in_na && rep.ab_zero && rep.ba_zero;
    const bool any = rep.ranges || rep.a_in_nb || rep.b_in_na || rep.ab_zero || rep.ba_zero;
    if (all != any) {
        std::ostringstream msg;
        msg << "orthogonality criteria disagree:"
            << " ranges=" << rep.ranges << " (" << rep.r_ranges << ")"
            << " ran(A)in_null(B)=" << rep.a_in_nb << " (" << rep.r_a_in_nb << ")"
            << " ran(B)in_null(A)=" << rep.b_in_na << " (" << rep.r_b_in_na << ")"
            << " AB=0:" << rep.ab_zero << " (" << rep.r_ab << ")"
            << " BA=0:" << rep.ba_zero << " (" << rep.r_ba << ")";
        throw EquivalenceViolation(msg.str());
    }
    rep.verdict = all;
    return rep;
}

Observable oplus(const Observable& a, const Observable& b) {
    auto rep = is_orthogonal(a, b);
    if (!rep.verdict)
        throw NotOrthogonal("oplus: operands are not orthogonal (max residual " +
                            std::to_string(std::max({rep.r_ranges, rep.r_ab, rep.r_ba})) + ")");
    return Observable(Matrix(a.matrix() + b.matrix()), a.tolerances());
}

// ── Atom matching ─────────────────────────────────────────────────────────

AtomMatch match_nonzero_atoms(const Observable& a, const Observable& b) {
    const auto& da = a.decomposition();
    const auto& db = b.decomposition();

    AtomMatch m;
    m.tol = std::max(da.value_match_tol(), db.value_match_tol());

    auto ia = da.nonzero_atom_indices();
    auto ib = db.nonzero_atom_indices();

    struct Cand {
        double d;
        int i, j;
    };
    std::vector<Cand> cands;
    for (int i : ia)
        for (int j : ib) {
            double d = std::abs(da.atoms()[i].value - db.atoms()[j].value);
            if (d <= m.tol) cands.push_back({d, i, j});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
        if (x.d != y.d) return x.d < y.d;
        if (x.i != y.i) return x.i < y.i;
        return x.j < y.j;
    });

    std::vector<bool> used_a(da.atoms().size(), false), used_b(db.atoms().size(), false);
    for (const auto& c : cands) {
        if (used_a[c.i] || used_b[c.j]) continue;
        used_a[c.i] = used_b[c.j] = true;
        m.pairs.emplace_back(c.i, c.j);
    }
    for (int i : ia)
        if (!used_a[i]) m.only_a.push_back(i);
    for (int j : ib)
        if (!used_b[j]) m.only_b.push_back(j);
    return m;
}

// ── Induced order ─────────────────────────────────────────────────────────

OrderReport leq(const Observable& a, const Observable& b) {
    require_same_dim(a.dim(), b.dim(), "leq");
    const Tolerances& tol = a.tolerances();

    OrderReport rep;

    // Algebraic test: A ⪯ B ⇔ A² = BA. Tolerance scales with both factors
    // of each product, floored at 1 so near-zero operands are not asked to
    // beat an impossible bound.
    const double sa = std::max(1.0, a.norm());
    const double sb = std::max(1.0, b.norm());
    rep.algebraic_residual = operator_norm(Matrix(a.matrix() * a.matrix() - b.matrix() * a.matrix()));
    rep.algebraic = rep.algebraic_residual <= tol.proj_tol * (sa * sa + sa * sb);

    // Spectral test: every nonzero atom of A sits inside B's atom at the
    // same value.
    auto match = match_nonzero_atoms(a, b);
    bool atomwise = match.only_a.empty();
    if (atomwise) {
        for (auto [i, j] : match.pairs) {
            if (!proj_leq(a.decomposition().atoms()[i].proj, b.decomposition().atoms()[j].proj,
                          tol)) {
                atomwise = false;
                break;
            }
        }
    }
    rep.atomwise = atomwise;

    if (rep.algebraic != rep.atomwise) {
        std::ostringstream msg;
        msg << "order criteria disagree: algebraic=" << rep.algebraic << " (residual "
            << rep.algebraic_residual << "), atomwise=" << rep.atomwise;
        throw EquivalenceViolation(msg.str());
    }

    rep.verdict = rep.algebraic;
    if (rep.verdict)
        rep.witness = Observable(Matrix(b.matrix() - a.matrix()), tol);
    return rep;
}

bool loewner_leq(const Observable& a, const Observable& b) {
    require_same_dim(a.dim(), b.dim(), "loewner_leq");
    double scale = std::max({1.0, a.norm(), b.norm()});
    return min_eigenvalue(Matrix(b.matrix() - a.matrix())) >=
           -a.tolerances().proj_tol * scale;
}

bool check_principal(const Observable& b, const Observable& c, const Observable& a) {
    if (!is_orthogonal(b, c).verdict)
        throw PreconditionFailed("check_principal: operands are not orthogonal");
    if (!leq(b, a).verdict || !leq(c, a).verdict)
        throw PreconditionFailed("check_principal: operands are not both below the bound");
    return leq(oplus(b, c), a).verdict;
}

bool check_loewner_consequence(const Observable& a, const Observable& b) {
    if (!leq(a, b).verdict)
        throw PreconditionFailed("check_loewner_consequence: order A before B does not hold");
    double sb = std::max(1.0, b.norm());
    if (min_eigenvalue(b.matrix()) < -b.tolerances().proj_tol * sb)
        throw PreconditionFailed("check_loewner_consequence: B is not positive semidefinite");
    return loewner_leq(a, b);
}

}  // namespace orthoalg
