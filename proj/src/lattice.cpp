#include "orthoalg/lattice.hpp"

#include "orthoalg/generators.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace orthoalg {

// ── Meet ──────────────────────────────────────────────────────────────────

Observable meet(const Observable& a, const Observable& b) {
    require_same_dim(a.dim(), b.dim(), "meet");
    const Tolerances& tol = a.tolerances();
    const auto& da = a.decomposition();
    const auto& db = b.decomposition();

    auto match = match_nonzero_atoms(a, b);
    Matrix m = Matrix::Zero(a.dim(), a.dim());
    for (auto [i, j] : match.pairs) {
        Projection shared = proj_meet(da.atoms()[i].proj, db.atoms()[j].proj, tol);
        if (shared.rank() == 0) continue;
        double value = 0.5 * (da.atoms()[i].value + db.atoms()[j].value);
        m += value * shared.matrix();
    }
    return Observable(m, tol);
}

Observable meet_family(const std::vector<Observable>& family) {
    if (family.empty()) throw EmptyFamily("meet_family: empty family");
    Observable acc = family.front();
    for (std::size_t i = 1; i < family.size(); ++i) acc = meet(acc, family[i]);
    return acc;
}

// ── Join ──────────────────────────────────────────────────────────────────

JoinPrecondition join_precondition(const Observable& a, const Observable& b) {
    require_same_dim(a.dim(), b.dim(), "join_precondition");
    const Tolerances& tol = a.tolerances();
    const auto& da = a.decomposition();
    const auto& db = b.decomposition();

    auto match = match_nonzero_atoms(a, b);
    auto matched = [&](int i, int j) {
        for (auto [x, y] : match.pairs)
            if (x == i && y == j) return true;
        return false;
    };

    JoinPrecondition pre;
    for (int i : da.nonzero_atom_indices()) {
        for (int j : db.nonzero_atom_indices()) {
            if (matched(i, j)) continue;
            // Atoms at distinct values: their eigenspaces must be orthogonal
            // or no common upper bound can exist.
            double r = operator_norm(
                Matrix(da.atoms()[i].proj.basis().adjoint() * db.atoms()[j].proj.basis()));
            if (r > pre.max_cross_residual) {
                pre.max_cross_residual = r;
                if (r > tol.proj_tol)
                    pre.violating_values = {da.atoms()[i].value, db.atoms()[j].value};
            }
        }
    }
    pre.holds = pre.max_cross_residual <= tol.proj_tol;
    if (pre.holds) pre.violating_values.reset();
    return pre;
}

JoinOutcome join(const Observable& a, const Observable& b) {
    JoinOutcome out;
    out.precondition = join_precondition(a, b);
    if (!out.precondition.holds) return out;

    const Tolerances& tol = a.tolerances();
    const auto& da = a.decomposition();
    const auto& db = b.decomposition();
    auto match = match_nonzero_atoms(a, b);

    std::vector<bool> in_pair_a(da.atoms().size(), false), in_pair_b(db.atoms().size(), false);
    Matrix m = Matrix::Zero(a.dim(), a.dim());
    for (auto [i, j] : match.pairs) {
        in_pair_a[i] = in_pair_b[j] = true;
        Projection joined = proj_join(da.atoms()[i].proj, db.atoms()[j].proj, tol);
        double value = 0.5 * (da.atoms()[i].value + db.atoms()[j].value);
        m += value * joined.matrix();
    }
    for (int i : da.nonzero_atom_indices())
        if (!in_pair_a[i]) m += da.atoms()[i].value * da.atoms()[i].proj.matrix();
    for (int j : db.nonzero_atom_indices())
        if (!in_pair_b[j]) m += db.atoms()[j].value * db.atoms()[j].proj.matrix();

    out.result = Observable(m, tol);
    return out;
}

JoinOutcome join_family(const std::vector<Observable>& family) {
    if (family.empty()) throw EmptyFamily("join_family: empty family");
    JoinOutcome out;
    out.result = family.front();
    for (std::size_t i = 1; i < family.size(); ++i) {
        out = join(*out.result, family[i]);
        if (!out.ok()) return out;
    }
    return out;
}

// ── Simultaneous diagonalization ──────────────────────────────────────────

Matrix common_abelian_witness(const Observable& a, const Observable& b) {
    auto rep = is_orthogonal(a, b);
    if (!rep.verdict)
        throw NotOrthogonal("common_abelian_witness: operands are not orthogonal");

    const Tolerances& tol = a.tolerances();
    const int n = a.dim();
    Matrix u(n, n);
    Eigen::Index col = 0;

    for (int i : a.decomposition().nonzero_atom_indices()) {
        const Matrix& basis = a.decomposition().atoms()[i].proj.basis();
        u.middleCols(col, basis.cols()) = basis;
        col += basis.cols();
    }
    for (int j : b.decomposition().nonzero_atom_indices()) {
        const Matrix& basis = b.decomposition().atoms()[j].proj.basis();
        u.middleCols(col, basis.cols()) = basis;
        col += basis.cols();
    }

    // Whatever is left is the joint kernel ran(A)⊥ ∩ ran(B)⊥.
    auto [pa, na] = range_null_projections(a.decomposition());
    auto [pb, nb] = range_null_projections(b.decomposition());
    Matrix kernel_m = Matrix::Identity(n, n) - pa.matrix() - pb.matrix();
    Projection kernel = Projection::from_matrix(kernel_m, tol);
    if (col + kernel.rank() != n)
        throw Error("common_abelian_witness: eigenspace ranks do not fill the space");
    u.middleCols(col, kernel.rank()) = kernel.basis();

    double resid = operator_norm(Matrix(u.adjoint() * u - Matrix::Identity(n, n)));
    if (resid > tol.proj_tol)
        throw Error("common_abelian_witness: assembled basis is not unitary (residual " +
                    std::to_string(resid) + ")");
    return u;
}

// ── Axiom sweep ───────────────────────────────────────────────────────────

bool AxiomReport::all_passed() const {
    for (const auto& [name, res] : axioms)
        if (!res.failures.empty()) return false;
    return true;
}

std::uint64_t AxiomReport::total_checks() const {
    std::uint64_t n = 0;
    for (const auto& [name, res] : axioms) n += res.checks;
    return n;
}

std::uint64_t AxiomReport::total_failures() const {
    std::uint64_t n = 0;
    for (const auto& [name, res] : axioms) n += res.failures.size();
    return n;
}

namespace {

double diff_norm(const Observable& x, const Observable& y) {
    return operator_norm(Matrix(x.matrix() - y.matrix()));
}

}  // namespace

AxiomReport axiom_suite(std::uint64_t trials, int dim, std::uint64_t seed,
                        const Tolerances& tol, SpectrumStyle style) {
    tol.validate();
    if (dim < 4) throw Error("axiom_suite: dimension must be at least 4");

    AxiomReport report;
    report.trials = trials;
    report.dim = dim;
    report.seed = seed;
    for (const char* name : {"OA1", "OA2", "GOA3", "GOA4", "GOA5", "GOA6"})
        report.axioms[name];

    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(seed, t);
        auto run = [&](const char* axiom, auto&& body) {
            auto& slot = report.axioms[axiom];
            slot.checks += 1;
            try {
                body(slot);
            } catch (const std::exception& e) {
                slot.failures.push_back({axiom, t, std::string("exception: ") + e.what(), 0.0});
            }
        };
        auto fail = [&](AxiomResult& slot, const char* axiom, const std::string& detail,
                        double residual) {
            slot.failures.push_back({axiom, t, detail, residual});
        };

        auto triple = random_orthogonal_tuple(dim, 3, rng, tol, style);
        const Observable& x = triple[0];
        const Observable& y = triple[1];
        const Observable& z = triple[2];
        const Observable zero = Observable::zero(dim, tol);
        const double scale =
            std::max({1.0, x.norm() + y.norm() + z.norm()});

        run("OA1", [&](AxiomResult& slot) {
            if (!is_orthogonal(x, y).verdict)
                return fail(slot, "OA1", "generated pair not orthogonal", 0.0);
            if (!is_orthogonal(y, x).verdict)
                return fail(slot, "OA1", "orthogonality is not symmetric", 0.0);
            double r = diff_norm(oplus(x, y), oplus(y, x));
            if (r > tol.proj_tol * scale)
                return fail(slot, "OA1", "x (+) y differs from y (+) x", r);
        });

        run("OA2", [&](AxiomResult& slot) {
            if (!is_orthogonal(y, z).verdict)
                return fail(slot, "OA2", "generated pair (y,z) not orthogonal", 0.0);
            Observable yz = oplus(y, z);
            if (!is_orthogonal(x, yz).verdict)
                return fail(slot, "OA2", "x not orthogonal to y (+) z", 0.0);
            if (!is_orthogonal(x, y).verdict)
                return fail(slot, "OA2", "x not orthogonal to y", 0.0);
            Observable xy = oplus(x, y);
            if (!is_orthogonal(xy, z).verdict)
                return fail(slot, "OA2", "x (+) y not orthogonal to z", 0.0);
            double r = diff_norm(oplus(x, yz), oplus(xy, z));
            if (r > tol.proj_tol * scale)
                return fail(slot, "OA2", "associativity residual too large", r);
        });

        run("GOA3", [&](AxiomResult& slot) {
            Observable s = oplus(x, y);
            Observable z2(Matrix(s.matrix() - x.matrix()), tol);
            if (!is_orthogonal(x, z2).verdict)
                return fail(slot, "GOA3", "recovered summand not orthogonal to x", 0.0);
            double r = diff_norm(z2, y);
            if (r > tol.proj_tol * scale)
                return fail(slot, "GOA3", "cancellation does not recover the summand", r);
        });

        run("GOA4", [&](AxiomResult& slot) {
            // An orthogonal sum cannot cancel mass: if either summand is
            // nonzero the sum stays nonzero (its norm is the max of the two).
            Observable s = oplus(x, y);
            double expect = std::max(x.norm(), y.norm());
            double r = std::abs(s.norm() - expect);
            if (r > tol.proj_tol * scale)
                return fail(slot, "GOA4", "orthogonal sum lost norm", r);
            Observable zz = oplus(zero, zero);
            if (!zz.is_zero()) return fail(slot, "GOA4", "0 (+) 0 is not 0", zz.norm());
        });

        run("GOA5", [&](AxiomResult& slot) {
            if (!is_orthogonal(zero, x).verdict)
                return fail(slot, "GOA5", "0 not orthogonal to x", 0.0);
            double r = diff_norm(oplus(zero, x), x);
            if (r != 0.0) return fail(slot, "GOA5", "0 (+) x differs from x", r);
        });

        run("GOA6", [&](AxiomResult& slot) {
            if (is_orthogonal(zero, zero).verdict != true)
                return fail(slot, "GOA6", "0 not orthogonal to itself", 0.0);
            if (x.is_zero()) return fail(slot, "GOA6", "generated x is zero", 0.0);
            if (is_orthogonal(x, x).verdict)
                return fail(slot, "GOA6", "nonzero x orthogonal to itself", x.norm());
        });
    }
    return report;
}

// ── Position/momentum demo ────────────────────────────────────────────────

HeisenbergReport heisenberg_demo(int n, double hbar, const Tolerances& tol) {
    if (n < 2) throw Error("heisenberg_demo: need at least a 2-level truncation");
    if (!(hbar > 0.0)) throw Error("heisenberg_demo: hbar must be positive");

    // Ladder operator on the n-level Fock space: lower|k> = sqrt(k)|k-1>.
    Matrix lower = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) lower(k - 1, k) = std::sqrt(static_cast<double>(k));
    const double c = std::sqrt(hbar / 2.0);
    const cplx i_unit(0.0, 1.0);
    Matrix q_m = c * (lower + lower.adjoint());
    Matrix p_m = i_unit * c * (lower.adjoint() - lower);

    Observable q(q_m, tol);
    Observable p(p_m, tol);

    HeisenbergReport rep;
    rep.n = n;
    rep.hbar = hbar;
    rep.meet_norm = meet(q, p).norm();

    for (int i : q.decomposition().nonzero_atom_indices()) {
        for (int j : p.decomposition().nonzero_atom_indices()) {
            Projection shared = proj_meet(q.decomposition().atoms()[i].proj,
                                          p.decomposition().atoms()[j].proj, tol);
            rep.pairs.push_back({q.decomposition().atoms()[i].value,
                                 p.decomposition().atoms()[j].value, shared.rank()});
            rep.max_pair_rank = std::max(rep.max_pair_rank, shared.rank());
        }
    }

    Matrix comm = q.matrix() * p.matrix() - p.matrix() * q.matrix() -
                  i_unit * hbar * Matrix::Identity(n, n);
    rep.commutator_residual = operator_norm(comm);
    rep.note =
        "Every pairwise eigenspace intersection is trivial, so the meet of position and "
        "momentum vanishes at any finite truncation. The canonical commutation relation "
        "itself cannot survive truncation (the reported residual concentrates on the "
        "highest level and grows with n); the vanishing meet is independent of it.";
    return rep;
}

}  // namespace orthoalg
