#include "orthoalg/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <set>

namespace orthoalg {

// ── Projection ────────────────────────────────────────────────────────────

Projection Projection::from_matrix(const Matrix& m, const Tolerances& tol) {
    tol.validate();
    if (m.rows() != m.cols() || m.rows() < 1)
        throw InvalidProjection("projection matrix must be square and nonempty");

    double herm = 0.5 * operator_norm(Matrix(m - m.adjoint()));
    if (herm > tol.proj_tol)
        throw InvalidProjection("projection is not Hermitian (residual " +
                                std::to_string(herm) + ")");
    Matrix sym = 0.5 * (m + m.adjoint());

    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    if (es.info() != Eigen::Success)
        throw InvalidProjection("eigensolver failed on projection candidate");

    const auto& w = es.eigenvalues();
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        double d = std::min(std::abs(w(i)), std::abs(w(i) - 1.0));
        if (d > tol.proj_tol)
            throw InvalidProjection("spectrum not in {0,1}: eigenvalue " + std::to_string(w(i)));
    }

    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w(i) > 0.5) ++rank;
    // Eigenvalues come back ascending, so the range basis is the tail block.
    Matrix basis = es.eigenvectors().rightCols(rank);
    Matrix rebuilt = basis * basis.adjoint();
    return Projection(0.5 * (rebuilt + rebuilt.adjoint()), std::move(basis));
}

Projection Projection::from_basis(const Matrix& orthonormal_cols, const Tolerances& tol) {
    const Eigen::Index n = orthonormal_cols.rows();
    const Eigen::Index r = orthonormal_cols.cols();
    if (n < 1) throw InvalidProjection("basis has no rows");
    if (r > n) throw InvalidProjection("basis has more columns than the space has dimensions");

    if (r > 0) {
        Matrix gram = orthonormal_cols.adjoint() * orthonormal_cols;
        double resid = operator_norm(Matrix(gram - Matrix::Identity(r, r)));
        if (resid > tol.proj_tol)
            throw InvalidProjection("basis columns not orthonormal (residual " +
                                    std::to_string(resid) + ")");
    }
    Matrix p = orthonormal_cols * orthonormal_cols.adjoint();
    return Projection(0.5 * (p + p.adjoint()), orthonormal_cols);
}

Projection Projection::zero(int dim) {
    return Projection(Matrix::Zero(dim, dim), Matrix(dim, 0));
}

Projection Projection::identity(int dim) {
    return Projection(Matrix::Identity(dim, dim), Matrix::Identity(dim, dim));
}

Projection proj_meet(const Projection& p, const Projection& q, const Tolerances& tol) {
    require_same_dim(p.dim(), q.dim(), "proj_meet");
    if (p.rank() == 0 || q.rank() == 0) return Projection::zero(p.dim());

    // Principal angles: cosines are the singular values of the basis overlap.
    Matrix overlap = p.basis().adjoint() * q.basis();
    Eigen::JacobiSVD<Matrix> svd(overlap, Eigen::ComputeThinU);
    const auto& sigma = svd.singularValues();

    Eigen::Index shared = 0;
    while (shared < sigma.size() && sigma(shared) >= 1.0 - tol.proj_tol) ++shared;
    if (shared == 0) return Projection::zero(p.dim());

    Matrix basis = p.basis() * svd.matrixU().leftCols(shared);
    return Projection::from_basis(basis, tol);
}

Projection proj_join(const Projection& p, const Projection& q, const Tolerances& tol) {
    require_same_dim(p.dim(), q.dim(), "proj_join");
    if (p.rank() == 0) return q;
    if (q.rank() == 0) return p;

    Matrix stacked(p.dim(), p.rank() + q.rank());
    stacked << p.basis(), q.basis();
    Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeThinU);
    const auto& sigma = svd.singularValues();

    // Rank cut at sqrt(proj_tol): a direction seen by both bases shows up
    // with singular value ~sqrt(2), a direction seen by neither decays to
    // machine noise, and the sqrt keeps complement(meet(complement, …))
    // consistent with this join at the proj_tol scale.
    const double cut = std::sqrt(tol.proj_tol);
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma(rank) >= cut) ++rank;
    return Projection::from_basis(svd.matrixU().leftCols(rank), tol);
}

bool proj_leq(const Projection& p, const Projection& q, const Tolerances& tol) {
    require_same_dim(p.dim(), q.dim(), "proj_leq");
    double resid = operator_norm(Matrix(q.matrix() * p.matrix() - p.matrix()));
    return resid <= tol.proj_tol;
}

Projection proj_complement(const Projection& p, const Tolerances& tol) {
    return Projection::from_matrix(Matrix::Identity(p.dim(), p.dim()) - p.matrix(), tol);
}

// ── BorelSet ──────────────────────────────────────────────────────────────

BorelSet::BorelSet(std::vector<double> points, const Tolerances& tol) {
    tol.validate();
    for (double& x : points) {
        if (!std::isfinite(x)) throw Error("BorelSet: points must be finite");
        if (std::abs(x) <= tol.zero_abs) x = 0.0;
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    points_ = std::move(points);
}

bool BorelSet::contains_zero() const { return contains(0.0); }

bool BorelSet::contains(double x) const {
    return std::binary_search(points_.begin(), points_.end(), x);
}

// ── SpectralDecomposition ─────────────────────────────────────────────────

SpectralDecomposition::SpectralDecomposition(std::vector<SpectralAtom> atoms, double norm,
                                             double value_match_tol, bool cluster_ambiguity,
                                             const Tolerances& tol)
    : atoms_(std::move(atoms)),
      norm_(norm),
      value_match_tol_(value_match_tol),
      cluster_ambiguity_(cluster_ambiguity),
      tol_(tol) {
    tol_.validate();
    if (atoms_.empty()) throw InvalidResolution("decomposition has no atoms");
    if (!(value_match_tol_ > 0.0))
        throw InvalidResolution("value_match_tol must be positive");

    const int n = atoms_.front().proj.dim();
    Eigen::Index total_rank = 0;
    for (const auto& a : atoms_) {
        if (a.proj.dim() != n) throw InvalidResolution("atom projections disagree on dimension");
        if (a.proj.rank() < 1) throw InvalidResolution("atom with empty eigenspace");
        total_rank += a.proj.rank();
    }
    for (std::size_t i = 1; i < atoms_.size(); ++i)
        if (!(atoms_[i].value - atoms_[i - 1].value > value_match_tol_))
            throw InvalidResolution("atom values not separated beyond the match tolerance");
    if (total_rank != n)
        throw InvalidResolution("atom ranks sum to " + std::to_string(total_rank) +
                                ", expected " + std::to_string(n));

    // Joint orthonormality of all atom bases covers both pairwise
    // orthogonality and completeness in one Gram residual.
    Matrix all(n, n);
    Eigen::Index col = 0;
    for (const auto& a : atoms_) {
        all.middleCols(col, a.proj.rank()) = a.proj.basis();
        col += a.proj.rank();
    }
    double resid = operator_norm(Matrix(all.adjoint() * all - Matrix::Identity(n, n)));
    if (resid > tol_.proj_tol)
        throw InvalidResolution("atom projections are not an orthogonal resolution (residual " +
                                std::to_string(resid) + ")");
}

std::optional<int> SpectralDecomposition::zero_atom_index() const {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (atoms_[i].value == 0.0) return static_cast<int>(i);
    return std::nullopt;
}

std::vector<int> SpectralDecomposition::nonzero_atom_indices() const {
    std::vector<int> idx;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (atoms_[i].value != 0.0) idx.push_back(static_cast<int>(i));
    return idx;
}

std::optional<int> SpectralDecomposition::atom_near(double x) const {
    int best = -1;
    double best_d = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        double d = std::abs(atoms_[i].value - x);
        if (best < 0 || d < best_d) {
            best = static_cast<int>(i);
            best_d = d;
        }
    }
    if (best >= 0 && best_d <= value_match_tol_) return best;
    return std::nullopt;
}

SpectralDecomposition decompose(const HermitianMatrix& h, const Tolerances& tol) {
    tol.validate();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.entries());
    if (es.info() != Eigen::Success)
        throw Error("decompose: eigensolver failed to converge");

    const int n = h.dim();
    Eigen::VectorXd w = es.eigenvalues();
    const Matrix& v = es.eigenvectors();

    const double norm = std::max(std::abs(w(0)), std::abs(w(n - 1)));
    const double scale = std::max(1.0, norm);
    const double zero_thr = tol.zero_abs * scale;
    const double cluster_thr = tol.cluster_rel * scale;

    for (int i = 0; i < n; ++i)
        if (std::abs(w(i)) <= zero_thr) w(i) = 0.0;

    // Chain-merge sorted eigenvalues: a gap within cluster_thr joins.
    std::vector<std::pair<int, int>> spans;  // [first, last)
    int start = 0;
    for (int i = 1; i < n; ++i) {
        if (w(i) - w(i - 1) > cluster_thr) {
            spans.emplace_back(start, i);
            start = i;
        }
    }
    spans.emplace_back(start, n);

    bool ambiguity = false;
    std::vector<SpectralAtom> atoms;
    atoms.reserve(spans.size());
    for (auto [s, e] : spans) {
        if (w(e - 1) - w(s) > cluster_thr) ambiguity = true;
        bool has_zero = false;
        double sum = 0.0;
        for (int i = s; i < e; ++i) {
            has_zero = has_zero || (w(i) == 0.0);
            sum += w(i);
        }
        double value = has_zero ? 0.0 : sum / static_cast<double>(e - s);
        atoms.push_back({value, Projection::from_basis(v.middleCols(s, e - s), tol)});
    }

    SpectralDecomposition d(std::move(atoms), norm, cluster_thr, ambiguity, tol);

    // Clustering moves each eigenvalue by at most a cluster diameter plus the
    // zero snap; anything beyond that bound is an internal defect.
    Matrix rebuilt = Matrix::Zero(n, n);
    for (const auto& a : d.atoms()) rebuilt += a.value * a.proj.matrix();
    double resid = operator_norm(Matrix(rebuilt - h.entries()));
    double bound = n * cluster_thr + zero_thr + 1e3 * std::numeric_limits<double>::epsilon() * scale;
    if (resid > bound)
        throw InvalidResolution("decompose self-check failed: reconstruction residual " +
                                std::to_string(resid));
    return d;
}

Projection spectral_projection(const SpectralDecomposition& d, const BorelSet& delta) {
    std::set<int> marked;
    for (double x : delta.points()) {
        if (auto idx = d.atom_near(x)) marked.insert(*idx);
    }
    if (marked.empty()) return Projection::zero(d.dim());

    Eigen::Index rank = 0;
    for (int i : marked) rank += d.atoms()[i].proj.rank();
    Matrix basis(d.dim(), rank);
    Eigen::Index col = 0;
    for (int i : marked) {
        const Matrix& b = d.atoms()[i].proj.basis();
        basis.middleCols(col, b.cols()) = b;
        col += b.cols();
    }
    return Projection::from_basis(basis, d.tolerances());
}

std::pair<Projection, Projection> range_null_projections(const SpectralDecomposition& d) {
    auto nonzero = d.nonzero_atom_indices();
    Projection null_proj = Projection::zero(d.dim());
    if (auto z = d.zero_atom_index()) null_proj = d.atoms()[*z].proj;

    if (nonzero.empty()) return {Projection::zero(d.dim()), null_proj};

    Eigen::Index rank = 0;
    for (int i : nonzero) rank += d.atoms()[i].proj.rank();
    Matrix basis(d.dim(), rank);
    Eigen::Index col = 0;
    for (int i : nonzero) {
        const Matrix& b = d.atoms()[i].proj.basis();
        basis.middleCols(col, b.cols()) = b;
        col += b.cols();
    }
    return {Projection::from_basis(basis, d.tolerances()), null_proj};
}

HermitianMatrix reconstruct(const std::vector<SpectralAtom>& atoms, const Tolerances& tol) {
    tol.validate();
    if (atoms.empty()) throw InvalidResolution("reconstruct: no atoms given");

    const int n = atoms.front().proj.dim();
    Eigen::Index total_rank = 0;
    for (const auto& a : atoms) {
        if (a.proj.dim() != n) throw InvalidResolution("reconstruct: dimension mismatch");
        total_rank += a.proj.rank();
    }
    if (total_rank != n)
        throw InvalidResolution("reconstruct: atom ranks sum to " + std::to_string(total_rank) +
                                ", expected " + std::to_string(n));

    Matrix all(n, n);
    Eigen::Index col = 0;
    for (const auto& a : atoms) {
        all.middleCols(col, a.proj.rank()) = a.proj.basis();
        col += a.proj.rank();
    }
    double resid = operator_norm(Matrix(all.adjoint() * all - Matrix::Identity(n, n)));
    if (resid > tol.proj_tol)
        throw InvalidResolution("reconstruct: atoms are not an orthogonal resolution (residual " +
                                std::to_string(resid) + ")");

    Matrix m = Matrix::Zero(n, n);
    for (const auto& a : atoms) m += a.value * a.proj.matrix();
    return HermitianMatrix(m, tol);
}

// ── Partition ─────────────────────────────────────────────────────────────

Partition::Partition(const std::vector<double>& parent,
                     std::vector<std::vector<double>> blocks_in)
    : blocks(std::move(blocks_in)) {
    std::set<double> parent_set(parent.begin(), parent.end());
    if (parent_set.size() != parent.size())
        throw Error("Partition: parent set has duplicate points");

    std::set<double> seen;
    for (const auto& block : blocks) {
        if (block.empty()) throw Error("Partition: empty block");
        for (double x : block) {
            if (!parent_set.count(x))
                throw Error("Partition: block point " + std::to_string(x) + " not in parent");
            if (!seen.insert(x).second)
                throw Error("Partition: blocks are not disjoint at " + std::to_string(x));
        }
    }
    if (seen.size() != parent_set.size())
        throw Error("Partition: blocks do not cover the parent set");
}

}  // namespace orthoalg
