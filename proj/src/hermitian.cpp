#include "orthoalg/hermitian.hpp"

namespace orthoalg {

HermitianMatrix::HermitianMatrix(const Matrix& raw, const Tolerances& tol) {
    tol.validate();
    if (raw.rows() != raw.cols())
        throw NotHermitian("matrix is not square: " + std::to_string(raw.rows()) + "x" +
                           std::to_string(raw.cols()));
    if (raw.rows() < 1) throw NotHermitian("matrix is empty");

    Matrix anti = raw - raw.adjoint();
    sym_residual_ = 0.5 * operator_norm(anti);
    entries_ = 0.5 * (raw + raw.adjoint());

    double scale = std::max(1.0, operator_norm(entries_));
    if (sym_residual_ > tol.hermitian_tol * scale)
        throw NotHermitian("symmetrization residual " + std::to_string(sym_residual_) +
                           " exceeds " + std::to_string(tol.hermitian_tol * scale));
}

HermitianMatrix HermitianMatrix::zero(int dim, const Tolerances& tol) {
    return HermitianMatrix(Matrix::Zero(dim, dim), tol);
}

}  // namespace orthoalg
