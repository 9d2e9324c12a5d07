#pragma once

#include "orthoalg/types.hpp"

namespace orthoalg {

// A validated element of the algebra: a square complex matrix that is
// Hermitian up to hermitian_tol * max(1, norm). Construction symmetrizes
// ((M + M†)/2) so downstream spectral code never sees asymmetry, and keeps
// the discarded residual around for reporting.
class HermitianMatrix {
public:
    HermitianMatrix(const Matrix& raw, const Tolerances& tol);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Matrix& entries() const { return entries_; }
    double symmetrization_residual() const { return sym_residual_; }

    static HermitianMatrix zero(int dim, const Tolerances& tol);

private:
    Matrix entries_;
    double sym_residual_ = 0.0;
};

}  // namespace orthoalg
