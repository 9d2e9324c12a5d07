#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace orthoalg {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// ── Errors ────────────────────────────────────────────────────────────────

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct InvalidProjection : Error { using Error::Error; };
struct InvalidResolution : Error { using Error::Error; };
struct NotOrthogonal : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct EquivalenceViolation : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct TooManyAtoms : Error { using Error::Error; };
struct EmptyFamily : Error { using Error::Error; };

// ── Tolerances ────────────────────────────────────────────────────────────

// Every threshold in one place. cluster_rel merges nearby eigenvalues into
// one atom, zero_abs snaps the 0 atom exact, proj_tol gates every projection
// identity, hermitian_tol bounds the symmetrization residual. All relative
// thresholds are applied against max(1, operator norm).
struct Tolerances {
    double cluster_rel = 1e-8;
    double zero_abs = 1e-10;
    double proj_tol = 1e-8;
    double hermitian_tol = 1e-10;

    void validate() const {
        auto bad = [](double v) { return !(v > 0.0) || !(v < 1.0); };
        if (bad(cluster_rel) || bad(zero_abs) || bad(proj_tol) || bad(hermitian_tol))
            throw Error("Tolerances: all fields must lie strictly in (0, 1)");
    }

    // Named presets, selectable through ORTHOALG_TOL_PROFILE.
    static Tolerances profile(const std::string& name);
};

// Largest singular value. The norm used by every residual test.
double operator_norm(const Matrix& m);

// Smallest eigenvalue of a Hermitian matrix (input assumed symmetrized).
double min_eigenvalue(const Matrix& m);

inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* where) {
    if (a != b)
        throw DimensionMismatch(std::string(where) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
}

}  // namespace orthoalg
