#include "orthoalg/types.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace orthoalg {

double operator_norm(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    if (std::max(m.rows(), m.cols()) <= 48) {
        Eigen::JacobiSVD<Matrix> svd(m);
        return svd.singularValues()(0);
    }
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

double min_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw Error("min_eigenvalue: eigensolver failed to converge");
    return es.eigenvalues()(0);
}

Tolerances Tolerances::profile(const std::string& name) {
    Tolerances t;  // "default"
    if (name == "default" || name.empty()) {
        // keep defaults
    } else if (name == "strict") {
        t.cluster_rel = 1e-10;
        t.zero_abs = 1e-12;
        t.proj_tol = 1e-10;
        t.hermitian_tol = 1e-12;
    } else if (name == "loose") {
        t.cluster_rel = 1e-6;
        t.zero_abs = 1e-8;
        t.proj_tol = 1e-6;
        t.hermitian_tol = 1e-8;
    } else {
        throw Error("unknown tolerance profile '" + name + "' (default|strict|loose)");
    }
    t.validate();
    return t;
}

}  // namespace orthoalg
