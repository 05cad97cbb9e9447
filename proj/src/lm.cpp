#include "cinetrack/lm.hpp"

#include <stdexcept>

namespace cinetrack {

DampedNormalEquations::DampedNormalEquations(const ResidualSystem& system) {
    if (system.n_parameters == 0) throw std::domain_error("lm: system has no parameters");
    const Eigen::SparseMatrix<double> J = system.jacobian_matrix();
    jt_ = J.transpose();
    jtj_ = (jt_ * J).pruned();
    diag_ = jtj_.diagonal();
    for (Eigen::Index i = 0; i < diag_.size(); ++i) {
        if (diag_[i] <= 0.0) diag_[i] = kMinDampingDiagonal;
    }
    // Make every diagonal entry structurally present so lambda * D can be
    // added in place.
    for (Eigen::Index i = 0; i < jtj_.cols(); ++i) jtj_.coeffRef(i, i) += 0.0;
    jtj_.makeCompressed();
    set_residuals(system.residuals);
}

void DampedNormalEquations::set_residuals(const Eigen::VectorXd& residuals) {
    if (residuals.size() != jt_.cols()) throw std::domain_error("lm: residual size mismatch");
    gradient_ = jt_ * residuals;
}

std::optional<Eigen::VectorXd> DampedNormalEquations::solve(double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("lm: lambda must be positive");
    Eigen::SparseMatrix<double> A = jtj_;
    for (Eigen::Index i = 0; i < A.cols(); ++i) A.coeffRef(i, i) += lambda * diag_[i];

    if (!analyzed_) {
        ldlt_.analyzePattern(A);
        analyzed_ = true;
    }
    ldlt_.factorize(A);
    if (ldlt_.info() != Eigen::Success) return std::nullopt;
    Eigen::VectorXd delta = ldlt_.solve(-gradient_);
    if (ldlt_.info() != Eigen::Success || !delta.allFinite()) return std::nullopt;
    return delta;
}

std::optional<Eigen::VectorXd> lm_step(const ResidualSystem& system, double lambda) {
    DampedNormalEquations normal(system);
    return normal.solve(lambda);
}

}  // namespace cinetrack
