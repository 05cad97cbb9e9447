#pragma once

#include "cinetrack/residuals.hpp"

#include <Eigen/SparseCholesky>

#include <optional>

namespace cinetrack {

/// Damped normal equations (J^T J + lambda * D) delta = -J^T r, where D is
/// diag(J^T J) with zero entries clamped to 1e-12.
///
/// J^T J and its sparsity pattern are formed once; every solve() refactorizes
/// numerically for the given lambda.
class DampedNormalEquations {
public:
    explicit DampedNormalEquations(const ResidualSystem& system);

    /// Replaces the gradient term only; J is unchanged for fixed correspondences.
    void set_residuals(const Eigen::VectorXd& residuals);

    /// nullopt signals a failed factorization; callers should raise lambda.
    std::optional<Eigen::VectorXd> solve(double lambda);

    const Eigen::SparseMatrix<double>& normal_matrix() const { return jtj_; }
    const Eigen::VectorXd& damping_diagonal() const { return diag_; }

private:
    Eigen::SparseMatrix<double> jt_;
    Eigen::SparseMatrix<double> jtj_;
    Eigen::VectorXd diag_;
    Eigen::VectorXd gradient_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
    bool analyzed_ = false;
};

inline constexpr double kMinDampingDiagonal = 1e-12;

/// One Levenberg-Marquardt proposal for `system` at damping `lambda`.
std::optional<Eigen::VectorXd> lm_step(const ResidualSystem& system, double lambda);

}  // namespace cinetrack
