#pragma once

#include <Eigen/Dense>

#include "sqr/problem.hpp"

namespace sqr {

/// Check loss rho_tau(r) = r * (tau - I(r < 0)).
inline double check_loss(double tau, double r) noexcept {
    return r * (r < 0.0 ? tau - 1.0 : tau);
}

/// theta reshaped p x K, row j = coefficients of beta_j(.).
inline Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
theta_matrix(const SqrProblem& prob, const Eigen::VectorXd& theta) {
    return {theta.data(), prob.p(), prob.K()};
}

/// Functional coefficients on the grid: row l = beta(tau_l) = Phi(tau_l) theta.
Eigen::MatrixXd coefficients(const SqrProblem& prob, const Eigen::VectorXd& theta);

/// Residual matrix, row l = y - X beta(tau_l).
Eigen::MatrixXd residual_matrix(const SqrProblem& prob, const Eigen::VectorXd& theta);

/// Sum of per-level check losses plus the L1 curvature penalty.
double objective(const SqrProblem& prob, const Eigen::VectorXd& theta);

/// Subgradient with the flat-spot convention: the check-loss derivative is 0
/// at zero residual and sign(0) = 0 in the penalty.
Eigen::VectorXd subgradient(const SqrProblem& prob, const Eigen::VectorXd& theta);

/// The two objective pieces (fidelity sum, penalty sum) separately.
std::pair<double, double> objective_terms(const SqrProblem& prob, const Eigen::VectorXd& theta);

}  // namespace sqr
