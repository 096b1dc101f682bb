#pragma once

#include <string>

#include <Eigen/Dense>

#include "sqr/ip_solver.hpp"
#include "sqr/problem.hpp"

namespace sqr {

struct SolverInfo {
    std::string algorithm;
    int iterations = 0;
    double gap = 0.0;        // duality gap for the exact solver, last step size otherwise
    bool converged = true;
    std::string flag;        // non-empty when the solver stopped abnormally
};

/// A fitted model: spline coefficients plus everything derived from them on
/// the grid (functional coefficients, residuals, per-level fidelity v and
/// interpolation count m).
struct SqrFit {
    Eigen::VectorXd theta;
    Eigen::MatrixXd beta;       // L x p, row l = beta(tau_l)
    Eigen::MatrixXd residuals;  // L x n
    double objective_value = 0.0;
    SolverInfo info;
    Eigen::VectorXd fidelity;    // v(tau_l)
    Eigen::VectorXd complexity;  // m(tau_l), integral counts
};

/// Derives the grid-level quantities from theta.
SqrFit make_fit(const SqrProblem& prob, Eigen::VectorXd theta, SolverInfo info);

/// Exact fit through the canonical pair and the interior-point solver.
/// Throws NotConverged when the iteration limit is hit short of tolerance.
SqrFit fit_ip(const SqrProblem& prob, const IpConfig& cfg = {});

/// Ordinary quantile regression at a single level (constant basis path).
Eigen::VectorXd qr_coefficients(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double tau,
                                const IpConfig& cfg = {});

}  // namespace sqr
