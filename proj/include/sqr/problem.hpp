#pragma once

#include <Eigen/Dense>

#include "sqr/grid.hpp"
#include "sqr/spline_basis.hpp"

namespace sqr {

/// A complete optimization instance: data, quantile grid, basis, and the
/// smoothing parameter c with its per-level scalars c_ell = n * c * w_ell.
struct SqrProblem {
    Eigen::MatrixXd X;  // n x p design
    Eigen::VectorXd y;  // n responses
    QuantileGrid grid;
    SplineBasis basis;
    double c = 0.0;
    Eigen::VectorXd c_ell;

    Eigen::Index n() const { return X.rows(); }
    Eigen::Index p() const { return X.cols(); }
    Eigen::Index K() const { return basis.K; }
    Eigen::Index L() const { return grid.size(); }
    Eigen::Index dim() const { return p() * K(); }  // length of theta
};

/// Validates shapes and finiteness and derives c_ell.
SqrProblem make_problem(Eigen::MatrixXd X, Eigen::VectorXd y, QuantileGrid grid,
                        SplineBasis basis, double c);

/// Single-level instance with the constant basis: ordinary quantile
/// regression at tau expressed in the same machinery (theta == beta).
SqrProblem make_qr_problem(Eigen::MatrixXd X, Eigen::VectorXd y, double tau);

}  // namespace sqr
