#include "sqr/problem.hpp"

#include "sqr/errors.hpp"

namespace sqr {

SqrProblem make_problem(Eigen::MatrixXd X, Eigen::VectorXd y, QuantileGrid grid,
                        SplineBasis basis, double c) {
    if (X.rows() == 0 || X.cols() == 0) throw InvalidProblem("empty design matrix");
    if (X.rows() != y.size()) throw InvalidProblem("X row count does not match y length");
    if (!X.allFinite() || !y.allFinite()) throw InvalidProblem("non-finite entries in X or y");
    if (!(c >= 0.0)) throw InvalidProblem("smoothing parameter must be nonnegative");
    if (basis.Phi.rows() != grid.size()) throw InvalidProblem("basis rows do not match grid levels");

    SqrProblem prob{std::move(X), std::move(y), std::move(grid), std::move(basis), c, {}};
    prob.c_ell = static_cast<double>(prob.n()) * c * prob.grid.weights;
    return prob;
}

SqrProblem make_qr_problem(Eigen::MatrixXd X, Eigen::VectorXd y, double tau) {
    Eigen::VectorXd level(1);
    level << tau;
    QuantileGrid grid(std::move(level));
    SplineBasis basis = constant_basis(grid);
    return make_problem(std::move(X), std::move(y), std::move(grid), std::move(basis), 0.0);
}

}  // namespace sqr
