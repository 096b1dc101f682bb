#include "sqr/objective.hpp"

#include <cmath>

#include "sqr/errors.hpp"

namespace sqr {

namespace {

void check_theta(const SqrProblem& prob, const Eigen::VectorXd& theta) {
    if (theta.size() != prob.dim())
        throw ShapeError("theta length does not match p*K");
}

}  // namespace

Eigen::MatrixXd coefficients(const SqrProblem& prob, const Eigen::VectorXd& theta) {
    check_theta(prob, theta);
    const auto Theta = theta_matrix(prob, theta);
    return prob.basis.Phi * Theta.transpose();  // L x p
}

Eigen::MatrixXd residual_matrix(const SqrProblem& prob, const Eigen::VectorXd& theta) {
    const Eigen::MatrixXd beta = coefficients(prob, theta);
    Eigen::MatrixXd res(prob.L(), prob.n());
    for (Eigen::Index l = 0; l < prob.L(); ++l)
        res.row(l) = (prob.y - prob.X * beta.row(l).transpose()).transpose();
    return res;
}

std::pair<double, double> objective_terms(const SqrProblem& prob, const Eigen::VectorXd& theta) {
    check_theta(prob, theta);
    const auto Theta = theta_matrix(prob, theta);
    const Eigen::Index L = prob.L();
    double fidelity = 0.0;
    double penalty = 0.0;
    Eigen::VectorXd beta_l(prob.p()), curv_l(prob.p()), res(prob.n());
    for (Eigen::Index l = 0; l < L; ++l) {
        const double tau = prob.grid.levels[l];
        beta_l.noalias() = Theta * prob.basis.Phi.row(l).transpose();
        res.noalias() = prob.y - prob.X * beta_l;
        for (Eigen::Index t = 0; t < res.size(); ++t) fidelity += check_loss(tau, res[t]);
        if (prob.c_ell[l] != 0.0) {
            curv_l.noalias() = Theta * prob.basis.Phi_dd.row(l).transpose();
            penalty += prob.c_ell[l] * curv_l.cwiseAbs().sum();
        }
    }
    return {fidelity, penalty};
}

double objective(const SqrProblem& prob, const Eigen::VectorXd& theta) {
    const auto [fidelity, penalty] = objective_terms(prob, theta);
    return fidelity + penalty;
}

Eigen::VectorXd subgradient(const SqrProblem& prob, const Eigen::VectorXd& theta) {
    check_theta(prob, theta);
    const auto Theta = theta_matrix(prob, theta);
    const Eigen::Index L = prob.L();
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(prob.p(), prob.K());
    Eigen::VectorXd beta_l(prob.p()), res(prob.n()), psi(prob.n()), curv_l(prob.p());
    for (Eigen::Index l = 0; l < L; ++l) {
        const double tau = prob.grid.levels[l];
        beta_l.noalias() = Theta * prob.basis.Phi.row(l).transpose();
        res.noalias() = prob.y - prob.X * beta_l;
        for (Eigen::Index t = 0; t < res.size(); ++t)
            psi[t] = res[t] == 0.0 ? 0.0 : (res[t] < 0.0 ? tau - 1.0 : tau);
        G.noalias() -= (prob.X.transpose() * psi) * prob.basis.Phi.row(l);
        if (prob.c_ell[l] != 0.0) {
            curv_l.noalias() = Theta * prob.basis.Phi_dd.row(l).transpose();
            const Eigen::VectorXd sgn =
                curv_l.unaryExpr([](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); });
            G.noalias() += prob.c_ell[l] * sgn * prob.basis.Phi_dd.row(l);
        }
    }
    Eigen::VectorXd g(prob.dim());
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        g.data(), prob.p(), prob.K()) = G;
    return g;
}

}  // namespace sqr
