#include "sqr/fit.hpp"

#include "sqr/model_select.hpp"
#include "sqr/objective.hpp"

namespace sqr {

SqrFit make_fit(const SqrProblem& prob, Eigen::VectorXd theta, SolverInfo info) {
    SqrFit fit;
    fit.theta = std::move(theta);
    fit.beta = coefficients(prob, fit.theta);
    fit.residuals = residual_matrix(prob, fit.theta);
    fit.objective_value = objective(prob, fit.theta);
    fit.info = std::move(info);
    auto [v, m] = fidelity_complexity(prob, fit.residuals);
    fit.fidelity = std::move(v);
    fit.complexity = std::move(m);
    return fit;
}

SqrFit fit_ip(const SqrProblem& prob, const IpConfig& cfg) {
    const CanonicalLp lp = assemble(prob);
    const IpResult res = solve_ip(lp, cfg);
    Eigen::VectorXd theta = recover_theta(lp, -res.state.theta, res.converged);
    SolverInfo info{"ip", res.iterations, res.gap, res.converged, ""};
    return make_fit(prob, std::move(theta), std::move(info));
}

Eigen::VectorXd qr_coefficients(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double tau,
                                const IpConfig& cfg) {
    const SqrProblem prob = make_qr_problem(X, y, tau);
    return fit_ip(prob, cfg).theta;
}

}  // namespace sqr
