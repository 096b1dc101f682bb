#include "sqr/bench.hpp"

#include <algorithm>

#include "sqr/errors.hpp"
#include "sqr/fit.hpp"
#include "sqr/objective.hpp"
#include "sqr/parallel.hpp"

namespace sqr {

std::pair<Eigen::MatrixXd, Eigen::VectorXd> lagged_design(const Eigen::VectorXd& series) {
    const Eigen::Index n = series.size();
    if (n < 2) throw InvalidProblem("series too short for a lagged design");
    Eigen::MatrixXd X(n - 1, 2);
    X.col(0).setOnes();
    X.col(1) = series.head(n - 1);
    return {std::move(X), series.tail(n - 1)};
}

QarBenchResult bench_qar_mae(const QarBenchConfig& cfg) {
    const QuantileGrid grid = QuantileGrid::regular(0.05, 0.95, 0.01);
    const SplineBasis basis = build_basis(grid);
    const Eigen::Index L = grid.size();

    Eigen::MatrixXd truth(L, 2);
    for (Eigen::Index l = 0; l < L; ++l) {
        const auto [a0, a1] = qar_truth(grid.levels[l], cfg.model);
        truth(l, 0) = a0;
        truth(l, 1) = a1;
    }

    QarBenchResult result;
    result.per_run.resize(cfg.runs);
    parallel_for(cfg.runs, cfg.parallelism, [&](std::size_t r) {
        QarSpec spec = cfg.model;
        spec.n = cfg.n;
        spec.seed = derive_seed(cfg.seed, r);
        const Eigen::VectorXd series = simulate_qar(spec);
        auto [X, y] = lagged_design(series);

        Eigen::MatrixXd beta_qr(L, 2);
        for (Eigen::Index l = 0; l < L; ++l)
            beta_qr.row(l) = qr_coefficients(X, y, grid.levels[l], cfg.ip).transpose();

        const SelectionReport report =
            select_spar(X, y, grid, basis, cfg.spar_grid, cfg.ip, 1);
        auto fit_at = [&](double spar) {
            const double c = spar_to_c(X, grid, basis, spar);
            return fit_ip(make_problem(X, y, grid, basis, c), cfg.ip);
        };
        const SqrFit fit_aic = fit_at(report.spar(Criterion::aic));
        const SqrFit fit_bic = fit_at(report.spar(Criterion::bic));

        QarRunResult& run = result.per_run[r];
        run.qr_mae = mae(beta_qr, truth).per_coefficient;
        run.aic_mae = mae(fit_aic.beta, truth).per_coefficient;
        run.bic_mae = mae(fit_bic.beta, truth).per_coefficient;
        run.qr_total = run.qr_mae.sum();
        run.aic_total = run.aic_mae.sum();
        run.bic_total = run.bic_mae.sum();
        run.spar_aic = report.spar(Criterion::aic);
        run.spar_bic = report.spar(Criterion::bic);
    });

    result.mean_qr_mae = Eigen::VectorXd::Zero(2);
    result.mean_aic_mae = Eigen::VectorXd::Zero(2);
    result.mean_bic_mae = Eigen::VectorXd::Zero(2);
    for (const auto& run : result.per_run) {
        result.mean_qr_mae += run.qr_mae;
        result.mean_aic_mae += run.aic_mae;
        result.mean_bic_mae += run.bic_mae;
        if (run.bic_total < run.qr_total) ++result.bic_below_qr;
    }
    const double inv = 1.0 / static_cast<double>(cfg.runs);
    result.mean_qr_mae *= inv;
    result.mean_aic_mae *= inv;
    result.mean_bic_mae *= inv;
    result.mean_qr_total = result.mean_qr_mae.sum();
    result.mean_aic_total = result.mean_aic_mae.sum();
    result.mean_bic_total = result.mean_bic_mae.sum();
    return result;
}

namespace {

// Snapshots theta at the requested iteration counts; checkpoints past the
// last performed iteration reuse the final iterate.
std::vector<double> checkpoint_errors(const SqrProblem& prob, const Eigen::MatrixXd& beta_lp,
                                      const Eigen::VectorXd& theta0,
                                      const std::vector<int>& checkpoints,
                                      GradAlgorithm algorithm, const GradConfig& base) {
    GradConfig cfg = base;
    cfg.algorithm = algorithm;
    cfg.max_iter = checkpoints.empty() ? 0 : *std::max_element(checkpoints.begin(),
                                                               checkpoints.end());
    std::vector<Eigen::VectorXd> snaps(checkpoints.size());
    for (std::size_t i = 0; i < checkpoints.size(); ++i)
        if (checkpoints[i] == 0) snaps[i] = theta0;
    auto cb = [&](int iter, const Eigen::VectorXd& theta) {
        for (std::size_t i = 0; i < checkpoints.size(); ++i)
            if (checkpoints[i] == iter) snaps[i] = theta;
    };
    auto [theta_final, trace] = solve_gradient(prob, theta0, cfg, cb);
    std::vector<double> errors(checkpoints.size());
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        const Eigen::VectorXd& theta = snaps[i].size() ? snaps[i] : theta_final;
        errors[i] = mae(coefficients(prob, theta), beta_lp).total;
    }
    return errors;
}

}  // namespace

GradBenchResult bench_grad_approx(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                  const QuantileGrid& grid, const GradBenchConfig& cfg) {
    const SplineBasis basis = build_basis(grid);
    double spar;
    if (cfg.spar) {
        spar = *cfg.spar;
    } else {
        const SelectionReport report =
            select_spar(X, y, grid, basis, cfg.spar_grid, cfg.ip, cfg.parallelism);
        spar = report.spar(Criterion::bic);
    }
    const double c = spar_to_c(X, grid, basis, spar);
    const SqrProblem prob = make_problem(X, y, grid, basis, c);
    const SqrFit lp_fit = fit_ip(prob, cfg.ip);
    const Eigen::VectorXd theta0 = qr_warm_start(prob, cfg.ip);

    GradBenchResult result;
    result.spar = spar;
    result.checkpoints = cfg.checkpoints;
    result.beta_lp = lp_fit.beta;
    result.bfgs_error = checkpoint_errors(prob, lp_fit.beta, theta0, cfg.checkpoints,
                                          GradAlgorithm::bfgs, cfg.gradient);
    result.adam_error = checkpoint_errors(prob, lp_fit.beta, theta0, cfg.checkpoints,
                                          GradAlgorithm::adam, cfg.gradient);
    result.grad_error = checkpoint_errors(prob, lp_fit.beta, theta0, cfg.checkpoints,
                                          GradAlgorithm::grad, cfg.gradient);
    return result;
}

}  // namespace sqr
