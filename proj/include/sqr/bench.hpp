#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sqr/grad_solvers.hpp"
#include "sqr/model_select.hpp"
#include "sqr/simulate.hpp"

namespace sqr {

/// Monte-Carlo accuracy benchmark on the quantile autoregression: per-level
/// quantile regression against the smoothed fit with AIC- and BIC-selected
/// spar, scored by mean absolute error against the true functional
/// coefficients.
struct QarBenchConfig {
    Eigen::Index n = 200;
    int runs = 100;
    std::uint64_t seed = 1u;
    QarSpec model;  // n / seed fields overridden per run
    std::vector<double> spar_grid = default_spar_grid();
    IpConfig ip;
    int parallelism = 1;
};

struct QarRunResult {
    Eigen::VectorXd qr_mae, aic_mae, bic_mae;  // per coefficient (a0, a1)
    double qr_total = 0.0, aic_total = 0.0, bic_total = 0.0;
    double spar_aic = 0.0, spar_bic = 0.0;
};

struct QarBenchResult {
    std::vector<QarRunResult> per_run;
    Eigen::VectorXd mean_qr_mae, mean_aic_mae, mean_bic_mae;
    double mean_qr_total = 0.0, mean_aic_total = 0.0, mean_bic_total = 0.0;
    int bic_below_qr = 0;  // runs where the BIC fit beats plain QR in total MAE
};

QarBenchResult bench_qar_mae(const QarBenchConfig& cfg);

/// Approximation error of the iterative solvers against the exact fit at
/// iteration checkpoints; iteration 0 is the shared per-level QR start.
struct GradBenchConfig {
    std::vector<int> checkpoints = {0, 50, 100, 150, 200, 300, 400, 500, 1000};
    GradConfig gradient;  // shared ADAM/GRAD settings; BFGS uses its own search
    std::optional<double> spar;  // absent = BIC-selected
    std::vector<double> spar_grid = default_spar_grid();
    IpConfig ip;
    int parallelism = 1;
};

struct GradBenchResult {
    double spar = 0.0;
    std::vector<int> checkpoints;
    std::vector<double> bfgs_error, adam_error, grad_error;  // per checkpoint
    Eigen::MatrixXd beta_lp;  // reference functional coefficients
};

GradBenchResult bench_grad_approx(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                  const QuantileGrid& grid, const GradBenchConfig& cfg);

/// Lagged-response design for a series: rows [1, y_{t-1}] against y_t.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> lagged_design(const Eigen::VectorXd& series);

}  // namespace sqr
