#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sqr/ip_solver.hpp"
#include "sqr/problem.hpp"

namespace sqr {

/// Ratio r normalizing the smoothing reparameterization
/// c = r * 1000^(spar - 1); matrix 1-norms are entrywise absolute sums.
double penalty_ratio(const Eigen::MatrixXd& X, const QuantileGrid& grid, const SplineBasis& basis);

double spar_to_c(const Eigen::MatrixXd& X, const QuantileGrid& grid, const SplineBasis& basis,
                 double spar);

/// Residuals within |r| <= tol count as interpolated; the default tolerance
/// is scale-relative with an absolute floor.
double interpolation_tolerance(const Eigen::VectorXd& y);

/// Per-level mean check loss v and interpolation count m.
std::pair<Eigen::VectorXd, Eigen::VectorXd> fidelity_complexity(
    const SqrProblem& prob, const Eigen::MatrixXd& residuals,
    std::optional<double> threshold = std::nullopt);

struct Criteria {
    double aic = 0.0;
    double bic = 0.0;
    bool exact_fit = false;  // mean fidelity was zero; aic/bic are -inf sentinels
};

/// 2n log(mean v) + penalty * mean m, with penalty log(n) for BIC and 2
/// for AIC.
Criteria information_criteria(const Eigen::VectorXd& v, const Eigen::VectorXd& m, Eigen::Index n,
                              Eigen::Index L);

enum class Criterion { aic, bic };

struct SelectionEntry {
    double spar = 0.0;
    double c = 0.0;               // instance c for single input; mean c across inputs otherwise
    Eigen::VectorXd fidelity;     // per level, averaged across inputs
    Eigen::VectorXd complexity;   // per level, averaged across inputs
    double aic = 0.0;             // averaged across inputs
    double bic = 0.0;
    bool exact_fit = false;
    bool failed = false;
    std::string error;
};

struct SelectionReport {
    std::vector<SelectionEntry> entries;
    int chosen_aic = -1;  // index into entries
    int chosen_bic = -1;
    double spar(Criterion crit) const {
        return entries[crit == Criterion::bic ? chosen_bic : chosen_aic].spar;
    }
};

struct SelectionInput {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
};

/// Solves every (spar, input) pair exactly and scores it; the criterion is
/// averaged across inputs before the argmin (ties to the smallest spar,
/// exact-interpolation sentinels excluded unless nothing else remains).
SelectionReport select_spar(const std::vector<SelectionInput>& inputs, const QuantileGrid& grid,
                            const SplineBasis& basis, const std::vector<double>& spar_grid,
                            const IpConfig& ip = {}, int parallelism = 1);

SelectionReport select_spar(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            const QuantileGrid& grid, const SplineBasis& basis,
                            const std::vector<double>& spar_grid, const IpConfig& ip = {},
                            int parallelism = 1);

/// 21 points from -2 to 2, step 0.2.
std::vector<double> default_spar_grid();

}  // namespace sqr
