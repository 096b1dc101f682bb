#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "sqr/ip_solver.hpp"
#include "sqr/problem.hpp"

namespace sqr {

enum class GradAlgorithm { bfgs, adam, grad };
enum class LsOption { i, ii, iii, iv };

struct GradConfig {
    GradAlgorithm algorithm = GradAlgorithm::grad;
    int max_iter = 1000;
    double step0 = 0.4;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    int warmup = 70;      // plain-ADAM iterations before any line search
    int ls_every = 20;    // line-search period after warm-up
    int ls_trials = 5;    // kappa0
    double discount = 0.2;
    LsOption ls_option = LsOption::i;
    double armijo_c = 1e-4;
};

struct LineSearchRecord {
    int iteration = 0;
    std::vector<double> trials;  // step sizes tried, in order
    int accepted = -1;           // index into trials, -1 when none accepted
    double returned = 0.0;       // step size in force afterwards
};

struct GradTrace {
    double initial_objective = 0.0;
    std::vector<double> objectives;  // f(theta_k), k = 1..iterations
    std::vector<double> steps;       // step size used at iteration k
    std::vector<LineSearchRecord> line_searches;
    bool line_search_failed = false;
};

using IterateCallback = std::function<void(int iteration, const Eigen::VectorXd& theta)>;

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;
using GradientFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
/// Optional exact line search hook for minimize_bfgs: returns the step along
/// d from x. Used mainly by diagnostics; the default is backtracking.
using LineSearchFn = std::function<double(const Eigen::VectorXd& x, const Eigen::VectorXd& d)>;

/// BFGS on an arbitrary objective: inverse-Hessian updates gated on positive
/// curvature, backtracking line search with the Armijo rule (factor
/// cfg.discount) starting from a unit step. A failed search resets the
/// metric once; failing again terminates with the best iterate, flagged.
std::pair<Eigen::VectorXd, GradTrace> minimize_bfgs(const ObjectiveFn& f, const GradientFn& g,
                                                    Eigen::VectorXd x0, const GradConfig& cfg,
                                                    const LineSearchFn& exact_ls = nullptr,
                                                    const IterateCallback& cb = nullptr);

std::pair<Eigen::VectorXd, GradTrace> solve_bfgs(const SqrProblem& prob,
                                                 const Eigen::VectorXd& theta0,
                                                 const GradConfig& cfg,
                                                 const IterateCallback& cb = nullptr);

/// Full-batch ADAM with bias-corrected moments and a constant step size;
/// runs exactly max_iter iterations unless the subgradient vanishes.
std::pair<Eigen::VectorXd, GradTrace> solve_adam(const SqrProblem& prob,
                                                 const Eigen::VectorXd& theta0,
                                                 const GradConfig& cfg,
                                                 const IterateCallback& cb = nullptr);

/// ADAM plus a periodic limited line search over the step size: after the
/// warm-up phase, every ls_every iterations the step is replaced by the
/// search's return, with the four fallback options for an unaccepted search.
std::pair<Eigen::VectorXd, GradTrace> solve_grad(const SqrProblem& prob,
                                                 const Eigen::VectorXd& theta0,
                                                 const GradConfig& cfg,
                                                 const IterateCallback& cb = nullptr);

std::pair<Eigen::VectorXd, GradTrace> solve_gradient(const SqrProblem& prob,
                                                     const Eigen::VectorXd& theta0,
                                                     const GradConfig& cfg,
                                                     const IterateCallback& cb = nullptr);

/// Per-level quantile regression estimates projected onto the spline basis
/// by least squares; the standard initial point for the iterative solvers.
Eigen::VectorXd qr_warm_start(const SqrProblem& prob, const IpConfig& ip = {});

}  // namespace sqr
