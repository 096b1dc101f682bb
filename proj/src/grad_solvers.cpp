#include "sqr/grad_solvers.hpp"

#include <cmath>

#include "sqr/fit.hpp"
#include "sqr/objective.hpp"

namespace sqr {

namespace {

constexpr double kMinStep = 1e-18;

struct Moments {
    Eigen::VectorXd m, v;
    double b1_pow = 1.0, b2_pow = 1.0;

    explicit Moments(Eigen::Index dim)
        : m(Eigen::VectorXd::Zero(dim)), v(Eigen::VectorXd::Zero(dim)) {}

    Eigen::VectorXd direction(const Eigen::VectorXd& g, const GradConfig& cfg) {
        m = cfg.adam_beta1 * m + (1.0 - cfg.adam_beta1) * g;
        v = cfg.adam_beta2 * v + (1.0 - cfg.adam_beta2) * g.cwiseProduct(g);
        b1_pow *= cfg.adam_beta1;
        b2_pow *= cfg.adam_beta2;
        const Eigen::ArrayXd m_hat = m.array() / (1.0 - b1_pow);
        const Eigen::ArrayXd v_hat = v.array() / (1.0 - b2_pow);
        return (-m_hat / (v_hat.sqrt() + cfg.adam_eps)).matrix();
    }
};

// Table-driven limited line search over the step size; moves nothing, only
// decides the step in force for the following iterations.
double limited_line_search(const ObjectiveFn& f, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& dir, const Eigen::VectorXd& g,
                           double current_step, const GradConfig& cfg, int iteration,
                           GradTrace& trace) {
    const bool from_default = cfg.ls_option == LsOption::i || cfg.ls_option == LsOption::ii;
    const double s0 = from_default ? cfg.step0 : current_step;
    const double f0 = f(x);
    const double gd = g.dot(dir);

    LineSearchRecord rec;
    rec.iteration = iteration;
    auto acceptable = [&](double s) {
        rec.trials.push_back(s);
        return f(x + s * dir) <= f0 + cfg.armijo_c * s * gd;
    };

    double s = std::min(1.0, s0 * std::pow(cfg.discount, -std::floor(cfg.ls_trials / 2.0)));
    int kappa = 0;
    bool accepted = acceptable(s);
    while (!accepted && kappa < cfg.ls_trials) {
        s *= cfg.discount;
        ++kappa;
        accepted = acceptable(s);
    }
    if (accepted) {
        rec.accepted = static_cast<int>(rec.trials.size()) - 1;
        rec.returned = s;
    } else {
        switch (cfg.ls_option) {
            case LsOption::i: rec.returned = cfg.step0; break;
            case LsOption::ii: rec.returned = cfg.step0 * cfg.discount; break;
            case LsOption::iii: rec.returned = current_step * cfg.discount; break;
            case LsOption::iv: rec.returned = current_step; break;
        }
    }
    trace.line_searches.push_back(rec);
    return trace.line_searches.back().returned;
}

std::pair<Eigen::VectorXd, GradTrace> run_adam_family(const SqrProblem& prob,
                                                      const Eigen::VectorXd& theta0,
                                                      const GradConfig& cfg, bool line_search,
                                                      const IterateCallback& cb) {
    auto f = [&](const Eigen::VectorXd& t) { return objective(prob, t); };
    Eigen::VectorXd x = theta0;
    Moments moments(x.size());
    GradTrace trace;
    trace.initial_objective = f(x);
    double step = cfg.step0;
    for (int k = 1; k <= cfg.max_iter; ++k) {
        const Eigen::VectorXd g = subgradient(prob, x);
        if (g.isZero(0.0)) break;
        const Eigen::VectorXd dir = moments.direction(g, cfg);
        if (line_search && k > cfg.warmup && (k - cfg.warmup - 1) % cfg.ls_every == 0)
            step = limited_line_search(f, x, dir, g, step, cfg, k, trace);
        x += step * dir;
        trace.objectives.push_back(f(x));
        trace.steps.push_back(step);
        if (cb) cb(k, x);
    }
    return {std::move(x), std::move(trace)};
}

}  // namespace

std::pair<Eigen::VectorXd, GradTrace> minimize_bfgs(const ObjectiveFn& f, const GradientFn& grad,
                                                    Eigen::VectorXd x0, const GradConfig& cfg,
                                                    const LineSearchFn& exact_ls,
                                                    const IterateCallback& cb) {
    const Eigen::Index dim = x0.size();
    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(dim, dim);
    Eigen::VectorXd x = std::move(x0);
    Eigen::VectorXd g = grad(x);
    double fx = f(x);
    GradTrace trace;
    trace.initial_objective = fx;

    for (int k = 1; k <= cfg.max_iter; ++k) {
        Eigen::VectorXd d = -(H * g);
        double gd = g.dot(d);
        if (gd >= 0.0) {  // metric no longer a descent model; restart it
            H.setIdentity();
            d = -g;
            gd = -g.squaredNorm();
            if (gd == 0.0) break;
        }

        double s = 0.0;
        double fn = fx;
        bool accepted = false;
        if (exact_ls) {
            s = exact_ls(x, d);
            fn = f(x + s * d);
            accepted = true;
        } else {
            for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
                s = 1.0;
                while (s > kMinStep) {
                    fn = f(x + s * d);
                    if (fn <= fx + cfg.armijo_c * s * gd) {
                        accepted = true;
                        break;
                    }
                    s *= cfg.discount;
                }
                if (!accepted && attempt == 0 && !H.isIdentity(0.0)) {
                    H.setIdentity();  // retry the search along steepest descent
                    d = -g;
                    gd = -g.squaredNorm();
                } else {
                    break;
                }
            }
            if (!accepted) {
                trace.line_search_failed = true;
                break;
            }
        }

        const Eigen::VectorXd step_vec = s * d;
        const Eigen::VectorXd x_new = x + step_vec;
        const Eigen::VectorXd g_new = grad(x_new);
        const Eigen::VectorXd y = g_new - g;
        const double sy = step_vec.dot(y);
        if (sy > 0.0) {
            const Eigen::VectorXd Hy = H * y;
            H.noalias() += ((sy + y.dot(Hy)) / (sy * sy)) * (step_vec * step_vec.transpose());
            H.noalias() -= (Hy * step_vec.transpose() + step_vec * Hy.transpose()) / sy;
        }
        x = x_new;
        g = g_new;
        fx = fn;
        trace.objectives.push_back(fx);
        trace.steps.push_back(s);
        if (cb) cb(k, x);
    }
    return {std::move(x), std::move(trace)};
}

std::pair<Eigen::VectorXd, GradTrace> solve_bfgs(const SqrProblem& prob,
                                                 const Eigen::VectorXd& theta0,
                                                 const GradConfig& cfg,
                                                 const IterateCallback& cb) {
    auto f = [&](const Eigen::VectorXd& t) { return objective(prob, t); };
    auto g = [&](const Eigen::VectorXd& t) { return subgradient(prob, t); };
    return minimize_bfgs(f, g, theta0, cfg, nullptr, cb);
}

std::pair<Eigen::VectorXd, GradTrace> solve_adam(const SqrProblem& prob,
                                                 const Eigen::VectorXd& theta0,
                                                 const GradConfig& cfg,
                                                 const IterateCallback& cb) {
    return run_adam_family(prob, theta0, cfg, false, cb);
}

std::pair<Eigen::VectorXd, GradTrace> solve_grad(const SqrProblem& prob,
                                                 const Eigen::VectorXd& theta0,
                                                 const GradConfig& cfg,
                                                 const IterateCallback& cb) {
    return run_adam_family(prob, theta0, cfg, true, cb);
}

std::pair<Eigen::VectorXd, GradTrace> solve_gradient(const SqrProblem& prob,
                                                     const Eigen::VectorXd& theta0,
                                                     const GradConfig& cfg,
                                                     const IterateCallback& cb) {
    switch (cfg.algorithm) {
        case GradAlgorithm::bfgs: return solve_bfgs(prob, theta0, cfg, cb);
        case GradAlgorithm::adam: return solve_adam(prob, theta0, cfg, cb);
        case GradAlgorithm::grad: return solve_grad(prob, theta0, cfg, cb);
    }
    throw ConfigError("unknown gradient algorithm");
}

Eigen::VectorXd qr_warm_start(const SqrProblem& prob, const IpConfig& ip) {
    const Eigen::Index L = prob.L();
    Eigen::MatrixXd beta_qr(L, prob.p());
    for (Eigen::Index l = 0; l < L; ++l)
        beta_qr.row(l) =
            qr_coefficients(prob.X, prob.y, prob.grid.levels[l], ip).transpose();
    // least-squares projection of the per-level estimates onto the basis
    const auto qr = prob.basis.Phi.colPivHouseholderQr();
    Eigen::VectorXd theta(prob.dim());
    for (Eigen::Index j = 0; j < prob.p(); ++j)
        theta.segment(j * prob.K(), prob.K()) = qr.solve(beta_qr.col(j));
    return theta;
}

}  // namespace sqr
