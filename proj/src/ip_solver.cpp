#include "sqr/ip_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "sqr/errors.hpp"

namespace sqr {

namespace {

constexpr double kStepFactor = 0.99995;  // fraction of the step to the boundary
constexpr double kBig = 1e20;
constexpr double kInitFloor = 1e-7;  // floor for the initial bound multipliers

Eigen::LLT<Eigen::MatrixXd> factor_normal(const CanonicalLp& lp, const Eigen::VectorXd& d) {
    Eigen::LLT<Eigen::MatrixXd> llt(lp.normal_matrix(d));
    if (llt.info() != Eigen::Success)
        throw SingularNormalEquations("normal equations are numerically singular");
    return llt;
}

// Largest multiple of the direction keeping v strictly positive.
double ratio_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
    double delta = kBig;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (dv[i] < 0.0) delta = std::min(delta, -v[i] / dv[i]);
    return delta;
}

}  // namespace

IpResult solve_ip(const CanonicalLp& lp, const IpConfig& cfg) {
    const Eigen::Index N = lp.rows();
    const Eigen::VectorXd cost = -lp.b;  // box side as a minimization

    // Initial multiplier from an unweighted normal solve, then split the
    // stationarity residual into the bound multipliers.
    Eigen::VectorXd mult = factor_normal(lp, Eigen::VectorXd::Ones(N)).solve(lp.apply_Dt(cost));
    Eigen::VectorXd stat = cost - lp.apply_D(mult);
    Eigen::VectorXd z(N), w(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        const double bump = std::abs(stat[i]) < kInitFloor ? kInitFloor : 0.0;
        z[i] = std::max(stat[i], 0.0) + bump;
        w[i] = std::max(-stat[i], 0.0) + bump;
    }

    Eigen::VectorXd x(N);  // zeta
    for (Eigen::Index l = 0; l < lp.L; ++l)
        x.segment(l * lp.n, lp.n).setConstant(1.0 - lp.taus[l]);
    x.tail(lp.p * lp.L).setConstant(0.5);
    x = x.cwiseMax(cfg.small).cwiseMin(1.0 - cfg.small);
    Eigen::VectorXd s = Eigen::VectorXd::Ones(N) - x;

    double gap = z.dot(x) + w.dot(s);
    auto gap_scale = [&] { return 1.0 + std::abs(lp.a.dot(mult)); };

    IpResult res;
    res.gap_history.reserve(cfg.max_iter);
    Eigen::VectorXd d(N), dzw(N), rhs(lp.cols()), dmult(lp.cols()), ds(N), dx(N), dz(N), dw(N),
        dr(N), u(N);

    int it = 0;
    while (gap > cfg.gap_tol * gap_scale() && it < cfg.max_iter) {
        ++it;
        for (Eigen::Index i = 0; i < N; ++i) {
            d[i] = 1.0 / (z[i] / x[i] + w[i] / s[i]);
            dzw[i] = z[i] - w[i];
        }

        // Affine (predictor) direction from the weighted normal equations.
        rhs = lp.a - lp.apply_Dt(x) + lp.apply_Dt(d.cwiseProduct(dzw));
        auto llt = factor_normal(lp, d);
        dmult = llt.solve(rhs);
        ds = lp.apply_D(dmult) - dzw;

        double deltap = kBig, deltad = kBig;
        for (Eigen::Index i = 0; i < N; ++i) {
            dx[i] = d[i] * ds[i];
            ds[i] = -dx[i];
            dz[i] = -z[i] * (dx[i] / x[i] + 1.0);
            dw[i] = -w[i] * (ds[i] / s[i] + 1.0);
        }
        deltap = std::min({deltap, ratio_step(x, dx), ratio_step(s, ds)});
        deltad = std::min({deltad, ratio_step(z, dz), ratio_step(w, dw)});
        deltap = std::min(kStepFactor * deltap, 1.0);
        deltad = std::min(kStepFactor * deltad, 1.0);

        if (std::min(deltap, deltad) < 1.0) {
            // Mehrotra corrector: recenter toward mu estimated from the
            // predictor's projected gap, then retake the step lengths.
            const double mu0 = z.dot(x) + w.dot(s);
            const double g = mu0 + deltap * dx.dot(z) + deltad * dz.dot(x) +
                             deltap * deltad * dx.dot(dz) + deltap * ds.dot(w) +
                             deltad * dw.dot(s) + deltap * deltad * ds.dot(dw);
            const double mu = mu0 * std::pow(g / mu0, 3) / (2.0 * static_cast<double>(N));
            for (Eigen::Index i = 0; i < N; ++i)
                dr[i] = d[i] * (mu * (1.0 / s[i] - 1.0 / x[i]) + dx[i] * dz[i] / x[i] -
                                ds[i] * dw[i] / s[i]);
            dmult = llt.solve(rhs + lp.apply_Dt(dr));
            u = lp.apply_D(dmult);
            for (Eigen::Index i = 0; i < N; ++i) {
                const double dxdz = dx[i] * dz[i];
                const double dsdw = ds[i] * dw[i];
                dx[i] = d[i] * (u[i] - z[i] + w[i]) - dr[i];
                ds[i] = -dx[i];
                dz[i] = -z[i] + (mu - z[i] * dx[i] - dxdz) / x[i];
                dw[i] = -w[i] + (mu - w[i] * ds[i] - dsdw) / s[i];
            }
            deltap = std::min(kStepFactor * std::min(ratio_step(x, dx), ratio_step(s, ds)), 1.0);
            deltad = std::min(kStepFactor * std::min(ratio_step(z, dz), ratio_step(w, dw)), 1.0);
        }

        x += deltap * dx;
        s += deltap * ds;
        mult += deltad * dmult;
        z += deltad * dz;
        w += deltad * dw;
        gap = z.dot(x) + w.dot(s);
        res.gap_history.push_back(gap);
        if (cfg.verbose)
            std::fprintf(stderr, "ip iter=%d gap=%.6e steps=(%.4f, %.4f)\n", it, gap, deltap,
                         deltad);
    }

    res.state.zeta = std::move(x);
    res.state.theta = -mult;
    res.state.z = std::move(z);
    res.state.w = std::move(w);
    res.iterations = it;
    res.gap = gap;
    res.converged = gap <= cfg.gap_tol * (1.0 + std::abs(lp.a.dot(mult)));
    return res;
}

KktResiduals kkt_report(const CanonicalLp& lp, const IpState& state) {
    KktResiduals r;
    r.primal_infeasibility = (lp.apply_Dt(state.zeta) - lp.a).cwiseAbs().maxCoeff();
    r.dual_infeasibility =
        (lp.apply_D(state.theta) - lp.b - state.z + state.w).cwiseAbs().maxCoeff();
    const Eigen::VectorXd s = Eigen::VectorXd::Ones(lp.rows()) - state.zeta;
    r.complementarity = std::max(state.z.cwiseProduct(state.zeta).maxCoeff(),
                                 state.w.cwiseProduct(s).maxCoeff());
    r.gap = state.z.dot(state.zeta) + state.w.dot(s);
    return r;
}

}  // namespace sqr
