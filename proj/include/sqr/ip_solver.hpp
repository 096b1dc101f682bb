#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sqr/canonical_lp.hpp"

namespace sqr {

struct IpConfig {
    int max_iter = 50;
    double gap_tol = 1e-7;   // relative duality-gap tolerance
    double small = 1e-10;    // interiority clamp for the initial box point
    bool verbose = false;
};

/// One primal-dual iterate of the box pair: zeta in (0,1)^(nL+pL), the free
/// vector theta, and the bound multipliers z (lower) and w (upper).
struct IpState {
    Eigen::VectorXd zeta;
    Eigen::VectorXd theta;
    Eigen::VectorXd z;
    Eigen::VectorXd w;
};

struct KktResiduals {
    double primal_infeasibility = 0.0;  // ||D'zeta - a||_inf
    double dual_infeasibility = 0.0;    // ||D theta - b - z + w||_inf (bound-multiplier split)
    double complementarity = 0.0;       // max_i max(z_i zeta_i, w_i (1-zeta_i))
    double gap = 0.0;                   // z'zeta + w'(1-zeta)
};

struct IpResult {
    IpState state;
    int iterations = 0;
    double gap = 0.0;
    bool converged = false;
    std::vector<double> gap_history;  // gap after each iteration
};

/// Frisch-Newton primal-dual interior-point solve of the canonical pair.
/// Starts from zeta0 = [(1-tau_1)1_n, ..., (1-tau_L)1_n, 0.5 1_pL] clamped
/// strictly inside the box. Mehrotra predictor-corrector steps with factor
/// 0.99995 toward the boundary. On iteration exhaustion the best iterate is
/// returned with converged = false; a numerically singular normal system
/// throws SingularNormalEquations.
IpResult solve_ip(const CanonicalLp& lp, const IpConfig& cfg = {});

KktResiduals kkt_report(const CanonicalLp& lp, const IpState& state);

}  // namespace sqr
