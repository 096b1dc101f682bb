#pragma once

#include <Eigen/Dense>

#include "sqr/problem.hpp"

namespace sqr {

/// Canonical primal-dual pair derived from an SqrProblem:
///
///   box side :  max b'zeta   s.t. D'zeta = a,  zeta in [0,1]^(nL+pL)
///   free side:  min a'theta + |z|_1  s.t. D theta + z - w = b,  z, w >= 0
///
/// D stacks the fitted-value blocks X Phi(tau_l) (nL rows) over the scaled
/// curvature blocks 2 c_l PhiDD(tau_l) (pL rows); b stacks L copies of y over
/// pL zeros. Products with D and D' exploit the per-level Kronecker factors
/// and never materialize the nL x pK blocks. dual_constant records the
/// constant sum_l (1-tau_l) 1'y dropped when the dual is rewritten on the
/// [0,1] box, so the original objective equals
/// a'theta + |z|_1 - dual_constant at any feasible point.
struct CanonicalLp {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    Eigen::MatrixXd Phi;     // L x K
    Eigen::MatrixXd Phi_dd;  // L x K
    Eigen::VectorXd taus;
    Eigen::VectorXd c_ell;

    Eigen::VectorXd a;  // pK
    Eigen::VectorXd b;  // nL + pL
    double dual_constant = 0.0;

    Eigen::Index n = 0, p = 0, K = 0, L = 0;
    Eigen::Index rows() const { return n * L + p * L; }
    Eigen::Index cols() const { return p * K; }

    Eigen::VectorXd apply_D(const Eigen::VectorXd& theta) const;
    Eigen::VectorXd apply_Dt(const Eigen::VectorXd& zeta) const;

    /// D' diag(d) D, assembled densely (pK x pK is small by construction).
    Eigen::MatrixXd normal_matrix(const Eigen::VectorXd& d) const;

    /// Dense D for debugging and cross-checks only.
    Eigen::MatrixXd dense_D() const;
};

CanonicalLp assemble(const SqrProblem& prob);

/// theta from the converged multiplier of the equality constraints
/// (the difference of the split nonnegative parts in the raw formulation).
Eigen::VectorXd recover_theta(const CanonicalLp& lp, const Eigen::VectorXd& multiplier,
                              bool converged);

/// Residual splitting z = (b - D theta)+, w = (D theta - b)+.
std::pair<Eigen::VectorXd, Eigen::VectorXd> split_slacks(const CanonicalLp& lp,
                                                         const Eigen::VectorXd& theta);

/// Writes D, a, b as three CSV files under `prefix` (debug interchange).
void dump_canonical_csv(const CanonicalLp& lp, const std::string& prefix);

}  // namespace sqr
