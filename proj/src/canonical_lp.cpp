#include "sqr/canonical_lp.hpp"

#include <fstream>

#include "sqr/errors.hpp"

namespace sqr {

namespace {

using RowMajorMap =
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using ConstRowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

}  // namespace

Eigen::VectorXd CanonicalLp::apply_D(const Eigen::VectorXd& theta) const {
    if (theta.size() != cols()) throw ShapeError("theta length does not match p*K");
    ConstRowMajorMap Theta(theta.data(), p, K);
    Eigen::VectorXd out(rows());
    Eigen::VectorXd beta_l(p);
    for (Eigen::Index l = 0; l < L; ++l) {
        beta_l.noalias() = Theta * Phi.row(l).transpose();
        out.segment(l * n, n).noalias() = X * beta_l;
    }
    for (Eigen::Index l = 0; l < L; ++l) {
        beta_l.noalias() = Theta * Phi_dd.row(l).transpose();
        out.segment(n * L + l * p, p) = 2.0 * c_ell[l] * beta_l;
    }
    return out;
}

Eigen::VectorXd CanonicalLp::apply_Dt(const Eigen::VectorXd& zeta) const {
    if (zeta.size() != rows()) throw ShapeError("zeta length does not match nL+pL");
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(p, K);
    for (Eigen::Index l = 0; l < L; ++l)
        G.noalias() += (X.transpose() * zeta.segment(l * n, n)) * Phi.row(l);
    for (Eigen::Index l = 0; l < L; ++l)
        G.noalias() += (2.0 * c_ell[l]) * zeta.segment(n * L + l * p, p) * Phi_dd.row(l);
    Eigen::VectorXd out(cols());
    RowMajorMap(out.data(), p, K) = G;
    return out;
}

Eigen::MatrixXd CanonicalLp::normal_matrix(const Eigen::VectorXd& d) const {
    if (d.size() != rows()) throw ShapeError("weight length does not match nL+pL");
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(cols(), cols());
    Eigen::MatrixXd G(p, p), P(K, K);
    for (Eigen::Index l = 0; l < L; ++l) {
        G.noalias() = X.transpose() * d.segment(l * n, n).asDiagonal() * X;
        P.noalias() = Phi.row(l).transpose() * Phi.row(l);
        for (Eigen::Index j = 0; j < p; ++j)
            for (Eigen::Index j2 = 0; j2 < p; ++j2) M.block(j * K, j2 * K, K, K) += G(j, j2) * P;
    }
    for (Eigen::Index l = 0; l < L; ++l) {
        if (c_ell[l] == 0.0) continue;
        const double s = 4.0 * c_ell[l] * c_ell[l];
        P.noalias() = Phi_dd.row(l).transpose() * Phi_dd.row(l);
        for (Eigen::Index j = 0; j < p; ++j)
            M.block(j * K, j * K, K, K) += s * d[n * L + l * p + j] * P;
    }
    return M;
}

Eigen::MatrixXd CanonicalLp::dense_D() const {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(rows(), cols());
    for (Eigen::Index l = 0; l < L; ++l)
        for (Eigen::Index j = 0; j < p; ++j)
            for (Eigen::Index k = 0; k < K; ++k) {
                D.block(l * n, j * K + k, n, 1) = X.col(j) * Phi(l, k);
                D(n * L + l * p + j, j * K + k) = 2.0 * c_ell[l] * Phi_dd(l, k);
            }
    return D;
}

CanonicalLp assemble(const SqrProblem& prob) {
    if (prob.n() == 0 || prob.L() == 0) throw InvalidProblem("empty problem");
    CanonicalLp lp;
    lp.X = prob.X;
    lp.y = prob.y;
    lp.Phi = prob.basis.Phi;
    lp.Phi_dd = prob.basis.Phi_dd;
    lp.taus = prob.grid.levels;
    lp.c_ell = prob.c_ell;
    lp.n = prob.n();
    lp.p = prob.p();
    lp.K = prob.K();
    lp.L = prob.L();

    const Eigen::VectorXd col_sums = lp.X.colwise().sum();  // X' 1_n
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(lp.p, lp.K);
    for (Eigen::Index l = 0; l < lp.L; ++l) {
        A.noalias() += (1.0 - lp.taus[l]) * col_sums * lp.Phi.row(l);
        A.noalias() += lp.c_ell[l] * Eigen::VectorXd::Ones(lp.p) * lp.Phi_dd.row(l);
    }
    lp.a.resize(lp.cols());
    RowMajorMap(lp.a.data(), lp.p, lp.K) = A;

    lp.b = Eigen::VectorXd::Zero(lp.rows());
    for (Eigen::Index l = 0; l < lp.L; ++l) lp.b.segment(l * lp.n, lp.n) = lp.y;

    lp.dual_constant = (1.0 - lp.taus.array()).sum() * lp.y.sum();
    return lp;
}

Eigen::VectorXd recover_theta(const CanonicalLp& lp, const Eigen::VectorXd& multiplier,
                              bool converged) {
    if (!converged) throw NotConverged("solver did not converge; no certified theta");
    if (multiplier.size() != lp.cols()) throw ShapeError("multiplier length does not match p*K");
    return -multiplier;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> split_slacks(const CanonicalLp& lp,
                                                         const Eigen::VectorXd& theta) {
    const Eigen::VectorXd r = lp.b - lp.apply_D(theta);
    return {r.cwiseMax(0.0), (-r).cwiseMax(0.0)};
}

void dump_canonical_csv(const CanonicalLp& lp, const std::string& prefix) {
    const Eigen::MatrixXd D = lp.dense_D();
    const Eigen::IOFormat csv(Eigen::FullPrecision, Eigen::DontAlignCols, ",", "\n");
    std::ofstream fd(prefix + "_D.csv");
    fd << D.format(csv) << "\n";
    std::ofstream fa(prefix + "_a.csv");
    fa << lp.a.format(csv) << "\n";
    std::ofstream fb(prefix + "_b.csv");
    fb << lp.b.format(csv) << "\n";
}

}  // namespace sqr
