#include "sqr/model_select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sqr/errors.hpp"
#include "sqr/fit.hpp"
#include "sqr/objective.hpp"
#include "sqr/parallel.hpp"

namespace sqr {

double penalty_ratio(const Eigen::MatrixXd& X, const QuantileGrid& grid,
                     const SplineBasis& basis) {
    const Eigen::Index L = grid.size();
    const double x_abs = X.cwiseAbs().sum();
    double num = 0.0;
    double den = 0.0;
    for (Eigen::Index l = 0; l < L; ++l) {
        num += x_abs * basis.Phi.row(l).cwiseAbs().sum();
        den += grid.weights[l] * static_cast<double>(X.cols()) *
               basis.Phi_dd.row(l).cwiseAbs().sum();
    }
    num /= static_cast<double>(X.rows());
    if (den == 0.0)
        throw DegeneratePenalty("curvature matrix vanishes on the whole grid; cannot normalize");
    return num / den;
}

double spar_to_c(const Eigen::MatrixXd& X, const QuantileGrid& grid, const SplineBasis& basis,
                 double spar) {
    return penalty_ratio(X, grid, basis) * std::pow(1000.0, spar - 1.0);
}

double interpolation_tolerance(const Eigen::VectorXd& y) {
    Eigen::VectorXd abs_y = y.cwiseAbs();
    std::sort(abs_y.data(), abs_y.data() + abs_y.size());
    const Eigen::Index n = abs_y.size();
    const double median =
        n % 2 == 1 ? abs_y[n / 2] : 0.5 * (abs_y[n / 2 - 1] + abs_y[n / 2]);
    return 1e-6 * std::max(1.0, median);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> fidelity_complexity(
    const SqrProblem& prob, const Eigen::MatrixXd& residuals, std::optional<double> threshold) {
    if (residuals.rows() != prob.L() || residuals.cols() != prob.n())
        throw ShapeError("residual matrix must be L x n");
    const double tol = threshold.value_or(interpolation_tolerance(prob.y));
    Eigen::VectorXd v(prob.L()), m(prob.L());
    for (Eigen::Index l = 0; l < prob.L(); ++l) {
        const double tau = prob.grid.levels[l];
        double loss = 0.0;
        Eigen::Index count = 0;
        for (Eigen::Index t = 0; t < prob.n(); ++t) {
            const double r = residuals(l, t);
            loss += check_loss(tau, r);
            if (std::abs(r) <= tol) ++count;
        }
        v[l] = loss / static_cast<double>(prob.n());
        m[l] = static_cast<double>(count);
    }
    return {std::move(v), std::move(m)};
}

Criteria information_criteria(const Eigen::VectorXd& v, const Eigen::VectorXd& m, Eigen::Index n,
                              Eigen::Index L) {
    if (v.size() != L || m.size() != L) throw ShapeError("criteria inputs must have length L");
    const double v_bar = v.mean();
    const double m_bar = m.mean();
    Criteria crit;
    if (v_bar <= 0.0) {
        crit.exact_fit = true;
        crit.aic = crit.bic = -std::numeric_limits<double>::infinity();
        return crit;
    }
    const double base = 2.0 * static_cast<double>(n) * std::log(v_bar);
    crit.aic = base + 2.0 * m_bar;
    crit.bic = base + std::log(static_cast<double>(n)) * m_bar;
    return crit;
}

std::vector<double> default_spar_grid() {
    std::vector<double> grid;
    grid.reserve(21);
    for (int i = 0; i <= 20; ++i) grid.push_back(-2.0 + 0.2 * i);
    return grid;
}

namespace {

// Argmin over usable entries: finite criteria first (ties to the smallest
// spar); if every usable entry is an exact interpolation, the largest spar
// wins (heaviest smoothing at equal, perfect fidelity).
int choose(const std::vector<SelectionEntry>& entries, Criterion crit) {
    int best = -1;
    for (int i = 0; i < static_cast<int>(entries.size()); ++i) {
        const auto& e = entries[i];
        if (e.failed || e.exact_fit) continue;
        const double value = crit == Criterion::bic ? e.bic : e.aic;
        const double incumbent =
            best < 0 ? 0.0 : (crit == Criterion::bic ? entries[best].bic : entries[best].aic);
        if (best < 0 || value < incumbent) best = i;
    }
    if (best >= 0) return best;
    for (int i = static_cast<int>(entries.size()) - 1; i >= 0; --i)
        if (!entries[i].failed) return i;
    return -1;
}

}  // namespace

SelectionReport select_spar(const std::vector<SelectionInput>& inputs, const QuantileGrid& grid,
                            const SplineBasis& basis, const std::vector<double>& spar_grid,
                            const IpConfig& ip, int parallelism) {
    if (inputs.empty()) throw InvalidProblem("no inputs to select over");
    if (spar_grid.empty()) throw SelectionFailed("empty spar grid");
    for (std::size_t i = 1; i < spar_grid.size(); ++i)
        if (!(spar_grid[i] > spar_grid[i - 1]))
            throw SelectionFailed("spar grid must be increasing");

    std::vector<double> ratios(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i)
        ratios[i] = penalty_ratio(inputs[i].X, grid, basis);

    const std::size_t S = spar_grid.size();
    const std::size_t M = inputs.size();
    SelectionReport report;
    report.entries.resize(S);

    struct Cell {
        Criteria crit;
        Eigen::VectorXd v, m;
        double c = 0.0;
        bool failed = false;
        std::string error;
    };
    std::vector<Cell> cells(S * M);

    parallel_for(S * M, parallelism, [&](std::size_t idx) {
        const std::size_t si = idx / M;
        const std::size_t mi = idx % M;
        Cell& cell = cells[idx];
        cell.c = ratios[mi] * std::pow(1000.0, spar_grid[si] - 1.0);
        try {
            const SqrProblem prob =
                make_problem(inputs[mi].X, inputs[mi].y, grid, basis, cell.c);
            const SqrFit fit = fit_ip(prob, ip);
            auto [v, m] = fidelity_complexity(prob, fit.residuals);
            cell.crit = information_criteria(v, m, prob.n(), prob.L());
            cell.v = std::move(v);
            cell.m = std::move(m);
        } catch (const Error& e) {
            cell.failed = true;
            cell.error = e.what();
        }
    });

    for (std::size_t si = 0; si < S; ++si) {
        SelectionEntry& entry = report.entries[si];
        entry.spar = spar_grid[si];
        Eigen::VectorXd v_sum = Eigen::VectorXd::Zero(grid.size());
        Eigen::VectorXd m_sum = Eigen::VectorXd::Zero(grid.size());
        double aic_sum = 0.0, bic_sum = 0.0, c_sum = 0.0;
        for (std::size_t mi = 0; mi < M; ++mi) {
            const Cell& cell = cells[si * M + mi];
            if (cell.failed) {
                entry.failed = true;
                entry.error = cell.error;
                break;
            }
            entry.exact_fit = entry.exact_fit || cell.crit.exact_fit;
            v_sum += cell.v;
            m_sum += cell.m;
            aic_sum += cell.crit.aic;
            bic_sum += cell.crit.bic;
            c_sum += cell.c;
        }
        if (entry.failed) continue;
        const double inv = 1.0 / static_cast<double>(M);
        entry.fidelity = v_sum * inv;
        entry.complexity = m_sum * inv;
        entry.aic = aic_sum * inv;
        entry.bic = bic_sum * inv;
        entry.c = c_sum * inv;
    }

    report.chosen_aic = choose(report.entries, Criterion::aic);
    report.chosen_bic = choose(report.entries, Criterion::bic);
    if (report.chosen_aic < 0 || report.chosen_bic < 0)
        throw SelectionFailed("no spar grid point produced a usable fit");
    return report;
}

SelectionReport select_spar(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            const QuantileGrid& grid, const SplineBasis& basis,
                            const std::vector<double>& spar_grid, const IpConfig& ip,
                            int parallelism) {
    return select_spar(std::vector<SelectionInput>{{X, y}}, grid, basis, spar_grid, ip,
                       parallelism);
}

}  // namespace sqr
