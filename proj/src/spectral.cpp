#include "sqr/spectral.hpp"

#include <cmath>
#include <numbers>

#include "sqr/errors.hpp"
#include "sqr/fit.hpp"
#include "sqr/model_select.hpp"
#include "sqr/parallel.hpp"

namespace sqr {

FrequencyGrid FrequencyGrid::fourier(Eigen::Index n) {
    if (n < 3) throw InvalidProblem("need at least 3 samples for a Fourier grid");
    FrequencyGrid grid;
    grid.n = n;
    const Eigen::Index V = (n - 1) / 2;
    grid.omegas.resize(V);
    for (Eigen::Index v = 0; v < V; ++v)
        grid.omegas[v] = 2.0 * std::numbers::pi * static_cast<double>(v + 1) /
                         static_cast<double>(n);
    return grid;
}

Eigen::MatrixXd trig_design(Eigen::Index n, double omega) {
    Eigen::MatrixXd X(n, 3);
    for (Eigen::Index t = 0; t < n; ++t) {
        const double wt = omega * static_cast<double>(t + 1);
        X(t, 0) = 1.0;
        X(t, 1) = std::cos(wt);
        X(t, 2) = std::sin(wt);
    }
    return X;
}

Eigen::Index QSpectrum::failures() const {
    Eigen::Index count = 0;
    for (auto f : failed) count += f;
    return count;
}

Eigen::MatrixXd qdft_to_qper(const Eigen::MatrixXcd& qdft, Eigen::Index n) {
    return qdft.cwiseAbs2() / static_cast<double>(n);
}

namespace {

// beta columns 1 and 2 (cos, sin) -> (n/2)(b2 - i b3) per level.
void fill_column(QSpectrum& spec, Eigen::Index v, const Eigen::MatrixXd& beta) {
    const double half_n = 0.5 * static_cast<double>(spec.freqs.n);
    for (Eigen::Index l = 0; l < beta.rows(); ++l)
        spec.qdft(l, v) = std::complex<double>(half_n * beta(l, 1), -half_n * beta(l, 2));
}

}  // namespace

QSpectrum sqdft(const Eigen::VectorXd& series, const QuantileGrid& grid,
                const SqdftOptions& options) {
    if (series.size() < 8) throw InvalidProblem("series too short for a spectrum");
    if (!series.allFinite()) throw InvalidProblem("non-finite entries in series");
    const Eigen::Index n = series.size();

    QSpectrum spec{grid, FrequencyGrid::fourier(n), {}, {}, 0.0, false,
                   options.method, {}};
    const Eigen::Index V = spec.freqs.size();
    const Eigen::Index L = grid.size();
    spec.qdft.setZero(L, V);
    spec.failed.assign(V, 0);

    if (options.method == SpectrumMethod::qr) {
        parallel_for(V, options.parallelism, [&](std::size_t v) {
            const Eigen::MatrixXd X = trig_design(n, spec.freqs.omegas[v]);
            Eigen::MatrixXd beta(L, 3);
            try {
                for (Eigen::Index l = 0; l < L; ++l)
                    beta.row(l) = qr_coefficients(X, series, grid.levels[l], options.ip)
                                      .transpose();
                fill_column(spec, v, beta);
            } catch (const Error&) {
                spec.failed[v] = 1;
            }
        });
    } else {
        const SplineBasis basis = build_basis(grid);
        double spar;
        if (options.spar) {
            spar = *options.spar;
        } else {
            std::vector<SelectionInput> inputs;
            inputs.reserve(V);
            for (Eigen::Index v = 0; v < V; ++v)
                inputs.push_back({trig_design(n, spec.freqs.omegas[v]), series});
            const SelectionReport report = select_spar(inputs, grid, basis, default_spar_grid(),
                                                       options.ip, options.parallelism);
            spar = report.spar(Criterion::bic);
            spec.spar_auto = true;
        }
        spec.spar = spar;
        parallel_for(V, options.parallelism, [&](std::size_t v) {
            const Eigen::MatrixXd X = trig_design(n, spec.freqs.omegas[v]);
            try {
                const double c = spar_to_c(X, grid, basis, spar);
                const SqrFit fit = fit_ip(make_problem(X, series, grid, basis, c), options.ip);
                fill_column(spec, v, fit.beta);
            } catch (const Error&) {
                spec.failed[v] = 1;
            }
        });
    }

    if (spec.failures() == V) throw SpectrumFailed("every frequency failed to solve");
    spec.qper = qdft_to_qper(spec.qdft, n);
    return spec;
}

}  // namespace sqr
