#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sqr/grid.hpp"
#include "sqr/ip_solver.hpp"

namespace sqr {

/// Fourier frequencies 2 pi v / n, v = 1..floor((n-1)/2), all in (0, pi).
struct FrequencyGrid {
    Eigen::Index n = 0;
    Eigen::VectorXd omegas;

    static FrequencyGrid fourier(Eigen::Index n);
    Eigen::Index size() const { return omegas.size(); }
};

/// Harmonic regression design [1, cos(omega t), sin(omega t)], t = 1..n.
Eigen::MatrixXd trig_design(Eigen::Index n, double omega);

enum class SpectrumMethod { sqr, qr };

/// Quantile DFT (n/2)(b2 - i b3) per (level, frequency) and the matching
/// periodogram |qdft|^2 / n = (n/4)(b2^2 + b3^2).
struct QSpectrum {
    QuantileGrid grid;
    FrequencyGrid freqs;
    Eigen::MatrixXcd qdft;  // L x V
    Eigen::MatrixXd qper;   // L x V
    double spar = 0.0;      // meaningful for the sqr method
    bool spar_auto = false;
    SpectrumMethod method = SpectrumMethod::sqr;
    std::vector<std::uint8_t> failed;  // per-frequency mask

    Eigen::Index failures() const;
};

struct SqdftOptions {
    SpectrumMethod method = SpectrumMethod::sqr;
    std::optional<double> spar;  // absent = choose by average BIC over frequencies
    IpConfig ip;
    int parallelism = 1;
};

/// Trigonometric quantile regression across all Fourier frequencies. The
/// sqr method fits one smoothing-spline problem per frequency (shared spar,
/// chosen by average BIC when not supplied); the qr method fits each level
/// independently. Frequencies whose solve fails are masked; an all-failed
/// sweep throws SpectrumFailed.
QSpectrum sqdft(const Eigen::VectorXd& series, const QuantileGrid& grid,
                const SqdftOptions& options = {});

Eigen::MatrixXd qdft_to_qper(const Eigen::MatrixXcd& qdft, Eigen::Index n);

}  // namespace sqr
