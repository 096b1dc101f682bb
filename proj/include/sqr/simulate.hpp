#pragma once

#include <cstdint>
#include <utility>

#include <Eigen/Dense>

namespace sqr {

/// Quantile autoregression y_t = a0(U_t) + a1(U_t) y_{t-1} with i.i.d.
/// uniform U_t, a0 the N(0, sigma0^2) quantile function and a1 piecewise
/// linear with a kink at u = 0.5.
struct QarSpec {
    Eigen::Index n = 200;
    double sigma0 = 0.4;
    double a1_base = 0.85;
    double a1_slope = 0.1;
    double a1_kink = 0.25;   // extra slope above u = 0.5
    Eigen::Index burn_in = 200;
    std::uint64_t seed = 0;
};

/// Standard normal quantile function (rational approximation, absolute
/// error well below 1e-9 on (0,1)).
double normal_quantile(double u);

/// (a0(u), a1(u)) for u in (0,1); DomainError outside.
std::pair<double, double> qar_truth(double u, const QarSpec& spec = {});

/// Deterministic realization of length spec.n (burn-in discarded, y0 = 0).
Eigen::VectorXd simulate_qar(const QarSpec& spec);

/// Deterministic uniforms in (0,1); splitmix64 underneath.
class UniformRng {
  public:
    explicit UniformRng(std::uint64_t seed) : state_(seed) {}
    double next();

  private:
    std::uint64_t state_;
};

/// Decorrelated child seed for replication `index` of a parent seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

struct MaeResult {
    Eigen::VectorXd per_coefficient;
    double total = 0.0;
};

/// Mean absolute error per functional coefficient over the grid (rows =
/// levels, columns = coefficients) and their sum.
MaeResult mae(const Eigen::MatrixXd& beta_hat, const Eigen::MatrixXd& truth);

}  // namespace sqr
