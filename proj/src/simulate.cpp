#include "sqr/simulate.hpp"

#include <cmath>

#include "sqr/errors.hpp"

namespace sqr {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

double UniformRng::next() {
    // 53-bit mantissa, offset by half a step: strictly inside (0,1)
    const std::uint64_t bits = splitmix64(state_) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t state = seed + (index + 1) * 0xD1B54A32D192ED03ULL;
    return splitmix64(state);
}

// Wichura's AS 241 (PPND16) rational approximation.
double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("normal quantile needs u in (0,1)");
    const double q = u - 0.5;
    double r;
    if (std::abs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    r = q < 0.0 ? u : 1.0 - u;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                    3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                  4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                    6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                  2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                    2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                  5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                      1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                    1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                  5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -value : value;
}

std::pair<double, double> qar_truth(double u, const QarSpec& spec) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("u must be in (0,1)");
    const double a0 = spec.sigma0 * normal_quantile(u);
    const double a1 =
        spec.a1_base + spec.a1_slope * u + (u > 0.5 ? spec.a1_kink * (u - 0.5) : 0.0);
    return {a0, a1};
}

Eigen::VectorXd simulate_qar(const QarSpec& spec) {
    if (spec.n < 1) throw InvalidProblem("series length must be positive");
    UniformRng rng(spec.seed);
    Eigen::VectorXd out(spec.n);
    double y = 0.0;
    for (Eigen::Index t = 0; t < spec.burn_in + spec.n; ++t) {
        const auto [a0, a1] = qar_truth(rng.next(), spec);
        y = a0 + a1 * y;
        if (t >= spec.burn_in) out[t - spec.burn_in] = y;
    }
    return out;
}

MaeResult mae(const Eigen::MatrixXd& beta_hat, const Eigen::MatrixXd& truth) {
    if (beta_hat.rows() != truth.rows() || beta_hat.cols() != truth.cols())
        throw ShapeError("estimate and truth shapes differ");
    MaeResult res;
    res.per_coefficient = (beta_hat - truth).cwiseAbs().colwise().mean();
    res.total = res.per_coefficient.sum();
    return res;
}

}  // namespace sqr
