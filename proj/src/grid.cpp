#include "sqr/grid.hpp"

#include <cmath>
#include <vector>

namespace sqr {

namespace {

void validate(const Eigen::VectorXd& levels, const Eigen::VectorXd& weights) {
    if (levels.size() < 1) throw InvalidGrid("quantile grid is empty");
    if (weights.size() != levels.size())
        throw InvalidGrid("weights length does not match levels length");
    for (Eigen::Index i = 0; i < levels.size(); ++i) {
        const double t = levels[i];
        if (!(t > 0.0 && t < 1.0))
            throw InvalidGrid("quantile level outside (0,1)");
        if (i > 0 && !(t > levels[i - 1]))
            throw InvalidGrid("quantile levels must be strictly increasing");
        if (!(weights[i] >= 0.0))
            throw InvalidGrid("penalty weights must be nonnegative");
    }
}

}  // namespace

QuantileGrid::QuantileGrid(Eigen::VectorXd levels_, Eigen::VectorXd weights_)
    : levels(std::move(levels_)), weights(std::move(weights_)) {
    validate(levels, weights);
}

QuantileGrid::QuantileGrid(Eigen::VectorXd levels_)
    : levels(std::move(levels_)), weights(Eigen::VectorXd::Ones(levels.size())) {
    validate(levels, weights);
}

QuantileGrid QuantileGrid::regular(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) throw InvalidGrid("bad regular grid spec");
    std::vector<double> out;
    for (Eigen::Index k = 0;; ++k) {
        const double t = lo + static_cast<double>(k) * step;
        if (t > hi + 0.5 * step) break;
        out.push_back(t);
    }
    Eigen::VectorXd levels = Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
    return QuantileGrid(std::move(levels));
}

}  // namespace sqr
