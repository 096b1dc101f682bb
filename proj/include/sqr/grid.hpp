#pragma once

#include <Eigen/Dense>

#include "sqr/errors.hpp"

namespace sqr {

/// An increasing sequence of quantile levels together with per-level
/// penalty weights. Levels live strictly inside (0,1); weights are
/// nonnegative and default to 1.
struct QuantileGrid {
    Eigen::VectorXd levels;
    Eigen::VectorXd weights;

    QuantileGrid(Eigen::VectorXd levels_, Eigen::VectorXd weights_);
    explicit QuantileGrid(Eigen::VectorXd levels_);

    Eigen::Index size() const { return levels.size(); }

    /// Levels lo, lo+step, ..., up to hi (inclusive within a half-step slack).
    static QuantileGrid regular(double lo, double hi, double step);
};

}  // namespace sqr
