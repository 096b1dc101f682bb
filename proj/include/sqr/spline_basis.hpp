#pragma once

#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "sqr/grid.hpp"

namespace sqr {

/// Cubic B-spline basis over a quantile grid, with boundary knots replicated
/// to full multiplicity. Phi and Phi_dd hold the basis values and their
/// second derivatives evaluated at the grid levels (one row per level).
struct SplineBasis {
    Eigen::VectorXd knots;   // full knot vector, order-fold boundary replication
    int order = 4;           // 4 = cubic
    Eigen::Index K = 0;      // number of basis functions
    Eigen::MatrixXd Phi;     // L x K
    Eigen::MatrixXd Phi_dd;  // L x K

    double span_min() const { return knots[0]; }
    double span_max() const { return knots[knots.size() - 1]; }
};

/// Builds a cubic basis with knots placed at order statistics of the grid
/// levels. Without nknots the interior-knot count defaults to
/// round(sqrt(L)) + 2 capped at L-2 (which needs L >= 4); nknots, when given,
/// counts the two boundary sites plus the interior ones, so K = nknots + 2.
SplineBasis build_basis(const QuantileGrid& grid, std::optional<int> nknots = std::nullopt);

/// Degenerate one-function basis (phi == 1, no curvature). Used for
/// single-level fits, where the model reduces to ordinary quantile
/// regression.
SplineBasis constant_basis(const QuantileGrid& grid);

/// Basis values and second derivatives at an arbitrary tau inside the knot
/// span. At a grid level this reproduces the corresponding Phi/Phi_dd rows
/// bit for bit (same evaluation path).
std::pair<Eigen::VectorXd, Eigen::VectorXd> eval_basis(const SplineBasis& basis, double tau);

}  // namespace sqr
