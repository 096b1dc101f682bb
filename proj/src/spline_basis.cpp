#include "sqr/spline_basis.hpp"

#include <algorithm>
#include <cmath>

#include "sqr/errors.hpp"

namespace sqr {

namespace {

constexpr int kOrder = 4;  // cubic

// Largest nonempty span index i with knots[i] <= tau, right-continuous
// except at the right boundary where the last span is used.
Eigen::Index find_span(const Eigen::VectorXd& knots, Eigen::Index K, double tau) {
    const double* begin = knots.data();
    const double* end = begin + knots.size();
    Eigen::Index i = std::upper_bound(begin, end, tau) - begin - 1;
    return std::clamp<Eigen::Index>(i, kOrder - 1, K - 1);
}

// Nonzero basis values of the given order at span i (de Boor triangle).
// out[j] = B_{i-order+1+j, order}(tau), j = 0..order-1.
void bsplvb(const Eigen::VectorXd& knots, Eigen::Index i, double tau, int order, double* out) {
    double left[kOrder];
    double right[kOrder];
    out[0] = 1.0;
    for (int ord = 2; ord <= order; ++ord) {
        left[ord - 1] = tau - knots[i + 2 - ord];
        right[ord - 1] = knots[i + ord - 1] - tau;
        double saved = 0.0;
        for (int r = 0; r < ord - 1; ++r) {
            const double den = right[r + 1] + left[ord - 1 - r];
            const double term = out[r] / den;
            out[r] = saved + right[r + 1] * term;
            saved = left[ord - 1 - r] * term;
        }
        out[ord - 1] = saved;
    }
}

double ratio(double num, double d1, double d2) {
    return num == 0.0 ? 0.0 : num / (d1 * d2);
}

// Values and second derivatives of the cubic basis at tau, scattered into
// dense K-vectors. The second derivative comes from the order-2 values via
// the knot-difference recursion applied twice.
void eval_cubic(const Eigen::VectorXd& knots, Eigen::Index K, double tau,
                Eigen::VectorXd& value, Eigen::VectorXd& dd) {
    value.setZero(K);
    dd.setZero(K);
    const Eigen::Index i = find_span(knots, K, tau);

    double n4[kOrder];
    bsplvb(knots, i, tau, kOrder, n4);
    for (int j = 0; j < kOrder; ++j) value[i - kOrder + 1 + j] = n4[j];

    double n2[2];
    bsplvb(knots, i, tau, 2, n2);
    auto b2 = [&](Eigen::Index j) {  // B_{j,2}(tau); nonzero only for j = i-1, i
        if (j == i - 1) return n2[0];
        if (j == i) return n2[1];
        return 0.0;
    };
    auto t = [&](Eigen::Index j) { return knots[j]; };
    for (Eigen::Index j = i - kOrder + 1; j <= i; ++j) {
        double acc = ratio(b2(j), t(j + 3) - t(j), t(j + 2) - t(j));
        acc -= ratio(b2(j + 1), t(j + 3) - t(j), t(j + 3) - t(j + 1));
        acc -= ratio(b2(j + 1), t(j + 4) - t(j + 1), t(j + 3) - t(j + 1));
        acc += ratio(b2(j + 2), t(j + 4) - t(j + 1), t(j + 4) - t(j + 2));
        dd[j] = 6.0 * acc;
    }
}

}  // namespace

SplineBasis build_basis(const QuantileGrid& grid, std::optional<int> nknots) {
    const Eigen::Index L = grid.size();
    Eigen::Index interior;
    if (nknots) {
        if (*nknots > L) throw InvalidKnotCount("nknots exceeds the number of grid levels");
        if (*nknots < 2) throw InvalidKnotCount("nknots must be at least 2 (the boundary sites)");
        interior = *nknots - 2;
    } else {
        if (L < 4) throw InvalidGrid("default knot rule needs at least 4 levels; pass nknots");
        interior = std::min<Eigen::Index>(
            static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(L)))) + 2, L - 2);
    }

    SplineBasis basis;
    basis.order = kOrder;
    basis.K = interior + kOrder;
    basis.knots.resize(basis.K + kOrder);
    for (int r = 0; r < kOrder; ++r) {
        basis.knots[r] = grid.levels[0];
        basis.knots[basis.K + r] = grid.levels[L - 1];
    }
    for (Eigen::Index i = 0; i < interior; ++i) {
        // evenly spaced order statistics of the levels; spacing >= 1 index
        // because interior <= L-2, so the sites are distinct
        const Eigen::Index idx = static_cast<Eigen::Index>(
            std::llround(static_cast<double>((i + 1) * (L - 1)) / static_cast<double>(interior + 1)));
        basis.knots[kOrder + i] = grid.levels[idx];
    }

    basis.Phi.resize(L, basis.K);
    basis.Phi_dd.resize(L, basis.K);
    Eigen::VectorXd value, dd;
    for (Eigen::Index l = 0; l < L; ++l) {
        eval_cubic(basis.knots, basis.K, grid.levels[l], value, dd);
        basis.Phi.row(l) = value.transpose();
        basis.Phi_dd.row(l) = dd.transpose();
    }
    return basis;
}

SplineBasis constant_basis(const QuantileGrid& grid) {
    SplineBasis basis;
    basis.order = 1;
    basis.K = 1;
    basis.knots.resize(2);
    basis.knots << grid.levels[0], grid.levels[grid.size() - 1];
    basis.Phi = Eigen::MatrixXd::Ones(grid.size(), 1);
    basis.Phi_dd = Eigen::MatrixXd::Zero(grid.size(), 1);
    return basis;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> eval_basis(const SplineBasis& basis, double tau) {
    if (tau < basis.span_min() || tau > basis.span_max())
        throw OutOfSpan("tau outside the knot span");
    Eigen::VectorXd value, dd;
    if (basis.order == 1) {
        value = Eigen::VectorXd::Ones(basis.K);
        dd = Eigen::VectorXd::Zero(basis.K);
    } else {
        eval_cubic(basis.knots, basis.K, tau, value, dd);
    }
    return {std::move(value), std::move(dd)};
}

}  // namespace sqr
