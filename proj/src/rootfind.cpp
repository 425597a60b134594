#include "berglab/rootfind.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace berglab {

namespace {

CVec monic_from(const CVec& coeffs) {
    if (coeffs.size() < 2) throw std::invalid_argument("all_roots: need degree >= 1");
    const Cx lead = coeffs.back();
    if (std::abs(lead) == 0.0) throw std::invalid_argument("all_roots: zero leading coefficient");
    CVec m(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) m[k] = coeffs[k] / lead;
    return m;
}

Cx eval_monic(const CVec& m, Cx z) {
    const std::size_t n = m.size() - 1;
    Cx acc(1.0);
    for (std::size_t k = n; k-- > 0;) acc = acc * z + m[k];
    return acc;
}

Cx stable_quadratic_root(Cx b, Cx c, int which) {
    // roots of z^2 + b z + c, computed without cancellation
    const Cx disc = std::sqrt(b * b - 4.0 * c);
    Cx q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
    if (std::abs(q) == 0.0) return Cx(0.0);
    return which == 0 ? q : c / q;
}

} // namespace

CVec all_roots(const CVec& coeffs) {
    const CVec m = monic_from(coeffs);
    const std::size_t n = m.size() - 1;
    if (n == 1) return {-m[0]};
    if (n == 2) return {stable_quadratic_root(m[1], m[0], 0), stable_quadratic_root(m[1], m[0], 1)};

    // radius bound 1 + max|c_k| keeps the start points around all roots
    double radius = 0.0;
    for (std::size_t k = 0; k < n; ++k) radius = std::max(radius, std::abs(m[k]));
    radius = std::min(1.0 + radius, 4.0);

    // spiral start points; the angular offset avoids symmetric lock-in
    CVec z(n);
    for (std::size_t k = 0; k < n; ++k)
        z[k] = std::polar(0.5 * radius + 0.3 * radius * static_cast<double>(k) / static_cast<double>(n),
                          2.0 * Rng::pi() * static_cast<double>(k) / static_cast<double>(n) + 0.43);

    constexpr int kMaxIter = 500;
    constexpr double kResidualTol = 1e-10;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        double shift_max = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Cx denom(1.0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) denom *= (z[i] - z[j]);
            if (std::abs(denom) == 0.0) {
                z[i] += Cx(1e-8, 1e-8); // split coincident iterates
                denom = Cx(1.0);
                for (std::size_t j = 0; j < n; ++j)
                    if (j != i) denom *= (z[i] - z[j]);
            }
            const Cx delta = eval_monic(m, z[i]) / denom;
            z[i] -= delta;
            shift_max = std::max(shift_max, std::abs(delta));
        }
        if (shift_max < 1e-14) break;
    }
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(eval_monic(m, z[i])));
    if (res > kResidualTol)
        throw RootFindingDiverged("all_roots: residual " + std::to_string(res) + " after iteration cap");
    return z;
}

CVec companion_roots(const CVec& coeffs) {
    const CVec m = monic_from(coeffs);
    const std::size_t n = m.size() - 1;
    if (n == 1) return {-m[0]};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 1; i < n; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < n; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -m[i];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
    CVec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
    return out;
}

CVec symdisc_preimage(const CVec& w) {
    const std::size_t d = w.size();
    if (d == 0) throw DimensionMismatch("symdisc_preimage: empty point");
    if (d == 1) return {w[0]};
    if (d == 2) {
        // t^2 - w1 t + w2
        return {stable_quadratic_root(-w[0], w[1], 0), stable_quadratic_root(-w[0], w[1], 1)};
    }
    CVec coeffs(d + 1);
    coeffs[d] = Cx(1.0);
    double sign = -1.0;
    for (std::size_t k = 1; k <= d; ++k) {
        coeffs[d - k] = sign * w[k - 1];
        sign = -sign;
    }
    return all_roots(coeffs);
}

} // namespace berglab
