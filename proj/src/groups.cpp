#include "berglab/groups.hpp"

#include "berglab/spaces.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace berglab {

ReflectionGroup ReflectionGroup::symmetric(int d) {
    if (d < 1) throw DimensionMismatch("ReflectionGroup::symmetric: d must be positive");
    ReflectionGroup g;
    g.kind_ = GroupKind::SymmetricGroup;
    g.dim_ = d;
    std::vector<int> perm(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) perm[static_cast<std::size_t>(i)] = i;
    do {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
        int inv = 0;
        for (int i = 0; i < d; ++i) {
            m(i, perm[static_cast<std::size_t>(i)]) = 1.0;
            for (int j = i + 1; j < d; ++j)
                if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inv;
        }
        g.elements_.push_back(std::move(m));
        g.chi_.push_back(Cx((inv % 2 == 0) ? 1.0 : -1.0)); // det^{-1} = sgn
    } while (std::next_permutation(perm.begin(), perm.end()));
    g.hsop_ = symmetrization_components(d);
    g.f_mu_ = vandermonde(d);
    return g;
}

ReflectionGroup ReflectionGroup::cyclic(int m) {
    if (m < 2) throw std::invalid_argument("ReflectionGroup::cyclic: order must be >= 2");
    ReflectionGroup g;
    g.kind_ = GroupKind::Cyclic;
    g.dim_ = 1;
    g.cyclic_order_ = m;
    for (int k = 0; k < m; ++k) {
        Eigen::MatrixXcd mat(1, 1);
        const Cx w = std::polar(1.0, 2.0 * Rng::pi() * static_cast<double>(k) / static_cast<double>(m));
        mat(0, 0) = w;
        g.elements_.push_back(std::move(mat));
        g.chi_.push_back(Cx(1.0) / w); // det^{-1}(omega^k) = omega^{-k}
    }
    g.hsop_ = {Polynomial::monomial({m})};
    g.f_mu_ = Polynomial::monomial({m - 1});
    return g;
}

std::string ReflectionGroup::name() const {
    return kind_ == GroupKind::SymmetricGroup ? "sym:" + std::to_string(dim_)
                                              : "cyc:" + std::to_string(cyclic_order_);
}

ProperMap ReflectionGroup::theta_map() const {
    return kind_ == GroupKind::SymmetricGroup ? ProperMap::symmetrization(dim_)
                                              : ProperMap::power(cyclic_order_);
}

Domain ReflectionGroup::natural_domain() const {
    return kind_ == GroupKind::SymmetricGroup ? Domain::polydisc(dim_) : Domain::unit_disc();
}

Polynomial group_act(const Polynomial& f, const Eigen::MatrixXcd& rho) {
    const int d = f.dimension();
    if (rho.rows() != d || rho.cols() != d)
        throw DimensionMismatch("group_act: matrix size vs polynomial dimension");
    std::vector<Cx> rowmajor(static_cast<std::size_t>(d * d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) rowmajor[static_cast<std::size_t>(i * d + j)] = rho(i, j);
    return substitute_linear(f, rowmajor);
}

bool relative_invariant_check(const Polynomial& f, const ReflectionGroup& g, double tol) {
    if (f.dimension() != g.dimension()) throw DimensionMismatch("relative_invariant_check");
    const double scale = std::max(1.0, f.max_abs_coeff());
    for (std::size_t k = 0; k < g.order(); ++k) {
        const Polynomial moved = group_act(f, g.elements()[k]);
        if (!moved.approx_equal(f * g.chi_mu(k), tol * scale)) return false;
    }
    return true;
}

Polynomial project_group(const ReflectionGroup& g, const Polynomial& f) {
    if (f.dimension() != g.dimension()) throw DimensionMismatch("project_group");
    Polynomial acc(g.dimension());
    for (std::size_t k = 0; k < g.order(); ++k) {
        // chi_mu(rho^{-1}) = det(rho)
        const Cx det_rho = Cx(1.0) / g.chi_mu(k);
        acc += group_act(f, g.elements()[k]) * det_rho;
    }
    return acc * Cx(1.0 / static_cast<double>(g.order()));
}

Polynomial divide_by_fmu(const Polynomial& f, const ReflectionGroup& g) {
    if (!relative_invariant_check(f, g, 1e-9))
        throw std::invalid_argument("divide_by_fmu: input is not a relative invariant");
    const double scale = std::max(1.0, f.max_abs_coeff());
    if (g.kind() == GroupKind::Cyclic) {
        const int m1 = g.f_mu().degree(); // z^{m-1}
        Polynomial out(1);
        for (const auto& [a, c] : f.terms()) {
            if (a[0] < m1) {
                if (std::abs(c) > 1e-10 * scale)
                    throw NotDivisible("divide_by_fmu: low-order coefficient survives");
                continue;
            }
            out.add_term({a[0] - m1}, c);
        }
        return out;
    }
    Polynomial quot = f;
    const int d = g.dimension();
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            auto [q, r] = divide_linear_difference(quot, i, j);
            if (r.max_abs_coeff() > 1e-10 * scale)
                throw NotDivisible("divide_by_fmu: remainder after (z" + std::to_string(i + 1) +
                                   " - z" + std::to_string(j + 1) + ")");
            quot = std::move(q);
        }
    return quot;
}

EquivReport verify_equiv(const ReflectionGroup& g, const Domain& domain, int cap) {
    if (!(domain == g.natural_domain()))
        throw DimensionMismatch("verify_equiv: domain must be the natural G-invariant domain");
    const ProperMap theta = g.theta_map();
    const BasisSet target_basis = onb(theta.target(), cap);

    std::vector<Polynomial> s1;
    int maxdeg = 0;
    for (const Polynomial& b : target_basis.elements) {
        GammaImage im = gamma_apply(theta, b);
        if (!im.polynomial) throw std::logic_error("verify_equiv: Gamma image is not polynomial");
        maxdeg = std::max(maxdeg, im.polynomial->degree());
        s1.push_back(std::move(*im.polynomial));
    }

    // span of P_mu over all monomials up to the matching degree, zero images
    // dropped
    std::vector<Polynomial> s2;
    const int d = domain.dimension();
    std::vector<MultiIndex> monos;
    MultiIndex a(static_cast<std::size_t>(d), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == d) {
            monos.push_back(a);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            a[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, left - v);
        }
        a[static_cast<std::size_t>(pos)] = 0;
    };
    rec(0, maxdeg);
    for (const auto& alpha : monos) {
        Polynomial p = project_group(g, Polynomial::monomial(alpha));
        if (p.max_abs_coeff() > 1e-12) s2.push_back(std::move(p));
    }

    // Gram and cross-Gram in the quadrature inner product, accumulated in
    // one pass over the nodes. Principal angles come from
    //   M = L1^{-1/2} V1^* G12 V2 L2^{-1/2},
    // whose singular values are the cosines.
    const QuadratureRule rule = domain.quadrature(std::max(1, maxdeg));
    const Eigen::Index n1 = static_cast<Eigen::Index>(s1.size());
    const Eigen::Index n2 = static_cast<Eigen::Index>(s2.size());
    Eigen::MatrixXcd g11 = Eigen::MatrixXcd::Zero(n1, n1);
    Eigen::MatrixXcd g22 = Eigen::MatrixXcd::Zero(n2, n2);
    Eigen::MatrixXcd g12 = Eigen::MatrixXcd::Zero(n1, n2);
    Eigen::VectorXcd v1(n1), v2(n2);
    for (std::size_t k = 0; k < rule.size(); ++k) {
        const auto z = rule.node(k);
        const double w = rule.weight(k);
        for (Eigen::Index j = 0; j < n1; ++j) v1(j) = s1[static_cast<std::size_t>(j)](z);
        for (Eigen::Index j = 0; j < n2; ++j) v2(j) = s2[static_cast<std::size_t>(j)](z);
        g11.noalias() += w * v1 * v1.adjoint();
        g22.noalias() += w * v2 * v2.adjoint();
        g12.noalias() += w * v1 * v2.adjoint();
    }

    // whitening bases for the two spans; exact dependencies sit at machine
    // noise, well separated from true Gram eigenvalues
    auto whiten = [](const Eigen::MatrixXcd& g) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (g + g.adjoint().eval()));
        const auto& ev = es.eigenvalues();
        const double cut = 1e-12 * std::max(ev.maxCoeff(), 1e-300);
        Eigen::Index rank = 0;
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            if (ev(i) > cut) ++rank;
        Eigen::MatrixXcd w(g.rows(), rank);
        Eigen::Index c = 0;
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            if (ev(i) > cut) w.col(c++) = es.eigenvectors().col(i) / std::sqrt(ev(i));
        return w;
    };
    const Eigen::MatrixXcd w1 = whiten(g11);
    const Eigen::MatrixXcd w2 = whiten(g22);

    EquivReport rep;
    rep.cap = cap;
    rep.dim_gamma_span = static_cast<int>(w1.cols());
    rep.dim_projection_span = static_cast<int>(w2.cols());
    if (w1.cols() != w2.cols()) {
        rep.principal_angle = 0.5 * Rng::pi();
        rep.pass = false;
        return rep;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> overlap(w1.adjoint() * g12 * w2);
    const double smin = overlap.singularValues().minCoeff();
    rep.principal_angle = std::acos(std::clamp(smin, 0.0, 1.0));
    rep.pass = rep.principal_angle < 1e-6;
    return rep;
}

} // namespace berglab
