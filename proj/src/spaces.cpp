#include "berglab/spaces.hpp"

#include "berglab/rootfind.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace berglab {

HoloFn to_fn(const Polynomial& p) {
    return [p](std::span<const Cx> z) { return p(z); };
}

HoloFn to_fn(const RationalFunction& r) {
    return [r](std::span<const Cx> z) { return r(z); };
}

std::vector<MultiIndex> partitions_up_to(int d, int cap) {
    std::vector<MultiIndex> out;
    MultiIndex a(static_cast<std::size_t>(d), 0);
    // enumerate decreasing multi-indices by depth-first search, then sort
    // into graded-lex order
    std::function<void(int, int, int)> rec = [&](int pos, int bound, int left) {
        if (pos == d) {
            out.push_back(a);
            return;
        }
        for (int v = 0; v <= std::min(bound, left); ++v) {
            a[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, v, left - v);
        }
        a[static_cast<std::size_t>(pos)] = 0;
    };
    rec(0, cap, cap);
    std::sort(out.begin(), out.end(), GradedLexLess{});
    return out;
}

Polynomial antisymmetrized_monomial(const MultiIndex& lambda) {
    const int d = static_cast<int>(lambda.size());
    for (int i = 0; i + 1 < d; ++i)
        if (lambda[static_cast<std::size_t>(i)] <= lambda[static_cast<std::size_t>(i + 1)])
            throw std::invalid_argument("antisymmetrized_monomial: parts must strictly decrease");
    double norm2 = 1.0, dfact = 1.0;
    for (int i = 0; i < d; ++i) norm2 *= static_cast<double>(lambda[static_cast<std::size_t>(i)] + 1);
    for (int i = 2; i <= d; ++i) dfact *= static_cast<double>(i);
    const double scale = std::sqrt(norm2 / dfact);

    Polynomial out(d);
    std::vector<int> perm(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) perm[static_cast<std::size_t>(i)] = i;
    do {
        int inv = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inv;
        MultiIndex mono(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) mono[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        out.add_term(mono, Cx(((inv % 2 == 0) ? scale : -scale)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

namespace {

// Express a symmetric polynomial in the elementary symmetric polynomials.
// The transition matrix between symmetrized monomials and products of
// elementary symmetric polynomials is unitriangular in graded-lex order, so
// the linear system solves by leading-term elimination: peel off the
// graded-lex leading term c * z^mu (mu a partition for symmetric input) with
// c * e_1^{mu_1-mu_2} ... e_d^{mu_d} and recurse.
Polynomial express_in_elementary(const Polynomial& q, int d) {
    const std::vector<Polynomial> s = symmetrization_components(d);
    std::vector<std::vector<Polynomial>> spow(static_cast<std::size_t>(d));
    auto s_power = [&](int i, int k) -> const Polynomial& {
        auto& tab = spow[static_cast<std::size_t>(i)];
        if (tab.empty()) tab.push_back(Polynomial::constant(d, 1.0));
        while (static_cast<int>(tab.size()) <= k) tab.push_back(tab.back() * s[static_cast<std::size_t>(i)]);
        return tab[static_cast<std::size_t>(k)];
    };

    const double scale = std::max(1.0, q.max_abs_coeff());
    Polynomial rest = q;
    Polynomial out(d);
    long guard = 0;
    while (!rest.is_zero()) {
        if (++guard > 200000) throw std::logic_error("express_in_elementary: no convergence");
        const auto lead = rest.terms().rbegin();
        const MultiIndex mu = lead->first;
        const Cx c = lead->second;
        if (std::abs(c) < 1e-11 * scale) { // rounding dust
            rest.add_term(mu, -c);
            continue;
        }
        MultiIndex beta(static_cast<std::size_t>(d), 0);
        for (int i = 0; i < d; ++i) {
            const int next = (i + 1 < d) ? mu[static_cast<std::size_t>(i + 1)] : 0;
            if (mu[static_cast<std::size_t>(i)] < next)
                throw std::logic_error("express_in_elementary: input is not symmetric");
            beta[static_cast<std::size_t>(i)] = mu[static_cast<std::size_t>(i)] - next;
        }
        Polynomial t = Polynomial::constant(d, c);
        for (int i = 0; i < d; ++i)
            if (beta[static_cast<std::size_t>(i)] > 0) t *= s_power(i, beta[static_cast<std::size_t>(i)]);
        rest -= t;
        out.add_term(beta, c);
    }
    // verification: composing back must reproduce the input
    if (!compose(out, s).approx_equal(q, 1e-9 * scale))
        throw std::logic_error("express_in_elementary: reconstruction failed");
    return out;
}

BasisSet onb_symdisc(const Domain& dom, int cap) {
    const int d = dom.dimension();
    const Polynomial js = jacobian_det(symmetrization_components(d));
    const Polynomial v = vandermonde(d);
    // J_s = c * vandermonde with c in {+1,-1}; pin the sign by comparison
    double sign;
    if (js.approx_equal(v, 1e-12))
        sign = 1.0;
    else if (js.approx_equal(-v, 1e-12))
        sign = -1.0;
    else
        throw std::logic_error("onb: symmetrization jacobian is not +-vandermonde");

    BasisSet basis;
    basis.domain = dom;
    basis.degree_cap = cap;
    MultiIndex delta(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) delta[static_cast<std::size_t>(i)] = d - 1 - i;

    for (const MultiIndex& alpha : partitions_up_to(d, cap)) {
        MultiIndex lambda = alpha;
        for (int i = 0; i < d; ++i) lambda[static_cast<std::size_t>(i)] += delta[static_cast<std::size_t>(i)];
        // determinant det((z_i^{lambda_j})), un-normalized
        Polynomial det(d);
        {
            std::vector<int> perm(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) perm[static_cast<std::size_t>(i)] = i;
            do {
                int inv = 0;
                for (int i = 0; i < d; ++i)
                    for (int j = i + 1; j < d; ++j)
                        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inv;
                MultiIndex mono(static_cast<std::size_t>(d));
                for (int i = 0; i < d; ++i) mono[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
                det.add_term(mono, Cx((inv % 2 == 0) ? 1.0 : -1.0));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        // divide by the vandermonde factor by factor; remainders must vanish
        Polynomial quot = det;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                auto [q, r] = divide_linear_difference(quot, i, j);
                if (r.max_abs_coeff() > 1e-10 * std::max(1.0, quot.max_abs_coeff()))
                    throw std::logic_error("onb: anti-symmetric determinant not divisible by vandermonde");
                quot = std::move(q);
            }
        double norm = 1.0;
        for (int i = 0; i < d; ++i) norm *= static_cast<double>(lambda[static_cast<std::size_t>(i)] + 1);
        Polynomial h = express_in_elementary(quot, d) * Cx(sign * std::sqrt(norm));
        basis.labels.push_back(alpha);
        basis.elements.push_back(std::move(h));
    }
    return basis;
}

} // namespace

BasisSet onb(const Domain& domain, int degree_cap) {
    if (degree_cap < 0) throw std::invalid_argument("onb: degree cap must be >= 0");
    if (domain.kind() == DomainKind::SymmetrizedPolydisc) return onb_symdisc(domain, degree_cap);

    BasisSet basis;
    basis.domain = domain;
    basis.degree_cap = degree_cap;
    const int d = domain.dimension();
    // all multi-indices |alpha| <= cap in graded-lex order
    std::vector<MultiIndex> idx;
    MultiIndex a(static_cast<std::size_t>(d), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == d) {
            idx.push_back(a);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            a[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, left - v);
        }
        a[static_cast<std::size_t>(pos)] = 0;
    };
    rec(0, degree_cap);
    std::sort(idx.begin(), idx.end(), GradedLexLess{});
    for (const auto& alpha : idx) {
        basis.labels.push_back(alpha);
        basis.elements.push_back(Polynomial::monomial(alpha, Cx(1.0 / domain.monomial_norm(alpha))));
    }
    return basis;
}

GammaImage gamma_apply(const ProperMap& f, const Polynomial& psi) {
    if (psi.dimension() != f.target().dimension())
        throw DimensionMismatch("gamma_apply: psi dimension vs target dimension");
    GammaImage out;
    const double scale = 1.0 / std::sqrt(static_cast<double>(f.multiplicity()));
    if (f.has_rational_form()) {
        RationalFunction r = compose(psi, f.components());
        r *= *f.jacobian_rf();
        r *= Cx(scale);
        // a constant denominator means the image is a polynomial
        const Polynomial& den = r.denominator();
        if (den.degree() == 0) {
            const Cx c = den.terms().begin()->second;
            out.polynomial = r.numerator() * (Cx(1.0) / c);
        }
        out.rational = std::move(r);
        const RationalFunction rr = *out.rational;
        out.fn = [rr](std::span<const Cx> z) { return rr(z); };
    } else {
        const ProperMap map = f;
        const Polynomial p = psi;
        out.fn = [map, p, scale](std::span<const Cx> z) {
            return scale * p(map(z)) * map.jacobian(z);
        };
    }
    return out;
}

HoloFn gamma_apply(const ProperMap& f, const HoloFn& psi) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(f.multiplicity()));
    const ProperMap map = f;
    return [map, psi, scale](std::span<const Cx> z) {
        const CVec w = map(z);
        return scale * psi(w) * map.jacobian(z);
    };
}

namespace {

GammaImage image_from_rational(RationalFunction r) {
    GammaImage out;
    const Polynomial& den = r.denominator();
    if (den.degree() == 0) {
        const Cx c = den.terms().begin()->second;
        out.polynomial = r.numerator() * (Cx(1.0) / c);
    }
    out.rational = std::move(r);
    const RationalFunction rr = *out.rational;
    out.fn = [rr](std::span<const Cx> z) { return rr(z); };
    return out;
}

} // namespace

std::vector<GammaImage> gamma_basis(const ProperMap& f, int cap) {
    std::vector<GammaImage> out;
    const double m = static_cast<double>(f.multiplicity());

    switch (f.kind()) {
    case MapKind::Blaschke:
    case MapKind::Power: {
        // sqrt((n+1)/m) B^n B', accumulated incrementally
        const BlaschkeData& b = f.blaschke_data();
        RationalFunction acc = b.derivative;
        for (int n = 0; n <= cap; ++n) {
            if (n > 0) acc *= b.rf;
            out.push_back(image_from_rational(acc * Cx(std::sqrt((n + 1.0) / m))));
        }
        return out;
    }
    case MapKind::PolydiscProduct: {
        // sqrt(prod (a_i+1)/m) prod_i B_i^{a_i} B_i', from cached
        // per-coordinate powers lifted into d variables
        const auto& factors = f.product_factors();
        const int d = f.dimension();
        auto lift = [d](const Polynomial& p, int slot) {
            Polynomial res(d);
            for (const auto& [a, c] : p.terms()) {
                MultiIndex alpha(static_cast<std::size_t>(d), 0);
                alpha[static_cast<std::size_t>(slot)] = a[0];
                res.add_term(alpha, c);
            }
            return res;
        };
        std::vector<std::vector<RationalFunction>> u(factors.size());
        for (std::size_t i = 0; i < factors.size(); ++i) {
            u[i].push_back(factors[i].derivative);
            for (int p = 1; p <= cap; ++p) u[i].push_back(u[i].back() * factors[i].rf);
        }
        const BasisSet target = onb(f.target(), cap);
        for (const MultiIndex& alpha : target.labels) {
            Polynomial num = Polynomial::constant(d, 1.0), den = Polynomial::constant(d, 1.0);
            double norm = 1.0 / m;
            for (int i = 0; i < d; ++i) {
                const RationalFunction& ui = u[static_cast<std::size_t>(i)][static_cast<std::size_t>(alpha[static_cast<std::size_t>(i)])];
                num *= lift(ui.numerator(), i);
                den *= lift(ui.denominator(), i);
                norm *= alpha[static_cast<std::size_t>(i)] + 1.0;
            }
            out.push_back(image_from_rational(RationalFunction(num * Cx(std::sqrt(norm)), den)));
        }
        return out;
    }
    case MapKind::Symmetrization: {
        // Gamma_s maps the basis of A^2(G_d) onto the anti-symmetrized
        // monomials exactly (the generic route is asserted against this in
        // the tests)
        const int d = f.dimension();
        if (d == 1) break; // falls back to the generic path on the disc
        for (const MultiIndex& alpha : partitions_up_to(d, cap)) {
            MultiIndex lambda = alpha;
            for (int i = 0; i < d; ++i) lambda[static_cast<std::size_t>(i)] += d - 1 - i;
            GammaImage im;
            im.polynomial = antisymmetrized_monomial(lambda);
            im.rational = RationalFunction(*im.polynomial);
            const Polynomial p = *im.polynomial;
            im.fn = [p](std::span<const Cx> z) { return p(z); };
            out.push_back(std::move(im));
        }
        return out;
    }
    case MapKind::EdigarianZwonek:
        break;
    }

    const BasisSet target = onb(f.target(), cap);
    out.reserve(target.size());
    for (const Polynomial& b : target.elements) out.push_back(gamma_apply(f, b));
    return out;
}

Eigen::MatrixXcd quad_inner_products(const std::vector<HoloFn>& rows,
                                     const std::vector<HoloFn>& cols,
                                     const QuadratureRule& rule) {
    const Eigen::Index nr = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index nc = static_cast<Eigen::Index>(cols.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(nr, nc);
    CVec rv(rows.size()), cv(cols.size());
    for (std::size_t k = 0; k < rule.size(); ++k) {
        const auto z = rule.node(k);
        const double w = rule.weight(k);
        for (std::size_t i = 0; i < rows.size(); ++i) rv[i] = std::conj(rows[i](z));
        for (std::size_t j = 0; j < cols.size(); ++j) cv[j] = cols[j](z);
        for (Eigen::Index i = 0; i < nr; ++i)
            for (Eigen::Index j = 0; j < nc; ++j)
                out(i, j) += w * cv[static_cast<std::size_t>(j)] * rv[static_cast<std::size_t>(i)];
    }
    return out;
}

Eigen::MatrixXcd gram(const std::vector<HoloFn>& fns, const Domain& domain, int level) {
    const QuadratureRule rule = domain.quadrature(level);
    Eigen::MatrixXcd g = quad_inner_products(fns, fns, rule);
    return 0.5 * (g + g.adjoint().eval()); // hermitize
}

Eigen::MatrixXcd gram(const BasisSet& basis, int level) {
    int maxdeg = 0;
    for (const auto& p : basis.elements) maxdeg = std::max(maxdeg, p.degree());
    if (basis.domain.kind() == DomainKind::SymmetrizedPolydisc) {
        // pullbacks along s carry degree cap + d(d-1)/2 in z
        maxdeg = basis.degree_cap + basis.domain.dimension() * (basis.domain.dimension() - 1) / 2;
    }
    if (level <= 0) level = default_level(maxdeg);
    std::vector<HoloFn> fns;
    fns.reserve(basis.size());
    for (const auto& p : basis.elements) fns.push_back(to_fn(p));
    return gram(fns, basis.domain, level);
}

// --------------------------------------------------------------------------

namespace {

Cx closed_form_reinhardt(std::span<const Cx> z, std::span<const Cx> w) {
    Cx out(1.0);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const Cx q = 1.0 - z[i] * std::conj(w[i]);
        out *= q * q;
    }
    return 1.0 / out;
}

// det(((1 - zeta_i conj(omega_j))^{-2})) / (V(zeta) conj(V(omega)))
Cx symdisc_det_formula(const CVec& zeta, const CVec& omega) {
    const std::size_t d = zeta.size();
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Cx q = 1.0 - zeta[i] * std::conj(omega[j]);
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0 / (q * q);
        }
    Cx vz(1.0), vw(1.0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            vz *= (zeta[i] - zeta[j]);
            vw *= (omega[i] - omega[j]);
        }
    if (std::abs(vz) < 1e-8 || std::abs(vw) < 1e-8)
        throw PoleEvaluation("kernel_eval: point too close to the branch locus of s");
    return m.determinant() / (vz * std::conj(vw));
}

} // namespace

KernelModel KernelModel::closed_form(const Domain& domain) {
    KernelModel k(KernelForm::ClosedForm, domain);
    if (domain.kind() == DomainKind::SymmetrizedPolydisc) {
        // Pin the overall constant by requiring that the kernel reproduces
        // constants; the determinant formula leaves the measure
        // normalization open.
        const int d = domain.dimension();
        const int level = (d <= 2) ? 24 : 10;
        const QuadratureRule rule = domain.quadrature(level);
        Rng rng(0x5EED5EEDull);
        Cx acc(0.0);
        int samples = 0;
        while (samples < 3) {
            const CVec w = domain.sample(rng, 0.45);
            const CVec omega = symdisc_preimage(w);
            Cx vw(1.0);
            for (std::size_t i = 0; i < omega.size(); ++i)
                for (std::size_t j = i + 1; j < omega.size(); ++j) vw *= (omega[i] - omega[j]);
            if (std::abs(vw) < 1e-3) continue; // sample away from the branch image
            Cx integral(0.0);
            for (std::size_t i = 0; i < rule.size(); ++i) {
                const CVec zeta = symdisc_preimage(CVec(rule.node(i).begin(), rule.node(i).end()));
                integral += rule.weight(i) * std::conj(symdisc_det_formula(zeta, omega));
            }
            acc += 1.0 / integral;
            ++samples;
        }
        k.symdisc_constant_ = (acc / 3.0).real();
    }
    return k;
}

KernelModel KernelModel::truncated_sum(const Domain& domain, std::vector<HoloFn> orthonormal) {
    KernelModel k(KernelForm::TruncatedSum, domain);
    k.basis_ = std::move(orthonormal);
    return k;
}

KernelModel KernelModel::pulled_back(const ProperMap& f, KernelModel inner) {
    if (!(inner.domain() == f.target()))
        throw DimensionMismatch("KernelModel::pulled_back: inner kernel domain vs map target");
    KernelModel k(KernelForm::PulledBack, f.source());
    k.inner_ = std::make_shared<const KernelModel>(std::move(inner));
    k.map_ = std::make_shared<const ProperMap>(f);
    return k;
}

Cx KernelModel::eval(std::span<const Cx> z, std::span<const Cx> w) const {
    if (static_cast<int>(z.size()) != domain_.dimension() ||
        static_cast<int>(w.size()) != domain_.dimension())
        throw DimensionMismatch("kernel_eval: point length vs domain dimension");
    switch (form_) {
    case KernelForm::ClosedForm: {
        if (domain_.kind() != DomainKind::SymmetrizedPolydisc) return closed_form_reinhardt(z, w);
        const CVec zeta = symdisc_preimage(CVec(z.begin(), z.end()));
        const CVec omega = symdisc_preimage(CVec(w.begin(), w.end()));
        return symdisc_constant_ * symdisc_det_formula(zeta, omega);
    }
    case KernelForm::TruncatedSum: {
        Cx acc(0.0);
        for (const HoloFn& b : basis_) acc += b(z) * std::conj(b(w));
        return acc;
    }
    case KernelForm::PulledBack: {
        const CVec fz = (*map_)(z);
        const CVec fw = (*map_)(w);
        const Cx jz = map_->jacobian(z);
        const Cx jw = map_->jacobian(w);
        return (1.0 / static_cast<double>(map_->multiplicity())) * jz *
               inner_->eval(fz, fw) * std::conj(jw);
    }
    }
    return Cx(0.0);
}

double reproduce_check(const KernelModel& model, const HoloFn& phi, std::span<const Cx> w,
                       int level) {
    const QuadratureRule rule = model.domain().quadrature(level);
    Cx acc(0.0);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const auto z = rule.node(i);
        acc += rule.weight(i) * phi(z) * std::conj(model.eval(z, w));
    }
    return std::abs(acc - phi(w));
}

Polynomial symdisc_pullback(const Polynomial& f, int d) {
    if (f.dimension() != d) throw DimensionMismatch("symdisc_pullback: dimension");
    return compose(f, symmetrization_components(d)) * vandermonde(d);
}

Cx symdisc_inner_exact(const Polynomial& f, const Polynomial& g, int d) {
    double dfact = 1.0;
    for (int k = 2; k <= d; ++k) dfact *= static_cast<double>(k);
    return reinhardt_inner_product(symdisc_pullback(f, d), symdisc_pullback(g, d),
                                   Domain::polydisc(d)) *
           (1.0 / dfact);
}

EzEngine::EzEngine(const ProperMap& ez, int pmax, int kmax) {
    if (ez.kind() != MapKind::EdigarianZwonek)
        throw std::invalid_argument("EzEngine: map must be an Edigarian-Zwonek self-map");
    d_ = ez.dimension();
    dfact_ = 1.0;
    for (int k = 2; k <= d_; ++k) dfact_ *= static_cast<double>(k);
    mult_ = static_cast<double>(ez.multiplicity());
    const BlaschkeTables tabs = blaschke_tables(ez.blaschke_data(), pmax, kmax);
    t_ = tabs.gram;
    u_ = tabs.cross;
}

Cx EzEngine::gamma_inner(const Polynomial& q_f, const Polynomial& q_g) const {
    Cx acc(0.0);
    for (const auto& [a, ca] : q_f.terms())
        for (const auto& [b, cb] : q_g.terms()) {
            Cx prod = ca * std::conj(cb);
            for (int i = 0; i < d_; ++i) prod *= t_(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]);
            acc += prod;
        }
    return acc / (dfact_ * mult_);
}

Cx EzEngine::mixed_inner(const Polynomial& q_phi, const Polynomial& q_f) const {
    Cx acc(0.0);
    for (const auto& [k, ck] : q_phi.terms())
        for (const auto& [p, cp] : q_f.terms()) {
            Cx prod = ck * std::conj(cp);
            for (int i = 0; i < d_; ++i) prod *= u_(k[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i)]);
            acc += prod;
        }
    return acc / (dfact_ * std::sqrt(mult_));
}

double EzEngine::gamma_norm(const Polynomial& psi) const {
    const Polynomial q = symdisc_pullback(psi, d_);
    return std::sqrt(std::max(0.0, gamma_inner(q, q).real()));
}

BlaschkeTables blaschke_tables(const BlaschkeData& b, int pmax, int kmax, int level) {
    if (level <= 0) level = blaschke_level(pmax);
    const QuadratureRule rule = Domain::unit_disc().quadrature(level);
    BlaschkeTables t;
    t.gram = Eigen::MatrixXcd::Zero(pmax + 1, pmax + 1);
    t.cross = Eigen::MatrixXcd::Zero(kmax + 1, pmax + 1);
    CVec vals(static_cast<std::size_t>(pmax) + 1);
    CVec zpow(static_cast<std::size_t>(kmax) + 1);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const Cx z = rule.node(i)[0];
        const double wt = rule.weight(i);
        const Cx bv = b.rf(z);
        const Cx dv = b.derivative(z);
        vals[0] = dv;
        for (int p = 1; p <= pmax; ++p) vals[static_cast<std::size_t>(p)] = vals[static_cast<std::size_t>(p - 1)] * bv;
        zpow[0] = Cx(1.0);
        for (int k = 1; k <= kmax; ++k) zpow[static_cast<std::size_t>(k)] = zpow[static_cast<std::size_t>(k - 1)] * z;
        for (int p = 0; p <= pmax; ++p) {
            const Cx vp = vals[static_cast<std::size_t>(p)];
            for (int q = 0; q <= pmax; ++q)
                t.gram(p, q) += wt * vp * std::conj(vals[static_cast<std::size_t>(q)]);
            for (int k = 0; k <= kmax; ++k)
                t.cross(k, p) += wt * zpow[static_cast<std::size_t>(k)] * std::conj(vp);
        }
    }
    t.gram = 0.5 * (t.gram + t.gram.adjoint().eval());
    return t;
}

} // namespace berglab
