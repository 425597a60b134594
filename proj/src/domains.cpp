#include "berglab/domains.hpp"

#include "berglab/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace berglab {

void QuadratureRule::push_node(std::span<const Cx> z, double w) {
    points_.insert(points_.end(), z.begin(), z.end());
    weights_.push_back(w);
}

void QuadratureRule::reserve(std::size_t n) {
    points_.reserve(n * static_cast<std::size_t>(dim_));
    weights_.reserve(n);
}

double QuadratureRule::mass() const {
    return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

Domain Domain::unit_disc() { return Domain(DomainKind::UnitDisc, 1); }

Domain Domain::polydisc(int d) {
    if (d < 1) throw DimensionMismatch("Domain::polydisc: d must be positive");
    return Domain(d == 1 ? DomainKind::UnitDisc : DomainKind::Polydisc, d);
}

Domain Domain::symmetrized_polydisc(int d) {
    if (d < 1) throw DimensionMismatch("Domain::symmetrized_polydisc: d must be positive");
    return Domain(DomainKind::SymmetrizedPolydisc, d);
}

std::string Domain::name() const {
    switch (kind_) {
    case DomainKind::UnitDisc: return "D";
    case DomainKind::Polydisc: return "D^" + std::to_string(dim_);
    case DomainKind::SymmetrizedPolydisc: return "G_" + std::to_string(dim_);
    }
    return "?";
}

bool Domain::contains(std::span<const Cx> z) const {
    if (static_cast<int>(z.size()) != dim_)
        throw DimensionMismatch("Domain::contains: point length vs dimension");
    constexpr double kMargin = 1e-12;
    if (kind_ != DomainKind::SymmetrizedPolydisc) {
        for (const Cx& zi : z)
            if (std::abs(zi) >= 1.0) return false;
        return true;
    }
    CVec roots = symdisc_preimage(CVec(z.begin(), z.end()));
    for (const Cx& r : roots)
        if (std::abs(r) >= 1.0 - kMargin) return false;
    return true;
}

double Domain::monomial_norm(const MultiIndex& alpha) const {
    if (!is_reinhardt())
        throw NotReinhardt("monomial_norm: " + name() + " is not a Reinhardt domain");
    if (static_cast<int>(alpha.size()) != dim_)
        throw DimensionMismatch("monomial_norm: multi-index length vs dimension");
    double n2 = 1.0;
    for (int a : alpha) n2 *= 1.0 / static_cast<double>(a + 1);
    return std::sqrt(n2);
}

namespace {

// Gauss-Legendre nodes/weights on [0,1] by Newton iteration on P_n.
void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(static_cast<std::size_t>(n));
    w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double t = std::cos(Rng::pi() * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[static_cast<std::size_t>(i)] = 0.5 * (1.0 + t);
        w[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - t * t) * dp * dp); // already /2 for [0,1]
    }
}

// one-dimensional disc rule: nodes sqrt(u_k) e^{i theta_m}, weight wu_k / N
void disc_rule(int level, CVec& nodes, std::vector<double>& wts) {
    const int ngl = std::max(1, (level + 2) / 2); // exact for u^k, k <= level
    const int nth = 2 * level + 1;
    std::vector<double> u, wu;
    gauss_legendre_01(ngl, u, wu);
    nodes.clear();
    wts.clear();
    nodes.reserve(static_cast<std::size_t>(ngl * nth));
    wts.reserve(static_cast<std::size_t>(ngl * nth));
    for (int k = 0; k < ngl; ++k) {
        const double r = std::sqrt(u[static_cast<std::size_t>(k)]);
        const double wk = wu[static_cast<std::size_t>(k)] / static_cast<double>(nth);
        for (int m = 0; m < nth; ++m) {
            const double th = 2.0 * Rng::pi() * static_cast<double>(m) / static_cast<double>(nth);
            nodes.emplace_back(r * std::cos(th), r * std::sin(th));
            wts.push_back(wk);
        }
    }
}

QuadratureRule tensor_rule(int d, int level) {
    CVec n1;
    std::vector<double> w1;
    disc_rule(level, n1, w1);
    const std::size_t m = n1.size();
    QuadratureRule rule(d, 2 * level);
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= m;
    rule.reserve(total);
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    CVec z(static_cast<std::size_t>(d));
    while (true) {
        double w = 1.0;
        for (int i = 0; i < d; ++i) {
            z[static_cast<std::size_t>(i)] = n1[idx[static_cast<std::size_t>(i)]];
            w *= w1[idx[static_cast<std::size_t>(i)]];
        }
        rule.push_node(z, w);
        int pos = d - 1;
        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == m) {
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return rule;
}

} // namespace

QuadratureRule Domain::quadrature(int level) const {
    if (level < 1) throw std::invalid_argument("Domain::quadrature: level must be >= 1");
    if (kind_ != DomainKind::SymmetrizedPolydisc) return tensor_rule(dim_, level);

    // pushforward of the polydisc rule along the symmetrization map
    const QuadratureRule base = tensor_rule(dim_, level);
    const std::vector<Polynomial> s = symmetrization_components(dim_);
    double dfact = 1.0;
    for (int k = 2; k <= dim_; ++k) dfact *= static_cast<double>(k);

    QuadratureRule rule(dim_, 2 * level);
    rule.reserve(base.size());
    CVec w(static_cast<std::size_t>(dim_));
    for (std::size_t i = 0; i < base.size(); ++i) {
        const auto z = base.node(i);
        // |J_s|^2 = |vandermonde|^2, computed as the product of differences
        Cx v(1.0);
        for (int a = 0; a < dim_; ++a)
            for (int b = a + 1; b < dim_; ++b) v *= (z[static_cast<std::size_t>(a)] - z[static_cast<std::size_t>(b)]);
        const double jac2 = std::norm(v);
        if (jac2 == 0.0) continue; // diagonal tensor node, weight would be zero
        for (int k = 0; k < dim_; ++k) w[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k)](z);
        rule.push_node(w, base.weight(i) * jac2 / dfact);
    }
    return rule;
}

CVec Domain::sample(Rng& rng, double rmax) const {
    if (kind_ == DomainKind::SymmetrizedPolydisc) {
        const std::vector<Polynomial> s = symmetrization_components(dim_);
        const CVec z = rng.polydisc_point(dim_, rmax);
        CVec w(static_cast<std::size_t>(dim_));
        for (int k = 0; k < dim_; ++k) w[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k)](z);
        return w;
    }
    return rng.polydisc_point(dim_, rmax);
}

Cx reinhardt_inner_product(const Polynomial& p, const Polynomial& q, const Domain& dom) {
    if (!dom.is_reinhardt()) throw NotReinhardt("reinhardt_inner_product: " + dom.name());
    if (p.dimension() != dom.dimension() || q.dimension() != dom.dimension())
        throw DimensionMismatch("reinhardt_inner_product: dimension mismatch");
    // iterate over the sparser term map
    const Polynomial& a = (p.terms().size() <= q.terms().size()) ? p : q;
    const Polynomial& b = (&a == &p) ? q : p;
    Cx out(0.0);
    for (const auto& [alpha, ca] : a.terms()) {
        const Cx cb = b.coeff(alpha);
        if (cb == Cx(0.0)) continue;
        double n2 = 1.0;
        for (int e : alpha) n2 /= static_cast<double>(e + 1);
        out += (&a == &p ? ca * std::conj(cb) : cb * std::conj(ca)) * n2;
    }
    return out;
}

} // namespace berglab
