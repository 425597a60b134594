#include "berglab/maps.hpp"

#include "berglab/rootfind.hpp"

#include <algorithm>
#include <cmath>

namespace berglab {

namespace {

BlaschkeData make_blaschke_data(CVec zeros, std::vector<int> powers, double phase) {
    if (zeros.size() != powers.size())
        throw DimensionMismatch("blaschke: zeros and powers length mismatch");
    if (zeros.empty()) throw std::invalid_argument("blaschke: need at least one zero");
    for (const Cx& a : zeros)
        if (std::abs(a) >= 1.0)
            throw ZeroOutsideDisc("blaschke: zero outside the open unit disc");
    for (int k : powers)
        if (k < 1) throw std::invalid_argument("blaschke: powers must be >= 1");

    BlaschkeData b;
    b.zeros = std::move(zeros);
    b.powers = std::move(powers);
    b.phase = phase;
    Polynomial num = Polynomial::constant(1, std::polar(1.0, phase));
    Polynomial den = Polynomial::constant(1, 1.0);
    const Polynomial z = Polynomial::variable(1, 0);
    for (std::size_t j = 0; j < b.zeros.size(); ++j) {
        const Cx a = b.zeros[j];
        const Polynomial top = z - Polynomial::constant(1, a);
        const Polynomial bot = Polynomial::constant(1, 1.0) - Polynomial::constant(1, std::conj(a)) * z;
        num *= top.pow(b.powers[j]);
        den *= bot.pow(b.powers[j]);
        b.order += b.powers[j];
    }
    b.rf = RationalFunction(std::move(num), std::move(den));
    b.derivative = b.rf.partial(0);
    return b;
}

// dense coefficients of num(B) - w * den(B); degree is exactly the order
CVec fiber_poly_coeffs(const BlaschkeData& b, Cx w) {
    CVec cn = univariate_coeffs(b.rf.numerator());
    CVec cd = univariate_coeffs(b.rf.denominator());
    CVec c(static_cast<std::size_t>(b.order) + 1, Cx(0.0));
    for (std::size_t k = 0; k < cn.size(); ++k) c[k] += cn[k];
    for (std::size_t k = 0; k < cd.size(); ++k) c[k] -= w * cd[k];
    return c;
}

double boundary_clearance_of(const std::vector<CVec>& pts) {
    double m = 1.0;
    for (const auto& p : pts)
        for (const Cx& zi : p) m = std::min(m, 1.0 - std::abs(zi));
    return m;
}

} // namespace

ProperMap ProperMap::blaschke(CVec zeros, std::vector<int> powers, double phase) {
    BlaschkeData b = make_blaschke_data(std::move(zeros), std::move(powers), phase);
    const int m = b.order;
    ProperMap f(MapKind::Blaschke, Domain::unit_disc(), Domain::unit_disc(), m, "blaschke");
    f.components_ = {b.rf};
    f.jacobian_ = b.derivative;
    f.blaschke_ = std::make_shared<const BlaschkeData>(std::move(b));
    return f;
}

ProperMap ProperMap::power(int n) {
    if (n < 1) throw std::invalid_argument("power: exponent must be >= 1");
    ProperMap f = blaschke({Cx(0.0)}, {n}, 0.0);
    f.kind_ = MapKind::Power;
    f.name_ = "power:" + std::to_string(n);
    return f;
}

ProperMap ProperMap::polydisc_product(std::vector<ProperMap> factors) {
    if (factors.empty()) throw DimensionMismatch("polydisc_product: empty factor list");
    const int d = static_cast<int>(factors.size());
    std::vector<BlaschkeData> data;
    data.reserve(factors.size());
    int mult = 1;
    for (const ProperMap& f : factors) {
        if (f.kind_ != MapKind::Blaschke && f.kind_ != MapKind::Power)
            throw std::invalid_argument("polydisc_product: factors must be Blaschke maps");
        data.push_back(f.blaschke_data());
        mult *= f.multiplicity();
    }

    ProperMap f(MapKind::PolydiscProduct, Domain::polydisc(d), Domain::polydisc(d), mult, "prod");
    // lift the univariate factor i into d variables at slot i
    auto lift = [d](const Polynomial& p, int slot) {
        Polynomial out(d);
        for (const auto& [a, c] : p.terms()) {
            MultiIndex alpha(static_cast<std::size_t>(d), 0);
            alpha[static_cast<std::size_t>(slot)] = a[0];
            out.add_term(alpha, c);
        }
        return out;
    };
    Polynomial jn = Polynomial::constant(d, 1.0), jd = Polynomial::constant(d, 1.0);
    for (int i = 0; i < d; ++i) {
        const BlaschkeData& b = data[static_cast<std::size_t>(i)];
        f.components_.emplace_back(lift(b.rf.numerator(), i), lift(b.rf.denominator(), i));
        jn *= lift(b.derivative.numerator(), i);
        jd *= lift(b.derivative.denominator(), i);
    }
    f.jacobian_ = RationalFunction(std::move(jn), std::move(jd));
    f.factors_ = std::make_shared<const std::vector<BlaschkeData>>(std::move(data));
    return f;
}

ProperMap ProperMap::symmetrization(int d) {
    if (d < 1) throw DimensionMismatch("symmetrization: d must be positive");
    int mult = 1;
    for (int k = 2; k <= d; ++k) mult *= k;
    Domain tgt = (d == 1) ? Domain::unit_disc() : Domain::symmetrized_polydisc(d);
    ProperMap f(MapKind::Symmetrization, Domain::polydisc(d), tgt, mult, "sym:" + std::to_string(d));
    std::vector<Polynomial> s = symmetrization_components(d);
    for (auto& si : s) f.components_.emplace_back(std::move(si), Polynomial::constant(d, 1.0));
    std::vector<RationalFunction> comps = f.components_;
    f.jacobian_ = jacobian_det(comps);
    return f;
}

ProperMap ProperMap::edigarian_zwonek(const ProperMap& blaschke_map, int d) {
    if (blaschke_map.kind_ != MapKind::Blaschke && blaschke_map.kind_ != MapKind::Power)
        throw std::invalid_argument("edigarian_zwonek: underlying map must be Blaschke");
    if (d < 1) throw DimensionMismatch("edigarian_zwonek: d must be positive");
    const int n = blaschke_map.multiplicity();
    int mult = 1;
    for (int k = 0; k < d; ++k) mult *= n;
    ProperMap f(MapKind::EdigarianZwonek, Domain::symmetrized_polydisc(d),
                Domain::symmetrized_polydisc(d), mult,
                "ez:" + blaschke_map.name() + ":" + std::to_string(d));
    f.blaschke_ = blaschke_map.blaschke_;
    f.ez_dim_ = d;
    return f;
}

const BlaschkeData& ProperMap::blaschke_data() const {
    if (!blaschke_) throw std::logic_error("ProperMap: no Blaschke payload for kind");
    return *blaschke_;
}

const std::vector<BlaschkeData>& ProperMap::product_factors() const {
    if (!factors_) throw std::logic_error("ProperMap: no product payload for kind");
    return *factors_;
}

CVec ProperMap::operator()(std::span<const Cx> z) const {
    if (static_cast<int>(z.size()) != dimension())
        throw DimensionMismatch("ProperMap::eval: point length vs dimension");
    if (!components_.empty()) {
        CVec out(components_.size());
        for (std::size_t i = 0; i < components_.size(); ++i) out[i] = components_[i](z);
        return out;
    }
    // Edigarian-Zwonek: w -> s(B(z_1),...,B(z_d)) over any preimage ordering
    const CVec pre = symdisc_preimage(CVec(z.begin(), z.end()));
    CVec u(pre.size());
    for (std::size_t i = 0; i < pre.size(); ++i) u[i] = blaschke_->rf(pre[i]);
    CVec out(static_cast<std::size_t>(ez_dim_));
    const std::vector<Polynomial> s = symmetrization_components(ez_dim_);
    for (int k = 0; k < ez_dim_; ++k) out[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k)](u);
    return out;
}

Cx ProperMap::jacobian(std::span<const Cx> z) const {
    if (static_cast<int>(z.size()) != dimension())
        throw DimensionMismatch("ProperMap::jacobian: point length vs dimension");
    if (jacobian_) return (*jacobian_)(z);
    // chain rule through f o s = s o (B,...,B):
    //   J_f(s(z)) = J_s(B(z)) * prod B'(z_i) / J_s(z)
    const CVec pre = symdisc_preimage(CVec(z.begin(), z.end()));
    Cx vz(1.0), vu(1.0), dprod(1.0);
    CVec u(pre.size());
    for (std::size_t i = 0; i < pre.size(); ++i) {
        u[i] = blaschke_->rf(pre[i]);
        dprod *= blaschke_->derivative(pre[i]);
    }
    for (std::size_t a = 0; a < pre.size(); ++a)
        for (std::size_t b = a + 1; b < pre.size(); ++b) {
            vz *= (pre[a] - pre[b]);
            vu *= (u[a] - u[b]);
        }
    if (std::abs(vz) < 1e-14)
        throw NearBranchLocus("ProperMap::jacobian: point too close to the branch locus of s");
    return vu * dprod / vz;
}

Fiber ProperMap::fiber(std::span<const Cx> w) const {
    if (static_cast<int>(w.size()) != target_.dimension())
        throw DimensionMismatch("ProperMap::fiber: point length vs target dimension");
    if (!target_.contains(w)) throw TargetMiss("ProperMap::fiber: point outside target domain");

    Fiber fib;
    fib.base_point.assign(w.begin(), w.end());

    switch (kind_) {
    case MapKind::Blaschke:
    case MapKind::Power: {
        const CVec roots = all_roots(fiber_poly_coeffs(*blaschke_, w[0]));
        for (const Cx& r : roots) fib.preimages.push_back({r});
        break;
    }
    case MapKind::PolydiscProduct: {
        std::vector<CVec> component_roots;
        for (std::size_t i = 0; i < factors_->size(); ++i)
            component_roots.push_back(all_roots(fiber_poly_coeffs((*factors_)[i], w[i])));
        // cartesian product
        std::vector<std::size_t> idx(component_roots.size(), 0);
        while (true) {
            CVec p(component_roots.size());
            for (std::size_t i = 0; i < component_roots.size(); ++i) p[i] = component_roots[i][idx[i]];
            fib.preimages.push_back(std::move(p));
            std::size_t pos = component_roots.size();
            while (pos-- > 0) {
                if (++idx[pos] < component_roots[pos].size()) break;
                idx[pos] = 0;
                if (pos == 0) {
                    pos = SIZE_MAX;
                    break;
                }
            }
            if (pos == SIZE_MAX) break;
        }
        break;
    }
    case MapKind::Symmetrization: {
        CVec roots = symdisc_preimage(fib.base_point);
        std::sort(roots.begin(), roots.end(), [](Cx a, Cx b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        do {
            fib.preimages.push_back(roots);
        } while (std::next_permutation(roots.begin(), roots.end(), [](Cx a, Cx b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        }));
        break;
    }
    case MapKind::EdigarianZwonek: {
        // roots of w's polynomial, then all choices of B-preimages per root
        const CVec zeta = symdisc_preimage(fib.base_point);
        std::vector<CVec> choices;
        for (const Cx& zj : zeta) choices.push_back(all_roots(fiber_poly_coeffs(*blaschke_, zj)));
        const std::vector<Polynomial> s = symmetrization_components(ez_dim_);
        std::vector<std::size_t> idx(choices.size(), 0);
        while (true) {
            CVec y(choices.size());
            for (std::size_t i = 0; i < choices.size(); ++i) y[i] = choices[i][idx[i]];
            CVec v(static_cast<std::size_t>(ez_dim_));
            for (int k = 0; k < ez_dim_; ++k) v[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k)](y);
            fib.preimages.push_back(std::move(v));
            std::size_t pos = choices.size();
            while (pos-- > 0) {
                if (++idx[pos] < choices[pos].size()) break;
                idx[pos] = 0;
                if (pos == 0) {
                    pos = SIZE_MAX;
                    break;
                }
            }
            if (pos == SIZE_MAX) break;
        }
        break;
    }
    }

    // regularity and boundary clearance
    fib.regular = true;
    for (const CVec& p : fib.preimages) {
        double jmag = 0.0;
        try {
            jmag = std::abs(jacobian(p));
        } catch (const NearBranchLocus&) {
            jmag = 0.0;
        } catch (const PoleEvaluation&) {
            jmag = 0.0;
        }
        if (jmag <= 1e-10) fib.regular = false;
    }
    if (kind_ == MapKind::EdigarianZwonek) {
        // clearance measured in the coordinates that the root finder sees
        double m = 1.0;
        for (const CVec& p : fib.preimages) {
            const CVec pre = symdisc_preimage(p);
            for (const Cx& zi : pre) m = std::min(m, 1.0 - std::abs(zi));
        }
        fib.boundary_clearance = m;
    } else {
        fib.boundary_clearance = boundary_clearance_of(fib.preimages);
    }
    return fib;
}

int multiplicity_certify(const ProperMap& f, int trials, Rng& rng) {
    if (trials < 1) throw std::invalid_argument("multiplicity_certify: trials must be >= 1");
    int found = 0;
    int count = -1;
    const int max_attempts = 50 * trials;
    for (int attempt = 0; attempt < max_attempts && found < trials; ++attempt) {
        const CVec w = f.target().sample(rng, 0.75);
        Fiber fib;
        try {
            fib = f.fiber(w);
        } catch (const RootFindingDiverged&) {
            continue;
        }
        if (!fib.trusted()) continue;
        // count preimages distinct beyond 1e-8 (regular fibers must separate)
        std::vector<CVec> distinct;
        for (const CVec& p : fib.preimages) {
            bool dup = false;
            for (const CVec& q : distinct) {
                double dd = 0.0;
                for (std::size_t i = 0; i < p.size(); ++i) dd = std::max(dd, std::abs(p[i] - q[i]));
                if (dd < 1e-8) {
                    dup = true;
                    break;
                }
            }
            if (!dup) distinct.push_back(p);
        }
        const int n = static_cast<int>(distinct.size());
        if (count < 0)
            count = n;
        else if (count != n)
            throw InconsistentFiberCount("multiplicity_certify: fiber counts " + std::to_string(count) +
                                         " vs " + std::to_string(n) + " on map " + f.name());
        ++found;
    }
    if (found < trials)
        throw NoRegularValue("multiplicity_certify: could not collect enough trusted fibers for " + f.name());
    return count;
}

} // namespace berglab
