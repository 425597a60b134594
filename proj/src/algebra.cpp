#include "berglab/algebra.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <sstream>

namespace berglab {

namespace {
constexpr double kPruneRel = 1e-13;

void check_same_dim(int a, int b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a) +
                                " vs " + std::to_string(b));
    }
}
} // namespace

int total_degree(const MultiIndex& alpha) {
    return std::accumulate(alpha.begin(), alpha.end(), 0);
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Polynomial::Polynomial(int dim) : dim_(dim) {
    if (dim < 1) throw DimensionMismatch("Polynomial: dimension must be positive");
}

Polynomial Polynomial::zero(int dim) { return Polynomial(dim); }

Polynomial Polynomial::constant(int dim, Cx value) {
    Polynomial p(dim);
    if (value != Cx(0.0)) p.terms_.emplace(MultiIndex(static_cast<std::size_t>(dim), 0), value);
    return p;
}

Polynomial Polynomial::variable(int dim, int i) {
    if (i < 0 || i >= dim) throw DimensionMismatch("Polynomial::variable: index out of range");
    MultiIndex alpha(static_cast<std::size_t>(dim), 0);
    alpha[static_cast<std::size_t>(i)] = 1;
    return monomial(std::move(alpha));
}

Polynomial Polynomial::monomial(MultiIndex alpha, Cx coeff) {
    Polynomial p(static_cast<int>(alpha.size()));
    if (coeff != Cx(0.0)) p.terms_.emplace(std::move(alpha), coeff);
    return p;
}

int Polynomial::degree() const {
    if (terms_.empty()) return -1;
    return total_degree(terms_.rbegin()->first); // graded order: last term has max degree
}

Cx Polynomial::coeff(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? Cx(0.0) : it->second;
}

void Polynomial::add_term(const MultiIndex& alpha, Cx c) {
    if (static_cast<int>(alpha.size()) != dim_)
        throw DimensionMismatch("Polynomial::add_term: multi-index length");
    auto [it, inserted] = terms_.emplace(alpha, c);
    if (!inserted) it->second += c;
    if (it->second == Cx(0.0)) terms_.erase(it);
}

Cx Polynomial::operator()(std::span<const Cx> z) const {
    if (static_cast<int>(z.size()) != dim_)
        throw DimensionMismatch("Polynomial::eval: point length " + std::to_string(z.size()) +
                                " vs dimension " + std::to_string(dim_));
    if (dim_ == 1) return (*this)(z[0]); // Horner, no scratch allocation
    // power tables per variable up to the maximal exponent present
    MultiIndex maxexp(static_cast<std::size_t>(dim_), 0);
    for (const auto& [a, c] : terms_)
        for (int i = 0; i < dim_; ++i) maxexp[i] = std::max(maxexp[i], a[i]);
    std::vector<CVec> pows(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
        auto& tab = pows[static_cast<std::size_t>(i)];
        tab.resize(static_cast<std::size_t>(maxexp[i]) + 1);
        tab[0] = Cx(1.0);
        for (int k = 1; k <= maxexp[i]; ++k) tab[static_cast<std::size_t>(k)] = tab[static_cast<std::size_t>(k - 1)] * z[static_cast<std::size_t>(i)];
    }
    Cx out(0.0);
    for (const auto& [a, c] : terms_) {
        Cx t = c;
        for (int i = 0; i < dim_; ++i) t *= pows[static_cast<std::size_t>(i)][static_cast<std::size_t>(a[i])];
        out += t;
    }
    return out;
}

Cx Polynomial::operator()(Cx z) const {
    if (dim_ != 1) throw DimensionMismatch("Polynomial::eval(scalar): polynomial is multivariate");
    // Horner on the dense univariate form
    int deg = degree();
    if (deg < 0) return Cx(0.0);
    Cx acc(0.0);
    auto it = terms_.rbegin();
    for (int k = deg; k >= 0; --k) {
        acc *= z;
        if (it != terms_.rend() && it->first[0] == k) {
            acc += it->second;
            ++it;
        }
    }
    return acc;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(dim_);
    for (const auto& [a, c] : terms_) out.terms_.emplace(a, -c);
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    check_same_dim(dim_, rhs.dim_, "Polynomial::operator+");
    for (const auto& [a, c] : rhs.terms_) {
        auto [it, inserted] = terms_.emplace(a, c);
        if (!inserted) it->second += c;
    }
    prune();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    check_same_dim(dim_, rhs.dim_, "Polynomial::operator-");
    for (const auto& [a, c] : rhs.terms_) {
        auto [it, inserted] = terms_.emplace(a, -c);
        if (!inserted) it->second -= c;
    }
    prune();
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
    check_same_dim(dim_, rhs.dim_, "Polynomial::operator*");
    TermMap out;
    MultiIndex sum(static_cast<std::size_t>(dim_));
    for (const auto& [a, ca] : terms_) {
        for (const auto& [b, cb] : rhs.terms_) {
            for (int i = 0; i < dim_; ++i) sum[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)];
            auto [it, inserted] = out.emplace(sum, ca * cb);
            if (!inserted) it->second += ca * cb;
        }
    }
    terms_ = std::move(out);
    prune();
    return *this;
}

Polynomial& Polynomial::operator*=(Cx scalar) {
    if (scalar == Cx(0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto& [a, c] : terms_) c *= scalar;
    prune();
    return *this;
}

Polynomial Polynomial::pow(int k) const {
    if (k < 0) throw std::invalid_argument("Polynomial::pow: negative exponent");
    Polynomial acc = Polynomial::constant(dim_, 1.0);
    Polynomial base = *this;
    while (k > 0) { // binary powering
        if (k & 1) acc *= base;
        k >>= 1;
        if (k > 0) base *= base;
    }
    return acc;
}

Polynomial Polynomial::partial(int i) const {
    if (i < 0 || i >= dim_) throw DimensionMismatch("Polynomial::partial: index out of range");
    Polynomial out(dim_);
    for (const auto& [a, c] : terms_) {
        if (a[static_cast<std::size_t>(i)] == 0) continue;
        MultiIndex b = a;
        const int e = b[static_cast<std::size_t>(i)]--;
        out.terms_.emplace(std::move(b), c * static_cast<double>(e));
    }
    return out;
}

double Polynomial::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [a, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

double Polynomial::coeff_l1() const {
    double s = 0.0;
    for (const auto& [a, c] : terms_) s += std::abs(c);
    return s;
}

bool Polynomial::approx_equal(const Polynomial& rhs, double tol) const {
    if (dim_ != rhs.dim_) return false;
    Polynomial diff = *this - rhs;
    return diff.max_abs_coeff() <= tol;
}

void Polynomial::prune() {
    double m = max_abs_coeff();
    if (m == 0.0) {
        terms_.clear();
        return;
    }
    const double cut = kPruneRel * m;
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= cut)
            it = terms_.erase(it);
        else
            ++it;
    }
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
        for (int i = 0; i < dim_; ++i) {
            if (a[static_cast<std::size_t>(i)] == 0) continue;
            os << "*z" << (i + 1);
            if (a[static_cast<std::size_t>(i)] > 1) os << "^" << a[static_cast<std::size_t>(i)];
        }
    }
    return os.str();
}

// --------------------------------------------------------------------------

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    check_same_dim(num_.dimension(), den_.dimension(), "RationalFunction");
    if (den_.is_zero()) throw std::invalid_argument("RationalFunction: zero denominator");
}

Cx RationalFunction::operator()(std::span<const Cx> z) const {
    const Cx d = den_(z);
    if (std::abs(d) < 1e-14)
        throw PoleEvaluation("RationalFunction::eval: denominator vanishes at evaluation point");
    return num_(z) / d;
}

Cx RationalFunction::operator()(Cx z) const {
    const Cx d = den_(z);
    if (std::abs(d) < 1e-14)
        throw PoleEvaluation("RationalFunction::eval: denominator vanishes at evaluation point");
    return num_(z) / d;
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(-num_, den_); }

RationalFunction& RationalFunction::operator+=(const RationalFunction& rhs) {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ = den_ * rhs.den_;
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& rhs) {
    num_ = num_ * rhs.den_ - rhs.num_ * den_;
    den_ = den_ * rhs.den_;
    return *this;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& rhs) {
    num_ *= rhs.num_;
    den_ *= rhs.den_;
    return *this;
}

RationalFunction& RationalFunction::operator*=(Cx scalar) {
    num_ *= scalar;
    return *this;
}

RationalFunction RationalFunction::pow(int k) const {
    if (k < 0) throw std::invalid_argument("RationalFunction::pow: negative exponent");
    return RationalFunction(num_.pow(k), den_.pow(k));
}

RationalFunction RationalFunction::partial(int i) const {
    // (p/q)' = (p' q - p q') / q^2, left unreduced
    Polynomial n = num_.partial(i) * den_ - num_ * den_.partial(i);
    return RationalFunction(std::move(n), den_ * den_);
}

bool RationalFunction::approx_equal(const RationalFunction& rhs, double tol) const {
    if (dimension() != rhs.dimension()) return false;
    Polynomial lhs_cross = num_ * rhs.den_;
    Polynomial rhs_cross = rhs.num_ * den_;
    const double scale = std::max({lhs_cross.max_abs_coeff(), rhs_cross.max_abs_coeff(), 1.0});
    return (lhs_cross - rhs_cross).max_abs_coeff() <= tol * scale;
}

std::string RationalFunction::to_string() const {
    return "[" + num_.to_string() + "] / [" + den_.to_string() + "]";
}

// --------------------------------------------------------------------------

Polynomial compose(const Polynomial& psi, const std::vector<Polynomial>& g) {
    if (psi.dimension() != static_cast<int>(g.size()))
        throw DimensionMismatch("compose: psi dimension vs number of components");
    if (g.empty()) throw DimensionMismatch("compose: empty component list");
    const int src = g.front().dimension();
    for (const auto& gi : g) check_same_dim(src, gi.dimension(), "compose: component source dims");

    // cache powers of each g_i on demand
    std::vector<std::vector<Polynomial>> pows(g.size());
    auto power = [&](std::size_t i, int k) -> const Polynomial& {
        auto& tab = pows[i];
        if (tab.empty()) tab.push_back(Polynomial::constant(src, 1.0));
        while (static_cast<int>(tab.size()) <= k) tab.push_back(tab.back() * g[i]);
        return tab[static_cast<std::size_t>(k)];
    };

    Polynomial out(src);
    for (const auto& [a, c] : psi.terms()) {
        Polynomial t = Polynomial::constant(src, c);
        for (std::size_t i = 0; i < g.size(); ++i)
            if (a[i] > 0) t *= power(i, a[i]);
        out += t;
    }
    return out;
}

RationalFunction compose(const Polynomial& psi, const std::vector<RationalFunction>& g) {
    if (psi.dimension() != static_cast<int>(g.size()))
        throw DimensionMismatch("compose: psi dimension vs number of components");
    if (g.empty()) throw DimensionMismatch("compose: empty component list");
    const int src = g.front().dimension();
    for (const auto& gi : g) check_same_dim(src, gi.dimension(), "compose: component source dims");

    // Common denominator prod_i den_i^{A_i} with A_i the largest exponent of
    // slot i in psi; each term contributes prod num_i^{a_i} den_i^{A_i-a_i}.
    const std::size_t d = g.size();
    MultiIndex amax(d, 0);
    for (const auto& [a, c] : psi.terms())
        for (std::size_t i = 0; i < d; ++i) amax[i] = std::max(amax[i], a[i]);

    std::vector<std::vector<Polynomial>> npow(d), dpow(d);
    for (std::size_t i = 0; i < d; ++i) {
        npow[i].push_back(Polynomial::constant(src, 1.0));
        dpow[i].push_back(Polynomial::constant(src, 1.0));
        for (int k = 1; k <= amax[i]; ++k) {
            npow[i].push_back(npow[i].back() * g[i].numerator());
            dpow[i].push_back(dpow[i].back() * g[i].denominator());
        }
    }

    Polynomial num(src);
    for (const auto& [a, c] : psi.terms()) {
        Polynomial t = Polynomial::constant(src, c);
        for (std::size_t i = 0; i < d; ++i) {
            if (a[i] > 0) t *= npow[i][static_cast<std::size_t>(a[i])];
            const int co = amax[i] - a[i];
            if (co > 0) t *= dpow[i][static_cast<std::size_t>(co)];
        }
        num += t;
    }
    Polynomial den = Polynomial::constant(src, 1.0);
    for (std::size_t i = 0; i < d; ++i)
        if (amax[i] > 0) den *= dpow[i][static_cast<std::size_t>(amax[i])];
    return RationalFunction(std::move(num), std::move(den));
}

namespace {
// permutation expansion of the determinant; systems here have d <= 4
template <typename T>
T det_by_permutations(const std::vector<std::vector<T>>& m, const T& zero) {
    const std::size_t d = m.size();
    std::vector<std::size_t> perm(d);
    for (std::size_t i = 0; i < d; ++i) perm[i] = i;
    T out = zero;
    int sign = 1;
    // iterate permutations in lexicographic order, tracking parity by
    // counting inversions of each permutation from scratch (d is tiny)
    do {
        int inv = 0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j)
                if (perm[i] > perm[j]) ++inv;
        sign = (inv % 2 == 0) ? 1 : -1;
        T prod = m[0][perm[0]];
        for (std::size_t i = 1; i < d; ++i) prod *= m[i][perm[i]];
        if (sign < 0)
            out -= prod;
        else
            out += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}
} // namespace

Polynomial jacobian_det(const std::vector<Polynomial>& g) {
    if (g.empty()) throw DimensionMismatch("jacobian_det: empty system");
    const int d = static_cast<int>(g.size());
    for (const auto& gi : g) check_same_dim(d, gi.dimension(), "jacobian_det: square system");
    std::vector<std::vector<Polynomial>> m(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) { // row j: partials of component j
        for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(j)].push_back(g[static_cast<std::size_t>(j)].partial(i));
    }
    return det_by_permutations(m, Polynomial::zero(d));
}

RationalFunction jacobian_det(const std::vector<RationalFunction>& g) {
    if (g.empty()) throw DimensionMismatch("jacobian_det: empty system");
    const int d = static_cast<int>(g.size());
    for (const auto& gi : g) check_same_dim(d, gi.dimension(), "jacobian_det: square system");
    std::vector<std::vector<RationalFunction>> m(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(j)].push_back(g[static_cast<std::size_t>(j)].partial(i));
    }
    return det_by_permutations(m, RationalFunction(Polynomial::zero(d)));
}

Polynomial substitute_linear(const Polynomial& f, const std::vector<Cx>& rho_rowmajor) {
    const int d = f.dimension();
    if (static_cast<int>(rho_rowmajor.size()) != d * d)
        throw DimensionMismatch("substitute_linear: matrix size");
    std::vector<Polynomial> images;
    images.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        Polynomial li(d);
        for (int j = 0; j < d; ++j) {
            const Cx c = rho_rowmajor[static_cast<std::size_t>(i * d + j)];
            if (c != Cx(0.0)) {
                MultiIndex a(static_cast<std::size_t>(d), 0);
                a[static_cast<std::size_t>(j)] = 1;
                li.add_term(a, c);
            }
        }
        images.push_back(std::move(li));
    }
    return compose(f, images);
}

std::pair<Polynomial, Polynomial> divide_linear_difference(const Polynomial& p, int i, int j) {
    const int d = p.dimension();
    if (i == j || i < 0 || j < 0 || i >= d || j >= d)
        throw DimensionMismatch("divide_linear_difference: bad variable indices");
    // view p as a polynomial in z_i with coefficients in the other variables
    int maxdeg = 0;
    for (const auto& [a, c] : p.terms()) maxdeg = std::max(maxdeg, a[static_cast<std::size_t>(i)]);
    std::vector<Polynomial> coeffs(static_cast<std::size_t>(maxdeg) + 1, Polynomial::zero(d));
    for (const auto& [a, c] : p.terms()) {
        MultiIndex b = a;
        const int e = b[static_cast<std::size_t>(i)];
        b[static_cast<std::size_t>(i)] = 0;
        coeffs[static_cast<std::size_t>(e)].add_term(b, c);
    }
    const Polynomial zj = Polynomial::variable(d, j);
    // synthetic division at the "root" z_j:  q_{k-1} = c_k + z_j * q_k
    std::vector<Polynomial> q(static_cast<std::size_t>(std::max(maxdeg, 1)), Polynomial::zero(d));
    Polynomial carry = Polynomial::zero(d);
    for (int k = maxdeg; k >= 1; --k) {
        carry = coeffs[static_cast<std::size_t>(k)] + zj * carry;
        q[static_cast<std::size_t>(k - 1)] = carry;
    }
    Polynomial rem = coeffs[0] + zj * carry;
    Polynomial quot(d);
    const Polynomial zi = Polynomial::variable(d, i);
    Polynomial zpow = Polynomial::constant(d, 1.0);
    for (int k = 0; k <= maxdeg - 1; ++k) {
        quot += q[static_cast<std::size_t>(k)] * zpow;
        if (k + 1 <= maxdeg - 1) zpow *= zi;
    }
    return {quot, rem};
}

Polynomial elementary_symmetric(int d, int k) {
    if (d < 1 || k < 0 || k > d) throw DimensionMismatch("elementary_symmetric: bad arguments");
    if (k == 0) return Polynomial::constant(d, 1.0);
    Polynomial out(d);
    std::vector<int> idx(static_cast<std::size_t>(k));
    // iterate k-subsets of {0..d-1}
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        MultiIndex a(static_cast<std::size_t>(d), 0);
        for (int v : idx) a[static_cast<std::size_t>(v)] = 1;
        out.add_term(a, Cx(1.0));
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == d - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int t = pos + 1; t < k; ++t) idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
    }
    return out;
}

std::vector<Polynomial> symmetrization_components(int d) {
    std::vector<Polynomial> s;
    s.reserve(static_cast<std::size_t>(d));
    for (int k = 1; k <= d; ++k) s.push_back(elementary_symmetric(d, k));
    return s;
}

Polynomial vandermonde(int d) {
    Polynomial v = Polynomial::constant(d, 1.0);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            v *= Polynomial::variable(d, i) - Polynomial::variable(d, j);
    return v;
}

std::vector<Cx> univariate_coeffs(const Polynomial& p) {
    if (p.dimension() != 1) throw DimensionMismatch("univariate_coeffs: polynomial is multivariate");
    std::vector<Cx> c(static_cast<std::size_t>(std::max(p.degree(), 0)) + 1, Cx(0.0));
    for (const auto& [a, v] : p.terms()) c[static_cast<std::size_t>(a[0])] = v;
    return c;
}

} // namespace berglab
