#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "berglab/algebra.hpp"
#include "berglab/common.hpp"

#include <cmath>

using namespace berglab;

namespace {

Polynomial random_poly(Rng& rng, int dim, int deg, int nterms) {
    Polynomial p(dim);
    for (int t = 0; t < nterms; ++t) {
        MultiIndex a(static_cast<std::size_t>(dim), 0);
        int budget = static_cast<int>(rng.uniform(0.0, static_cast<double>(deg) + 0.999));
        for (int i = 0; i < dim && budget > 0; ++i) {
            const int e = static_cast<int>(rng.uniform(0.0, static_cast<double>(budget) + 0.999));
            a[static_cast<std::size_t>(i)] = e;
            budget -= e;
        }
        p.add_term(a, Cx(rng.uniform(-1, 1), rng.uniform(-1, 1)));
    }
    return p;
}

} // namespace

TEST_CASE("polynomial evaluation basics") {
    // z1 z2 + 1 at (2, 3)
    Polynomial p(2);
    p.add_term({1, 1}, 1.0);
    p.add_term({0, 0}, 1.0);
    CHECK(std::abs(p(CVec{2.0, 3.0}) - Cx(7.0)) < 1e-15);

    // s2 in three variables at (1,1,1)
    const Polynomial s2 = elementary_symmetric(3, 2);
    CHECK(std::abs(s2(CVec{1.0, 1.0, 1.0}) - Cx(3.0)) < 1e-15);

    CHECK(Polynomial::zero(2).degree() == -1);
    CHECK_THROWS_AS(p(CVec{1.0}), DimensionMismatch);
}

TEST_CASE("blaschke factor evaluation and poles") {
    // (z - 1/2) / (1 - z/2) vanishes at 1/2
    const Polynomial z = Polynomial::variable(1, 0);
    RationalFunction b(z - Polynomial::constant(1, 0.5),
                       Polynomial::constant(1, 1.0) - Polynomial::constant(1, 0.5) * z);
    CHECK(std::abs(b(Cx(0.5))) < 1e-15);
    CHECK_THROWS_AS(b(Cx(2.0)), PoleEvaluation);
}

TEST_CASE("compose") {
    const Polynomial z = Polynomial::variable(1, 0);
    // z^2 o z^3 = z^6
    RationalFunction z3(z.pow(3));
    RationalFunction r = compose(z.pow(2), {z3});
    CHECK(r.approx_equal(RationalFunction(z.pow(6)), 1e-14));

    // (z1+z2) o (s1, s2) = z1 + z2 + z1 z2
    Polynomial f(2);
    f.add_term({1, 0}, 1.0);
    f.add_term({0, 1}, 1.0);
    const Polynomial g = compose(f, symmetrization_components(2));
    Polynomial expect(2);
    expect.add_term({1, 0}, 1.0);
    expect.add_term({0, 1}, 1.0);
    expect.add_term({1, 1}, 1.0);
    CHECK(g.approx_equal(expect, 1e-14));

    // identity composed with a Blaschke product returns it with the product
    // denominator
    CVec zeros = {Cx(-0.5), Cx(0.0), Cx(0.75)};
    Polynomial num = Polynomial::constant(1, 1.0), den = Polynomial::constant(1, 1.0);
    for (Cx a : zeros) {
        num *= (z - Polynomial::constant(1, a));
        den *= (Polynomial::constant(1, 1.0) - Polynomial::constant(1, std::conj(a)) * z);
    }
    RationalFunction bhat(num, den);
    RationalFunction composed = compose(z, {bhat});
    CHECK(composed.approx_equal(bhat, 1e-14));
    CHECK(composed.denominator().approx_equal(den, 1e-14));

    CHECK_THROWS_AS(compose(f, {z3}), DimensionMismatch);
}

TEST_CASE("compose agrees with pointwise evaluation at random points") {
    Rng rng(2026);
    for (int rep = 0; rep < 20; ++rep) {
        Polynomial f = random_poly(rng, 2, 4, 6);
        std::vector<RationalFunction> g;
        for (int i = 0; i < 2; ++i) {
            Polynomial n = random_poly(rng, 2, 3, 5);
            Polynomial d = random_poly(rng, 2, 2, 3) + Polynomial::constant(2, 3.0);
            g.emplace_back(n, d);
        }
        const RationalFunction fg = compose(f, g);
        const CVec zpt = rng.polydisc_point(2, 0.8);
        const CVec gz = {g[0](zpt), g[1](zpt)};
        CHECK(std::abs(fg(zpt) - f(gz)) < 1e-10);
    }
}

TEST_CASE("partial derivatives") {
    // d/dz1 (z1^2 z2) = 2 z1 z2
    Polynomial p(2);
    p.add_term({2, 1}, 1.0);
    Polynomial expect(2);
    expect.add_term({1, 1}, 2.0);
    CHECK(p.partial(0).approx_equal(expect, 1e-15));

    // constants differentiate to zero
    CHECK(Polynomial::constant(2, Cx(4.0, 1.0)).partial(1).is_zero());

    // mixed partials commute exactly
    Rng rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        const Polynomial q = random_poly(rng, 3, 5, 10);
        CHECK(q.partial(0).partial(2).approx_equal(q.partial(2).partial(0), 0.0));
    }
}

TEST_CASE("blaschke factor derivative against difference quotient") {
    // d/dz (z-a)/(1-conj(a) z) = (1-|a|^2)/(1-conj(a) z)^2, checked by a
    // difference quotient at 5 random points (step 1e-6)
    Rng rng(11);
    const Cx a(0.4, -0.3);
    const Polynomial z = Polynomial::variable(1, 0);
    RationalFunction b(z - Polynomial::constant(1, a),
                       Polynomial::constant(1, 1.0) - Polynomial::constant(1, std::conj(a)) * z);
    const RationalFunction db = b.partial(0);
    for (int k = 0; k < 5; ++k) {
        const Cx z0 = rng.disc_point(0.8);
        const Cx h(1e-6, 0.0);
        const Cx dq = (b(z0 + h) - b(z0 - h)) / (2.0 * h);
        CHECK(std::abs(db(z0) - dq) < 1e-6);
        const Cx closed = (1.0 - std::norm(a)) / std::pow(1.0 - std::conj(a) * z0, 2);
        CHECK(std::abs(db(z0) - closed) < 1e-12);
    }
}

TEST_CASE("product rule is exact on coefficients") {
    Rng rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        const Polynomial f = random_poly(rng, 2, 4, 8);
        const Polynomial g = random_poly(rng, 2, 4, 8);
        const Polynomial lhs = (f * g).partial(0);
        const Polynomial rhs = f.partial(0) * g + f * g.partial(0);
        CHECK(lhs.approx_equal(rhs, 1e-13 * std::max(1.0, lhs.max_abs_coeff())));
    }
}

TEST_CASE("jacobian determinants") {
    // symmetrization of two variables: det [[1,1],[z2,z1]] = z1 - z2
    const Polynomial js = jacobian_det(symmetrization_components(2));
    Polynomial expect(2);
    expect.add_term({1, 0}, 1.0);
    expect.add_term({0, 1}, -1.0);
    CHECK(js.approx_equal(expect, 1e-15));

    // d/dz z^n = n z^{n-1}
    const Polynomial z = Polynomial::variable(1, 0);
    const Polynomial jn = jacobian_det(std::vector<Polynomial>{z.pow(5)});
    CHECK(jn.approx_equal(Polynomial::monomial({4}, 5.0), 1e-15));

    // identity map
    std::vector<Polynomial> id = {Polynomial::variable(2, 0), Polynomial::variable(2, 1)};
    CHECK(jacobian_det(id).approx_equal(Polynomial::constant(2, 1.0), 1e-15));

    CHECK_THROWS_AS(jacobian_det(std::vector<Polynomial>{Polynomial::variable(2, 0)}),
                    DimensionMismatch);
}

TEST_CASE("jacobian chain rule at random points") {
    // J_{g o h} = (J_g o h) * J_h
    Rng rng(17);
    std::vector<Polynomial> g = symmetrization_components(2);
    std::vector<Polynomial> h = {random_poly(rng, 2, 3, 5), random_poly(rng, 2, 3, 5)};
    std::vector<Polynomial> gh = {compose(g[0], h), compose(g[1], h)};
    const Polynomial jg = jacobian_det(g), jh = jacobian_det(h), jgh = jacobian_det(gh);
    for (int k = 0; k < 20; ++k) {
        const CVec zpt = rng.polydisc_point(2, 0.9);
        const CVec hz = {h[0](zpt), h[1](zpt)};
        CHECK(std::abs(jgh(zpt) - jg(hz) * jh(zpt)) < 1e-9);
    }
}

TEST_CASE("vandermonde matches the symmetrization jacobian up to sign") {
    for (int d = 2; d <= 4; ++d) {
        const Polynomial js = jacobian_det(symmetrization_components(d));
        const Polynomial v = vandermonde(d);
        const bool plus = js.approx_equal(v, 1e-12);
        const bool minus = js.approx_equal(-v, 1e-12);
        CHECK((plus || minus));
    }
}

TEST_CASE("division by a linear difference factor") {
    // (z1^2 - z2^2) / (z1 - z2) = z1 + z2
    Polynomial p(2);
    p.add_term({2, 0}, 1.0);
    p.add_term({0, 2}, -1.0);
    auto [q, r] = divide_linear_difference(p, 0, 1);
    Polynomial expect(2);
    expect.add_term({1, 0}, 1.0);
    expect.add_term({0, 1}, 1.0);
    CHECK(q.approx_equal(expect, 1e-14));
    CHECK(r.max_abs_coeff() < 1e-14);

    // generic polynomial: p = q*(z_i - z_j) + r reconstructs exactly
    Rng rng(23);
    const Polynomial f = random_poly(rng, 3, 5, 12);
    auto [q2, r2] = divide_linear_difference(f, 1, 2);
    const Polynomial lin = Polynomial::variable(3, 1) - Polynomial::variable(3, 2);
    CHECK((q2 * lin + r2).approx_equal(f, 1e-12));
}

TEST_CASE("rational equality by cross multiplication") {
    const Polynomial z = Polynomial::variable(1, 0);
    // z/1 equals z^2/z even though representations differ
    RationalFunction a(z, Polynomial::constant(1, 1.0));
    RationalFunction b(z.pow(2), z);
    CHECK(a.approx_equal(b, 1e-14));
    RationalFunction c(z.pow(2), Polynomial::constant(1, 1.0));
    CHECK_FALSE(a.approx_equal(c, 1e-10));
}

TEST_CASE("univariate dense coefficients and horner evaluation") {
    Rng rng(29);
    Polynomial p(1);
    p.add_term({0}, Cx(1.0, -2.0));
    p.add_term({3}, Cx(0.5, 0.25));
    p.add_term({7}, Cx(-1.0, 0.0));
    const CVec c = univariate_coeffs(p);
    CHECK(c.size() == 8);
    for (int k = 0; k < 10; ++k) {
        const Cx z0 = rng.disc_point(1.5);
        Cx acc(0.0);
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * z0 + c[i];
        CHECK(std::abs(acc - p(z0)) < 1e-12);
    }
}
