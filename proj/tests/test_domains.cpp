#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "berglab/domains.hpp"
#include "berglab/rootfind.hpp"

#include <cmath>

using namespace berglab;

namespace {

// quadrature value of int f conj(g) dmu
template <typename F, typename G>
Cx quad_ip(const QuadratureRule& rule, F&& f, G&& g) {
    Cx acc(0.0);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const auto z = rule.node(i);
        acc += rule.weight(i) * f(z) * std::conj(g(z));
    }
    return acc;
}

} // namespace

TEST_CASE("membership") {
    const Domain disc = Domain::unit_disc();
    CHECK(disc.contains(CVec{Cx(0.99)}));
    CHECK_FALSE(disc.contains(CVec{Cx(1.0)}));

    const Domain g2 = Domain::symmetrized_polydisc(2);
    CHECK(g2.contains(CVec{Cx(0.0), Cx(0.0)}));       // roots of t^2 = 0
    CHECK_FALSE(g2.contains(CVec{Cx(2.0), Cx(1.0)})); // roots of t^2-2t+1 are {1,1}

    CHECK_THROWS_AS(disc.contains(CVec{Cx(0.1), Cx(0.1)}), DimensionMismatch);
}

TEST_CASE("symmetrized membership agrees with the known root multiset") {
    Rng rng(31);
    const Domain g2 = Domain::symmetrized_polydisc(2);
    for (int k = 0; k < 100; ++k) {
        const CVec z = rng.polydisc_point(2, 0.999);
        CHECK(g2.contains(CVec{z[0] + z[1], z[0] * z[1]}));
    }
    for (int k = 0; k < 100; ++k) {
        // first coordinate outside the closed disc, second inside
        CVec z = rng.polydisc_point(2, 0.9);
        z[0] *= 2.0 / std::abs(z[0]);
        const bool inside = std::max(std::abs(z[0]), std::abs(z[1])) < 1.0;
        CHECK(g2.contains(CVec{z[0] + z[1], z[0] * z[1]}) == inside);
    }
}

TEST_CASE("disc quadrature integrates monomial pairs") {
    const Domain disc = Domain::unit_disc();
    const QuadratureRule rule = disc.quadrature(4);
    CHECK(std::abs(rule.mass() - 1.0) < 1e-13); // normalized measure

    // int |z|^2 dmu = 1/2
    Cx v = quad_ip(rule, [](std::span<const Cx> z) { return z[0]; },
                   [](std::span<const Cx> z) { return z[0]; });
    CHECK(std::abs(v - Cx(0.5)) < 1e-13);

    // orthogonality: <z^2, z> = 0
    v = quad_ip(rule, [](std::span<const Cx> z) { return z[0] * z[0]; },
                [](std::span<const Cx> z) { return z[0]; });
    CHECK(std::abs(v) < 1e-14);

    for (std::size_t i = 0; i < rule.size(); ++i) {
        CHECK(rule.weight(i) > 0.0);
        CHECK(disc.contains(rule.node(i)));
    }
}

TEST_CASE("polydisc quadrature: orthogonality table up to the exactness bound") {
    const Domain d2 = Domain::polydisc(2);
    const int level = 6;
    const QuadratureRule rule = d2.quadrature(level);
    CHECK(std::abs(rule.mass() - 1.0) < 1e-13);
    for (int a1 = 0; a1 <= 3; ++a1)
        for (int a2 = 0; a2 <= 3; ++a2)
            for (int b1 = 0; b1 <= 3; ++b1)
                for (int b2 = 0; b2 <= 3; ++b2) {
                    const Cx v = quad_ip(
                        rule,
                        [&](std::span<const Cx> z) { return std::pow(z[0], a1) * std::pow(z[1], a2); },
                        [&](std::span<const Cx> z) { return std::pow(z[0], b1) * std::pow(z[1], b2); });
                    const double expect = (a1 == b1 && a2 == b2)
                                              ? 1.0 / ((a1 + 1.0) * (a2 + 1.0))
                                              : 0.0;
                    CHECK(std::abs(v - Cx(expect)) < 1e-12);
                }
}

TEST_CASE("quadrature consistency across levels") {
    for (const Domain& dom : {Domain::unit_disc(), Domain::polydisc(2)}) {
        const int L = 8;
        const QuadratureRule a = dom.quadrature(L), b = dom.quadrature(L + 2);
        // all monomials with |alpha| <= L/2
        std::vector<MultiIndex> idx;
        if (dom.dimension() == 1) {
            for (int k = 0; k <= L / 2; ++k) idx.push_back({k});
        } else {
            for (int k = 0; k <= L / 2; ++k)
                for (int j = 0; j + k <= L / 2; ++j) idx.push_back({k, j});
        }
        for (const auto& alpha : idx) {
            auto mono = [&](std::span<const Cx> z) {
                Cx t(1.0);
                for (std::size_t i = 0; i < alpha.size(); ++i) t *= std::pow(z[i], alpha[i]);
                return t;
            };
            const Cx va = quad_ip(a, mono, mono), vb = quad_ip(b, mono, mono);
            CHECK(std::abs(va - vb) < 1e-10);
        }
    }
}

TEST_CASE("symmetrized polydisc pushforward rule") {
    const Domain g2 = Domain::symmetrized_polydisc(2);
    const QuadratureRule rule = g2.quadrature(8);

    // normalized volume of G_2 equals the tensor-rule value of
    // (1/2!) int |z1-z2|^2 dmu, which the oracle below pins at 1/2
    const Domain d2 = Domain::polydisc(2);
    const QuadratureRule base = d2.quadrature(8);
    Cx oracle(0.0);
    for (std::size_t i = 0; i < base.size(); ++i) {
        const auto z = base.node(i);
        oracle += 0.5 * base.weight(i) * std::norm(z[0] - z[1]);
    }
    CHECK(std::abs(oracle - Cx(0.5)) < 1e-13);
    CHECK(std::abs(rule.mass() - oracle.real()) < 1e-13);

    for (std::size_t i = 0; i < rule.size(); ++i) {
        CHECK(rule.weight(i) > 0.0);
        CHECK(g2.contains(rule.node(i)));
    }

    // G_3 mass comes out of the same oracle construction
    const QuadratureRule rule3 = Domain::symmetrized_polydisc(3).quadrature(6);
    CHECK(std::abs(rule3.mass() - 1.0 / 6.0) < 1e-12);
}

TEST_CASE("pushforward integrates polynomial pullbacks correctly") {
    // int_{G_d} g dmu = (1/d!) int_{D^d} (g o s) |J_s|^2 dmu for random g
    Rng rng(37);
    const Domain g2 = Domain::symmetrized_polydisc(2);
    const QuadratureRule rule = g2.quadrature(10);
    const Domain d2 = Domain::polydisc(2);
    const QuadratureRule base = d2.quadrature(10);
    const std::vector<Polynomial> s = symmetrization_components(2);
    for (int rep = 0; rep < 10; ++rep) {
        Polynomial g(2);
        for (int t = 0; t < 5; ++t) {
            const int a = static_cast<int>(rng.uniform(0, 3));
            const int b = static_cast<int>(rng.uniform(0, 3));
            g.add_term({a, b}, Cx(rng.uniform(-1, 1), rng.uniform(-1, 1)));
        }
        Cx lhs(0.0);
        for (std::size_t i = 0; i < rule.size(); ++i) lhs += rule.weight(i) * std::norm(g(rule.node(i)));
        Cx rhs(0.0);
        for (std::size_t i = 0; i < base.size(); ++i) {
            const auto z = base.node(i);
            const CVec w = {s[0](z), s[1](z)};
            rhs += 0.5 * base.weight(i) * std::norm(g(w)) * std::norm(z[0] - z[1]);
        }
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("monomial norms") {
    const Domain disc = Domain::unit_disc();
    CHECK(disc.monomial_norm({0}) == doctest::Approx(1.0));
    for (int n = 0; n <= 8; ++n)
        CHECK(disc.monomial_norm({n}) == doctest::Approx(1.0 / std::sqrt(n + 1.0)));

    const Domain d2 = Domain::polydisc(2);
    CHECK(d2.monomial_norm({1, 2}) == doctest::Approx(1.0 / std::sqrt(6.0)));
    // cross-check against quadrature
    const QuadratureRule rule = d2.quadrature(8);
    Cx v(0.0);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const auto z = rule.node(i);
        v += rule.weight(i) * std::norm(z[0] * z[1] * z[1]);
    }
    CHECK(std::abs(std::sqrt(v.real()) - d2.monomial_norm({1, 2})) < 1e-12);

    CHECK_THROWS_AS(Domain::symmetrized_polydisc(2).monomial_norm({1, 1}), NotReinhardt);
}

TEST_CASE("reinhardt inner product equals quadrature on polynomials") {
    Rng rng(41);
    const Domain d2 = Domain::polydisc(2);
    const QuadratureRule rule = d2.quadrature(10);
    for (int rep = 0; rep < 5; ++rep) {
        Polynomial p(2), q(2);
        for (int t = 0; t < 6; ++t) {
            p.add_term({static_cast<int>(rng.uniform(0, 4)), static_cast<int>(rng.uniform(0, 4))},
                       Cx(rng.uniform(-1, 1), rng.uniform(-1, 1)));
            q.add_term({static_cast<int>(rng.uniform(0, 4)), static_cast<int>(rng.uniform(0, 4))},
                       Cx(rng.uniform(-1, 1), rng.uniform(-1, 1)));
        }
        const Cx exact = reinhardt_inner_product(p, q, d2);
        Cx quad(0.0);
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const auto z = rule.node(i);
            quad += rule.weight(i) * p(z) * std::conj(q(z));
        }
        CHECK(std::abs(exact - quad) < 1e-12);
    }
}

TEST_CASE("root finder contracts") {
    // cube roots of 1/8
    CVec roots = all_roots({Cx(-0.125), Cx(0.0), Cx(0.0), Cx(1.0)});
    REQUIRE(roots.size() == 3);
    for (const Cx& r : roots) CHECK(std::abs(r * r * r - Cx(0.125)) < 1e-12);

    // random polynomials: residual contract
    Rng rng(43);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform(0, 7));
        CVec c(static_cast<std::size_t>(n) + 1);
        for (auto& ck : c) ck = Cx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        c.back() += Cx(2.0); // keep the leading coefficient away from zero
        const CVec r = all_roots(c);
        CHECK(r.size() == static_cast<std::size_t>(n));
        for (const Cx& root : r) {
            Cx acc(0.0);
            for (std::size_t k = c.size(); k-- > 0;) acc = acc * root + c[k];
            CHECK(std::abs(acc) < 1e-8 * std::abs(c.back()));
        }
        // agreement with the companion-matrix spectrum (as multisets)
        CVec cr = companion_roots(c);
        for (const Cx& root : r) {
            double best = 1e9;
            for (const Cx& s : cr) best = std::min(best, std::abs(root - s));
            CHECK(best < 1e-7);
        }
    }
}

TEST_CASE("symdisc preimage polynomial orientation") {
    // w = (0, -1/4): t^2 - 1/4, roots +-1/2
    const CVec r = symdisc_preimage(CVec{Cx(0.0), Cx(-0.25)});
    REQUIRE(r.size() == 2);
    CHECK(std::abs(std::abs(r[0]) - 0.5) < 1e-12);
    CHECK(std::abs(r[0] + r[1]) < 1e-12);
}
