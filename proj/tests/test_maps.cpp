#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "berglab/maps.hpp"
#include "berglab/rootfind.hpp"

#include <algorithm>
#include <cmath>

using namespace berglab;

namespace {

ProperMap b1() { return ProperMap::blaschke({Cx(0.0), Cx(0.5)}, {4, 2}, 0.0); }
ProperMap b2() { return ProperMap::blaschke({Cx(-0.5), Cx(0.0), Cx(0.75)}, {1, 1, 1}, 0.0); }

} // namespace

TEST_CASE("blaschke construction") {
    const ProperMap f = b1();
    CHECK(f.multiplicity() == 6);
    CHECK(f.source().kind() == DomainKind::UnitDisc);

    // equals z^4 times the squared factor built separately
    const ProperMap factor = ProperMap::blaschke({Cx(0.5)}, {2}, 0.0);
    const Polynomial z = Polynomial::variable(1, 0);
    RationalFunction expect = RationalFunction(z.pow(4)) * factor.components()[0];
    CHECK(f.components()[0].approx_equal(expect, 1e-13));

    CHECK(ProperMap::blaschke({Cx(0.0)}, {5}, 0.0).multiplicity() == 5);
    CHECK_THROWS_AS(ProperMap::blaschke({Cx(1.5)}, {1}, 0.0), ZeroOutsideDisc);
}

TEST_CASE("blaschke boundary modulus is one") {
    for (const ProperMap& f : {b1(), b2()}) {
        for (int k = 0; k < 64; ++k) {
            const double th = 2.0 * Rng::pi() * k / 64.0;
            const Cx z = std::polar(1.0, th);
            CHECK(std::abs(std::abs(f.components()[0](z)) - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("maps send source samples into the target") {
    Rng rng(47);
    auto ez = ProperMap::edigarian_zwonek(b2(), 2);
    for (const ProperMap& f :
         {b1(), b2(), ProperMap::power(3), ProperMap::polydisc_product({b2(), b2()}),
          ProperMap::symmetrization(2), ProperMap::symmetrization(3), ez}) {
        for (int k = 0; k < 200; ++k) {
            const CVec z = f.source().sample(rng, 0.95);
            CHECK(f.target().contains(f(z)));
        }
    }
}

TEST_CASE("fiber of z^3 over 1/8") {
    const ProperMap f = ProperMap::power(3);
    const Fiber fib = f.fiber(CVec{Cx(0.125)});
    REQUIRE(fib.preimages.size() == 3);
    CHECK(fib.regular);
    for (const CVec& p : fib.preimages) {
        CHECK(std::abs(std::abs(p[0]) - 0.5) < 1e-12);
        CHECK(std::abs(p[0] * p[0] * p[0] - Cx(0.125)) < 1e-12);
    }
}

TEST_CASE("fiber cardinality and residuals for the catalog") {
    Rng rng(53);
    auto check_map = [&](const ProperMap& f) {
        for (int rep = 0; rep < 3; ++rep) {
            const CVec w = f.target().sample(rng, 0.7);
            const Fiber fib = f.fiber(w);
            if (!fib.trusted()) continue;
            CHECK(static_cast<int>(fib.preimages.size()) == f.multiplicity());
            for (const CVec& p : fib.preimages) {
                const CVec fp = f(p);
                double err = 0.0;
                for (std::size_t i = 0; i < fp.size(); ++i) err = std::max(err, std::abs(fp[i] - w[i]));
                CHECK(err < 1e-9);
            }
        }
    };
    check_map(b1());
    check_map(b2());
    check_map(ProperMap::polydisc_product({ProperMap::power(2), ProperMap::power(3)}));
    check_map(ProperMap::symmetrization(2));
    check_map(ProperMap::symmetrization(3));
    check_map(ProperMap::edigarian_zwonek(b2(), 2));
}

TEST_CASE("symmetrization fiber over (0,-1/4)") {
    const ProperMap s = ProperMap::symmetrization(2);
    const Fiber fib = s.fiber(CVec{Cx(0.0), Cx(-0.25)});
    REQUIRE(fib.preimages.size() == 2);
    // both orderings of {1/2, -1/2}
    auto close = [](const CVec& p, Cx a, Cx b) {
        return std::abs(p[0] - a) < 1e-10 && std::abs(p[1] - b) < 1e-10;
    };
    const bool ok = (close(fib.preimages[0], Cx(0.5), Cx(-0.5)) &&
                     close(fib.preimages[1], Cx(-0.5), Cx(0.5))) ||
                    (close(fib.preimages[0], Cx(-0.5), Cx(0.5)) &&
                     close(fib.preimages[1], Cx(0.5), Cx(-0.5)));
    CHECK(ok);
}

TEST_CASE("fiber round trip") {
    Rng rng(59);
    auto ez = ProperMap::edigarian_zwonek(b2(), 2);
    for (const ProperMap& f :
         {b1(), b2(), ProperMap::power(4), ProperMap::polydisc_product({b2(), b2()}),
          ProperMap::symmetrization(2), ez}) {
        int done = 0;
        for (int attempt = 0; attempt < 400 && done < 100; ++attempt) {
            const CVec z = f.source().sample(rng, 0.85);
            if (std::abs(f.jacobian(z)) <= 1e-6) continue;
            const Fiber fib = f.fiber(f(z));
            if (!fib.trusted()) continue;
            double best = 1e9;
            for (const CVec& p : fib.preimages) {
                double dd = 0.0;
                for (std::size_t i = 0; i < p.size(); ++i) dd = std::max(dd, std::abs(p[i] - z[i]));
                best = std::min(best, dd);
            }
            CHECK(best < 1e-8);
            ++done;
        }
        CHECK(done >= 50);
    }
}

TEST_CASE("symmetrization invariance properties") {
    Rng rng(61);
    const ProperMap s3 = ProperMap::symmetrization(3);
    const Polynomial js = jacobian_det(symmetrization_components(3));
    for (int rep = 0; rep < 50; ++rep) {
        CVec z = rng.polydisc_point(3, 0.95);
        const CVec base = s3(z);
        const Cx jbase = js(z);
        // walk through all 6 permutations, tracking parity by swap count
        std::sort(z.begin(), z.end(), [](Cx a, Cx b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        CVec sorted = z;
        // enumerate permutations of indices
        std::vector<int> perm = {0, 1, 2};
        do {
            CVec zp = {sorted[static_cast<std::size_t>(perm[0])], sorted[static_cast<std::size_t>(perm[1])],
                       sorted[static_cast<std::size_t>(perm[2])]};
            const CVec sp = s3(zp);
            const CVec s0 = s3(sorted);
            for (int i = 0; i < 3; ++i) CHECK(std::abs(sp[static_cast<std::size_t>(i)] - s0[static_cast<std::size_t>(i)]) < 1e-12);
            int inv = 0;
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inv;
            const double sgn = (inv % 2 == 0) ? 1.0 : -1.0;
            CHECK(std::abs(js(zp) - sgn * js(sorted)) < 1e-12);
        } while (std::next_permutation(perm.begin(), perm.end()));
        (void)base;
        (void)jbase;
    }
}

TEST_CASE("edigarian-zwonek closed form for B = z^2, d = 2") {
    // f(w1, w2) = (w1^2 - 2 w2, w2^2), from s(z1^2, z2^2) expanded in
    // elementary symmetric polynomials
    Rng rng(67);
    const ProperMap f = ProperMap::edigarian_zwonek(ProperMap::power(2), 2);
    CHECK(f.multiplicity() == 4);
    for (int rep = 0; rep < 25; ++rep) {
        const CVec w = f.source().sample(rng, 0.9);
        const CVec fw = f(w);
        CHECK(std::abs(fw[0] - (w[0] * w[0] - 2.0 * w[1])) < 1e-12);
        CHECK(std::abs(fw[1] - w[1] * w[1]) < 1e-12);
    }
    // identity Blaschke gives the identity self-map
    const ProperMap id = ProperMap::edigarian_zwonek(ProperMap::power(1), 2);
    for (int rep = 0; rep < 10; ++rep) {
        const CVec w = id.source().sample(rng, 0.9);
        const CVec fw = id(w);
        CHECK(std::abs(fw[0] - w[0]) < 1e-12);
        CHECK(std::abs(fw[1] - w[1]) < 1e-12);
    }
}

TEST_CASE("edigarian-zwonek jacobian against finite differences") {
    Rng rng(71);
    const ProperMap f = ProperMap::edigarian_zwonek(b2(), 2);
    CHECK(f.multiplicity() == 9);
    int done = 0;
    for (int attempt = 0; attempt < 60 && done < 10; ++attempt) {
        const CVec w = f.source().sample(rng, 0.6);
        Cx j;
        try {
            j = f.jacobian(w);
        } catch (const NearBranchLocus&) {
            continue;
        }
        const double h = 1e-6;
        // complex-step-free central differences on the 2x2 matrix
        auto at = [&](Cx dw0, Cx dw1) { return f(CVec{w[0] + dw0, w[1] + dw1}); };
        const CVec fpp = at(h, 0), fpm = at(-h, 0), fqp = at(0, h), fqm = at(0, -h);
        const Cx d00 = (fpp[0] - fpm[0]) / (2 * h), d01 = (fpp[1] - fpm[1]) / (2 * h);
        const Cx d10 = (fqp[0] - fqm[0]) / (2 * h), d11 = (fqp[1] - fqm[1]) / (2 * h);
        const Cx jfd = d00 * d11 - d01 * d10;
        CHECK(std::abs(j - jfd) < 1e-5 * std::max(1.0, std::abs(j)));
        ++done;
    }
    CHECK(done == 10);
}

TEST_CASE("multiplicity certification") {
    Rng rng(73);
    CHECK(multiplicity_certify(b1(), 5, rng) == 6);
    CHECK(multiplicity_certify(b2(), 5, rng) == 3);
    CHECK(multiplicity_certify(ProperMap::power(1), 5, rng) == 1);
    CHECK(multiplicity_certify(ProperMap::symmetrization(2), 5, rng) == 2);
    CHECK(multiplicity_certify(ProperMap::symmetrization(3), 5, rng) == 6);
    CHECK(multiplicity_certify(ProperMap::polydisc_product({ProperMap::power(2), ProperMap::power(3)}), 5, rng) == 6);
    CHECK(multiplicity_certify(ProperMap::edigarian_zwonek(b2(), 2), 5, rng) == 9);
}

TEST_CASE("fiber rejects points outside the target") {
    CHECK_THROWS_AS(b2().fiber(CVec{Cx(1.2)}), TargetMiss);
    CHECK_THROWS_AS(ProperMap::symmetrization(2).fiber(CVec{Cx(2.0), Cx(1.0)}), TargetMiss);
}
