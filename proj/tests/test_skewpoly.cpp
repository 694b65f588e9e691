#include <doctest.h>

#include <random>

#include "sumrank/skewpoly.hpp"

using namespace sumrank;

TEST_CASE("skew multiplication basics") {
    const Tower& t = get_tower(2, 1, 3);
    auto one = make_skew_poly(t, {1});
    auto f = make_skew_poly(t, {3, 5, 1});
    CHECK(skew_mul(f, one).coeffs == f.coeffs);
    CHECK(skew_mul(one, f).coeffs == f.coeffs);
    // x * a = sigma(a) * x
    Elem a = t.generator();
    auto x = skew_monomial(t, 1);
    auto xa = skew_mul(x, make_skew_poly(t, {a}));
    CHECK(xa.coeffs == std::vector<Elem>{0, t.frobenius(a, 1)});
    // degree additive for nonzero inputs
    auto g = make_skew_poly(t, {2, 7});
    CHECK(skew_mul(f, g).degree() == f.degree() + g.degree());
    // zero polynomial
    auto z = make_skew_poly(t, {});
    CHECK(z.is_zero());
    CHECK(skew_mul(f, z).is_zero());
}

TEST_CASE("skew multiplication is associative (random triples)") {
    const Tower& t = get_tower(2, 1, 3);
    std::mt19937_64 rng(123);
    for (int rep = 0; rep < 500; ++rep) {
        auto rand_poly = [&] {
            u32 deg = rng() % 5;
            std::vector<Elem> c(deg + 1);
            for (auto& x : c) x = rng() % t.order();
            return make_skew_poly(t, c);
        };
        auto f = rand_poly(), g = rand_poly(), h = rand_poly();
        CHECK(skew_mul(skew_mul(f, g), h).coeffs == skew_mul(f, skew_mul(g, h)).coeffs);
    }
}

TEST_CASE("operator evaluation basics") {
    const Tower& t = get_tower(2, 1, 3);
    Elem c = t.generator(), beta = t.add(t.generator(), 1), mu = 3;
    // constant polynomial: f(beta)_mu = c * beta
    CHECK(op_eval(make_skew_poly(t, {c}), beta, mu) == t.mul(c, beta));
    // f = x: sigma(beta) * N_1(mu) = beta^q * mu
    CHECK(op_eval(skew_monomial(t, 1), beta, mu) == t.mul(t.frobenius(beta, 1), mu));
}

TEST_CASE("operator evaluation is F_q-linear in beta (exhaustive, q=2, m=3)") {
    const Tower& t = get_tower(2, 1, 3);
    for (Elem f0 = 0; f0 < 8; f0 += 3)
        for (Elem f1 = 0; f1 < 8; f1 += 2)
            for (Elem f3 = 0; f3 < 8; f3 += 3) {
                auto f = make_skew_poly(t, {f0, f1, 0, f3});
                for (Elem mu = 0; mu < 8; ++mu)
                    for (Elem b1 = 0; b1 < 8; ++b1)
                        for (Elem b2 = 0; b2 < 8; ++b2)
                            CHECK(op_eval(f, t.add(b1, b2), mu) ==
                                  t.add(op_eval(f, b1, mu), op_eval(f, b2, mu)));
            }
}

TEST_CASE("evaluation-multiplication compatibility (f*g)(beta)_mu = f(g(beta)_mu)_mu") {
    // exhaustive over degrees <= 3 with sampled coefficients, q=2, m=3
    const Tower& t = get_tower(2, 1, 3);
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 400; ++rep) {
        auto rand_poly = [&] {
            u32 deg = rng() % 4;
            std::vector<Elem> c(deg + 1);
            for (auto& x : c) x = rng() % t.order();
            return make_skew_poly(t, c);
        };
        auto f = rand_poly(), g = rand_poly();
        Elem beta = rng() % t.order(), mu = rng() % t.order();
        CHECK(op_eval(skew_mul(f, g), beta, mu) == op_eval(f, op_eval(g, beta, mu), mu));
    }
}

TEST_CASE("multipoint evaluation block structure") {
    const Tower& t = get_tower(3, 1, 2);
    std::vector<Elem> mus{1, 4};  // distinct norms in F_9
    std::vector<Elem> betas{1, 3};
    auto zero = make_skew_poly(t, {});
    for (Elem v : multipoint_ev(zero, mus, betas)) CHECK(v == 0);
    // constant c: blocks all equal (c*beta_1, c*beta_2)
    Elem c = 5;
    auto ev = multipoint_ev(make_skew_poly(t, {c}), mus, betas);
    REQUIRE(ev.size() == 4);
    CHECK(ev[0] == t.mul(c, 1));
    CHECK(ev[1] == t.mul(c, 3));
    CHECK(ev[2] == ev[0]);
    CHECK(ev[3] == ev[1]);
    // linearity
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<Elem> cf(3), cg(3);
        for (auto& x : cf) x = rng() % 9;
        for (auto& x : cg) x = rng() % 9;
        auto f = make_skew_poly(t, cf), g = make_skew_poly(t, cg);
        auto ef = multipoint_ev(f, mus, betas), eg = multipoint_ev(g, mus, betas);
        auto es = multipoint_ev(skew_add(f, g), mus, betas);
        for (size_t i = 0; i < es.size(); ++i) CHECK(es[i] == t.add(ef[i], eg[i]));
    }
}

TEST_CASE("evaluation map has full rank k on degree-<k polynomials") {
    // betas F_q-independent, mus with pairwise distinct norms
    const Tower& t = get_tower(3, 1, 2);
    std::vector<Elem> mus{1, 4};
    std::vector<Elem> betas{1, 3};
    for (u32 k = 1; k <= 4; ++k) {
        std::vector<FVec> rows;
        for (u32 i = 0; i < k; ++i) rows.push_back(multipoint_ev(skew_monomial(t, i), mus, betas));
        CHECK(rank_of(t, rows) == std::min<u32>(k, 4));
    }
}
