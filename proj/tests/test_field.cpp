#include <doctest.h>

#include <set>

#include "sumrank/field.hpp"

using namespace sumrank;

namespace {

// Test-side irreducibility oracle: trial division by every lower-degree
// monic polynomial (naive, exact).
bool oracle_irreducible(const std::vector<u32>& f, u32 p) {
    u32 d = (u32)f.size() - 1;
    if (d == 0) return false;
    auto poly_of = [&](u64 code, u32 deg) {
        std::vector<u32> g(deg + 1, 0);
        for (u32 i = 0; i < deg; ++i) {
            g[i] = code % p;
            code /= p;
        }
        g[deg] = 1;
        return g;
    };
    auto divides = [&](const std::vector<u32>& g) {
        // long division f by monic g, check zero remainder
        std::vector<u32> r = f;
        while (r.size() >= g.size()) {
            u32 c = r.back();
            if (c) {
                size_t off = r.size() - g.size();
                for (size_t i = 0; i < g.size(); ++i)
                    r[off + i] = (u32)((r[off + i] + (u64)(p - c) * g[i]) % p);
            }
            r.pop_back();
        }
        for (u32 c : r)
            if (c) return false;
        return true;
    };
    for (u32 deg = 1; 2 * deg <= d; ++deg) {
        u64 count = 1;
        for (u32 i = 0; i < deg; ++i) count *= p;
        for (u64 code = 0; code < count; ++code)
            if (divides(poly_of(code, deg))) return false;
    }
    return true;
}

u64 oracle_lex_first(u32 p, u32 d) {
    u64 count = 1;
    for (u32 i = 0; i < d; ++i) count *= p;
    for (u64 code = 0; code < count; ++code) {
        std::vector<u32> f(d + 1, 0);
        u64 cc = code;
        for (u32 i = 0; i < d; ++i) {
            f[i] = cc % p;
            cc /= p;
        }
        f[d] = 1;
        if (oracle_irreducible(f, p)) return code;
    }
    return count;
}

u64 modulus_code(const fp::Poly& f, u32 p) {
    u64 code = 0;
    for (size_t i = f.size() - 1; i-- > 0;) code = code * p + f[i];
    return code;
}

}  // namespace

TEST_CASE("lex-first moduli match the exhaustive oracle") {
    // F_4 over F_2: z^2+z+1 is the first irreducible quadratic
    const Tower& t4 = get_tower(2, 1, 2);
    CHECK(t4.top_modulus() == fp::Poly{1, 1, 1});
    CHECK(modulus_code(t4.top_modulus(), 2) == oracle_lex_first(2, 2));
    // F_3, trivial extension
    const Tower& t3 = get_tower(3, 1, 1);
    CHECK(t3.order() == 3);
    CHECK(t3.m() == 1);
    // F_64: first irreducible sextic
    const Tower& t64 = get_tower(2, 1, 6);
    CHECK(modulus_code(t64.top_modulus(), 2) == oracle_lex_first(2, 6));
    // a bigger one, cross-checked against the oracle
    const Tower& t81 = get_tower(3, 1, 4);
    CHECK(modulus_code(t81.top_modulus(), 3) == oracle_lex_first(3, 4));
}

TEST_CASE("make_tower rejects bad parameters") {
    CHECK_THROWS_AS(make_tower(4, 1, 2), ValidationError);
    CHECK_THROWS_AS(make_tower(2, 1, 50), GuardExceeded);
}

TEST_CASE("tower generator is primitive") {
    for (auto [p, e, m] : {std::array<u32, 3>{2, 1, 6}, {3, 1, 2}, {2, 2, 2}, {5, 1, 2}}) {
        const Tower& tw = get_tower(p, e, m);
        CHECK(tw.mult_order(tw.generator()) == tw.order() - 1);
    }
}

TEST_CASE("frobenius fixes the subfield and is a field automorphism") {
    const Tower& tw = get_tower(2, 1, 2);
    Elem g = tw.generator();
    CHECK(tw.frobenius(g, 0) == g);
    // x in F_q is fixed for any s
    CHECK(tw.frobenius(1, 1) == 1);
    // g^2 computed by squaring mod z^2+z+1: z^2 = z+1
    CHECK(tw.frobenius(2, 1) == tw.mul(2, 2));  // element 2 is z
    CHECK(tw.mul(2, 2) == 3);                   // z^2 = z + 1 -> int 3

    for (auto [p, e, m] : {std::array<u32, 3>{2, 1, 6}, {3, 1, 4}, {2, 2, 2}}) {
        const Tower& t = get_tower(p, e, m);
        for (Elem x = 0; x < t.order(); ++x) {
            CHECK(t.frobenius(x, 1) == t.pow(x, t.q()));
            for (Elem y : {Elem(1), Elem(t.order() - 1), Elem(x / 2)}) {
                CHECK(t.frobenius(t.mul(x, y), 1) == t.mul(t.frobenius(x, 1), t.frobenius(y, 1)));
                CHECK(t.frobenius(t.add(x, y), 1) == t.add(t.frobenius(x, 1), t.frobenius(y, 1)));
            }
        }
        // elements of the embedded F_q are fixed by sigma
        for (u32 c = 0; c < t.q(); ++c) CHECK(t.frobenius(t.embed_base(c), 3) == t.embed_base(c));
    }
}

TEST_CASE("relative norm") {
    const Tower& t4 = get_tower(2, 1, 2);
    CHECK(t4.rel_norm(1, 1) == 1);
    // N(g) = g * g^2 = g^3 = 1 for g generating F_4*
    Elem g = t4.generator();
    CHECK(t4.rel_norm(g, 1) == t4.mul(g, t4.frobenius(g, 1)));
    CHECK(t4.rel_norm(g, 1) == 1);

    const Tower& t = get_tower(3, 1, 4);
    for (Elem x = 1; x < t.order(); x += 7) {
        for (Elem y = 1; y < t.order(); y += 11) {
            CHECK(t.rel_norm(t.mul(x, y), 1) == t.base().mul((u32)t.base_int(t.rel_norm(x, 1)),
                                                             (u32)t.base_int(t.rel_norm(y, 1))));
        }
        CHECK(t.subfield_member(t.rel_norm(x, 2), 2));  // lands in F_{q^2}
        CHECK(t.subfield_member(t.rel_norm(x, 1), 1));
    }
    CHECK_THROWS_AS(t.rel_norm(5, 3), ValidationError);  // 3 does not divide 4
}

TEST_CASE("relative trace") {
    const Tower& t4 = get_tower(2, 1, 2);
    CHECK(t4.rel_trace(0) == 0);
    Elem g = t4.generator();
    CHECK(t4.rel_trace(g) == t4.add(g, t4.frobenius(g, 1)));
    CHECK(t4.rel_trace(g) == 1);

    const Tower& t = get_tower(3, 1, 2);
    for (Elem x = 0; x < t.order(); ++x) {
        CHECK(t.subfield_member(t.rel_trace(x), 1));
        for (Elem y = 0; y < t.order(); ++y)
            CHECK(t.rel_trace(t.add(x, y)) == t.add(t.rel_trace(x), t.rel_trace(y)));
        // F_q-linearity
        for (u32 a = 0; a < t.q(); ++a)
            CHECK(t.rel_trace(t.mul(t.embed_base(a), x)) ==
                  t.mul(t.embed_base(a), t.rel_trace(x)));
    }
}

TEST_CASE("partial norms") {
    const Tower& t = get_tower(2, 1, 3);
    for (Elem mu = 0; mu < t.order(); ++mu) {
        CHECK(t.partial_norm(mu, 0) == 1);
        CHECK(t.partial_norm(mu, 2) == t.mul(mu, t.frobenius(mu, 1)));
        if (mu != 0) CHECK(t.partial_norm(mu, t.m()) == t.rel_norm(mu, 1));
        // cocycle N_{i+j}(mu) = N_i(mu) * sigma^i(N_j(mu))
        for (u64 i = 0; i <= 3; ++i)
            for (u64 j = 0; j <= 3; ++j)
                CHECK(t.partial_norm(mu, i + j) ==
                      t.mul(t.partial_norm(mu, i), t.frobenius(t.partial_norm(mu, j), i)));
    }
    const Tower& t9 = get_tower(3, 1, 2);
    Elem mu = t9.generator();
    CHECK(t9.partial_norm(mu, 2) == t9.mul(mu, t9.pow(mu, 3)));
}

TEST_CASE("subfield membership") {
    const Tower& t = get_tower(2, 1, 6);
    CHECK(t.subfield_member(0, 1));
    CHECK(t.subfield_member(0, 3));
    CHECK(t.subfield_member(1, 1));
    Elem g = t.generator();
    CHECK_FALSE(t.subfield_member(g, 1));
    CHECK_FALSE(t.subfield_member(g, 2));
    CHECK_FALSE(t.subfield_member(g, 3));
    CHECK(t.subfield_member(t.pow(g, 9), 3));  // g^9 has order dividing 7 = 2^3-1
    CHECK_THROWS_AS(t.subfield_member(g, 4), ValidationError);
    // count the F_8-copy
    u32 cnt = 0;
    for (Elem x = 0; x < t.order(); ++x) cnt += t.subfield_member(x, 3);
    CHECK(cnt == 8);
}

TEST_CASE("base coordinates round-trip on whole fields") {
    for (auto [p, e, m] : {std::array<u32, 3>{2, 1, 6}, {3, 1, 2}, {2, 2, 2}, {2, 2, 3}}) {
        const Tower& t = get_tower(p, e, m);
        for (Elem x = 0; x < t.order(); ++x) {
            auto c = t.to_base_coords(x);
            REQUIRE(c.size() == t.m());
            CHECK(t.from_base_coords(c) == x);
        }
        // embed/base_int round-trip and homomorphism
        for (u32 a = 0; a < t.q(); ++a) {
            CHECK(t.base_int(t.embed_base(a)) == a);
            for (u32 b = 0; b < t.q(); ++b) {
                CHECK(t.embed_base(t.base().mul(a, b)) == t.mul(t.embed_base(a), t.embed_base(b)));
                CHECK(t.embed_base(t.base().add(a, b)) == t.add(t.embed_base(a), t.embed_base(b)));
            }
        }
    }
}

TEST_CASE("subfield_norm between intermediate fields") {
    const Tower& t = get_tower(2, 1, 6);
    Elem g = t.generator();
    Elem a = t.pow(g, 9);  // in F_8
    Elem n = t.subfield_norm(a, 3, 1);
    CHECK(t.subfield_member(n, 1));
    CHECK(n == t.pow(a, 9));  // (2^3-1)... (8-1)/(2-1) = 7: a^{(q^3-1)/(q-1)}
    CHECK_THROWS_AS(t.subfield_norm(g, 3, 1), ValidationError);  // g not in F_8
}

TEST_CASE("subfield copy enumeration") {
    const Tower& t = get_tower(2, 1, 6);
    auto f8 = t.subfield_copy_elements(3, 1 << 20);
    CHECK(f8.size() == 8);
    for (Elem x : f8) CHECK(t.subfield_member(x, 3));
    // closed under multiplication
    for (Elem x : f8)
        for (Elem y : f8)
            CHECK(std::binary_search(f8.begin(), f8.end(), t.mul(x, y)));
}

TEST_CASE("subfield map embeds a standalone tower onto its copy") {
    const Tower& small = get_tower(2, 1, 2);
    const Tower& big = get_tower(2, 1, 6);
    SubfieldMap map(small, big, 1 << 20);
    std::set<Elem> image;
    for (Elem x = 0; x < small.order(); ++x) {
        Elem y = map.embed(x);
        CHECK(map.in_copy(y));
        CHECK(map.decompose(y) == x);
        image.insert(y);
        for (Elem z = 0; z < small.order(); ++z) {
            CHECK(map.embed(small.mul(x, z)) == big.mul(map.embed(x), map.embed(z)));
            CHECK(map.embed(small.add(x, z)) == big.add(map.embed(x), map.embed(z)));
        }
    }
    CHECK(image.size() == 4);
    CHECK_THROWS_AS(map.decompose(big.generator()), ValidationError);

    const Tower& s34 = get_tower(3, 1, 2);
    const Tower& b34 = get_tower(3, 1, 4);
    SubfieldMap map2(s34, b34, 1 << 20);
    for (Elem x = 0; x < s34.order(); ++x) CHECK(map2.decompose(map2.embed(x)) == x);
}

TEST_CASE("element arithmetic consistency between table and generic paths") {
    // same field built with and without tables must agree
    Tower tabled(3, 1, 4);
    Tower generic(3, 1, 4, /*table_limit=*/1);
    for (Elem x = 0; x < tabled.order(); x += 5)
        for (Elem y = 0; y < tabled.order(); y += 7) {
            CHECK(tabled.mul(x, y) == generic.mul(x, y));
            CHECK(tabled.add(x, y) == generic.add(x, y));
            if (y != 0) CHECK(tabled.mul(y, tabled.inv(y)) == 1);
            CHECK(tabled.frobenius(x, 1) == generic.frobenius(x, 1));
            CHECK(tabled.frobenius(x, 3) == generic.frobenius(x, 3));
        }
    for (Elem x = 1; x < tabled.order(); x += 11)
        CHECK(tabled.pow(x, 37) == generic.pow(x, 37));
}
