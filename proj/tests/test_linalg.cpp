#include <doctest.h>

#include <random>
#include <set>

#include "sumrank/counting.hpp"
#include "sumrank/linalg.hpp"

using namespace sumrank;

namespace {

// Independent F_q-rank oracle: the span of the entries has q^rank elements.
u32 span_size_rank(const Tower& tw, const FVec& v) {
    std::set<Elem> span{0};
    bool grew = true;
    while (grew) {
        grew = false;
        for (Elem s : std::set<Elem>(span))
            for (Elem x : v)
                for (u32 c = 1; c < tw.q(); ++c) {
                    Elem y = tw.add(s, tw.mul(tw.embed_base(c), x));
                    if (span.insert(y).second) grew = true;
                }
    }
    u64 size = span.size();
    u32 r = 0;
    while (size > 1) {
        size /= tw.q();
        ++r;
    }
    return r;
}

}  // namespace

TEST_CASE("fq_rank basics and oracle agreement") {
    const Tower& t = get_tower(2, 1, 2);
    CHECK(fq_rank(t, FVec{0, 0, 0}) == 0);
    CHECK(fq_rank(t, FVec{1, 1, 1, 1}) == 1);
    Elem g = t.generator();
    CHECK(fq_rank(t, FVec{1, g}) == 2);

    const Tower& t9 = get_tower(3, 1, 2);
    std::mt19937_64 rng(42);
    for (int rep = 0; rep < 1000; ++rep) {
        FVec v(3);
        for (auto& x : v) x = rng() % t9.order();
        CHECK(fq_rank(t9, v) == span_size_rank(t9, v));
    }
}

TEST_CASE("rref and rank") {
    const Tower& t = get_tower(3, 1, 2);
    std::vector<FVec> id(4, FVec(4, 0));
    for (int i = 0; i < 4; ++i) id[i][i] = 1;
    CHECK(rank_of(t, id) == 4);
    std::vector<FVec> zero(3, FVec(5, 0));
    CHECK(rank_of(t, zero) == 0);
    // rank(M) == rank(M^T) on random 5x7 samples
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 25; ++rep) {
        std::vector<FVec> M(5, FVec(7));
        for (auto& row : M)
            for (auto& x : row) x = rng() % t.order();
        std::vector<FVec> MT(7, FVec(5));
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 7; ++j) MT[j][i] = M[i][j];
        CHECK(rank_of(t, M) == rank_of(t, MT));
    }
}

TEST_CASE("right kernel is the solution space") {
    const Tower& t = get_tower(2, 1, 3);
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<FVec> M(2, FVec(4));
        for (auto& row : M)
            for (auto& x : row) x = rng() % t.order();
        auto rank = rank_of(t, M);
        auto ker = right_kernel(t, M, 4);
        CHECK(ker.size() == 4 - rank);
        for (const auto& y : ker)
            for (const auto& row : M) {
                Elem s = 0;
                for (int j = 0; j < 4; ++j) s = t.add(s, t.mul(row[j], y[j]));
                CHECK(s == 0);
            }
    }
}

TEST_CASE("blow_up basics and F_q-linearity") {
    const Tower& t = get_tower(3, 1, 2);
    CHECK(blow_up(t, FVec{0, 0}) == QVec{0, 0, 0, 0});
    // basis starts with 1: blow_up((1)) = (1, 0, ..., 0)
    QVec e1 = blow_up(t, FVec{1});
    CHECK(e1[0] == 1);
    for (size_t i = 1; i < e1.size(); ++i) CHECK(e1[i] == 0);
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        FVec u(3), v(3);
        for (auto& x : u) x = rng() % 9;
        for (auto& x : v) x = rng() % 9;
        u32 a = rng() % 3, b = rng() % 3;
        FVec w(3);
        for (int j = 0; j < 3; ++j)
            w[j] = t.add(t.mul(t.embed_base(a), u[j]), t.mul(t.embed_base(b), v[j]));
        auto bu = blow_up(t, u), bv = blow_up(t, v), bw = blow_up(t, w);
        for (size_t j = 0; j < bw.size(); ++j)
            CHECK(bw[j] == t.base().add(t.base().mul(a, bu[j]), t.base().mul(b, bv[j])));
    }
}

TEST_CASE("intersect_dim examples") {
    const Tower& t = get_tower(2, 1, 2);
    Elem g = t.generator();
    // U = F_2-span{(1,0),(0,1)} in F_4^2
    auto U = make_fq_subspace(t, 2, {FVec{1, 0}, FVec{0, 1}});
    // W = full space
    std::vector<FVec> full{{1, 0}, {0, 1}};
    CHECK(intersect_dim(U, full) == 2);
    // W = <(1,0)>_{F_4}
    std::vector<FVec> line{{1, 0}};
    CHECK(intersect_dim(U, line) == 1);
    // U subset of W
    auto U2 = make_fq_subspace(t, 2, {FVec{1, 0}, FVec{g, 0}});
    CHECK(intersect_dim(U2, line) == 2);
}

TEST_CASE("intersect_dim agrees with a membership-counting oracle") {
    const Tower& t = get_tower(3, 1, 2);
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 40; ++rep) {
        // random U of dim <= 3 in F_9^2, random W of dim 1
        std::vector<FVec> gens;
        for (int i = 0; i < 3; ++i) {
            FVec v(2);
            for (auto& x : v) x = rng() % 9;
            gens.push_back(v);
        }
        auto U = fq_span(t, 2, gens);
        FVec wv(2);
        do {
            for (auto& x : wv) x = rng() % 9;
        } while (wv == FVec{0, 0});
        std::vector<FVec> W{wv};
        // oracle: count u in U with u in W (rank test over F_{q^m})
        u64 members = 0;
        u32 wr = rank_of(t, W);
        for_each_nonzero_vector_combination(t, U.basis, [&](const FVec& u) {
            auto rows = W;
            rows.push_back(u);
            if (rank_of(t, rows) == wr) ++members;
        });
        u64 expected_size = 1;
        for (u32 i = 0; i < intersect_dim(U, W); ++i) expected_size *= 3;
        CHECK(members + 1 == expected_size);
    }
}

TEST_CASE("hyperplane enumeration counts and canonicality") {
    const Tower& t4 = get_tower(2, 1, 2);
    CHECK(hyperplane_count(t4, 2) == 5);
    const Tower& t16 = get_tower(2, 1, 4);
    CHECK(hyperplane_count(t16, 3) == 273);
    const Tower& t9 = get_tower(3, 1, 2);
    CHECK(hyperplane_count(t9, 4) == 820);
    std::set<FVec> seen;
    for (u64 i = 0; i < 273; ++i) {
        FVec n = hyperplane_normal(t16, 3, i);
        // first nonzero coordinate is 1
        u32 lead = 0;
        while (n[lead] == 0) ++lead;
        CHECK(n[lead] == 1);
        seen.insert(n);
        auto basis = hyperplane_kernel_basis(t16, n);
        CHECK(basis.size() == 2);
        for (const auto& b : basis) {
            Elem s = 0;
            for (int j = 0; j < 3; ++j) s = t16.add(s, t16.mul(n[j], b[j]));
            CHECK(s == 0);
        }
    }
    CHECK(seen.size() == 273);
}

TEST_CASE("subspace stream yields the Gaussian-binomial count of rref bases") {
    const Tower& t = get_tower(2, 1, 2);
    for (u32 k = 2; k <= 3; ++k)
        for (u32 h = 0; h <= k; ++h) {
            SubspaceStream s(t, k, h);
            BigInt expect = gaussian_binomial(k, h, t.order());
            CHECK(BigInt(s.count()) == expect);
            u64 n = 0;
            std::vector<FVec> basis;
            std::set<std::vector<FVec>> uniq;
            while (s.next(basis)) {
                ++n;
                uniq.insert(basis);
                if (h > 0) CHECK(rank_of(t, basis) == h);
            }
            CHECK(BigInt(n) == expect);
            CHECK(uniq.size() == n);
        }
}

TEST_CASE("canonical points") {
    const Tower& t = get_tower(3, 1, 2);
    FVec v{0, 3, 6};
    auto c = canonical_point(t, v);
    CHECK(c[0] == 0);
    CHECK(c[1] == 1);
    // all projective points of PG(1,9): 10
    std::set<u64> pts;
    for (Elem a = 0; a < 9; ++a)
        for (Elem b = 0; b < 9; ++b) {
            if (a == 0 && b == 0) continue;
            pts.insert(point_key(t, canonical_point(t, FVec{a, b})));
        }
    CHECK(pts.size() == 10);
}
