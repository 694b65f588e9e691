#include "sumrank/codes.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace sumrank {

BlockShape make_shape(std::vector<u32> lengths) {
    if (lengths.empty()) throw ValidationError("shape must have at least one block");
    for (size_t i = 0; i + 1 < lengths.size(); ++i)
        if (lengths[i] < lengths[i + 1])
            throw ValidationError("block lengths must be sorted nonincreasing");
    for (u32 n : lengths)
        if (n < 1) throw ValidationError("block lengths must be >= 1");
    return BlockShape{std::move(lengths)};
}

SumRankCode make_code(const Tower& tw, BlockShape shape, std::vector<FVec> G) {
    u32 N = shape.N();
    for (const auto& row : G) {
        if (row.size() != N) throw ValidationError("generator row length mismatch");
        for (Elem x : row) tw.check_elem(x);
    }
    if (G.size() > N) throw ValidationError("k exceeds N");
    if (!G.empty()) {
        auto rows = G;
        if (rref_rows(tw, rows) != G.size())
            throw ValidationError("generator matrix does not have full row rank");
    }
    return SumRankCode{&tw, std::move(shape), std::move(G)};
}

u32 sum_rank_weight(const Tower& tw, const BlockShape& shape, const FVec& x) {
    if (x.size() != shape.N()) throw ValidationError("vector length mismatch");
    u32 w = 0;
    u32 off = 0;
    for (u32 n : shape.lengths) {
        FVec blk(x.begin() + off, x.begin() + off + n);
        w += fq_rank(tw, blk);
        off += n;
    }
    return w;
}

u64 message_space_size(const SumRankCode& C) {
    u64 s = 1;
    for (u32 i = 0; i < C.k(); ++i) {
        if (s > (u64(1) << 62) / C.tw->order()) throw GuardExceeded("message space overflow");
        s *= C.tw->order();
    }
    return s;
}

void for_each_codeword(const SumRankCode& C, u64 lo, u64 hi,
                       const std::function<void(const FVec&, u64)>& fn) {
    const Tower& tw = *C.tw;
    u32 k = C.k(), N = C.shape.N();
    u64 order = tw.order();
    if (k == 0) {
        if (lo == 0 && hi > 0) fn(FVec(N, 0), 0);
        return;
    }
    std::vector<Elem> msg(k, 0);
    FVec cw(N, 0);
    // decode lo into message digits and build the starting codeword
    u64 idx = lo;
    for (u32 i = 0; i < k; ++i) {
        msg[i] = idx % order;
        idx /= order;
    }
    for (u32 i = 0; i < k; ++i) {
        if (msg[i] == 0) continue;
        for (u32 j = 0; j < N; ++j) cw[j] = tw.add(cw[j], tw.mul(msg[i], C.G[i][j]));
    }
    for (u64 it = lo; it < hi; ++it) {
        fn(cw, it);
        if (it + 1 == hi) break;
        // odometer step with incremental codeword update
        u32 d = 0;
        while (msg[d] == order - 1) {
            Elem delta = tw.sub(0, order - 1);
            for (u32 j = 0; j < N; ++j) cw[j] = tw.add(cw[j], tw.mul(delta, C.G[d][j]));
            msg[d] = 0;
            ++d;
        }
        Elem old = msg[d];
        msg[d] = old + 1;
        Elem delta = tw.sub(msg[d], old);
        for (u32 j = 0; j < N; ++j) cw[j] = tw.add(cw[j], tw.mul(delta, C.G[d][j]));
    }
}

MinDistanceResult min_distance_bruteforce(const SumRankCode& C, const Guards& g, unsigned jobs) {
    if (C.k() == 0) throw ValidationError("zero code has no minimum distance");
    u64 total = message_space_size(C);
    check_guard(total, g.codewords, "codeword enumeration");
    struct Best {
        u32 d = UINT32_MAX;
        u64 idx = UINT64_MAX;
    };
    std::vector<Best> bests(std::max(1u, jobs));
    parallel_ranges(total, jobs, [&](u64 lo, u64 hi, unsigned ti) {
        Best local;
        for_each_codeword(C, lo, hi, [&](const FVec& cw, u64 idx) {
            if (idx == 0) return;  // zero word
            u32 w = sum_rank_weight(*C.tw, C.shape, cw);
            if (w < local.d || (w == local.d && idx < local.idx)) local = {w, idx};
        });
        bests[ti] = local;
    });
    Best best;
    for (const auto& b : bests)
        if (b.d < best.d || (b.d == best.d && b.idx < best.idx)) best = b;
    MinDistanceResult r;
    r.d = best.d;
    r.method = "bruteforce";
    // rebuild the witness codeword
    for_each_codeword(C, best.idx, best.idx + 1, [&](const FVec& cw, u64) { r.witness = cw; });
    return r;
}

std::vector<FqSubspace> block_column_spans(const SumRankCode& C) {
    const Tower& tw = *C.tw;
    auto nd = is_nondegenerate(C);
    if (!nd.nondegenerate)
        throw ValidationError("degenerate code: " + nd.note);
    std::vector<FqSubspace> out;
    u32 off = 0;
    for (u32 n : C.shape.lengths) {
        std::vector<FVec> cols;
        for (u32 c = 0; c < n; ++c) {
            FVec col(C.k());
            for (u32 r = 0; r < C.k(); ++r) col[r] = C.G[r][off + c];
            cols.push_back(std::move(col));
        }
        out.push_back(make_fq_subspace(tw, C.k(), std::move(cols)));
        off += n;
    }
    return out;
}

MinDistanceResult min_distance_geometric(const SumRankCode& C, const Guards& g, unsigned jobs) {
    const Tower& tw = *C.tw;
    if (C.k() == 0) throw ValidationError("zero code has no minimum distance");
    auto U = block_column_spans(C);
    u64 nh = hyperplane_count(tw, C.k());
    check_guard(nh, g.hyperplanes, "hyperplane enumeration");
    struct Best {
        u32 max_sum = 0;
        u64 idx = UINT64_MAX;
    };
    std::vector<Best> bests(std::max(1u, jobs));
    u32 m = tw.m(), k = C.k();
    parallel_ranges(nh, jobs, [&](u64 lo, u64 hi, unsigned ti) {
        Best local;
        for (u64 i = lo; i < hi; ++i) {
            FVec normal = hyperplane_normal(tw, k, i);
            u32 wdim = k > 1 ? m * (k - 1) : 0;
            std::vector<QVec> wb;
            if (k > 1) wb = blow_subspace(tw, k, hyperplane_kernel_basis(tw, normal));
            u32 s = 0;
            for (const auto& Ui : U) s += intersect_dim_blown_known(Ui, wb, wdim);
            if (s > local.max_sum || (s == local.max_sum && i < local.idx)) local = {s, i};
        }
        bests[ti] = local;
    });
    Best best;
    for (const auto& b : bests)
        if (b.max_sum > best.max_sum || (b.max_sum == best.max_sum && b.idx < best.idx))
            best = b;
    MinDistanceResult r;
    r.d = C.shape.N() - best.max_sum;
    r.method = "geometric";
    r.witness_normal = hyperplane_normal(tw, k, best.idx);
    return r;
}

u32 singleton_dmax(const BlockShape& shape, u32 m, u32 k) {
    if (k == 0) throw ValidationError("zero code");
    u32 t = shape.t();
    u32 wcap = shape.weight_cap(m);
    u32 dmax = 0;
    for (u32 d = 1; d <= wcap; ++d) {
        u32 rem = d - 1, j = 0;  // j is 0-based here
        while (j < t && rem >= std::min(m, shape.lengths[j])) {
            rem -= std::min(m, shape.lengths[j]);
            ++j;
        }
        if (j >= t) break;  // delta would exceed its range
        u64 tail = 0;
        for (u32 i = j; i < t; ++i) tail += shape.lengths[i];
        u64 bound_exp = (u64)m * tail - (u64)std::max(m, shape.lengths[j]) * rem;
        if ((u64)m * k <= bound_exp) dmax = d;
    }
    if (dmax == 0) throw ValidationError("no feasible distance under the Singleton bound");
    return dmax;
}

u32 singleton_dmax_closed(const BlockShape& shape, u32 m, u32 k) {
    u32 t = shape.t();
    bool equal = true;
    for (u32 i = 1; i < t; ++i)
        if (shape.lengths[i] != shape.lengths[0]) equal = false;
    if (m >= shape.lengths[0]) return shape.N() - k + 1;
    if (equal && shape.lengths[0] >= m) {
        u32 n = shape.lengths[0];
        // largest d with mk <= n(tm - d + 1)
        u64 quot = ((u64)m * k + n - 1) / n;  // ceil(mk/n)
        return (u32)((u64)t * m + 1 - quot);
    }
    throw ValidationError("closed Singleton form requires m >= n_1 or equal blocks >= m");
}

MsrdCertificate is_msrd(const SumRankCode& C, const Guards& g, const std::string& method,
                        unsigned jobs) {
    MsrdCertificate cert;
    cert.bound = singleton_dmax(C.shape, C.tw->m(), C.k());
    std::string mth = method;
    if (mth == "auto") {
        u64 total = 1;
        bool small = true;
        for (u32 i = 0; i < C.k() && small; ++i) {
            if (total > g.codewords / C.tw->order()) small = false;
            else total *= C.tw->order();
        }
        mth = small ? "bruteforce" : "geometric";
    }
    MinDistanceResult md;
    if (mth == "bruteforce")
        md = min_distance_bruteforce(C, g, jobs);
    else if (mth == "geometric")
        md = min_distance_geometric(C, g, jobs);
    else
        throw ValidationError("unknown min-distance method: " + mth);
    cert.d = md.d;
    cert.method = md.method;
    cert.witness_min_word = md.witness;
    cert.witness_normal = md.witness_normal;
    cert.msrd = (cert.d == cert.bound);
    return cert;
}

SumRankCode dual_code(const SumRankCode& C) {
    const Tower& tw = *C.tw;
    u32 N = C.shape.N();
    if (C.k() == 0) {
        // dual of the zero code is the full space
        std::vector<FVec> G(N, FVec(N, 0));
        for (u32 i = 0; i < N; ++i) G[i][i] = 1;
        return make_code(tw, C.shape, std::move(G));
    }
    auto ker = right_kernel(tw, C.G, N);
    return make_code(tw, C.shape, std::move(ker));
}

NondegeneracyReport is_nondegenerate(const SumRankCode& C) {
    NondegeneracyReport rep;
    if (C.k() == C.shape.N()) {
        rep.nondegenerate = false;
        rep.note = "k = N: the dual is the zero code, so d(dual) >= 2 is vacuously false";
        return rep;
    }
    if (C.k() == 0) {
        rep.nondegenerate = false;
        rep.note = "zero code";
        return rep;
    }
    const Tower& tw = *C.tw;
    u32 off = 0;
    for (u32 b = 0; b < C.shape.t(); ++b) {
        u32 n = C.shape.lengths[b];
        std::vector<QVec> blown_cols;
        for (u32 c = 0; c < n; ++c) {
            FVec col(C.k());
            for (u32 r = 0; r < C.k(); ++r) col[r] = C.G[r][off + c];
            blown_cols.push_back(blow_up(tw, col));
        }
        auto ker = right_kernel(tw.base(), [&] {
            // transpose: relations among columns are the right kernel of the
            // matrix whose rows are the blown columns, transposed
            std::vector<QVec> tr(blown_cols[0].size(), QVec(n));
            for (u32 i = 0; i < n; ++i)
                for (u32 j = 0; j < blown_cols[0].size(); ++j) tr[j][i] = blown_cols[i][j];
            return tr;
        }(), n);
        if (!ker.empty()) {
            rep.nondegenerate = false;
            rep.offending_block = (int)b;
            rep.witness_combination = ker[0];
            rep.note = "block " + std::to_string(b) + " has F_q-dependent columns";
            return rep;
        }
        off += n;
    }
    rep.nondegenerate = true;
    rep.note = "all blocks have F_q-independent columns";
    return rep;
}

std::vector<Elem> default_mus(const Tower& tw, u32 t) {
    std::vector<Elem> mus;
    std::vector<Elem> norms;
    for (Elem x = 1; x < tw.order() && mus.size() < t; ++x) {
        Elem nx = tw.rel_norm(x, 1);
        if (std::find(norms.begin(), norms.end(), nx) == norms.end()) {
            mus.push_back(x);
            norms.push_back(nx);
        }
    }
    if (mus.size() < t) throw ValidationError("not enough distinct norms: t exceeds q-1");
    return mus;
}

std::vector<Elem> default_betas(const Tower& tw, u32 n) {
    std::vector<Elem> betas;
    for (Elem x = 1; x < tw.order() && betas.size() < n; ++x) {
        auto trial = betas;
        trial.push_back(x);
        std::vector<QVec> rows;
        for (Elem b : trial) {
            QVec r(tw.m());
            tw.to_base_coords_into(b, r.data());
            rows.push_back(std::move(r));
        }
        if (rref_rows(tw.base(), rows) == trial.size()) betas.push_back(x);
    }
    if (betas.size() < n) throw ValidationError("not enough F_q-independent elements: n exceeds m");
    return betas;
}

namespace {

void validate_lrs_params(const Tower& tw, u32 k, const std::vector<Elem>& mus,
                         const std::vector<Elem>& betas) {
    u32 t = (u32)mus.size(), n = (u32)betas.size();
    if (n == 0 || t == 0) throw ValidationError("empty parameter lists");
    if (n > tw.m()) throw ValidationError("n exceeds m");
    if ((u64)t > tw.q() - 1) throw ValidationError("t exceeds q-1");
    if (k < 1 || k > (u64)t * n) throw ValidationError("k out of range [1, tn]");
    // betas F_q-independent
    std::vector<QVec> rows;
    for (Elem b : betas) {
        QVec r(tw.m());
        tw.to_base_coords_into(b, r.data());
        rows.push_back(std::move(r));
    }
    if (rref_rows(tw.base(), rows) != n)
        throw ValidationError("betas not F_q-linearly independent");
    // pairwise distinct norms
    std::vector<Elem> norms;
    for (Elem mu : mus) {
        if (mu == 0) throw ValidationError("mu parameters must be nonzero");
        Elem nm = tw.rel_norm(mu, 1);
        if (std::find(norms.begin(), norms.end(), nm) != norms.end())
            throw ValidationError("duplicate norms among mu parameters");
        norms.push_back(nm);
    }
}

}  // namespace

SumRankCode lrs_code(const Tower& tw, u32 k, const std::vector<Elem>& mus,
                     const std::vector<Elem>& betas) {
    validate_lrs_params(tw, k, mus, betas);
    u32 t = (u32)mus.size(), n = (u32)betas.size();
    std::vector<FVec> G;
    for (u32 i = 0; i < k; ++i) G.push_back(multipoint_ev(skew_monomial(tw, i), mus, betas));
    return make_code(tw, make_shape(std::vector<u32>(t, n)), std::move(G));
}

SumRankCode tlrs_code(const Tower& tw, u32 k, const std::vector<Elem>& mus,
                      const std::vector<Elem>& betas, Elem eta) {
    validate_lrs_params(tw, k, mus, betas);
    // subgroup G of F_q* generated by the norms lambda_i
    const SmallField& B = tw.base();
    std::vector<u32> lambdas;
    for (Elem mu : mus) lambdas.push_back(tw.base_int(tw.rel_norm(mu, 1)));
    std::vector<u32> group{1};
    bool grew = true;
    while (grew) {
        grew = false;
        for (u32 g : std::vector<u32>(group))
            for (u32 l : lambdas) {
                u32 v = B.mul(g, l);
                if (std::find(group.begin(), group.end(), v) == group.end()) {
                    group.push_back(v);
                    grew = true;
                }
            }
    }
    std::sort(group.begin(), group.end());
    u32 sign = 1;
    if (((u64)k * tw.m()) % 2 == 1) sign = B.neg(1);
    u32 cond = eta == 0 ? 0 : B.mul(tw.base_int(tw.rel_norm(eta, 1)), sign);
    if (eta != 0 && std::find(group.begin(), group.end(), cond) != group.end()) {
        std::string gs;
        for (u32 g : group) gs += (gs.empty() ? "" : ",") + std::to_string(g);
        throw ValidationError("eta norm condition violated: N(eta)(-1)^{km} = " +
                              std::to_string(cond) + " lies in the norm subgroup G = {" + gs +
                              "}");
    }
    std::vector<FVec> G;
    {
        // g_0 = 1 + eta x^k
        std::vector<Elem> c(k + 1, 0);
        c[0] = 1;
        c[k] = eta;
        G.push_back(multipoint_ev(make_skew_poly(tw, c), mus, betas));
    }
    for (u32 i = 1; i < k; ++i) G.push_back(multipoint_ev(skew_monomial(tw, i), mus, betas));
    u32 t = (u32)mus.size(), n = (u32)betas.size();
    return make_code(tw, make_shape(std::vector<u32>(t, n)), std::move(G));
}

WeightDistribution weight_distribution_bruteforce(const SumRankCode& C, const Guards& g,
                                                  unsigned jobs) {
    u64 total = message_space_size(C);
    check_guard(total, g.codewords, "codeword enumeration");
    u32 wcap = C.shape.weight_cap(C.tw->m());
    std::vector<std::vector<u64>> hists(std::max(1u, jobs), std::vector<u64>(wcap + 1, 0));
    parallel_ranges(total, jobs, [&](u64 lo, u64 hi, unsigned ti) {
        auto& h = hists[ti];
        for_each_codeword(C, lo, hi, [&](const FVec& cw, u64) {
            h[sum_rank_weight(*C.tw, C.shape, cw)]++;
        });
    });
    WeightDistribution W;
    W.provenance = "bruteforce";
    W.counts.assign(wcap + 1, 0);
    for (const auto& h : hists)
        for (u32 r = 0; r <= wcap; ++r) W.counts[r] += h[r];
    return W;
}

WeightDistribution weight_distribution_formula(u64 q, u32 nprime, u32 mprime, u32 t, u32 d) {
    WeightDistribution W;
    W.provenance = "formula";
    u32 wcap = t * nprime;
    W.counts.assign(wcap + 1, 0);
    W.counts[0] = 1;
    for (u32 r = 1; r <= wcap; ++r) W.counts[r] = msrd_weight_formula(q, nprime, mprime, t, d, r);
    return W;
}

u32 generalized_weight(const SumRankCode& C, u32 r, const Guards& g) {
    const Tower& tw = *C.tw;
    u32 k = C.k();
    if (r < 1 || r > k) throw ValidationError("r out of range [1, k]");
    if (r == k) return C.shape.N();
    auto U = block_column_spans(C);
    u32 h = k - r;
    SubspaceStream stream(tw, k, h);
    check_guard(stream.count(), g.subspaces, "subspace enumeration");
    u32 m = tw.m();
    u32 max_sum = 0;
    std::vector<FVec> basis;
    while (stream.next(basis)) {
        auto wb = blow_subspace(tw, k, basis);
        u32 s = 0;
        for (const auto& Ui : U) s += intersect_dim_blown_known(Ui, wb, m * h);
        max_sum = std::max(max_sum, s);
    }
    return C.shape.N() - max_sum;
}

std::vector<u32> generalized_weight_ladder(const SumRankCode& C, const Guards& g) {
    std::vector<u32> out;
    for (u32 r = 1; r <= C.k(); ++r) out.push_back(generalized_weight(C, r, g));
    return out;
}

SumRankCode apply_isometry(const SumRankCode& C, const std::vector<std::vector<QVec>>& As,
                           const std::vector<Elem>& as, const std::vector<u32>& perm) {
    const Tower& tw = *C.tw;
    u32 t = C.shape.t();
    if (As.size() != t || as.size() != t || perm.size() != t)
        throw ValidationError("isometry parameter count mismatch");
    std::vector<bool> seen(t, false);
    for (u32 i = 0; i < t; ++i) {
        if (perm[i] >= t || seen[perm[i]]) throw ValidationError("invalid block permutation");
        seen[perm[i]] = true;
        if (C.shape.lengths[perm[i]] != C.shape.lengths[i])
            throw ValidationError("permutation mixes blocks of unequal length");
        if (as[i] == 0) throw ValidationError("block scalars must be nonzero");
        u32 n = C.shape.lengths[i];
        if (As[i].size() != n) throw ValidationError("A_i has wrong dimensions");
        for (const auto& row : As[i])
            if (row.size() != n) throw ValidationError("A_i has wrong dimensions");
        auto rows = As[i];
        if (rref_rows(tw.base(), rows) != n) throw ValidationError("A_i is singular over F_q");
    }
    std::vector<FVec> G(C.k(), FVec(C.shape.N(), 0));
    for (u32 r = 0; r < C.k(); ++r) {
        for (u32 i = 0; i < t; ++i) {
            u32 n = C.shape.lengths[i];
            u32 src = C.shape.offset(perm[i]);
            u32 dst = C.shape.offset(i);
            for (u32 l = 0; l < n; ++l) {
                Elem acc = 0;
                for (u32 s = 0; s < n; ++s) {
                    u32 a = As[i][s][l];
                    if (a == 0) continue;
                    acc = tw.add(acc, tw.mul(C.G[r][src + s], tw.embed_base(a)));
                }
                G[r][dst + l] = tw.mul(as[i], acc);
            }
        }
    }
    return make_code(tw, C.shape, std::move(G));
}

// ---- bounded-weight enumeration ------------------------------------------

namespace {

// All vectors y in F_{q^m}^n whose entries span an F_q-subspace of dimension
// exactly r, grouped per subspace; fn(y, contribution) where contribution is
// sum_l y_l * cols[l] for the given syndrome columns.
struct BlockCandidates {
    std::vector<FVec> vectors;
    std::vector<FVec> syndromes;
};

BlockCandidates block_candidates(const Tower& tw, u32 n, u32 r,
                                 const std::vector<FVec>& cols, u64 guard) {
    BlockCandidates out;
    u32 m = tw.m();
    u32 srows = cols.empty() ? 0 : (u32)cols[0].size();
    if (r == 0) {
        out.vectors.push_back(FVec(n, 0));
        out.syndromes.push_back(FVec(srows, 0));
        return out;
    }
    if (r > m || r > n) return out;  // rank r impossible
    SubspaceStream stream(tw, m, r);  // F_q-subspaces of F_{q^m} = F_q^m
    std::vector<FVec> rref;
    u64 per_space = 1;
    for (u64 i = 0; i < (u64)r * n; ++i) {
        per_space *= tw.q();
        if (per_space > guard) throw GuardExceeded("low-weight enumeration");
    }
    while (stream.next(rref)) {
        // rref rows are F_q-coordinate vectors; convert to field elements
        std::vector<Elem> sbasis;
        for (const auto& row : rref) {
            std::vector<u32> coords(row.begin(), row.end());
            sbasis.push_back(tw.from_base_coords(coords));
        }
        // odometer over y in S^n, keep those with full span
        std::vector<u32> digits((size_t)r * n, 0);  // F_q-coeff of basis j at position l
        FVec y(n, 0);
        u64 total = per_space;
        std::vector<std::vector<Elem>> scaled(r);  // scaled[j][c] = c-th F_q multiple of sbasis[j]
        for (u32 j = 0; j < r; ++j) {
            scaled[j].resize(tw.q());
            for (u64 c = 0; c < tw.q(); ++c)
                scaled[j][c] = tw.mul(sbasis[j], tw.embed_base((u32)c));
        }
        for (u64 it = 1; it < total; ++it) {
            size_t d = 0;
            while (digits[d] == tw.q() - 1) digits[d++] = 0;
            digits[d]++;
            // positions touched by the step are { dd % n : dd <= d }
            u32 maxpos = (u32)std::min<size_t>(d, n - 1);
            for (u32 ll = 0; ll <= maxpos; ++ll) {
                Elem vv = 0;
                for (u32 j = 0; j < r; ++j) vv = tw.add(vv, scaled[j][digits[(size_t)j * n + ll]]);
                y[ll] = vv;
            }
            if (fq_rank(tw, y) != r) continue;
            FVec syn(srows, 0);
            for (u32 ll = 0; ll < n; ++ll) {
                if (y[ll] == 0) continue;
                for (u32 s = 0; s < srows; ++s) syn[s] = tw.add(syn[s], tw.mul(y[ll], cols[ll][s]));
            }
            out.vectors.push_back(y);
            out.syndromes.push_back(std::move(syn));
        }
    }
    return out;
}

}  // namespace

std::optional<FVec> find_word_of_weight_at_most(const Tower& tw, const BlockShape& shape,
                                                const std::vector<FVec>& parity_rows, u32 cap,
                                                const Guards& g) {
    u32 t = shape.t();
    u32 nrows = (u32)parity_rows.size();
    // per-block syndrome columns
    std::vector<std::vector<std::vector<FVec>>> cands(t);  // [block][rank] -> candidates
    std::vector<std::vector<std::vector<FVec>>> synds(t);
    for (u32 b = 0; b < t; ++b) {
        u32 n = shape.lengths[b], off = shape.offset(b);
        std::vector<FVec> cols(n, FVec(nrows));
        for (u32 l = 0; l < n; ++l)
            for (u32 r = 0; r < nrows; ++r) cols[l][r] = parity_rows[r][off + l];
        u32 rmax = std::min({cap, tw.m(), n});
        cands[b].resize(rmax + 1);
        synds[b].resize(rmax + 1);
        for (u32 r = 0; r <= rmax; ++r) {
            auto bc = block_candidates(tw, n, r, cols, g.codewords);
            cands[b][r] = std::move(bc.vectors);
            synds[b][r] = std::move(bc.syndromes);
        }
    }
    // recursive combination over blocks with total rank <= cap
    FVec word(shape.N(), 0);
    FVec syn(nrows, 0);
    std::optional<FVec> found;
    std::function<void(u32, u32, bool)> rec = [&](u32 b, u32 budget, bool nonzero) {
        if (found) return;
        if (b == t) {
            if (!nonzero) return;
            for (u32 s = 0; s < nrows; ++s)
                if (syn[s] != 0) return;
            found = word;
            return;
        }
        u32 off = shape.offset(b);
        u32 rmax = std::min<u32>((u32)cands[b].size() - 1, budget);
        for (u32 r = 0; r <= rmax && !found; ++r) {
            for (size_t ci = 0; ci < cands[b][r].size() && !found; ++ci) {
                const FVec& y = cands[b][r][ci];
                const FVec& s = synds[b][r][ci];
                for (u32 l = 0; l < shape.lengths[b]; ++l) word[off + l] = y[l];
                FVec saved = syn;
                for (u32 j = 0; j < nrows; ++j) syn[j] = tw.add(syn[j], s[j]);
                rec(b + 1, budget - r, nonzero || r > 0);
                syn = saved;
            }
        }
        for (u32 l = 0; l < shape.lengths[b]; ++l) word[off + l] = 0;
    };
    rec(0, cap, false);
    return found;
}

std::optional<FVec> find_word_of_weight(const Tower& tw, const BlockShape& shape,
                                        const std::vector<FVec>& parity_rows, u32 w,
                                        const Guards& g) {
    u32 t = shape.t();
    u32 nrows = (u32)parity_rows.size();
    u32 m = tw.m();
    // enumerate rank profiles (r_1..r_t) with sum w
    std::vector<u32> prof(t, 0);
    std::optional<FVec> found;
    const SmallField& B = tw.base();

    std::function<void(u32, u32)> profiles = [&](u32 b, u32 rem) {
        if (found) return;
        if (b == t) {
            if (rem) return;
            std::vector<std::vector<FVec>> bases(t);
            std::function<void(u32)> pick = [&](u32 bi) {
                if (found) return;
                if (bi == t) {
                    // solve for words with entries in the chosen subspaces
                    // unknowns: coords c_{b,l,j}; columns blown to F_q^{m*nrows}
                    std::vector<QVec> cols_t;  // transpose rows for kernel
                    std::vector<std::array<u32, 3>> unknowns;
                    std::vector<std::vector<Elem>> sbasis(t);
                    for (u32 bb = 0; bb < t; ++bb) {
                        for (const auto& row : bases[bb]) {
                            std::vector<u32> coords(row.begin(), row.end());
                            sbasis[bb].push_back(tw.from_base_coords(coords));
                        }
                    }
                    std::vector<QVec> matrix_rows;  // m*nrows rows
                    u32 ncols_sys = 0;
                    for (u32 bb = 0; bb < t; ++bb) ncols_sys += prof[bb] * shape.lengths[bb];
                    matrix_rows.assign((size_t)m * nrows, QVec(ncols_sys, 0));
                    u32 colidx = 0;
                    for (u32 bb = 0; bb < t; ++bb) {
                        u32 off = shape.offset(bb);
                        for (u32 l = 0; l < shape.lengths[bb]; ++l)
                            for (u32 j = 0; j < prof[bb]; ++j) {
                                unknowns.push_back({bb, l, j});
                                for (u32 r = 0; r < nrows; ++r) {
                                    Elem v = tw.mul(parity_rows[r][off + l], sbasis[bb][j]);
                                    u32 coords[64];
                                    tw.to_base_coords_into(v, coords);
                                    for (u32 mm = 0; mm < m; ++mm)
                                        matrix_rows[(size_t)r * m + mm][colidx] = coords[mm];
                                }
                                ++colidx;
                            }
                    }
                    auto ker = right_kernel(B, matrix_rows, ncols_sys);
                    if (ker.empty()) return;
                    // enumerate F_q-combinations of the kernel basis
                    u64 cap = std::min<u64>(g.codewords, u64(1) << 22);
                    u64 total = 1;
                    for (size_t i = 0; i < ker.size(); ++i) {
                        total *= tw.q();
                        if (total > cap) {
                            total = cap;
                            break;
                        }
                    }
                    std::vector<u32> digits(ker.size(), 0);
                    for (u64 it = 1; it < total && !found; ++it) {
                        size_t d = 0;
                        while (digits[d] == tw.q() - 1) digits[d++] = 0;
                        digits[d]++;
                        QVec sol(ncols_sys, 0);
                        for (size_t ki = 0; ki < ker.size(); ++ki) {
                            if (digits[ki] == 0) continue;
                            for (u32 c = 0; c < ncols_sys; ++c)
                                sol[c] = B.add(sol[c], B.mul(digits[ki], ker[ki][c]));
                        }
                        FVec word(shape.N(), 0);
                        for (size_t ui = 0; ui < unknowns.size(); ++ui) {
                            auto [bb, l, j] = unknowns[ui];
                            if (sol[ui] == 0) continue;
                            u32 off = shape.offset(bb);
                            word[off + l] = tw.add(
                                word[off + l], tw.mul(sbasis[bb][j], tw.embed_base(sol[ui])));
                        }
                        // exact per-block ranks
                        bool ok = true;
                        for (u32 bb = 0; bb < t && ok; ++bb) {
                            FVec blk(word.begin() + shape.offset(bb),
                                     word.begin() + shape.offset(bb) + shape.lengths[bb]);
                            if (fq_rank(tw, blk) != prof[bb]) ok = false;
                        }
                        if (ok) found = word;
                    }
                    return;
                }
                if (prof[bi] == 0) {
                    bases[bi].clear();
                    pick(bi + 1);
                    return;
                }
                SubspaceStream st(tw, m, prof[bi]);
                std::vector<FVec> basis;
                while (st.next(basis) && !found) {
                    bases[bi] = basis;
                    pick(bi + 1);
                }
            };
            pick(0);
            return;
        }
        u32 rmax = std::min({rem, m, shape.lengths[b]});
        for (u32 r = 0; r <= rmax && !found; ++r) {
            prof[b] = r;
            profiles(b + 1, rem - r);
        }
        prof[b] = 0;
    };
    profiles(0, w);
    return found;
}

MsrdCertificate is_msrd_by_exclusion(const SumRankCode& C, const std::vector<FVec>& parity_rows,
                                     const Guards& g) {
    const Tower& tw = *C.tw;
    // validate that parity_rows annihilate C
    for (const auto& pr : parity_rows) {
        if (pr.size() != C.shape.N()) throw ValidationError("parity row length mismatch");
        for (const auto& row : C.G) {
            Elem s = 0;
            for (u32 j = 0; j < C.shape.N(); ++j) s = tw.add(s, tw.mul(row[j], pr[j]));
            if (s != 0) throw ValidationError("parity rows do not annihilate the code");
        }
    }
    if (parity_rows.size() + C.k() != C.shape.N())
        throw ValidationError("parity rank does not complement code dimension");
    MsrdCertificate cert;
    cert.bound = singleton_dmax(C.shape, tw.m(), C.k());
    cert.method = "low-weight-exclusion";
    auto low = find_word_of_weight_at_most(tw, C.shape, parity_rows, cert.bound - 1, g);
    if (low) {
        cert.msrd = false;
        cert.d = sum_rank_weight(tw, C.shape, *low);
        cert.witness_min_word = *low;
        return cert;
    }
    cert.d = cert.bound;  // d <= bound is the Singleton cardinality bound
    cert.msrd = true;
    auto wit = find_word_of_weight(tw, C.shape, parity_rows, cert.bound, g);
    if (wit) cert.witness_min_word = *wit;
    return cert;
}

}  // namespace sumrank
