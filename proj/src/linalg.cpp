#include "sumrank/linalg.hpp"

#include <algorithm>

namespace sumrank {

QVec blow_up(const Tower& tw, const FVec& v) {
    QVec out((size_t)v.size() * tw.m());
    for (size_t i = 0; i < v.size(); ++i) tw.to_base_coords_into(v[i], out.data() + i * tw.m());
    return out;
}

u32 fq_rank(const Tower& tw, const FVec& v) {
    std::vector<QVec> rows;
    rows.reserve(v.size());
    for (Elem x : v) {
        QVec r(tw.m());
        tw.to_base_coords_into(x, r.data());
        rows.push_back(std::move(r));
    }
    return rref_rows(tw.base(), rows);
}

u32 fq_rank_vectors(const Tower& tw, const std::vector<FVec>& vecs) {
    std::vector<QVec> rows;
    rows.reserve(vecs.size());
    for (const auto& v : vecs) rows.push_back(blow_up(tw, v));
    return rref_rows(tw.base(), rows);
}

FqSubspace make_fq_subspace(const Tower& tw, u32 ambient_k, std::vector<FVec> basis) {
    FqSubspace U;
    U.tw = &tw;
    U.ambient_k = ambient_k;
    for (const auto& v : basis)
        if (v.size() != ambient_k) throw ValidationError("basis vector has wrong length");
    U.basis = std::move(basis);
    for (const auto& v : U.basis) U.blown.push_back(blow_up(tw, v));
    auto rows = U.blown;
    if (rref_rows(tw.base(), rows) != U.basis.size())
        throw ValidationError("basis vectors are not F_q-independent");
    return U;
}

FqSubspace fq_span(const Tower& tw, u32 ambient_k, const std::vector<FVec>& gens) {
    std::vector<FVec> basis;
    std::vector<QVec> blown_rows;
    for (const auto& g : gens) {
        auto bg = blow_up(tw, g);
        auto trial = blown_rows;
        trial.push_back(bg);
        if (rref_rows(tw.base(), trial) == blown_rows.size() + 1) {
            basis.push_back(g);
            blown_rows.push_back(bg);
        }
    }
    return make_fq_subspace(tw, ambient_k, std::move(basis));
}

std::vector<QVec> blow_subspace(const Tower& tw, u32 ambient_k,
                                const std::vector<FVec>& fqm_basis) {
    // F_q-basis of W = span_{F_{q^m}}(w_r): the vectors beta_j * w_r with
    // beta_j the recorded F_q-basis of F_{q^m} (powers of z).
    Elem z = tw.em() > 1 ? (Elem)tw.p() : (Elem)0;
    std::vector<QVec> out;
    out.reserve(fqm_basis.size() * tw.m());
    for (const auto& w : fqm_basis) {
        if (w.size() != ambient_k) throw ValidationError("subspace basis vector length mismatch");
        FVec cur = w;
        for (u32 j = 0; j < tw.m(); ++j) {
            out.push_back(blow_up(tw, cur));
            if (j + 1 < tw.m())
                for (auto& c : cur) c = tw.mul(c, z);
        }
    }
    return out;
}

u32 intersect_dim_blown(const FqSubspace& U, const std::vector<QVec>& W_blown) {
    u32 wdim = 0;
    {
        auto wrows = W_blown;
        wdim = rref_rows(U.tw->base(), wrows);
    }
    return intersect_dim_blown_known(U, W_blown, wdim);
}

u32 intersect_dim_blown_known(const FqSubspace& U, const std::vector<QVec>& W_blown, u32 wdim) {
    std::vector<QVec> stack;
    stack.reserve(U.blown.size() + W_blown.size());
    stack.insert(stack.end(), U.blown.begin(), U.blown.end());
    stack.insert(stack.end(), W_blown.begin(), W_blown.end());
    u32 total = rref_rows(U.tw->base(), stack);
    return U.dim() + wdim - total;
}

u32 intersect_dim(const FqSubspace& U, const std::vector<FVec>& W_fqm_basis) {
    for (const auto& w : W_fqm_basis)
        if (w.size() != U.ambient_k) throw ValidationError("ambient dimension mismatch");
    if (W_fqm_basis.empty()) return 0;
    return intersect_dim_blown(U, blow_subspace(*U.tw, U.ambient_k, W_fqm_basis));
}

std::vector<QVec> intersect_blown(const SmallField& F, const std::vector<QVec>& A,
                                  const std::vector<QVec>& B) {
    if (A.empty() || B.empty()) return {};
    u32 n = (u32)A[0].size();
    // left-kernel relations c*A + d*B = 0 give intersection elements c*A.
    std::vector<QVec> stacked = A;
    stacked.insert(stacked.end(), B.begin(), B.end());
    // transpose
    std::vector<QVec> tr(n, QVec(stacked.size()));
    for (u32 i = 0; i < stacked.size(); ++i)
        for (u32 j = 0; j < n; ++j) tr[j][i] = stacked[i][j];
    auto rels = right_kernel(F, tr, (u32)stacked.size());
    std::vector<QVec> inter;
    for (const auto& rel : rels) {
        QVec v(n, 0);
        for (u32 i = 0; i < A.size(); ++i) {
            if (rel[i] == 0) continue;
            for (u32 j = 0; j < n; ++j) v[j] = F.add(v[j], F.mul(rel[i], A[i][j]));
        }
        inter.push_back(std::move(v));
    }
    u32 r = rref_rows(F, inter);
    inter.resize(r);
    return inter;
}

bool in_span_blown(const SmallField& F, const std::vector<QVec>& space, const QVec& v) {
    auto rows = space;
    u32 r0 = rref_rows(F, rows);
    rows.resize(r0);
    rows.push_back(v);
    return rref_rows(F, rows) == r0;
}

// ---- hyperplanes ---------------------------------------------------------

u64 hyperplane_count(const Tower& tw, u32 k) {
    // (order^k - 1)/(order - 1); throws if order^k overflows 2^63
    u64 total = 0, pw = 1;
    for (u32 i = 0; i < k; ++i) {
        total += pw;
        if (pw > (u64(1) << 62) / tw.order()) throw GuardExceeded("hyperplane count overflow");
        pw *= tw.order();
    }
    return total;
}

FVec hyperplane_normal(const Tower& tw, u32 k, u64 index) {
    // normals with first nonzero coordinate 1, grouped by leading position
    u64 block = 1;
    for (u32 i = 0; i < k - 1; ++i) block *= tw.order();
    for (u32 lead = 0; lead < k; ++lead) {
        if (index < block) {
            FVec v(k, 0);
            v[lead] = 1;
            for (u32 j = lead + 1; j < k; ++j) {
                u64 digit = index % tw.order();
                index /= tw.order();
                v[j] = digit;
            }
            return v;
        }
        index -= block;
        block /= tw.order();
    }
    throw ValidationError("hyperplane index out of range");
}

std::vector<FVec> hyperplane_kernel_basis(const Tower& tw, const FVec& normal) {
    u32 k = (u32)normal.size();
    u32 lead = 0;
    while (lead < k && normal[lead] == 0) ++lead;
    if (lead == k) throw ValidationError("zero normal vector");
    Elem ilead = tw.inv(normal[lead]);
    std::vector<FVec> basis;
    for (u32 j = 0; j < k; ++j) {
        if (j == lead) continue;
        FVec v(k, 0);
        v[j] = 1;
        v[lead] = tw.neg(tw.mul(normal[j], ilead));
        basis.push_back(std::move(v));
    }
    return basis;
}

// ---- rref subspace stream ------------------------------------------------

SubspaceStream::SubspaceStream(const Tower& tw, u32 k, u32 h)
    : SubspaceStream(tw.order(), k, h) {}

SubspaceStream::SubspaceStream(u64 field_order, u32 k, u32 h)
    : order_(field_order), k_(k), h_(h) {
    if (h > k) throw ValidationError("subspace dimension exceeds ambient");
    if (h == 0) {
        done_ = false;  // single empty subspace handled in next()
        return;
    }
    pivots_.resize(h);
    for (u32 i = 0; i < h; ++i) pivots_[i] = i;
    reset_cells();
}

void SubspaceStream::reset_cells() {
    free_cells_.clear();
    for (u32 r = 0; r < h_; ++r)
        for (u32 c = pivots_[r] + 1; c < k_; ++c) {
            bool is_pivot_col = false;
            for (u32 j = 0; j < h_; ++j)
                if (pivots_[j] == c) is_pivot_col = true;
            if (!is_pivot_col) free_cells_.push_back({r, c});
        }
    free_vals_.assign(free_cells_.size(), 0);
    fresh_ = true;
}

bool SubspaceStream::advance_pivots() {
    // next combination of h pivot columns in lexicographic order
    int i = (int)h_ - 1;
    while (i >= 0 && pivots_[i] == k_ - h_ + i) --i;
    if (i < 0) return false;
    ++pivots_[i];
    for (u32 j = i + 1; j < h_; ++j) pivots_[j] = pivots_[j - 1] + 1;
    reset_cells();
    return true;
}

bool SubspaceStream::next(std::vector<FVec>& out) {
    if (h_ == 0) {
        if (done_) return false;
        done_ = true;
        out.clear();
        return true;
    }
    if (done_) return false;
    if (!fresh_) {
        // odometer over free cell values
        size_t d = 0;
        while (d < free_vals_.size() && free_vals_[d] == order_ - 1) {
            free_vals_[d] = 0;
            ++d;
        }
        if (d == free_vals_.size()) {
            if (!advance_pivots()) {
                done_ = true;
                return false;
            }
        } else {
            ++free_vals_[d];
        }
    }
    fresh_ = false;
    out.assign(h_, FVec(k_, 0));
    for (u32 r = 0; r < h_; ++r) out[r][pivots_[r]] = 1;
    for (size_t i = 0; i < free_cells_.size(); ++i)
        out[free_cells_[i].first][free_cells_[i].second] = free_vals_[i];
    return true;
}

u64 SubspaceStream::count() const {
    // [k choose h]_{order}; guarded against u64 overflow
    __uint128_t num = 1, den = 1;
    u64 Q = order_;
    for (u32 i = 0; i < h_; ++i) {
        __uint128_t t = 1;
        for (u32 j = 0; j < k_ - i; ++j) {
            t *= Q;
            if (t > ((__uint128_t)1 << 100)) throw GuardExceeded("subspace count overflow");
        }
        num *= t - 1;
        __uint128_t s = 1;
        for (u32 j = 0; j < i + 1; ++j) s *= Q;
        den *= s - 1;
        if (num > ((__uint128_t)1 << 126)) throw GuardExceeded("subspace count overflow");
    }
    __uint128_t res = num / den;
    if (res > ((__uint128_t)1 << 62)) throw GuardExceeded("subspace count overflow");
    return (u64)res;
}

// ---- combination odometers ------------------------------------------------

void for_each_nonzero_combination(const Tower& tw, const std::vector<Elem>& basis,
                                  const std::function<void(Elem)>& fn) {
    // An F_q-combination equals an F_p-combination over {w^a * b_i}; the
    // F_q-int of y^a is p^a (a < e, no reduction).
    u32 p = tw.p();
    size_t nd = basis.size() * tw.e();
    std::vector<Elem> pbasis;
    pbasis.reserve(nd);
    for (Elem b : basis)
        for (u32 a = 0; a < tw.e(); ++a) {
            u32 ya = 1;
            for (u32 i = 0; i < a; ++i) ya *= p;
            pbasis.push_back(tw.mul(b, tw.embed_base(ya)));
        }
    std::vector<u32> cnt(nd, 0);
    Elem acc = 0;
    u64 total = 1;
    for (size_t i = 0; i < nd; ++i) total *= p;
    for (u64 it = 1; it < total; ++it) {
        size_t d = 0;
        while (true) {
            cnt[d]++;
            acc = tw.add(acc, pbasis[d]);
            if (cnt[d] < p) break;
            cnt[d] = 0;
            ++d;
        }
        fn(acc);
    }
}

void for_each_nonzero_vector_combination(const Tower& tw, const std::vector<FVec>& basis,
                                         const std::function<void(const FVec&)>& fn) {
    if (basis.empty()) return;
    u32 p = tw.p();
    u32 k = (u32)basis[0].size();
    size_t nd = basis.size() * tw.e();
    std::vector<FVec> pbasis;
    pbasis.reserve(nd);
    for (const auto& b : basis)
        for (u32 a = 0; a < tw.e(); ++a) {
            u32 ya = 1;
            for (u32 i = 0; i < a; ++i) ya *= p;
            Elem scalar = tw.embed_base(ya);
            FVec v(k);
            for (u32 j = 0; j < k; ++j) v[j] = tw.mul(b[j], scalar);
            pbasis.push_back(std::move(v));
        }
    std::vector<u32> cnt(nd, 0);
    FVec acc(k, 0);
    u64 total = 1;
    for (size_t i = 0; i < nd; ++i) total *= p;
    for (u64 it = 1; it < total; ++it) {
        size_t d = 0;
        while (true) {
            cnt[d]++;
            for (u32 j = 0; j < k; ++j) acc[j] = tw.add(acc[j], pbasis[d][j]);
            if (cnt[d] < p) break;
            cnt[d] = 0;
            ++d;
        }
        fn(acc);
    }
}

FVec canonical_point(const Tower& tw, FVec v) {
    for (auto c : v)
        if (c != 0) {
            Elem ic = tw.inv(c);
            for (auto& x : v) x = tw.mul(x, ic);
            return v;
        }
    throw ValidationError("zero vector has no projective representative");
}

u64 point_key(const Tower& tw, const FVec& v) {
    u64 key = 0;
    for (size_t i = v.size(); i-- > 0;) {
        if (key > ((u64(1) << 62) / tw.order())) throw GuardExceeded("point key overflow");
        key = key * tw.order() + v[i];
    }
    return key;
}

FVec point_from_key(const Tower& tw, u32 k, u64 key) {
    FVec v(k);
    for (u32 i = 0; i < k; ++i) {
        v[i] = key % tw.order();
        key /= tw.order();
    }
    return v;
}

}  // namespace sumrank
