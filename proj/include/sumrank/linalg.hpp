#ifndef SUMRANK_LINALG_HPP
#define SUMRANK_LINALG_HPP

#include <vector>

#include "sumrank/field.hpp"

namespace sumrank {

using FVec = std::vector<Elem>;  // vector over F_{q^m}
using QVec = std::vector<u32>;   // vector over F_q

// ---- generic exact Gaussian elimination -------------------------------
// Field must provide add/sub/mul/inv/is_zero/one/zero over element type E.
// Pivoting: first row with a nonzero entry in the current column; the
// resulting rref is unique regardless.

template <class Field, class E>
u32 rref_rows(const Field& f, std::vector<std::vector<E>>& rows,
              std::vector<u32>* pivot_cols = nullptr) {
    if (rows.empty()) return 0;
    u32 ncols = (u32)rows[0].size();
    u32 r = 0;
    for (u32 col = 0; col < ncols && r < rows.size(); ++col) {
        u32 piv = r;
        while (piv < rows.size() && f.is_zero(rows[piv][col])) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        E iv = f.inv(rows[r][col]);
        for (u32 c = col; c < ncols; ++c) rows[r][c] = f.mul(rows[r][c], iv);
        for (u32 i = 0; i < rows.size(); ++i) {
            if (i == r || f.is_zero(rows[i][col])) continue;
            E fac = rows[i][col];
            for (u32 c = col; c < ncols; ++c)
                rows[i][c] = f.sub(rows[i][c], f.mul(fac, rows[r][c]));
        }
        if (pivot_cols) pivot_cols->push_back(col);
        ++r;
    }
    return r;
}

template <class Field, class E>
u32 rank_of(const Field& f, std::vector<std::vector<E>> rows) {
    return rref_rows(f, rows);
}

// Basis of { y : M y^T = 0 } (right kernel).
template <class Field, class E>
std::vector<std::vector<E>> right_kernel(const Field& f, std::vector<std::vector<E>> rows,
                                         u32 ncols) {
    std::vector<u32> pivots;
    rref_rows(f, rows, &pivots);
    std::vector<bool> is_pivot(ncols, false);
    for (u32 c : pivots) is_pivot[c] = true;
    std::vector<std::vector<E>> basis;
    for (u32 fc = 0; fc < ncols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<E> v(ncols, f.zero());
        v[fc] = f.one();
        for (u32 i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(rows[i][fc]);
        basis.push_back(std::move(v));
    }
    return basis;
}

// ---- blow-ups and F_q ranks --------------------------------------------

// Coordinates of each entry over the tower's recorded F_q-basis of F_{q^m},
// concatenated. F_q-linear and injective.
QVec blow_up(const Tower& tw, const FVec& v);

// dim_{F_q} of the span of the entries of v.
u32 fq_rank(const Tower& tw, const FVec& v);

// F_q-rank of a set of vectors in F_{q^m}^k (rank of their blow-ups).
u32 fq_rank_vectors(const Tower& tw, const std::vector<FVec>& vecs);

// ---- F_q-subspaces of F_{q^m}^k ----------------------------------------

struct FqSubspace {
    const Tower* tw = nullptr;
    u32 ambient_k = 0;
    std::vector<FVec> basis;  // F_q-independent vectors
    std::vector<QVec> blown;  // cached blow-ups, each of length m*k
    u32 dim() const { return (u32)basis.size(); }
};

// Validates F_q-independence of the given basis.
FqSubspace make_fq_subspace(const Tower& tw, u32 ambient_k, std::vector<FVec> basis);

// Reduces a generating set to a subspace (picks an F_q-basis greedily).
FqSubspace fq_span(const Tower& tw, u32 ambient_k, const std::vector<FVec>& gens);

// F_q-basis (blown rows) of the F_{q^m}-subspace spanned by fqm_basis:
// the blow-ups of beta^j * w for each basis vector w and j < m.
std::vector<QVec> blow_subspace(const Tower& tw, u32 ambient_k,
                                const std::vector<FVec>& fqm_basis);

// dim_{F_q}(U ∩ W) computed in the blown-up picture:
// dim U + dim W - rank of the stacked blown bases.
u32 intersect_dim_blown(const FqSubspace& U, const std::vector<QVec>& W_blown);
// Variant for scans that already know dim_{F_q} of the blown subspace.
u32 intersect_dim_blown_known(const FqSubspace& U, const std::vector<QVec>& W_blown, u32 wdim);
u32 intersect_dim(const FqSubspace& U, const std::vector<FVec>& W_fqm_basis);

// Basis (blown rows) of the intersection of two blown F_q-subspaces.
std::vector<QVec> intersect_blown(const SmallField& F, const std::vector<QVec>& A,
                                  const std::vector<QVec>& B);

// Membership of a blown vector in a blown subspace.
bool in_span_blown(const SmallField& F, const std::vector<QVec>& space, const QVec& v);

// ---- hyperplane / subspace streams --------------------------------------

// Hyperplanes of F_{q^m}^k indexed by their canonical normal vector (first
// nonzero coordinate = 1). Index ranges split cleanly for parallel scans.
u64 hyperplane_count(const Tower& tw, u32 k);
FVec hyperplane_normal(const Tower& tw, u32 k, u64 index);
std::vector<FVec> hyperplane_kernel_basis(const Tower& tw, const FVec& normal);

// Stream of h-dimensional subspaces of F^k over a field of the given order,
// as canonical rref bases in lexicographic pivot order. Cell values are the
// canonical integers of the coefficient field: construct with a Tower for
// F_{q^m}-subspaces, or with tw.q() for F_q-subspaces (rows then hold
// F_q-ints).
class SubspaceStream {
public:
    SubspaceStream(const Tower& tw, u32 k, u32 h);
    SubspaceStream(u64 field_order, u32 k, u32 h);
    // Fills `basis_out` with h rref rows; false when exhausted.
    bool next(std::vector<FVec>& basis_out);
    u64 count() const;  // Gaussian binomial [k choose h]_order, guarded at 2^62

private:
    u64 order_;
    u32 k_, h_;
    std::vector<u32> pivots_;
    std::vector<std::pair<u32, u32>> free_cells_;
    std::vector<Elem> free_vals_;
    bool done_ = false, fresh_ = true;
    void reset_cells();
    bool advance_pivots();
};

// Odometer over all F_q-linear combinations of `basis`; calls fn(value) for
// every element of the span except 0 (q^dim - 1 calls), reusing partial sums.
void for_each_nonzero_combination(const Tower& tw, const std::vector<Elem>& basis,
                                  const std::function<void(Elem)>& fn);

// Same over vectors: visits every nonzero vector of the F_q-span.
void for_each_nonzero_vector_combination(const Tower& tw, const std::vector<FVec>& basis,
                                         const std::function<void(const FVec&)>& fn);

// Canonical projective representative: scale so the first nonzero
// coordinate is 1. v must be nonzero.
FVec canonical_point(const Tower& tw, FVec v);

// Encodes a vector as sum v_i * order^i; guards against overflow.
u64 point_key(const Tower& tw, const FVec& v);
FVec point_from_key(const Tower& tw, u32 k, u64 key);

}  // namespace sumrank

#endif
