#ifndef SUMRANK_CODES_HPP
#define SUMRANK_CODES_HPP

#include <optional>
#include <string>

#include "sumrank/counting.hpp"
#include "sumrank/linalg.hpp"
#include "sumrank/skewpoly.hpp"

namespace sumrank {

// Block shape n = (n_1, ..., n_t), sorted nonincreasing.
struct BlockShape {
    std::vector<u32> lengths;
    u32 t() const { return (u32)lengths.size(); }
    u32 N() const {
        u32 s = 0;
        for (u32 n : lengths) s += n;
        return s;
    }
    u32 offset(u32 block) const {
        u32 s = 0;
        for (u32 i = 0; i < block; ++i) s += lengths[i];
        return s;
    }
    // max possible sum-rank weight: sum of min(m, n_i)
    u32 weight_cap(u32 m) const {
        u32 s = 0;
        for (u32 n : lengths) s += std::min(m, n);
        return s;
    }
};

BlockShape make_shape(std::vector<u32> lengths);

// F_{q^m}-linear sum-rank metric code given by a full-row-rank generator
// matrix, partitioned per shape. k = 0 encodes the zero code.
struct SumRankCode {
    const Tower* tw = nullptr;
    BlockShape shape;
    std::vector<FVec> G;  // k rows of length N
    u32 k() const { return (u32)G.size(); }
};

SumRankCode make_code(const Tower& tw, BlockShape shape, std::vector<FVec> G);

// w(x) = sum over blocks of the F_q-rank of the block entries.
u32 sum_rank_weight(const Tower& tw, const BlockShape& shape, const FVec& x);

// order^k, guarded against overflow past 2^62.
u64 message_space_size(const SumRankCode& C);

// Visits codewords for message indices in [lo, hi) in canonical message
// order (plain odometer over F_{q^m}^k).
void for_each_codeword(const SumRankCode& C, u64 lo, u64 hi,
                       const std::function<void(const FVec&, u64)>& fn);

struct MinDistanceResult {
    u32 d = 0;
    FVec witness;         // codeword of weight d (bruteforce) or empty
    FVec witness_normal;  // extremal hyperplane normal (geometric) or empty
    std::string method;
};

MinDistanceResult min_distance_bruteforce(const SumRankCode& C, const Guards& g,
                                          unsigned jobs = 1);
// d = N - max_H sum_i dim(U_i ∩ H) over hyperplanes, U_i the block column
// spans. Requires a nondegenerate code.
MinDistanceResult min_distance_geometric(const SumRankCode& C, const Guards& g,
                                         unsigned jobs = 1);

// Largest d admitted by the Singleton cardinality bound (the j, delta form,
// checked arithmetically for the given shape).
u32 singleton_dmax(const BlockShape& shape, u32 m, u32 k);
// Closed two-case form; throws unless its hypotheses hold.
u32 singleton_dmax_closed(const BlockShape& shape, u32 m, u32 k);

struct MsrdCertificate {
    bool msrd = false;
    u32 d = 0, bound = 0;
    std::string method;
    FVec witness_min_word;
    FVec witness_normal;
};

MsrdCertificate is_msrd(const SumRankCode& C, const Guards& g,
                        const std::string& method = "auto", unsigned jobs = 1);

// MSRD verification without codeword enumeration: parity_rows generate the
// dual of C; d >= bound via exhaustive exclusion of words of weight
// < bound, d <= bound from the cardinality bound, plus an explicit witness
// word of weight exactly bound when one is found.
MsrdCertificate is_msrd_by_exclusion(const SumRankCode& C,
                                     const std::vector<FVec>& parity_rows, const Guards& g);

// Kernel of G under the blockwise standard inner product; dim N - k.
SumRankCode dual_code(const SumRankCode& C);

struct NondegeneracyReport {
    bool nondegenerate = false;
    int offending_block = -1;
    QVec witness_combination;  // F_q-combination of block columns summing to 0
    std::string note;
};
NondegeneracyReport is_nondegenerate(const SumRankCode& C);

// Block column spans U_i (the system of the code, as raw subspaces);
// validates nondegeneracy.
std::vector<FqSubspace> block_column_spans(const SumRankCode& C);

// Linearized Reed-Solomon code: rows are multipoint evaluations of
// 1, x, ..., x^{k-1}; requires n <= m, t <= q-1, 1 <= k <= tn, betas
// F_q-independent, pairwise distinct norms among the mus.
SumRankCode lrs_code(const Tower& tw, u32 k, const std::vector<Elem>& mus,
                     const std::vector<Elem>& betas);

// Twisted variant: evaluation of {f_0 + ... + f_{k-1} x^{k-1} + eta f_0 x^k};
// additionally requires N(eta)(-1)^{km} outside the subgroup of F_q*
// generated by the norms of the mus. eta = 0 gives exactly lrs_code.
SumRankCode tlrs_code(const Tower& tw, u32 k, const std::vector<Elem>& mus,
                      const std::vector<Elem>& betas, Elem eta);

// First t canonical-order elements with pairwise distinct norms / first n
// F_q-independent elements, for deterministic default parameters.
std::vector<Elem> default_mus(const Tower& tw, u32 t);
std::vector<Elem> default_betas(const Tower& tw, u32 n);

struct WeightDistribution {
    std::vector<BigInt> counts;  // counts[r] = number of codewords of weight r
    std::string provenance;      // "bruteforce" | "formula"
};

WeightDistribution weight_distribution_bruteforce(const SumRankCode& C, const Guards& g,
                                                  unsigned jobs = 1);
// Full distribution from the closed formula (W_0 = 1, W_r = 0 below d).
WeightDistribution weight_distribution_formula(u64 q, u32 nprime, u32 mprime, u32 t, u32 d);

// r-th generalized sum-rank weight via exhaustive (k-r)-subspace scan.
u32 generalized_weight(const SumRankCode& C, u32 r, const Guards& g);
std::vector<u32> generalized_weight_ladder(const SumRankCode& C, const Guards& g);

// Sum-rank isometry (A_i in GL(n_i, F_q), a_i nonzero, pi a block permutation
// preserving lengths): block i of the image is a_i * x_{pi(i)} * A_i.
SumRankCode apply_isometry(const SumRankCode& C, const std::vector<std::vector<QVec>>& As,
                           const std::vector<Elem>& as, const std::vector<u32>& perm);

// Enumerates vectors of sum-rank weight <= cap satisfying
// parity * y^T = 0; returns the first nonzero one found (nullopt if none).
std::optional<FVec> find_word_of_weight_at_most(const Tower& tw, const BlockShape& shape,
                                                const std::vector<FVec>& parity_rows, u32 cap,
                                                const Guards& g);
// Finds a word of exact weight w in the code annihilated by parity_rows.
std::optional<FVec> find_word_of_weight(const Tower& tw, const BlockShape& shape,
                                        const std::vector<FVec>& parity_rows, u32 w,
                                        const Guards& g);

}  // namespace sumrank

#endif
