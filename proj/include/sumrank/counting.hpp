#ifndef SUMRANK_COUNTING_HPP
#define SUMRANK_COUNTING_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "sumrank/util.hpp"

namespace sumrank {

using BigInt = boost::multiprecision::cpp_int;

BigInt big_pow(u64 base, u64 exp);

// Gaussian binomial [n choose k]_q, exact.
BigInt gaussian_binomial(u64 n, u64 k, u64 q);

// f_ell(u) = sum_{v <= u, |v| = ell} prod_i (-1)^(u_i - v_i)
//            q^binom(u_i - v_i, 2) [u_i choose v_i]_q
BigInt f_ell(const std::vector<u32>& u, u32 ell, u64 q);

// Number of weight-r codewords of any MSRD code in Mat(n, m', F_q) with
// t equal blocks, n' = min block rank, m' = max, minimum distance d:
//   W_r = sum over dimension vectors u (|u| = r, u_i <= n') of
//         prod_i [n' choose u_i]_q * sum_{l=d}^{r} (q^{m'(l-d+1)} - 1) f_l(u).
// The outer lattice sum collapses to dimension vectors because the summand
// depends only on dim(W); the subspace-tuple count is the product of
// Gaussian binomials. Requires n' <= m' and d <= r <= t*n'; returns 0 for
// 1 <= r < d.
BigInt msrd_weight_formula(u64 q, u32 nprime, u32 mprime, u32 t, u32 d, u32 r);

// Parameters of the strongly regular graph attached to a maximum 1-design
// union (q, design field degree m, ambient k, t blocks).
struct SrgParams {
    BigInt v, K, lambda, mu;
    BigInt M, w0, w1;
};
SrgParams srg_formula_params(u64 q, u32 m, u32 k, u32 t);

// Parameters of the associated two-weight Hamming code.
struct TwoWeightParams {
    BigInt M, w0, w1, h0, h1, d;
    BigInt weight_low, weight_high;  // M - w1, M - w0
};
TwoWeightParams two_weight_formula_params(u64 q, u32 m, u32 k, u32 t);

// t-bound for maximum 1-designs: t * (q^m - 1) <= (q - 1) * (q^{mk/2} + 1).
bool max_one_design_t_bound_holds(u64 q, u32 m, u32 k, u32 t);

}  // namespace sumrank

#endif
