#include "sumrank/counting.hpp"

#include <algorithm>
#include <functional>

namespace sumrank {

BigInt big_pow(u64 base, u64 exp) {
    BigInt r = 1, b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

BigInt gaussian_binomial(u64 n, u64 k, u64 q) {
    if (k > n) return 0;
    BigInt num = 1, den = 1;
    for (u64 i = 0; i < k; ++i) {
        num *= big_pow(q, n - i) - 1;
        den *= big_pow(q, i + 1) - 1;
    }
    return num / den;
}

BigInt f_ell(const std::vector<u32>& u, u32 ell, u64 q) {
    u32 t = (u32)u.size();
    BigInt total = 0;
    std::vector<u32> v(t, 0);
    // recursive enumeration of v <= u with |v| = ell
    std::function<void(u32, u32, BigInt)> rec = [&](u32 i, u32 rem, BigInt acc) {
        if (i == t) {
            if (rem == 0) total += acc;
            return;
        }
        // remaining capacity check
        u32 cap = 0;
        for (u32 j = i; j < t; ++j) cap += u[j];
        if (cap < rem) return;
        for (u32 vi = 0; vi <= std::min(u[i], rem); ++vi) {
            u32 d = u[i] - vi;
            BigInt term = big_pow(q, (u64)d * (d - 1) / 2) * gaussian_binomial(u[i], vi, q);
            if (d & 1) term = -term;
            rec(i + 1, rem - vi, acc * term);
        }
    };
    rec(0, ell, 1);
    return total;
}

BigInt msrd_weight_formula(u64 q, u32 nprime, u32 mprime, u32 t, u32 d, u32 r) {
    if (nprime > mprime) throw ValidationError("requires n' <= m'");
    if (d < 1 || d > (u64)t * nprime) throw ValidationError("d out of range");
    if (r > (u64)t * nprime) throw ValidationError("r exceeds t*n'");
    if (r == 0) return 1;  // the zero word
    if (r < d) return 0;
    BigInt total = 0;
    std::vector<u32> u(t, 0);
    std::function<void(u32, u32)> rec = [&](u32 i, u32 rem) {
        if (i == t) {
            if (rem != 0) return;
            BigInt mult = 1;
            for (u32 j = 0; j < t; ++j) mult *= gaussian_binomial(nprime, u[j], q);
            BigInt inner = 0;
            for (u32 l = d; l <= r; ++l)
                inner += (big_pow(q, (u64)mprime * (l - d + 1)) - 1) * f_ell(u, l, q);
            total += mult * inner;
            return;
        }
        for (u32 ui = 0; ui <= std::min(nprime, rem); ++ui) {
            u[i] = ui;
            rec(i + 1, rem - ui);
        }
        u[i] = 0;
    };
    rec(0, r);
    return total;
}

SrgParams srg_formula_params(u64 q, u32 m, u32 k, u32 t) {
    if ((u64)m * k % 2 != 0) throw ValidationError("mk must be even");
    SrgParams P;
    BigInt qm = big_pow(q, m);
    BigInt half = big_pow(q, (u64)m * k / 2);
    BigInt halfm2 = big_pow(q, (u64)m * (k - 2) / 2);
    P.M = t * (half - 1) / (q - 1);
    P.w0 = t * (halfm2 - 1) / (q - 1);
    P.w1 = P.w0 + halfm2;
    P.v = big_pow(q, (u64)m * k);
    P.K = P.M * (qm - 1);
    BigInt prod = (P.M - P.w1) * (P.M - P.w0);
    P.lambda = P.K * P.K + 3 * P.K - qm * (1 + P.K) * (2 * P.M - P.w1 - P.w0) + qm * qm * prod;
    P.mu = qm * qm * prod / P.v;
    return P;
}

TwoWeightParams two_weight_formula_params(u64 q, u32 m, u32 k, u32 t) {
    if ((u64)m * k % 2 != 0) throw ValidationError("mk must be even");
    TwoWeightParams P;
    BigInt half = big_pow(q, (u64)m * k / 2);
    BigInt halfm2 = big_pow(q, (u64)m * (k - 2) / 2);
    BigInt qm = big_pow(q, m);
    P.M = t * (half - 1) / (q - 1);
    P.w0 = t * (halfm2 - 1) / (q - 1);
    P.w1 = (t - 1) * (halfm2 - 1) / (q - 1) + (halfm2 * q - 1) / (q - 1);
    BigInt num = (half - 1) * (big_pow(q, (u64)m * (k - 1)) - 1) -
                 (halfm2 - 1) * (big_pow(q, (u64)m * k) - 1);
    P.h1 = t * num / ((qm - 1) * (q - 1) * halfm2);
    P.h0 = (big_pow(q, (u64)m * k) - 1) / (qm - 1) - P.h1;
    P.d = P.M - P.w1;
    P.weight_low = P.M - P.w1;
    P.weight_high = P.M - P.w0;
    return P;
}

bool max_one_design_t_bound_holds(u64 q, u32 m, u32 k, u32 t) {
    BigInt lhs = BigInt(t) * (big_pow(q, m) - 1);
    BigInt rhs = BigInt(q - 1) * (big_pow(q, (u64)m * k / 2) + 1);
    return lhs <= rhs;
}

}  // namespace sumrank
