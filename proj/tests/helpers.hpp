#ifndef SUMRANK_TEST_HELPERS_HPP
#define SUMRANK_TEST_HELPERS_HPP

#include <random>

#include "sumrank/codes.hpp"

namespace sumrank::testing {

// Rejection-samples a random code with full-rank generator; optionally
// nondegenerate, optionally with nondegenerate dual as well.
inline SumRankCode random_code(const Tower& tw, const BlockShape& shape, u32 k,
                               std::mt19937_64& rng, bool need_nondegenerate = true,
                               bool need_dual_nondegenerate = false) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<FVec> G(k, FVec(shape.N()));
        for (auto& row : G)
            for (auto& x : row) x = rng() % tw.order();
        SumRankCode C;
        try {
            C = make_code(tw, shape, std::move(G));
        } catch (const ValidationError&) {
            continue;
        }
        if (need_nondegenerate && !is_nondegenerate(C).nondegenerate) continue;
        if (need_dual_nondegenerate && !is_nondegenerate(dual_code(C)).nondegenerate) continue;
        return C;
    }
    throw std::runtime_error("random_code: rejection sampling failed");
}

}  // namespace sumrank::testing

#endif
