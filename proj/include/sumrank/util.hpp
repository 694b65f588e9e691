#ifndef SUMRANK_UTIL_HPP
#define SUMRANK_UTIL_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace sumrank {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Invalid parameters / violated construction conditions. The message names
// the condition that failed.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration guard was exceeded. The message names the guard.
struct GuardExceeded : std::runtime_error {
    explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A search that the paper asserts must succeed came up empty.
struct SearchExhausted : std::runtime_error {
    explicit SearchExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration guards. All limits are configurable; the defaults match the
// library documentation.
struct Guards {
    u64 hyperplanes = 10'000'000;
    u64 codewords = u64(1) << 24;
    u64 points = 10'000'000;
    u64 subspaces = 10'000'000;
    u64 graph_vertices = u64(1) << 16;
    u64 element_enumeration = u64(1) << 21;
};

inline void check_guard(u64 needed, u64 limit, const char* guard_name) {
    if (needed > limit)
        throw GuardExceeded(std::string(guard_name) + " guard exceeded: need " +
                            std::to_string(needed) + " > limit " + std::to_string(limit));
}

// Splits [0, n) into chunks and runs body(begin, end) on `jobs` threads.
// Reducers built on top of this must be associative and commutative.
inline void parallel_ranges(u64 n, unsigned jobs,
                            const std::function<void(u64, u64, unsigned)>& body) {
    if (jobs <= 1 || n < 2048) {
        body(0, n, 0);
        return;
    }
    unsigned nthreads = std::min<u64>(jobs, std::max<u64>(1, n / 1024));
    std::vector<std::thread> threads;
    u64 chunk = (n + nthreads - 1) / nthreads;
    for (unsigned ti = 0; ti < nthreads; ++ti) {
        u64 lo = ti * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&, lo, hi, ti] { body(lo, hi, ti); });
    }
    for (auto& th : threads) th.join();
}

// Deterministic 64-bit factorization (Miller-Rabin + Pollard rho), used for
// multiplicative-order checks.
std::vector<u64> prime_factors_distinct(u64 n);

}  // namespace sumrank

#endif
