#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "hardyz/xprec.hpp"

namespace hardyz {

inline unsigned default_workers() {
    static const unsigned w = [] {
        const char* env = std::getenv("Z_WORKERS");
        if (env == nullptr) return 1u;
        try {
            long v = std::stol(env);
            return v >= 1 ? static_cast<unsigned>(v) : 1u;
        } catch (...) {
            return 1u;
        }
    }();
    return w;
}

struct Exec {
    unsigned workers = default_workers();
};

// Compensated accumulator (two-word running sum).
struct Accumulator {
    ExtendedReal s;
    void add(double x) {
        ExtendedReal e = two_sum(s.hi, x);
        s.lo += e.lo;
        s.hi = e.hi;
    }
    void add(ExtendedReal x) { s = s + x; }
    double value() const { return s.hi + s.lo; }
};

inline constexpr std::int64_t kBlock = 4096;

// Sum over i = lo, lo+stride, ..., <= hi in fixed blocks of kBlock indices. block(first, count)
// returns the two-word partial sum of its block. Blocks are combined in index order, so the
// result does not depend on the worker count.
template <class Block>
double blocked_reduce(std::int64_t lo, std::int64_t hi, std::int64_t stride, Exec exec, Block&& block) {
    if (lo > hi) return 0.0;
    std::int64_t count = (hi - lo) / stride + 1;
    std::int64_t nblocks = (count + kBlock - 1) / kBlock;
    std::vector<ExtendedReal> partial(static_cast<std::size_t>(nblocks));
    auto run_block = [&](std::int64_t b) {
        std::int64_t first = b * kBlock;
        std::int64_t n = std::min(count, first + kBlock) - first;
        partial[static_cast<std::size_t>(b)] = block(lo + first * stride, n);
    };
    unsigned workers = std::max(1u, std::min<unsigned>(exec.workers, static_cast<unsigned>(nblocks)));
    if (workers == 1) {
        for (std::int64_t b = 0; b < nblocks; ++b) run_block(b);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::int64_t b = w; b < nblocks; b += workers) run_block(b);
            });
        for (auto& th : pool) th.join();
    }
    Accumulator total;
    for (const auto& p : partial) total.add(p);
    return total.value();
}

template <class Term>
double blocked_sum(std::int64_t lo, std::int64_t hi, std::int64_t stride, Exec exec, Term&& term) {
    return blocked_reduce(lo, hi, stride, exec, [&](std::int64_t first, std::int64_t n) {
        Accumulator acc;
        for (std::int64_t k = 0; k < n; ++k) acc.add(term(first + k * stride));
        return acc.s;
    });
}

// Apply fn(i) for i in [0, n) across workers; fn must write only its own slot.
template <class Fn>
void parallel_for(std::int64_t n, Exec exec, Fn&& fn) {
    unsigned workers = std::max(1u, std::min<unsigned>(exec.workers, static_cast<unsigned>(std::max<std::int64_t>(n, 1))));
    if (workers == 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::int64_t i = w; i < n; i += workers) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace hardyz
