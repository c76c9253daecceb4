#pragma once

// Shared small utilities: deterministic RNG, compensated summation, and a
// deterministic parallel map.  Everything here is designed so that results
// are bitwise independent of the worker count.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace syz {

/// Counter-based PRNG (SplitMix64).  Stateless per draw: the value depends
/// only on (seed, counter), which keeps sampled test data reproducible no
/// matter how work is scheduled.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [a, b).
    double uniform(double a, double b) { return a + (b - a) * next_double(); }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }
};

/// Neumaier-compensated accumulator.  Used wherever many small terms are
/// summed and the result feeds an exactness threshold downstream.
struct NeumaierSum {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double value) {
        double t = sum + value;
        if (std::abs(sum) >= std::abs(value))
            compensation += (sum - t) + value;
        else
            compensation += (value - t) + sum;
        sum = t;
    }

    double result() const { return sum + compensation; }
};

namespace detail {

inline int& worker_count_storage() {
    static int count = 0;  // 0 = uninitialised, fall back to env/hardware
    return count;
}

}  // namespace detail

/// Set the number of worker threads used by parallel_for.  Values < 1 reset
/// to the environment/hardware default.
inline void set_worker_count(int n) { detail::worker_count_storage() = n; }

/// Active worker count: explicit setting, then SYZ_THREADS, then hardware.
inline int worker_count() {
    int n = detail::worker_count_storage();
    if (n >= 1) return n;
    if (const char* env = std::getenv("SYZ_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1 && v <= 256) return static_cast<int>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw > 16 ? 16 : hw);
}

/// Run body(i) for i in [0, n).  Each index is processed independently and
/// writes only to its own preallocated slot, so the output is identical for
/// any worker count.  Work is handed out via an atomic counter.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    int workers = worker_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto run = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) break;
            try {
                body(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                break;
            }
        }
    };
    std::size_t spawn = static_cast<std::size_t>(workers) < n
                            ? static_cast<std::size_t>(workers)
                            : n;
    pool.reserve(spawn);
    for (std::size_t t = 0; t < spawn; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

/// gcd on possibly-negative 64-bit values; result is non-negative.
inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace syz
