#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <random>
#include <thread>
#include <vector>

namespace halfint {

// mt19937_64 with explicit bit-to-double mapping so generated files are
// identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t below(std::uint64_t n) { return gen_() % n; }

  private:
    std::mt19937_64 gen_;
};

// Worker count used by the grid/partial-sum helpers; the CLI sets this from
// --threads. Results are independent of the value.
std::size_t worker_threads();
void set_worker_threads(std::size_t n);

// Runs fn(i) for i in [0, n) on worker threads. fn must only write to
// per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

inline std::atomic<std::size_t>& worker_threads_storage() {
    static std::atomic<std::size_t> n{0};  // 0 = hardware concurrency
    return n;
}

inline std::size_t worker_threads() {
    std::size_t n = worker_threads_storage().load();
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

inline void set_worker_threads(std::size_t n) { worker_threads_storage().store(n); }

inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    std::size_t workers = std::min(worker_threads(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace halfint
