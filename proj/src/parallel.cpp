#include "phasepom/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace phasepom {

int worker_count() {
    const char* env = std::getenv("PHASEPOM_THREADS");
    if (!env || !*env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    if (v < 1) return 1;
    return static_cast<int>(std::min(v, 64L));
}

void parallel_chunks(std::size_t n, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    if (chunk_size == 0) chunk_size = 1;
    const std::size_t nchunks = (n + chunk_size - 1) / chunk_size;
    const int workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(worker_count()), nchunks));
    auto run = [&](std::size_t c) {
        const std::size_t b = c * chunk_size;
        fn(c, b, std::min(b + chunk_size, n));
    };
    if (workers <= 1) {
        for (std::size_t c = 0; c < nchunks; ++c) run(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t c = next.fetch_add(1); c < nchunks; c = next.fetch_add(1)) run(c);
        });
    for (auto& th : pool) th.join();
}

}  // namespace phasepom
