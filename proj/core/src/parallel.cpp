#include "cubelab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace cubelab {

namespace {
std::atomic<int> g_threads{0};
}

int thread_count() {
    int t = g_threads.load();
    if (t > 0) return t;
    if (const char* env = std::getenv("CUBELAB_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

void set_thread_count(int n) { g_threads.store(n); }

void parallel_chunks(std::size_t n,
                     const std::function<void(int, std::size_t, std::size_t)>& fn) {
    int workers = thread_count();
    if (n == 0) return;
    if (workers <= 1 || n < 2) {
        fn(0, 0, n);
        return;
    }
    std::size_t chunks = std::min<std::size_t>(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    std::size_t base = n / chunks, rem = n % chunks, start = 0;
    for (std::size_t k = 0; k < chunks; ++k) {
        std::size_t len = base + (k < rem ? 1 : 0);
        pool.emplace_back(fn, int(k), start, start + len);
        start += len;
    }
    for (auto& t : pool) t.join();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    parallel_chunks(n, [&](int, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
}

}  // namespace cubelab
