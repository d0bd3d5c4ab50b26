#ifndef EIT3D_PARALLEL_HPP
#define EIT3D_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace eit3d {

/// Process-wide worker count for parallel_for. 0 means hardware concurrency.
void set_thread_count(int n);
int thread_count();

/// Runs fn(i) for i in [begin, end). Work is handed out in chunks through an
/// atomic cursor, so each index is visited exactly once and results written
/// to disjoint slots are deterministic regardless of scheduling.
template <class Fn>
void parallel_for(std::size_t begin, std::size_t end, Fn&& fn, std::size_t chunk = 64) {
    const std::size_t total = end > begin ? end - begin : 0;
    int workers = thread_count();
    if (workers <= 1 || total < 2 * chunk) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
        return;
    }
    if (static_cast<std::size_t>(workers) > total / chunk + 1)
        workers = static_cast<int>(total / chunk + 1);

    std::atomic<std::size_t> cursor{begin};
    auto worker = [&]() {
        for (;;) {
            const std::size_t lo = cursor.fetch_add(chunk);
            if (lo >= end) return;
            const std::size_t hi = lo + chunk < end ? lo + chunk : end;
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace eit3d

#endif
