#include "eit3d/parallel.hpp"

namespace eit3d {

namespace {
int g_threads = 0;  // 0 = hardware concurrency
}

void set_thread_count(int n) { g_threads = n < 0 ? 0 : n; }

int thread_count() {
    if (g_threads > 0) return g_threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace eit3d
