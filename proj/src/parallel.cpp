#include "anderson/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>

namespace anderson::par {

int env_workers() {
    const char* s = std::getenv("ANDERSON_LEVELS_WORKERS");
    if (!s) return 0;
    const int v = std::atoi(s);
    return v > 0 ? v : 0;
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const int env = env_workers();
    if (env > 0) return env;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void for_each_index_serial(int count, const std::function<void(int)>& body) {
    for (int i = 0; i < count; ++i) body(i);
}

void for_each_index(int count, int workers, const std::function<void(int)>& body) {
    if (workers <= 1 || count <= 1) {
        for_each_index_serial(count, body);
        return;
    }
    std::exception_ptr first_error = nullptr;
    std::atomic<bool> failed{false};
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int i = 0; i < count; ++i) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            body(i);
        } catch (...) {
            if (!failed.exchange(true)) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace anderson::par
