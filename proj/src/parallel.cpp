#include "twistcat/parallel.h"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <atomic>
#include <exception>

namespace twistcat {

namespace {
std::atomic<ExecMode> g_mode{
#ifdef _OPENMP
    ExecMode::Parallel
#else
    ExecMode::Serial
#endif
};
} // namespace

ExecMode exec_mode() { return g_mode.load(std::memory_order_relaxed); }
void set_exec_mode(ExecMode m) { g_mode.store(m, std::memory_order_relaxed); }

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

int worker_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void for_each_index(int n, ExecMode mode, const std::function<void(int)>& body) {
    if (n <= 0) return;
#ifdef _OPENMP
    if (mode == ExecMode::Parallel && n > 1) {
        // Exceptions may not cross the parallel region; capture the first
        // one and rethrow after the join.
        std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) {
            try {
                body(i);
            } catch (...) {
#pragma omp critical(twistcat_for_each_error)
                if (!first_error) first_error = std::current_exception();
            }
        }
        if (first_error) std::rethrow_exception(first_error);
        return;
    }
#else
    (void)mode;
#endif
    for (int i = 0; i < n; ++i) body(i);
}

} // namespace twistcat
