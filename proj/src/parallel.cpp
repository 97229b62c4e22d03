#include "idd/parallel.hpp"

#include <cstdlib>
#include <mutex>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace idd {

int thread_budget() {
    int budget = 1;
#ifdef _OPENMP
    budget = omp_get_max_threads();
#endif
    if (const char* env = std::getenv("IDD_WAVES_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap > 0 && cap < budget) budget = cap;
        } catch (...) {
            // A malformed value is ignored rather than aborting a long run.
        }
    }
    return budget;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, Exec exec) {
    if (exec == Exec::Serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex guard;
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_budget())
    for (long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(guard);
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace idd
