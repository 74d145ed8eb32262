#include "rpp/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <omp.h>

namespace rpp {

namespace {
std::atomic<int> g_threads{0};

int default_threads()
{
    if (char const* env = std::getenv("RPP_THREADS")) {
        int const n = std::atoi(env);
        if (n > 0)
            return n;
    }
    return omp_get_max_threads();
}
}  // namespace

void set_thread_count(int n)
{
    g_threads.store(n > 0 ? n : 0);
}

int thread_count()
{
    int const n = g_threads.load();
    return n > 0 ? n : default_threads();
}

void parallel_for(std::size_t n, std::function<void(std::size_t)> const& body)
{
    if (n == 0)
        return;
    int const workers = omp_in_parallel() ? 1 : thread_count();
    if (workers <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }

    std::mutex mutex;
    std::size_t failed_at = std::numeric_limits<std::size_t>::max();
    std::exception_ptr error;

    auto const count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(mutex);
            if (static_cast<std::size_t>(i) < failed_at) {
                failed_at = static_cast<std::size_t>(i);
                error = std::current_exception();
            }
        }
    }
    if (error)
        std::rethrow_exception(error);
}

}  // namespace rpp
