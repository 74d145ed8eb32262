#pragma once

#include <cstddef>
#include <functional>

namespace rpp {

//! Cap on worker threads for all parallel loops; 0 restores the default
//! (RPP_THREADS environment variable, else the OpenMP default).
void set_thread_count(int n);
int thread_count();

/*!
 * Run body(i) for i in [0, n) across workers.
 *
 * Each index is processed exactly once and bodies must only write to
 * slots owned by their index, which makes results independent of the
 * worker count. If bodies throw, the exception from the lowest failing
 * index is rethrown after the loop.
 */
void parallel_for(std::size_t n, std::function<void(std::size_t)> const& body);

}  // namespace rpp
