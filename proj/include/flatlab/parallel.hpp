#pragma once

#include <functional>

namespace flatlab {

// Requested worker count, else FLATLAB_JOBS, else hardware concurrency.
int worker_count(int requested = 0);

// Runs body(i) for i in [0, n) on up to jobs threads. The first exception
// thrown by any task is rethrown after all workers stop.
void parallel_for(long n, int jobs, const std::function<void(long)>& body);

}  // namespace flatlab
