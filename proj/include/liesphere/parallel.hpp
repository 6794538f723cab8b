#pragma once

#include <functional>

namespace liesphere {

/// Worker cap from LIESPHERE_THREADS, else the hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads; rethrows the first exception.
void parallel_for(long n, const std::function<void(long)>& body);

}  // namespace liesphere
