#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace qcorr {

/// Worker threads used by grid loops. Defaults to QCORR_THREADS or the
/// hardware concurrency; set_thread_count(0) restores the default.
unsigned thread_count() noexcept;
void set_thread_count(unsigned count) noexcept;

/// Runs body(i) for i in [0, n) across worker threads. Each index is executed
/// exactly once; scheduling never affects what an index computes.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Sums term(i) for i in [0, n). Terms are computed in parallel but added in
/// index order, so the result is bit-identical for any thread count.
double ordered_sum(std::size_t n, const std::function<double(std::size_t)>& term);

} // namespace qcorr
