#pragma once

#include <functional>

namespace vdyn {

/// Global worker count for parallel_for (1 = serial). Set once from the CLI.
void set_thread_count(int n);
int thread_count();

/// Runs fn(i) for i in [0, n). Work is split into contiguous chunks across
/// the configured workers; each index is processed exactly once and all
/// per-index arithmetic is independent of the split, so results are
/// bit-identical for any thread count.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace vdyn
