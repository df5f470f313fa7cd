/// @file parallel.hpp
/// @brief Minimal fork-join helper. Work items write to their own slots, so
/// results never depend on the thread count.
#pragma once

#include <cstddef>
#include <functional>

namespace nsv {

/// Worker cap: NS_VERIFY_THREADS when set to a positive integer, otherwise
/// std::thread::hardware_concurrency().
int worker_count();

/// Calls fn(i) for i in [0, n). Exceptions from workers are rethrown (the
/// one with the lowest index wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace nsv
