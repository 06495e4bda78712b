#pragma once

#include <cstddef>
#include <functional>

namespace fracpass {

/// Runs task(chunk) for chunk in [0, chunks) on up to `workers` threads.
/// Chunks are claimed dynamically, so `task` must write only to storage
/// owned by its chunk. The first exception thrown by any task is rethrown
/// after all threads join.
void parallel_for_chunks(std::size_t chunks, unsigned workers, const std::function<void(std::size_t)>& task);

}  // namespace fracpass
