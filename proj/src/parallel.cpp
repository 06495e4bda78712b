#include "fracpass/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fracpass {

void parallel_for_chunks(std::size_t chunks, unsigned workers, const std::function<void(std::size_t)>& task) {
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(std::max(workers, 1U), chunks));
    if (threads <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) task(c);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto run = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t c = next.fetch_add(1);
            if (c >= chunks) return;
            try {
                task(c);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run);
    pool.clear();
    if (error) std::rethrow_exception(error);
}

}  // namespace fracpass
