#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace fracpass::detail {

namespace {

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [size, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t size) {
        std::lock_guard lock(mutex_);
        auto it = plans_.find(size);
        if (it != plans_.end()) return it->second;
        // The planner may scribble on its arrays; plan on scratch storage.
        std::vector<std::complex<double>> scratch(size);
        auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(size), ptr, ptr, FFTW_FORWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(size, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::size_t, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

}  // namespace

void fft_forward(std::span<std::complex<double>> data) {
    if (data.empty()) return;
    fftw_plan plan = cache().get(data.size());
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace fracpass::detail
