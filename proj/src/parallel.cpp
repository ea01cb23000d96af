#include "entwine/parallel.hpp"

#ifdef ENTWINE_HAVE_OPENMP
#include <omp.h>
#endif

namespace entwine {

ParallelConfig& parallel_config() {
    static ParallelConfig cfg;
    return cfg;
}

void serial_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    for (std::size_t i = 0; i < n; ++i) body(i);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
#ifdef ENTWINE_HAVE_OPENMP
    if (parallel_config().enabled && n > 1) {
        int threads = parallel_config().threads;
        if (threads > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
            for (long long i = 0; i < static_cast<long long>(n); ++i)
                body(static_cast<std::size_t>(i));
        } else {
#pragma omp parallel for schedule(dynamic)
            for (long long i = 0; i < static_cast<long long>(n); ++i)
                body(static_cast<std::size_t>(i));
        }
        return;
    }
#endif
    serial_for(n, body);
}

}  // namespace entwine
