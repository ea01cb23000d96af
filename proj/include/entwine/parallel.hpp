#pragma once

#include <cstddef>
#include <functional>

namespace entwine {

/// Global execution mode for verification sweeps. Sweeps write into
/// preallocated per-index slots, so parallel and serial runs produce
/// identical reports.
struct ParallelConfig {
    bool enabled = true;
    int threads = 0;  // 0 = library default
};

ParallelConfig& parallel_config();

/// Data-parallel index loop (OpenMP when available and enabled); the serial
/// reference path is the same loop body run in order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Always-serial reference loop, kept for A/B testing against parallel_for.
void serial_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace entwine
