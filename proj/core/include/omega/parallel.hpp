#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace omega {

// Worker count from OMEGA_THREADS, else hardware concurrency.
unsigned thread_count();

// Runs body(i) for i in [0, n); results must not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Independent seed for stream i derived from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace omega
