#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <thread>

namespace tnrank::detail {

// Explicit request, else TNRANK_THREADS, else the hardware count.
inline std::size_t thread_cap(std::size_t requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("TNRANK_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<std::size_t>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace tnrank::detail
