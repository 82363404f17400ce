#pragma once

#include <cstddef>

namespace deltamod {

/// Worker threads used by internally parallel enumerations. 0 means "not set":
/// the DELTAMOD_THREADS environment variable is consulted, then the hardware
/// concurrency. Results never depend on this value.
std::size_t worker_threads();
void set_worker_threads(std::size_t n);

}  // namespace deltamod
