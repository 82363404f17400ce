#include "deltamod/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

namespace deltamod {

namespace {
std::atomic<std::size_t> configured{0};
}

std::size_t worker_threads() {
  if (std::size_t n = configured.load(); n > 0) return n;
  if (const char* env = std::getenv("DELTAMOD_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  std::size_t hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void set_worker_threads(std::size_t n) { configured.store(n); }

}  // namespace deltamod
