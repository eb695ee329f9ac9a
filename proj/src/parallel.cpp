#include "epslab/parallel.hpp"

#include <cstdlib>

namespace epslab {

unsigned worker_count() {
  if (const char* env = std::getenv("EPSLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace epslab
