#include "cocycle/kernels.hpp"

#include <atomic>

namespace cocycle {

namespace {
std::atomic<Exec> g_exec{Exec::Parallel};
}

Exec defaultExec() { return g_exec.load(); }
void setDefaultExec(Exec e) { g_exec.store(e); }

int parallelThreads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace cocycle
