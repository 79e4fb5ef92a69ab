#include "arborlab/kernels.hpp"

#include <atomic>

namespace arborlab::kernels {

namespace {
std::atomic<Mode> g_mode{Mode::OpenMP};
std::atomic<int> g_threads{0};
}  // namespace

void set_mode(Mode m) { g_mode = m; }
Mode mode() { return g_mode; }

void set_threads(int n) {
    g_threads = n;
    if (n > 0) omp_set_num_threads(n);
    else omp_set_num_threads(omp_get_num_procs());
}

int threads() {
    const int n = g_threads;
    return n > 0 ? n : omp_get_max_threads();
}

}  // namespace arborlab::kernels
