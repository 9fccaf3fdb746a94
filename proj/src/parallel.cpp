#include "centerface/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace centerface {

#ifdef _OPENMP

namespace {
int g_default_threads = 0;

int default_threads() {
    if (g_default_threads == 0) g_default_threads = omp_get_max_threads();
    return g_default_threads;
}
}  // namespace

int max_threads() { return omp_get_max_threads(); }

void set_threads(int n) {
    const int fallback = default_threads();
    omp_set_num_threads(n > 0 ? n : fallback);
}

#else

int max_threads() { return 1; }
void set_threads(int) {}

#endif

}  // namespace centerface
