#ifndef FHLAB_PARALLEL_HPP
#define FHLAB_PARALLEL_HPP

#include <cstdlib>

#include <omp.h>

namespace fhlab {

// Worker count for parallel regions: FHLAB_THREADS if set, otherwise the
// machine parallelism. Outputs do not depend on this value; every parallel
// loop writes disjoint, preassigned slots.
inline int thread_count() {
    static const int n = [] {
        if (const char* env = std::getenv("FHLAB_THREADS")) {
            const int v = std::atoi(env);
            if (v >= 1) return v;
        }
        return omp_get_max_threads();
    }();
    return n;
}

}  // namespace fhlab

#endif
