#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hogsvm {

// Execution strategy for the data-parallel kernels. Every kernel produces
// bit-identical output under both strategies: parallel loops only ever
// partition independent output elements, never reorder an accumulation.
// Exec::serial is the reference path the tests compare against.
enum class Exec {
    serial,
    parallel,
};

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace hogsvm
