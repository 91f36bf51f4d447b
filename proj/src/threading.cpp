#include "schurkit/threading.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace schurkit::threads {

namespace {

int resolve() {
#ifdef _OPENMP
    int count = omp_get_max_threads();
#else
    int count = 1;
#endif
    if (const char* env = std::getenv("SCHURKIT_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1 && cap < count) count = cap;
        } catch (const std::exception&) {
            // unparsable cap: keep the OpenMP default
        }
    }
    return count;
}

} // namespace

int max_threads() {
    static const int value = resolve();
    return value;
}

} // namespace schurkit::threads
