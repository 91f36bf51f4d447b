#pragma once

namespace schurkit::threads {

// Worker-pool width for all parallel kernels: OpenMP's max thread count,
// capped by the SCHURKIT_THREADS environment variable. Evaluated once.
int max_threads();

} // namespace schurkit::threads
