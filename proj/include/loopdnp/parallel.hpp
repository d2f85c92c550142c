#pragma once

#include <cstddef>
#include <functional>

namespace loopdnp {

// Worker count: LOOPDNP_THREADS if set, else hardware concurrency. Results
// must be written to disjoint slots so reductions stay in index order and
// outputs are identical for any thread count.
int thread_count();
void set_thread_count(int n);  // overrides the environment, 0 = reset

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace loopdnp
