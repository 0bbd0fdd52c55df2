#ifndef REEB_PARALLEL_HPP
#define REEB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace reeb {

/** Worker count: REEB_EH_THREADS if set and positive, else hardware concurrency. */
int thread_count();

/**
 * Calls body(i) for i in [0, count) on up to thread_count() threads. Callers write results
 * into per-index slots, so reductions stay in index order and are thread-count independent.
 */
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace reeb

#endif
