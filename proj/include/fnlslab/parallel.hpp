#ifndef FNLSLAB_PARALLEL_HPP
#define FNLSLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace fnls {

/// Requested <= 0 falls back to FNLS_LAB_THREADS, then to 1.
int resolve_thread_count(int requested);

/// Runs fn(i) for i in [0, count) on up to `threads` workers over contiguous
/// chunks.  fn(i) must write only to slot i of any shared output, so results
/// are identical at every thread count; reductions are the caller's job and
/// must run in index order.
void parallel_for(int threads, std::size_t count,
                  const std::function<void(std::size_t)>& fn);

}  // namespace fnls

#endif
