#pragma once

#include <cstddef>
#include <functional>

namespace sicpovm {

/// Worker count: `requested` (0 = hardware concurrency), capped by the
/// SIC_THREADS environment variable when it holds a positive integer.
unsigned resolve_thread_count(unsigned requested);

/// Runs body(i) for i in [0, count) on up to `threads` workers.
///
/// `in_order`, when given, is called once per index in increasing index
/// order as soon as that index and all earlier ones are done; calls are
/// serialized. The first exception thrown by `body` is rethrown after all
/// workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body,
                  const std::function<void(std::size_t)>& in_order = {});

}  // namespace sicpovm
