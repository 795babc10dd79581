#pragma once

#include <cstddef>
#include <functional>

namespace zicount {

/// Runs body(i) for i in [0, count) on up to `threads` workers pulling from a
/// shared atomic counter. Exceptions from workers are rethrown on the caller.
/// Work items must be independent; result determinism comes from writing to
/// index-addressed slots.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace zicount
