#pragma once

#include <cstddef>
#include <functional>

namespace sketch2manga {

/// Resolves a requested thread count; 0 means hardware concurrency.
std::size_t resolve_threads(std::size_t requested) noexcept;

/// Calls body(begin, end) over disjoint contiguous chunks of [0, count).
///
/// Chunks are independent so results are identical for any thread count as
/// long as body writes only to its own range.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace sketch2manga
