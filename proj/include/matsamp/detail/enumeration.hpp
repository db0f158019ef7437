#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace matsamp::detail {

/// size^m, clamped to limit + 1 so guard checks cannot overflow.
std::uint64_t clamped_power(std::uint64_t size, std::uint64_t m, std::uint64_t limit);

/// size * (size-1) * ... * (size-m+1), clamped to limit + 1.
std::uint64_t clamped_falling_factorial(std::uint64_t size, std::uint64_t m, std::uint64_t limit);

/// Visits every m-tuple over {0, ..., size-1} in lexicographic order.
void for_each_tuple(std::size_t size, std::size_t m,
                    const std::function<void(const std::vector<std::size_t>&)>& visit);

/// Visits every ordered m-subset of {0, ..., size-1} (pairwise distinct
/// entries) in lexicographic order. Requires m <= size.
void for_each_ordered_subset(std::size_t size, std::size_t m,
                             const std::function<void(const std::vector<std::size_t>&)>& visit);

}  // namespace matsamp::detail
