#include "matsamp/detail/enumeration.hpp"

namespace matsamp::detail {

std::uint64_t clamped_power(std::uint64_t size, std::uint64_t m, std::uint64_t limit) {
  std::uint64_t acc = 1;
  for (std::uint64_t i = 0; i < m; ++i) {
    if (size != 0 && acc > limit / size) return limit + 1;
    acc *= size;
    if (acc > limit) return limit + 1;
  }
  return acc;
}

std::uint64_t clamped_falling_factorial(std::uint64_t size, std::uint64_t m, std::uint64_t limit) {
  std::uint64_t acc = 1;
  for (std::uint64_t i = 0; i < m; ++i) {
    const std::uint64_t factor = size - i;  // callers guarantee m <= size
    if (factor != 0 && acc > limit / factor) return limit + 1;
    acc *= factor;
    if (acc > limit) return limit + 1;
  }
  return acc;
}

namespace {

void tuple_rec(std::size_t size, std::size_t m, std::vector<std::size_t>& current,
               const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (current.size() == m) {
    visit(current);
    return;
  }
  for (std::size_t v = 0; v < size; ++v) {
    current.push_back(v);
    tuple_rec(size, m, current, visit);
    current.pop_back();
  }
}

void ordered_subset_rec(std::size_t size, std::size_t m, std::vector<std::size_t>& current,
                        std::vector<bool>& used,
                        const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (current.size() == m) {
    visit(current);
    return;
  }
  for (std::size_t v = 0; v < size; ++v) {
    if (used[v]) continue;
    used[v] = true;
    current.push_back(v);
    ordered_subset_rec(size, m, current, used, visit);
    current.pop_back();
    used[v] = false;
  }
}

}  // namespace

void for_each_tuple(std::size_t size, std::size_t m,
                    const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> current;
  current.reserve(m);
  tuple_rec(size, m, current, visit);
}

void for_each_ordered_subset(std::size_t size, std::size_t m,
                             const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> current;
  current.reserve(m);
  std::vector<bool> used(size, false);
  ordered_subset_rec(size, m, current, used, visit);
}

}  // namespace matsamp::detail
