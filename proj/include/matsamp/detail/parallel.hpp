#pragma once

#include <cstddef>
#include <functional>

namespace matsamp::detail {

/// Runs body(0), ..., body(count-1) over up to `workers` threads in static
/// contiguous chunks. Each call must depend only on its index, so results
/// are identical for every worker count. The first exception thrown by any
/// worker is rethrown after all join.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

/// Compensated (Kahan) accumulator; summation order fixed by the caller.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace matsamp::detail
