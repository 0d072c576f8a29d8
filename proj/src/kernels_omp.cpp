#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>

#include "fbwave/kernels.hpp"
#include "kernels_detail.hpp"

namespace fbwave::kernels::omp {

namespace {
// Below this many nodes the fork/join cost outweighs the loop.
constexpr long kMinParallelNodes = 512;
}  // namespace

void assemble_step_rhs(const StepRhsInputs& in, std::span<double> rhs) {
  const long n = static_cast<long>(in.u.size()) - 1;
  const double half_r = 0.5 * in.d * in.dt / (in.h * in.h);
#pragma omp parallel for schedule(static) if (n >= kMinParallelNodes)
  for (long j = 1; j <= n; ++j) {
    rhs[static_cast<std::size_t>(j - 1)] =
        detail::step_rhs_node(in, static_cast<std::size_t>(j), half_r);
  }
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  const long n = static_cast<long>(a.size());
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m) if (n >= kMinParallelNodes)
  for (long i = 0; i < n; ++i) {
    m = std::max(m, std::abs(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]));
  }
  return m;
}

MinMax min_max(std::span<const double> a) {
  const long n = static_cast<long>(a.size());
  double lo = a[0];
  double hi = a[0];
#pragma omp parallel for schedule(static) reduction(min : lo) reduction(max : hi) \
    if (n >= kMinParallelNodes)
  for (long i = 0; i < n; ++i) {
    lo = std::min(lo, a[static_cast<std::size_t>(i)]);
    hi = std::max(hi, a[static_cast<std::size_t>(i)]);
  }
  return {lo, hi};
}

std::vector<TaskError> for_each_index(std::size_t n,
                                      const std::function<void(std::size_t)>& task) {
  std::vector<TaskError> errors(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    try {
      task(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = detail::capture(std::current_exception());
    }
  }
  return errors;
}

}  // namespace fbwave::kernels::omp
