#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fbwave/reaction.hpp"

// Data-parallel kernels. Every kernel exists twice with identical signatures:
// kernels::serial is the reference implementation used by the tests, and
// kernels::omp is the OpenMP version used by the library. Both produce
// bit-identical results (no floating-point reductions other than max/min).
namespace fbwave::kernels {

/// Optional manufactured source term s(t, y).
using SourceFn = std::function<double(double, double)>;

/// Inputs for the explicit half of one IMEX step on nodes 1..N.
struct StepRhsInputs {
  std::span<const double> u;  // nodes 0..N
  double h = 0.0;
  double d = 0.0;
  double dt = 0.0;
  double g_prime = 0.0;  // frozen front speed
  double t = 0.0;        // time at which the source is sampled
  const ReactionFunction* reaction = nullptr;
  const SourceFn* source = nullptr;
};

struct MinMax {
  double min = 0.0;
  double max = 0.0;
};

/// Result slot of an independent task in a fan-out.
struct TaskError {
  bool failed = false;
  std::string message;
  int kind = 0;  // 1 validation, 2 numerical, 3 other
};

#define FBWAVE_KERNEL_DECLS                                                                 \
  /* rhs[j-1] for j = 1..N: u_j + (r/2) D2 u_j + dt (g' A u_j + f(u_j) + s(t, y_j)).   */ \
  void assemble_step_rhs(const StepRhsInputs& in, std::span<double> rhs);                  \
  /* max_j |a_j - b_j| over the given range. */                                            \
  double max_abs_diff(std::span<const double> a, std::span<const double> b);               \
  MinMax min_max(std::span<const double> a);                                               \
  /* Runs task(i) for i in [0, n); exceptions are captured per index. */                   \
  std::vector<TaskError> for_each_index(std::size_t n,                                     \
                                        const std::function<void(std::size_t)>& task);

namespace serial {
FBWAVE_KERNEL_DECLS
}
namespace omp {
FBWAVE_KERNEL_DECLS
}

#undef FBWAVE_KERNEL_DECLS

/// Upwind-biased second-order approximation of u_y at node j (1 <= j <= N),
/// with the Neumann mirror u_{N+k} = u_{N-k}. Shared by both variants.
double upwind_derivative(std::span<const double> u, std::size_t j, double h, double g_prime);

}  // namespace fbwave::kernels
