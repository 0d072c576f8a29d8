#include <algorithm>
#include <cmath>
#include <exception>

#include "fbwave/error.hpp"
#include "fbwave/kernels.hpp"
#include "kernels_detail.hpp"

namespace fbwave::kernels {

double upwind_derivative(std::span<const double> u, std::size_t j, double h, double g_prime) {
  const std::size_t n = u.size() - 1;
  auto at = [&](std::size_t k) { return k <= n ? u[k] : u[2 * n - k]; };
  if (g_prime > 0.0) {
    return (-3.0 * at(j) + 4.0 * at(j + 1) - at(j + 2)) / (2.0 * h);
  }
  if (g_prime < 0.0) {
    if (j == 1) return (at(2) - u[0]) / (2.0 * h);
    return (3.0 * u[j] - 4.0 * u[j - 1] + u[j - 2]) / (2.0 * h);
  }
  return 0.0;
}

namespace detail {

// Both variants run exactly this per-node update.
double step_rhs_node(const StepRhsInputs& in, std::size_t j, double half_r) {
  const auto u = in.u;
  const std::size_t n = u.size() - 1;
  const double right = j < n ? u[j + 1] : u[n - 1];
  const double lap = u[j - 1] - 2.0 * u[j] + right;
  double explicit_part = (*in.reaction)(u[j]);
  if (in.g_prime != 0.0) explicit_part += in.g_prime * upwind_derivative(u, j, in.h, in.g_prime);
  if (in.source) explicit_part += (*in.source)(in.t, static_cast<double>(j) * in.h);
  return u[j] + half_r * lap + in.dt * explicit_part;
}

TaskError capture(const std::exception_ptr& ep) {
  TaskError err;
  err.failed = true;
  try {
    std::rethrow_exception(ep);
  } catch (const ValidationError& e) {
    err.kind = 1;
    err.message = e.what();
  } catch (const NumericalError& e) {
    err.kind = 2;
    err.message = e.what();
  } catch (const std::exception& e) {
    err.kind = 3;
    err.message = e.what();
  } catch (...) {
    err.kind = 3;
    err.message = "unknown error";
  }
  return err;
}

}  // namespace detail

namespace serial {

void assemble_step_rhs(const StepRhsInputs& in, std::span<double> rhs) {
  const std::size_t n = in.u.size() - 1;
  const double half_r = 0.5 * in.d * in.dt / (in.h * in.h);
  for (std::size_t j = 1; j <= n; ++j) rhs[j - 1] = detail::step_rhs_node(in, j, half_r);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

MinMax min_max(std::span<const double> a) {
  MinMax mm{a[0], a[0]};
  for (double v : a) {
    mm.min = std::min(mm.min, v);
    mm.max = std::max(mm.max, v);
  }
  return mm;
}

std::vector<TaskError> for_each_index(std::size_t n,
                                      const std::function<void(std::size_t)>& task) {
  std::vector<TaskError> errors(n);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      task(i);
    } catch (...) {
      errors[i] = detail::capture(std::current_exception());
    }
  }
  return errors;
}

}  // namespace serial
}  // namespace fbwave::kernels
