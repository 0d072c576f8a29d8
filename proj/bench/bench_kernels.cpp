#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "fbwave/kernels.hpp"
#include "fbwave/reaction.hpp"

using namespace fbwave;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double time_it(int reps, F&& body) {
  const auto t0 = Clock::now();
  for (int i = 0; i < reps; ++i) body();
  return std::chrono::duration<double>(Clock::now() - t0).count() / reps;
}

}  // namespace

int main() {
  const auto f = make_logistic(1.0);
  std::printf("%8s %14s %14s %8s\n", "nodes", "serial [us]", "omp [us]", "ratio");
  for (int n : {2000, 20000, 200000, 2000000}) {
    std::vector<double> u(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) u[j] = 1.0 + std::exp(-0.01 * j);
    std::vector<double> rhs(static_cast<std::size_t>(n));
    kernels::StepRhsInputs in;
    in.u = u;
    in.h = 0.05;
    in.d = 1.0;
    in.dt = 1e-3;
    in.g_prime = 0.9;
    in.reaction = &f;
    const int reps = std::max(1, 4000000 / n);
    const double ts = time_it(reps, [&] { kernels::serial::assemble_step_rhs(in, rhs); });
    const double tp = time_it(reps, [&] { kernels::omp::assemble_step_rhs(in, rhs); });
    std::printf("%8d %14.2f %14.2f %8.2f\n", n, ts * 1e6, tp * 1e6, ts / tp);
  }
  return 0;
}
