#pragma once

#include <span>

namespace fbwave {

/// Thomas algorithm for sub[i] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i].
/// sub[0] and sup[n-1] are ignored. Overwrites rhs with the solution; scratch
/// must hold n values. Returns false on a zero pivot.
inline bool solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                              std::span<const double> sup, std::span<double> rhs,
                              std::span<double> scratch) {
  const std::size_t n = diag.size();
  if (n == 0) return true;
  double pivot = diag[0];
  if (pivot == 0.0) return false;
  rhs[0] /= pivot;
  for (std::size_t i = 1; i < n; ++i) {
    scratch[i] = sup[i - 1] / pivot;
    pivot = diag[i] - sub[i] * scratch[i];
    if (pivot == 0.0) return false;
    rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= scratch[i + 1] * rhs[i + 1];
  return true;
}

}  // namespace fbwave
