#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fbwave {

/// Monostable nonlinearity f with f(0) = f(xi) = 0, f > 0 on (0, xi),
/// f < 0 beyond xi, f'(0) > 0 > f'(xi).
///
/// Instances are immutable once built and may be shared across threads.
struct ReactionFunction {
  std::function<double(double)> eval;
  std::function<double(double)> deriv;
  double stable_zero = 1.0;
  std::string label;
  // Set for the family r*u*(stable_zero - u).
  std::optional<double> logistic_rate;

  double operator()(double u) const { return eval(u); }
  double derivative(double u) const { return deriv(u); }
  /// Central difference of deriv; only used for series coefficients.
  double second_derivative(double u) const;
};

/// f(u) = r u (1 - u).
ReactionFunction make_logistic(double r);

/// f(u) = r u (zero - u).
ReactionFunction make_shifted_logistic(double r, double zero);

/// f(u) = sum_k coeffs[k] u^k. The stable zero is the first positive root at
/// which f changes sign from + to -.
ReactionFunction make_polynomial(std::vector<double> coeffs, std::string label = {});

/// Sandwiching pair lower < base < upper with stable zeros straddling the
/// base zero, converging to base in C^1 as epsilon -> 0.
struct PerturbationPair {
  ReactionFunction lower;
  ReactionFunction upper;
  double epsilon = 0.0;
};

PerturbationPair make_perturbation_pair(const ReactionFunction& base, double epsilon);

struct ValidationReport {
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
  bool mentions(std::string_view needle) const;
};

/// Samples f on [0, 2 * stable_zero] and reports sign-pattern, zero and
/// derivative-consistency violations. Never throws on a bad f.
ValidationReport validate_monostable(const ReactionFunction& f, int grid_n = 1000);

/// Sampled sup of |a - b| and |a' - b'| on [0, upper].
struct C1Distance {
  double value = 0.0;
  double derivative = 0.0;
  double total() const { return value > derivative ? value : derivative; }
};

C1Distance c1_distance(const ReactionFunction& a, const ReactionFunction& b, double upper,
                       int samples = 10000);

/// Bisection on a sign change in [lo, hi], run to machine resolution.
double bisect_root(const std::function<double(double)>& g, double lo, double hi,
                   double abs_tol = 0.0);

/// Parses "logistic:r=<value>", "logistic" (r = 1) or
/// "custom:<c0>,<c1>,...,<cn>" (ascending polynomial coefficients).
ReactionFunction parse_reaction(std::string_view spec);

}  // namespace fbwave
