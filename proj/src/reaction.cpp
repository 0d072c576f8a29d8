#include "fbwave/reaction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fbwave/error.hpp"

namespace fbwave {

namespace {

std::string format_short(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double parse_number(std::string_view text, std::string_view what) {
  std::string s(text);
  // strtod accepts forms such as "1e-3" and "+2" that from_chars rejects.
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw ValidationError("cannot parse " + std::string(what) + " from '" + s + "'");
  }
  return v;
}

}  // namespace

double ReactionFunction::second_derivative(double u) const {
  const double h = 1e-5 * std::max(1.0, std::abs(u));
  return (deriv(u + h) - deriv(u - h)) / (2.0 * h);
}

bool ValidationReport::mentions(std::string_view needle) const {
  return std::any_of(failures.begin(), failures.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

ReactionFunction make_shifted_logistic(double r, double zero) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw ValidationError("logistic rate must be positive, got " + format_short(r));
  }
  if (!(zero > 0.0)) {
    throw ValidationError("logistic zero must be positive, got " + format_short(zero));
  }
  ReactionFunction f;
  f.eval = [r, zero](double u) { return r * u * (zero - u); };
  f.deriv = [r, zero](double u) { return r * (zero - 2.0 * u); };
  f.stable_zero = zero;
  f.logistic_rate = r;
  f.label = zero == 1.0 ? "logistic:r=" + format_short(r)
                        : "logistic:r=" + format_short(r) + ",zero=" + format_short(zero);
  return f;
}

ReactionFunction make_logistic(double r) { return make_shifted_logistic(r, 1.0); }

double bisect_root(const std::function<double(double)>& g, double lo, double hi, double abs_tol) {
  double glo = g(lo);
  const double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0)) {
    throw NumericalError("bisect_root: no sign change on [" + format_short(lo) + ", " +
                         format_short(hi) + "]");
  }
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= abs_tol) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ReactionFunction make_polynomial(std::vector<double> coeffs, std::string label) {
  if (coeffs.size() < 2) {
    throw ValidationError("polynomial reaction needs at least two coefficients");
  }
  if (coeffs[0] != 0.0) {
    throw ValidationError("polynomial reaction must vanish at 0 (c0 = 0)");
  }
  auto eval = [coeffs](double u) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
    return acc;
  };
  auto deriv = [coeffs](double u) {
    double acc = 0.0;
    for (std::size_t k = coeffs.size() - 1; k >= 1; --k) {
      acc = acc * u + static_cast<double>(k) * coeffs[k];
    }
    return acc;
  };

  // Scan for the first + to - sign change on (0, 1e3].
  double zero = std::numeric_limits<double>::quiet_NaN();
  const int scan = 200000;
  const double top = 1e3;
  double prev_u = 0.0;
  double prev_f = 0.0;
  for (int k = 1; k <= scan; ++k) {
    const double u = top * std::pow(static_cast<double>(k) / scan, 3.0);
    const double v = eval(u);
    if (k > 1 && prev_f > 0.0 && v <= 0.0) {
      zero = v == 0.0 ? u : bisect_root(eval, prev_u, u);
      break;
    }
    prev_u = u;
    prev_f = v;
  }
  if (!std::isfinite(zero)) {
    throw ValidationError("polynomial reaction has no positive zero with a +/- sign change");
  }

  ReactionFunction f;
  f.eval = eval;
  f.deriv = deriv;
  f.stable_zero = zero;
  if (label.empty()) {
    label = "custom:";
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (k) label += ",";
      label += format_short(coeffs[k]);
    }
  }
  f.label = std::move(label);
  return f;
}

PerturbationPair make_perturbation_pair(const ReactionFunction& base, double epsilon) {
  const double limit = 0.5 * std::min(1.0, base.stable_zero);
  if (!(epsilon > 0.0) || !(epsilon < limit)) {
    throw ValidationError("perturbation epsilon must lie in (0, " + format_short(limit) +
                          "), got " + format_short(epsilon) +
                          "; larger values leave the lower member without a usable "
                          "positivity interval");
  }

  PerturbationPair pair;
  pair.epsilon = epsilon;
  if (base.logistic_rate) {
    const double r = *base.logistic_rate;
    pair.lower = make_shifted_logistic(r, base.stable_zero - epsilon);
    pair.upper = make_shifted_logistic(r, base.stable_zero + epsilon);
  } else {
    auto bump = [](double u) { return u * std::exp(-u); };
    auto bump_d = [](double u) { return (1.0 - u) * std::exp(-u); };
    const auto make = [&](double sign, const std::string& tag) {
      ReactionFunction f;
      auto be = base.eval;
      auto bd = base.deriv;
      f.eval = [be, bump, sign, epsilon](double u) { return be(u) + sign * epsilon * bump(u); };
      f.deriv = [bd, bump_d, sign, epsilon](double u) {
        return bd(u) + sign * epsilon * bump_d(u);
      };
      f.label = base.label + "|" + tag + ":eps=" + format_short(epsilon);
      return f;
    };
    pair.lower = make(-1.0, "lower");
    pair.upper = make(+1.0, "upper");

    const double xi = base.stable_zero;
    // lower < base, so lower's zero sits in (0, xi); upper's sits beyond xi.
    double a = xi;
    for (int k = 0; k < 60 && pair.lower.eval(a) <= 0.0; ++k) a *= 0.5;
    if (!(pair.lower.eval(a) > 0.0)) {
      throw ValidationError("perturbed lower reaction has no positivity interval at epsilon " +
                            format_short(epsilon));
    }
    pair.lower.stable_zero = bisect_root(pair.lower.eval, a, xi);
    double b = xi;
    for (int k = 0; k < 60 && pair.upper.eval(b) >= 0.0; ++k) b = xi + (b - xi + 0.1) * 2.0;
    if (!(pair.upper.eval(b) < 0.0)) {
      throw ValidationError("perturbed upper reaction never turns negative at epsilon " +
                            format_short(epsilon));
    }
    pair.upper.stable_zero = bisect_root(pair.upper.eval, xi, b);
  }

  for (const auto* member : {&pair.lower, &pair.upper}) {
    const auto report = validate_monostable(*member, 2000);
    if (!report.passed()) {
      throw ValidationError("perturbed reaction '" + member->label +
                            "' fails monostability: " + report.failures.front());
    }
  }
  return pair;
}

ValidationReport validate_monostable(const ReactionFunction& f, int grid_n) {
  ValidationReport report;
  if (grid_n < 100) {
    report.failures.push_back("grid_n must be at least 100");
    return report;
  }
  const double xi = f.stable_zero;
  if (!(xi > 0.0) || !std::isfinite(xi)) {
    report.failures.push_back("stable zero must be positive and finite");
    return report;
  }

  const double top = 2.0 * xi;
  double f_scale = 0.0;
  double d_scale = 0.0;
  for (int k = 0; k <= grid_n; ++k) {
    const double u = top * k / grid_n;
    f_scale = std::max(f_scale, std::abs(f.eval(u)));
    d_scale = std::max(d_scale, std::abs(f.deriv(u)));
  }
  f_scale = std::max(f_scale, std::numeric_limits<double>::min());

  const double zero_tol = 1e-14 * std::max(1.0, f_scale);
  if (std::abs(f.eval(0.0)) > zero_tol) report.failures.push_back("zero mismatch at u = 0");
  if (std::abs(f.eval(xi)) > zero_tol) report.failures.push_back("zero mismatch at stable zero");
  if (!(f.deriv(0.0) > 0.0)) report.failures.push_back("f'(0) must be positive");
  if (!(f.deriv(xi) < 0.0)) report.failures.push_back("f'(xi) must be negative");

  bool below_bad = false;
  bool above_bad = false;
  bool deriv_bad = false;
  const double skip = 1e-9 * xi;
  for (int k = 1; k <= grid_n; ++k) {
    const double u = top * k / grid_n;
    const double v = f.eval(u);
    if (std::abs(u - xi) > skip) {
      if (u < xi && !(v > 0.0)) below_bad = true;
      if (u > xi && !(v < 0.0)) above_bad = true;
    }
    const double h = 1e-5 * std::max(1.0, u);
    const double fd = (f.eval(u + h) - f.eval(u - h)) / (2.0 * h);
    const double exact = f.deriv(u);
    if (std::abs(fd - exact) > 1e-6 * std::max(std::abs(exact), d_scale)) deriv_bad = true;
  }
  if (below_bad) report.failures.push_back("sign violation in (0, xi)");
  if (above_bad) report.failures.push_back("sign violation beyond xi");
  if (deriv_bad) report.failures.push_back("derivative mismatch against central difference");
  return report;
}

C1Distance c1_distance(const ReactionFunction& a, const ReactionFunction& b, double upper,
                       int samples) {
  C1Distance dist;
  for (int k = 0; k <= samples; ++k) {
    const double u = upper * k / samples;
    dist.value = std::max(dist.value, std::abs(a.eval(u) - b.eval(u)));
    dist.derivative = std::max(dist.derivative, std::abs(a.deriv(u) - b.deriv(u)));
  }
  return dist;
}

ReactionFunction parse_reaction(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{}
                                                                 : spec.substr(colon + 1);
  if (kind == "logistic") {
    double r = 1.0;
    if (!rest.empty()) {
      if (rest.substr(0, 2) != "r=") {
        throw ValidationError("logistic reaction expects 'logistic:r=<value>', got '" +
                              std::string(spec) + "'");
      }
      r = parse_number(rest.substr(2), "logistic rate");
    }
    return make_logistic(r);
  }
  if (kind == "custom") {
    if (rest.empty()) {
      throw ValidationError("custom reaction expects 'custom:c0,c1,...'");
    }
    std::vector<double> coeffs;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const auto item = rest.substr(pos, comma == std::string_view::npos ? rest.npos : comma - pos);
      coeffs.push_back(parse_number(item, "polynomial coefficient"));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    auto f = make_polynomial(std::move(coeffs), std::string(spec));
    const auto report = validate_monostable(f, 1000);
    if (!report.passed()) {
      throw ValidationError("reaction '" + std::string(spec) +
                            "' is not monostable: " + report.failures.front());
    }
    return f;
  }
  throw ValidationError("unknown reaction '" + std::string(spec) +
                        "' (expected logistic:r=<value> or custom:<c0>,<c1>,...)");
}

}  // namespace fbwave
