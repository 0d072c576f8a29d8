#pragma once

#include <cstddef>
#include <vector>

namespace fbwave {

/// Piecewise cubic Hermite interpolant over strictly increasing abscissae.
///
/// Node slopes are taken as given (typically exact ODE right-hand sides) and
/// limited with the Fritsch-Carlson condition on every interval where the data
/// is monotone, so monotone data yields a monotone interpolant.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> slope);

  double operator()(double x) const;
  double derivative(double x) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  std::size_t size() const { return x_.size(); }
  bool empty() const { return x_.empty(); }

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  const std::vector<double>& slope() const { return m_; }

 private:
  std::size_t interval(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;
};

}  // namespace fbwave
