#pragma once

#include <stdexcept>
#include <string>

namespace fbwave {

/// Bad input: a parameter, file or option outside its admissible set.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation that started from valid input but could not finish.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double last_good)
      : NumericalError(what + " (last good abscissa " + std::to_string(last_good) + ")"),
        last_good_(last_good) {}

  double last_good() const noexcept { return last_good_; }

 private:
  double last_good_;
};

}  // namespace fbwave
