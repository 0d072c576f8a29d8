#pragma once

#include <exception>

#include "fbwave/kernels.hpp"

namespace fbwave::kernels::detail {

double step_rhs_node(const StepRhsInputs& in, std::size_t j, double half_r);
TaskError capture(const std::exception_ptr& ep);

}  // namespace fbwave::kernels::detail
