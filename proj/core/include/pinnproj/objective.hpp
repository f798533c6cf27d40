#pragma once

#include <functional>
#include <span>

namespace pinnproj {

/// Scalar objective over a flat parameter vector. `value_and_grad` writes
/// d(value)/d(theta) into `grad` (same length as theta) and returns the
/// value; `value` evaluates without touching gradients.
struct Objective {
  std::function<double(std::span<const double>)> value;
  std::function<double(std::span<const double>, std::span<double>)> value_and_grad;
};

}  // namespace pinnproj
