#pragma once

#include <type_traits>

// Fourth-order central differences shared by the field classes.

namespace jdisc::detail {

template <class F>
auto central_difference(F&& f, double h) -> std::decay_t<decltype(f(h))> {
  return (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) * (1.0 / (12.0 * h));
}

template <class F>
auto second_difference(F&& f, double h) -> std::decay_t<decltype(f(h))> {
  return (-f(-2.0 * h) + 16.0 * f(-h) - 30.0 * f(0.0) + 16.0 * f(h) - f(2.0 * h)) * (1.0 / (12.0 * h * h));
}

}  // namespace jdisc::detail
