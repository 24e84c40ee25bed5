#pragma once

#include <span>
#include <vector>

#include "jdisc/types.hpp"

namespace jdisc::fourier {

// Signed wavenumber of FFT slot idx (slot N/2 maps to -N/2).
inline int wavenumber(int idx, int n) { return idx < n / 2 ? idx : idx - n; }
inline int slot(int wavenumber, int n) { return ((wavenumber % n) + n) % n; }

// c_k = (1/N) sum_j f_j e^{-i k theta_j}
std::vector<cd> forward(std::span<const cd> values);
// f_j = sum_k c_k e^{i k theta_j}
std::vector<cd> inverse(std::span<const cd> coefficients);

// Evaluate the trigonometric interpolant sum_k c_k e^{ik theta} at an
// arbitrary angle; the Nyquist slot is split symmetrically.
cd evaluate(std::span<const cd> coefficients, double theta);

}  // namespace jdisc::fourier
