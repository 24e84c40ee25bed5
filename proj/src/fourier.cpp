#include "jdisc/fourier.hpp"

#include <cmath>

#include <unsupported/Eigen/FFT>

namespace jdisc::fourier {

namespace {
Eigen::FFT<double>& engine() {
  thread_local Eigen::FFT<double> fft = [] {
    Eigen::FFT<double> f;
    f.SetFlag(Eigen::FFT<double>::Unscaled);
    return f;
  }();
  return fft;
}
}  // namespace

std::vector<cd> forward(std::span<const cd> values) {
  std::vector<cd> in(values.begin(), values.end());
  std::vector<cd> out;
  engine().fwd(out, in);
  const double scale = 1.0 / static_cast<double>(values.size());
  for (auto& c : out) c *= scale;
  return out;
}

std::vector<cd> inverse(std::span<const cd> coefficients) {
  std::vector<cd> in(coefficients.begin(), coefficients.end());
  std::vector<cd> out;
  engine().inv(out, in);
  return out;
}

cd evaluate(std::span<const cd> coefficients, double theta) {
  const int n = static_cast<int>(coefficients.size());
  const cd step = std::polar(1.0, theta);
  // Positive and negative wavenumbers accumulated by Horner recursion.
  cd pos = 0.0;
  for (int k = n / 2 - 1; k >= 1; --k) pos = (pos + coefficients[k]) * step;
  cd neg = 0.0;
  const cd back = std::conj(step);
  for (int k = n / 2 - 1; k >= 1; --k) neg = (neg + coefficients[n - k]) * back;
  const cd nyquist = coefficients[n / 2] * std::cos(0.5 * n * theta);
  return coefficients[0] + pos + neg + nyquist;
}

}  // namespace jdisc::fourier
