#include "ifsdim/kernels.hpp"

#include <cmath>

namespace ifsdim::kernels::detail {

void axpb_scalar(double a, const double* x, double b, double* y, std::size_t n) {
  // fused multiply-add keeps the result bitwise equal to the vector path
  for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(a, x[i], b);
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

}  // namespace ifsdim::kernels::detail
