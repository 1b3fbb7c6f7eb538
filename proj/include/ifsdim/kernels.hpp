#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Small data-parallel kernels used in the hot loops (measure integrals,
// batch map application).  Scalar reference implementations always exist;
// an AVX2 variant is selected at runtime when the CPU supports it.

namespace ifsdim::kernels {

// y[i] = a * x[i] + b
void axpb(double a, std::span<const double> x, double b, std::span<double> y);

double sum(std::span<const double> x);

double dot(std::span<const double> x, std::span<const double> y);

// Name of the active backend ("scalar" or "avx2").
std::string_view backend_name();

// Force the scalar path, regardless of CPU support.  Used by the
// equivalence tests; not thread-safe with concurrent kernel calls.
void force_scalar(bool on);

namespace detail {

void axpb_scalar(double a, const double* x, double b, double* y, std::size_t n);
double sum_scalar(const double* x, std::size_t n);
double dot_scalar(const double* x, const double* y, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
void axpb_avx2(double a, const double* x, double b, double* y, std::size_t n);
double sum_avx2(const double* x, std::size_t n);
double dot_avx2(const double* x, const double* y, std::size_t n);
#endif

}  // namespace detail

}  // namespace ifsdim::kernels
