#include "ifsdim/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace ifsdim::kernels {

namespace {

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  if (std::getenv("IFSDIM_FORCE_SCALAR") != nullptr) return false;
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<bool> g_force_scalar{false};

bool use_avx2() {
  static const bool avail = avx2_available();
  return avail && !g_force_scalar.load(std::memory_order_relaxed);
}

}  // namespace

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

std::string_view backend_name() { return use_avx2() ? "avx2" : "scalar"; }

void axpb(double a, std::span<const double> x, double b, std::span<double> y) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) {
    detail::axpb_avx2(a, x.data(), b, y.data(), x.size());
    return;
  }
#endif
  detail::axpb_scalar(a, x.data(), b, y.data(), x.size());
}

double sum(std::span<const double> x) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) return detail::sum_avx2(x.data(), x.size());
#endif
  return detail::sum_scalar(x.data(), x.size());
}

double dot(std::span<const double> x, std::span<const double> y) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) return detail::dot_avx2(x.data(), y.data(), x.size());
#endif
  return detail::dot_scalar(x.data(), y.data(), x.size());
}

}  // namespace ifsdim::kernels
