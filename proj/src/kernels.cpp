// SPDX-License-Identifier: Apache-2.0
#include "iodir/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "iodir/error.hpp"

namespace iodir::kernels {

namespace {

void axpby_scalar(std::size_t n, double a, const double* x, double b, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

void axpy_scalar(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot_scalar(std::size_t n, const double* x, const double* y) {
  // Four partial sums, same association as the vector variant.
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  double s = (s0 + s2) + (s1 + s3);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void scale_scalar(std::size_t n, double a, double* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

const KernelTable kScalar{axpby_scalar, axpy_scalar, dot_scalar, scale_scalar};

std::atomic<int> g_forced{-1};

Backend env_or_detect() {
  const char* env = std::getenv("IODIR_KERNELS");
  if (env && std::strcmp(env, "scalar") == 0) return Backend::Scalar;
  if (cpu_has_avx2() && avx2_table() != nullptr) return Backend::Avx2;
  return Backend::Scalar;
}

}  // namespace

#if defined(IODIR_HAVE_AVX2)
const KernelTable* avx2_table_impl();
#endif

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(IODIR_HAVE_AVX2)
  return avx2_table_impl();
#else
  return nullptr;
#endif
}

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend default_backend() {
  static const Backend b = env_or_detect();
  return b;
}

Backend active_backend() {
  int f = g_forced.load(std::memory_order_relaxed);
  return f < 0 ? default_backend() : static_cast<Backend>(f);
}

void force_backend(Backend b) {
  if (b == Backend::Avx2 && (!cpu_has_avx2() || avx2_table() == nullptr))
    throw DomainError("AVX2 kernels are not available on this machine");
  g_forced.store(static_cast<int>(b));
}

void reset_backend() { g_forced.store(-1); }

const KernelTable& active() {
  if (active_backend() == Backend::Avx2) return *avx2_table();
  return kScalar;
}

std::string backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

}  // namespace iodir::kernels
