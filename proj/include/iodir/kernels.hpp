// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>

namespace iodir::kernels {

// All kernels operate on flat double arrays; complex data is passed as
// interleaved (re, im) pairs with n counting doubles.
enum class Backend { Scalar, Avx2 };

struct KernelTable {
  // y = a*x + b*y
  void (*axpby)(std::size_t n, double a, const double* x, double b, double* y);
  // y += a*x
  void (*axpy)(std::size_t n, double a, const double* x, double* y);
  // sum x[i]*y[i]
  double (*dot)(std::size_t n, const double* x, const double* y);
  // x *= a
  void (*scale)(std::size_t n, double a, double* x);
};

const KernelTable& scalar_table();
// Null entries when the AVX2 variants were not compiled in.
const KernelTable* avx2_table();

bool cpu_has_avx2();
Backend default_backend();
Backend active_backend();
// Test hook. Throws DomainError when the backend is unavailable.
void force_backend(Backend b);
void reset_backend();
const KernelTable& active();
std::string backend_name(Backend b);

inline void axpby(std::size_t n, double a, const double* x, double b, double* y) {
  active().axpby(n, a, x, b, y);
}
inline void axpy(std::size_t n, double a, const double* x, double* y) { active().axpy(n, a, x, y); }
inline double dot(std::size_t n, const double* x, const double* y) { return active().dot(n, x, y); }
inline void scale(std::size_t n, double a, double* x) { active().scale(n, a, x); }

}  // namespace iodir::kernels
