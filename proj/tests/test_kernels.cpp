// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>
#include <vector>

#include "iodir/error.hpp"
#include "iodir/kernels.hpp"
#include "iodir/random.hpp"
#include "iodir/sdp.hpp"

using namespace iodir;
namespace k = iodir::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

struct BackendGuard {
  ~BackendGuard() { k::reset_backend(); }
};

}  // namespace

TEST_CASE("scalar kernels against plain loops") {
  std::mt19937_64 rng(11);
  const auto& s = k::scalar_table();
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u, 1000u}) {
    auto x = random_vec(n, rng), y = random_vec(n, rng);
    double d = 0;
    for (std::size_t i = 0; i < n; ++i) d += x[i] * y[i];
    CHECK(s.dot(n, x.data(), y.data()) == doctest::Approx(d).epsilon(1e-12));
    auto y2 = y;
    s.axpby(n, 0.5, x.data(), -2.0, y2.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(y2[i] == doctest::Approx(0.5 * x[i] - 2.0 * y[i]));
    auto y3 = y;
    s.axpy(n, 3.0, x.data(), y3.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(y3[i] == doctest::Approx(3.0 * x[i] + y[i]));
    auto x2 = x;
    s.scale(n, -1.5, x2.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(x2[i] == -1.5 * x[i]);
  }
}

TEST_CASE("avx2 kernels agree with scalar kernels") {
  if (!k::cpu_has_avx2() || k::avx2_table() == nullptr) {
    MESSAGE("AVX2 kernels unavailable; equivalence skipped");
    return;
  }
  const auto& s = k::scalar_table();
  const auto& v = *k::avx2_table();
  std::mt19937_64 rng(12);
  for (std::size_t n = 0; n < 70; ++n) {
    for (std::size_t big : {n, n + 4093}) {
      auto x = random_vec(big, rng), y = random_vec(big, rng);
      double ds = s.dot(big, x.data(), y.data()), dv = v.dot(big, x.data(), y.data());
      double scale = 1.0;
      for (std::size_t i = 0; i < big; ++i) scale += std::abs(x[i] * y[i]);
      CHECK(std::abs(ds - dv) <= 1e-14 * scale);

      auto ys = y, yv = y;
      s.axpby(big, 0.3, x.data(), 1.7, ys.data());
      v.axpby(big, 0.3, x.data(), 1.7, yv.data());
      CHECK(max_abs_diff(ys, yv) <= 1e-14);
      ys = y;
      yv = y;
      s.axpy(big, -0.9, x.data(), ys.data());
      v.axpy(big, -0.9, x.data(), yv.data());
      CHECK(max_abs_diff(ys, yv) <= 1e-14);
      ys = x;
      yv = x;
      s.scale(big, 2.5, ys.data());
      v.scale(big, 2.5, yv.data());
      CHECK(max_abs_diff(ys, yv) == 0.0);
    }
  }
}

TEST_CASE("backend selection") {
  BackendGuard g;
  k::force_backend(k::Backend::Scalar);
  CHECK(k::active_backend() == k::Backend::Scalar);
  CHECK(k::backend_name(k::Backend::Scalar) == "scalar");
  if (k::cpu_has_avx2() && k::avx2_table()) {
    k::force_backend(k::Backend::Avx2);
    CHECK(k::active_backend() == k::Backend::Avx2);
  } else {
    CHECK_THROWS_AS(k::force_backend(k::Backend::Avx2), DomainError);
  }
  k::reset_backend();
  CHECK(k::active_backend() == k::default_backend());
}

TEST_CASE("robustness is backend independent") {
  if (!k::cpu_has_avx2() || k::avx2_table() == nullptr) {
    MESSAGE("AVX2 kernels unavailable; end-to-end comparison skipped");
    return;
  }
  BackendGuard g;
  auto s = qtf_plus_control();
  k::force_backend(k::Backend::Scalar);
  auto a = sdp::solve_max_robustness(s);
  k::force_backend(k::Backend::Avx2);
  auto b = sdp::solve_max_robustness(s);
  CHECK(std::abs(a.robustness - b.robustness) < 1e-7);
  CHECK(a.report.converged);
  CHECK(b.report.converged);
}
