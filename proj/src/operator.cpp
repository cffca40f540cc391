// SPDX-License-Identifier: Apache-2.0
#include "iodir/operator.hpp"

#include <atomic>
#include <mutex>
#include <sstream>

#include "iodir/error.hpp"
#include "iodir/kernels.hpp"

namespace iodir {

namespace {

std::atomic<std::size_t> g_warnings{0};
std::mutex g_handler_mu;
HermiticityHandler g_handler;

void note_asymmetry(double a) {
  g_warnings.fetch_add(1, std::memory_order_relaxed);
  HermiticityHandler h;
  {
    std::lock_guard<std::mutex> lock(g_handler_mu);
    h = g_handler;
  }
  if (h) h(a);
}

}  // namespace

void set_hermiticity_handler(HermiticityHandler handler) {
  std::lock_guard<std::mutex> lock(g_handler_mu);
  g_handler = std::move(handler);
}

std::size_t hermiticity_warning_count() { return g_warnings.load(); }

double asymmetry(const Matrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

double hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw LayoutError("hs_inner: shape mismatch");
  return kernels::dot(2 * static_cast<std::size_t>(a.size()), reinterpret_cast<const double*>(a.data()),
                      reinterpret_cast<const double*>(b.data()));
}

HermitianOperator::HermitianOperator(SystemLayout layout, Matrix m)
    : layout_(std::move(layout)), m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() != layout_.total_dim()) {
    std::ostringstream os;
    os << "operator of size " << m_.rows() << "x" << m_.cols() << " does not match layout "
       << layout_.to_string();
    throw DomainError(os.str());
  }
  if (m_.size() == 0) return;
  double a = asymmetry(m_);
  if (a > kHermitianErrorTol) {
    std::ostringstream os;
    os << "operator is not Hermitian (max |A - A^dag| = " << a << ")";
    throw DomainError(os.str());
  }
  if (a > kHermitianWarnTol) note_asymmetry(a);
  if (a > 0.0) {
    Matrix h = 0.5 * (m_ + m_.adjoint());
    m_ = std::move(h);
  }
}

HermitianOperator HermitianOperator::identity(const SystemLayout& layout) {
  int n = layout.total_dim();
  return HermitianOperator(layout, Matrix::Identity(n, n));
}

HermitianOperator HermitianOperator::zero(const SystemLayout& layout) {
  int n = layout.total_dim();
  return HermitianOperator(layout, Matrix::Zero(n, n));
}

HermitianOperator HermitianOperator::projector(const SystemLayout& layout, const Vector& v) {
  return HermitianOperator(layout, v * v.adjoint());
}

double HermitianOperator::inner(const HermitianOperator& other) const {
  if (!(layout_ == other.layout_)) throw LayoutError("inner: layout mismatch");
  return hs_inner(m_, other.m_);
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  if (!(layout_ == o.layout_)) throw LayoutError("operator+: layout mismatch");
  return HermitianOperator(layout_, m_ + o.m_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  if (!(layout_ == o.layout_)) throw LayoutError("operator-: layout mismatch");
  return HermitianOperator(layout_, m_ - o.m_);
}

HermitianOperator HermitianOperator::operator*(double s) const {
  return HermitianOperator(layout_, m_ * s);
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& o) {
  if (!(layout_ == o.layout_)) throw LayoutError("operator+=: layout mismatch");
  m_ += o.m_;
  return *this;
}

Ket::Ket(SystemLayout layout, Vector v) : layout_(std::move(layout)), v_(std::move(v)) {
  if (v_.size() != layout_.total_dim())
    throw DomainError("ket length " + std::to_string(v_.size()) + " does not match layout " +
                      layout_.to_string());
}

HermitianOperator Ket::projector() const { return HermitianOperator::projector(layout_, v_); }

}  // namespace iodir
