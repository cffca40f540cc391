// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <functional>

#include <Eigen/Dense>

#include "iodir/layout.hpp"

namespace iodir {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianWarnTol = 1e-12;
inline constexpr double kHermitianErrorTol = 1e-8;

// Called when construction symmetrizes an input whose asymmetry exceeds the
// warning threshold. Default handler only counts.
using HermiticityHandler = std::function<void(double asymmetry)>;
void set_hermiticity_handler(HermiticityHandler handler);
std::size_t hermiticity_warning_count();

class HermitianOperator {
 public:
  HermitianOperator() = default;
  // Symmetrizes; throws DomainError if the input is far from Hermitian or
  // its size does not match the layout.
  HermitianOperator(SystemLayout layout, Matrix m);

  static HermitianOperator identity(const SystemLayout& layout);
  static HermitianOperator zero(const SystemLayout& layout);
  // |v><v|
  static HermitianOperator projector(const SystemLayout& layout, const Vector& v);

  const SystemLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  double trace() const { return m_.trace().real(); }
  // Hilbert-Schmidt inner product Tr(A B), real for Hermitian pairs.
  double inner(const HermitianOperator& other) const;

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator*(double s) const;
  HermitianOperator& operator+=(const HermitianOperator& o);

 private:
  SystemLayout layout_;
  Matrix m_;
};

inline HermitianOperator operator*(double s, const HermitianOperator& a) { return a * s; }

class Ket {
 public:
  Ket() = default;
  Ket(SystemLayout layout, Vector v);

  const SystemLayout& layout() const { return layout_; }
  const Vector& amplitudes() const { return v_; }
  int dim() const { return static_cast<int>(v_.size()); }
  double norm() const { return v_.norm(); }
  HermitianOperator projector() const;

 private:
  SystemLayout layout_;
  Vector v_;
};

// Real inner product Re Tr(A^dag B) on raw matrices.
double hs_inner(const Matrix& a, const Matrix& b);
double asymmetry(const Matrix& m);

}  // namespace iodir
