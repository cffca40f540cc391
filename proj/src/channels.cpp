// SPDX-License-Identifier: Apache-2.0
#include "iodir/channels.hpp"

#include <sstream>

#include <Eigen/Eigenvalues>

#include "iodir/error.hpp"
#include "iodir/tensor.hpp"

namespace iodir {

KrausMap::KrausMap(int in_dim, int out_dim, std::vector<Matrix> kraus)
    : in_dim_(in_dim), out_dim_(out_dim), kraus_(std::move(kraus)) {
  if (in_dim_ <= 0 || out_dim_ <= 0) throw DomainError("Kraus map dimensions must be positive");
  for (const auto& k : kraus_)
    if (k.rows() != out_dim_ || k.cols() != in_dim_)
      throw DomainError("Kraus operator shape must be out_dim x in_dim");
}

Matrix KrausMap::apply(const Matrix& rho) const {
  if (rho.rows() != in_dim_ || rho.cols() != in_dim_) throw DomainError("apply: input dimension mismatch");
  Matrix out = Matrix::Zero(out_dim_, out_dim_);
  for (const auto& k : kraus_) out += k * rho * k.adjoint();
  return out;
}

Matrix KrausMap::dual_unit() const {
  Matrix s = Matrix::Zero(in_dim_, in_dim_);
  for (const auto& k : kraus_) s += k.adjoint() * k;
  return s;
}

Matrix KrausMap::unit_image() const {
  Matrix s = Matrix::Zero(out_dim_, out_dim_);
  for (const auto& k : kraus_) s += k * k.adjoint();
  return s;
}

KrausChannel::KrausChannel(int in_dim, int out_dim, std::vector<Matrix> kraus, double tol)
    : KrausMap(in_dim, out_dim, std::move(kraus)) {
  double err = (dual_unit() - Matrix::Identity(in_dim_, in_dim_)).cwiseAbs().maxCoeff();
  if (err > tol) {
    std::ostringstream os;
    os << "Kraus family is not trace preserving (max deviation " << err << ")";
    throw DomainError(os.str());
  }
}

KrausChannel::KrausChannel(const KrausMap& m, double tol)
    : KrausChannel(m.in_dim(), m.out_dim(), m.kraus(), tol) {}

KrausChannel KrausChannel::unitary(const Matrix& u) {
  if (u.rows() != u.cols()) throw DomainError("unitary must be square");
  int d = static_cast<int>(u.rows());
  return KrausChannel(d, d, {u}, 1e-10);
}

HermitianOperator kraus_to_choi(const KrausMap& ch, const SystemLayout& in, const SystemLayout& out) {
  if (in.total_dim() != ch.in_dim() || out.total_dim() != ch.out_dim())
    throw LayoutError("kraus_to_choi: layouts do not match channel dimensions");
  const int n = ch.in_dim() * ch.out_dim();
  Matrix c = Matrix::Zero(n, n);
  for (const auto& k : ch.kraus()) {
    Vector v = vec_double_ket(k);
    c.noalias() += v * v.adjoint();
  }
  return HermitianOperator(in.concat(out), std::move(c));
}

HermitianOperator kraus_to_choi(const KrausMap& ch) {
  return kraus_to_choi(ch, SystemLayout{{"in", ch.in_dim()}}, SystemLayout{{"out", ch.out_dim()}});
}

KrausMap choi_to_kraus(const HermitianOperator& choi, int in_dim, double tol) {
  const int n = choi.dim();
  if (in_dim <= 0 || n % in_dim != 0) throw LayoutError("choi_to_kraus: input dimension does not divide size");
  const int out_dim = n / in_dim;
  Eigen::SelfAdjointEigenSolver<Matrix> es(choi.matrix());
  if (es.info() != Eigen::Success) throw NumericalError("choi_to_kraus: eigendecomposition failed");
  const auto& ev = es.eigenvalues();
  if (ev.minCoeff() < -tol) {
    std::ostringstream os;
    os << "Choi matrix is not positive (min eigenvalue " << ev.minCoeff() << ")";
    throw DomainError(os.str());
  }
  // Eigenvalues below tol are rank-deficiency noise.
  double cut = std::max(tol, 1e-12 * std::max(1.0, ev.maxCoeff()));
  std::vector<Matrix> kraus;
  for (int i = n - 1; i >= 0; --i) {
    if (ev(i) <= cut) continue;
    Vector v = std::sqrt(ev(i)) * es.eigenvectors().col(i);
    kraus.push_back(unvec_double_ket(v, in_dim, out_dim));
  }
  return KrausMap(in_dim, out_dim, std::move(kraus));
}

bool is_bistochastic(const KrausMap& ch, double tol) {
  if (ch.in_dim() != ch.out_dim()) throw DomainError("is_bistochastic: input and output dimensions differ");
  const int d = ch.in_dim();
  Matrix id = Matrix::Identity(d, d);
  return (ch.dual_unit() - id).cwiseAbs().maxCoeff() <= tol &&
         (ch.unit_image() - id).cwiseAbs().maxCoeff() <= tol;
}

KrausChannel input_output_inversion(const KrausChannel& ch, double tol) {
  if (!is_bistochastic(ch, tol)) throw DomainError("input-output inversion requires a bistochastic channel");
  std::vector<Matrix> t;
  t.reserve(ch.kraus().size());
  for (const auto& k : ch.kraus()) t.push_back(k.transpose());
  return KrausChannel(ch.out_dim(), ch.in_dim(), std::move(t), tol);
}

KrausChannel BistochasticInstrument::sum() const {
  if (branches.empty()) throw DomainError("instrument has no branches");
  std::vector<Matrix> all;
  for (const auto& b : branches)
    for (const auto& k : b.kraus()) all.push_back(k);
  return KrausChannel(branches.front().in_dim(), branches.front().out_dim(), std::move(all));
}

namespace {

void require_orthonormal(const Matrix& b, const char* what, double tol) {
  if (b.rows() != 2 || b.cols() != 2) throw DomainError(std::string(what) + " must be a 2x2 basis");
  double err = (b.adjoint() * b - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff();
  if (err > tol) throw DomainError(std::string(what) + " is not orthonormal");
}

}  // namespace

BistochasticInstrument measure_and_reprepare(const Matrix& v_basis, const Matrix& w_basis, double tol) {
  require_orthonormal(v_basis, "measurement basis", tol);
  require_orthonormal(w_basis, "repreparation basis", tol);
  BistochasticInstrument inst;
  for (int i = 0; i < 2; ++i)
    inst.branches.emplace_back(2, 2, std::vector<Matrix>{w_basis.col(i) * v_basis.col(i).adjoint()});
  return inst;
}

}  // namespace iodir
