// SPDX-License-Identifier: Apache-2.0
#include "iodir/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "iodir/error.hpp"

namespace iodir {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

HermitianOperator tensor_product(const std::vector<HermitianOperator>& ops) {
  if (ops.empty()) return HermitianOperator(SystemLayout{}, Matrix::Ones(1, 1));
  SystemLayout l = ops.front().layout();
  Matrix m = ops.front().matrix();
  for (std::size_t i = 1; i < ops.size(); ++i) {
    l = l.concat(ops[i].layout());
    m = kron(m, ops[i].matrix());
  }
  return HermitianOperator(std::move(l), std::move(m));
}

Ket tensor_product(const std::vector<Ket>& kets) {
  if (kets.empty()) return Ket(SystemLayout{}, Vector::Ones(1));
  SystemLayout l = kets.front().layout();
  Vector v = kets.front().amplitudes();
  for (std::size_t i = 1; i < kets.size(); ++i) {
    l = l.concat(kets[i].layout());
    v = kron(v, kets[i].amplitudes());
  }
  return Ket(std::move(l), std::move(v));
}

IndexSplit::IndexSplit(const std::vector<int>& dims, const std::vector<bool>& traced) {
  if (dims.size() != traced.size()) throw LayoutError("IndexSplit: mask size mismatch");
  const std::size_t nf = dims.size();
  int total = 1;
  for (std::size_t f = 0; f < nf; ++f) {
    total *= dims[f];
    (traced[f] ? traced_dim_ : kept_dim_) *= dims[f];
  }
  rows_.assign(traced_dim_, std::vector<int>(kept_dim_, 0));
  std::vector<int> digit(nf, 0);
  for (int idx = 0; idx < total; ++idx) {
    int k = 0, x = 0;
    for (std::size_t f = 0; f < nf; ++f) {
      if (traced[f])
        x = x * dims[f] + digit[f];
      else
        k = k * dims[f] + digit[f];
    }
    rows_[x][k] = idx;
    for (int f = static_cast<int>(nf) - 1; f >= 0; --f) {
      if (++digit[f] < dims[f]) break;
      digit[f] = 0;
    }
  }
}

Matrix IndexSplit::partial_trace(const Matrix& m) const {
  Matrix out = Matrix::Zero(kept_dim_, kept_dim_);
  for (const auto& r : rows_) out += m(r, r);
  return out;
}

Matrix IndexSplit::embed(const Matrix& p) const {
  const int n = kept_dim_ * traced_dim_;
  Matrix out = Matrix::Zero(n, n);
  for (const auto& r : rows_) out(r, r) = p;
  return out;
}

Matrix IndexSplit::trace_and_replace(const Matrix& m) const {
  return embed(partial_trace(m) / static_cast<double>(traced_dim_));
}

Matrix partial_trace(const Matrix& m, const std::vector<int>& dims, const std::vector<bool>& keep) {
  std::vector<bool> traced(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) traced[i] = !keep[i];
  return IndexSplit(dims, traced).partial_trace(m);
}

Matrix trace_and_replace(const Matrix& m, const std::vector<int>& dims,
                         const std::vector<bool>& replaced) {
  return IndexSplit(dims, replaced).trace_and_replace(m);
}

HermitianOperator partial_trace(const HermitianOperator& op, const std::vector<std::string>& kept) {
  const auto& l = op.layout();
  auto keep = l.mask_of(kept);
  return HermitianOperator(l.subset(kept), partial_trace(op.matrix(), l.dims(), keep));
}

HermitianOperator trace_and_replace(const HermitianOperator& op,
                                    const std::vector<std::string>& replaced) {
  const auto& l = op.layout();
  return HermitianOperator(l, trace_and_replace(op.matrix(), l.dims(), l.mask_of(replaced)));
}

Vector vec_double_ket(const Matrix& m) {
  const Eigen::Index out = m.rows(), in = m.cols();
  Vector v(in * out);
  for (Eigen::Index j = 0; j < in; ++j)
    for (Eigen::Index i = 0; i < out; ++i) v(j * out + i) = m(i, j);
  return v;
}

Matrix unvec_double_ket(const Vector& v, int in_dim, int out_dim) {
  if (v.size() != static_cast<Eigen::Index>(in_dim) * out_dim)
    throw LayoutError("unvec_double_ket: length mismatch");
  Matrix m(out_dim, in_dim);
  for (int j = 0; j < in_dim; ++j)
    for (int i = 0; i < out_dim; ++i) m(i, j) = v(j * out_dim + i);
  return m;
}

Ket double_ket(const Matrix& m) {
  if (m.rows() != m.cols()) throw DomainError("double_ket: matrix must be square");
  int d = static_cast<int>(m.rows());
  return Ket(SystemLayout{{"in", d}, {"out", d}}, vec_double_ket(m));
}

Ket double_ket(const Matrix& m, const SystemLayout& in, const SystemLayout& out) {
  if (m.rows() != out.total_dim() || m.cols() != in.total_dim())
    throw LayoutError("double_ket: matrix shape does not match layouts");
  return Ket(in.concat(out), vec_double_ket(m));
}

namespace {

std::vector<int> index_permutation(const std::vector<int>& dims, const std::vector<int>& perm) {
  const std::size_t nf = dims.size();
  if (perm.size() != nf) throw LayoutError("permute: permutation size mismatch");
  std::vector<int> new_dims(nf);
  for (std::size_t k = 0; k < nf; ++k) new_dims[k] = dims[perm[k]];
  // Strides of each old factor inside the new ordering.
  std::vector<int> new_stride(nf);
  int s = 1;
  for (int k = static_cast<int>(nf) - 1; k >= 0; --k) {
    new_stride[perm[k]] = s;
    s *= new_dims[k];
  }
  std::vector<int> map(s);
  std::vector<int> digit(nf, 0);
  for (int idx = 0; idx < s; ++idx) {
    int t = 0;
    for (std::size_t f = 0; f < nf; ++f) t += digit[f] * new_stride[f];
    map[idx] = t;
    for (int f = static_cast<int>(nf) - 1; f >= 0; --f) {
      if (++digit[f] < dims[f]) break;
      digit[f] = 0;
    }
  }
  return map;
}

std::vector<int> order_to_perm(const SystemLayout& l, const std::vector<std::string>& order) {
  if (order.size() != l.size()) throw LayoutError("permute_factors: order must list every factor");
  std::vector<int> perm;
  for (const auto& lab : order) perm.push_back(static_cast<int>(l.index_of(lab)));
  return perm;
}

}  // namespace

Matrix permute(const Matrix& m, const std::vector<int>& dims, const std::vector<int>& perm) {
  auto map = index_permutation(dims, perm);
  const int n = static_cast<int>(map.size());
  Matrix out(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) out(map[i], map[j]) = m(i, j);
  return out;
}

Vector permute(const Vector& v, const std::vector<int>& dims, const std::vector<int>& perm) {
  auto map = index_permutation(dims, perm);
  Vector out(v.size());
  for (std::size_t i = 0; i < map.size(); ++i) out(map[i]) = v(i);
  return out;
}

HermitianOperator permute_factors(const HermitianOperator& op, const std::vector<std::string>& order) {
  const auto& l = op.layout();
  return HermitianOperator(l.reordered(order), permute(op.matrix(), l.dims(), order_to_perm(l, order)));
}

Ket permute_factors(const Ket& k, const std::vector<std::string>& order) {
  const auto& l = k.layout();
  return Ket(l.reordered(order), permute(k.amplitudes(), l.dims(), order_to_perm(l, order)));
}

namespace {

std::vector<std::string> swapped_order(const SystemLayout& l, const std::string& a, const std::string& b) {
  auto labels = l.labels();
  std::swap(labels[l.index_of(a)], labels[l.index_of(b)]);
  return labels;
}

}  // namespace

// The swapped factors also exchange labels, so the result keeps the input's
// label sequence: only the contents move.
HermitianOperator swap_factors(const HermitianOperator& op, const std::string& a, const std::string& b) {
  const auto& l = op.layout();
  if (l.dim_of(a) != l.dim_of(b)) throw LayoutError("swap_factors: dimensions differ");
  auto p = permute_factors(op, swapped_order(l, a, b));
  return HermitianOperator(l, p.matrix());
}

Ket swap_factors(const Ket& k, const std::string& a, const std::string& b) {
  const auto& l = k.layout();
  if (l.dim_of(a) != l.dim_of(b)) throw LayoutError("swap_factors: dimensions differ");
  auto p = permute_factors(k, swapped_order(l, a, b));
  return Ket(l, p.amplitudes());
}

Ket swap_factors(const Ket& k) {
  if (k.layout().size() != 2) throw LayoutError("swap_factors: expected two factors");
  return swap_factors(k, k.layout()[0].label, k.layout()[1].label);
}

Matrix psd_project(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eigendecomposition failed (operator norm estimate " << m.norm() << ")";
    throw NumericalError(os.str());
  }
  RealVector ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  return es.eigenvalues().minCoeff();
}

HermitianOperator psd_project(const HermitianOperator& op) {
  return HermitianOperator(op.layout(), psd_project(op.matrix()));
}

Norms norms(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(op.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  RealVector s = es.eigenvalues().cwiseAbs();
  return {s.norm(), s.maxCoeff(), s.sum()};
}

double min_eigenvalue(const HermitianOperator& op) { return min_eigenvalue(op.matrix()); }

}  // namespace iodir
