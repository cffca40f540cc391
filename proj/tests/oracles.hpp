// SPDX-License-Identifier: Apache-2.0
// Brute-force reference implementations used to cross-check the library.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/LU>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
using V = Eigen::VectorXcd;

inline M kron(const M& a, const M& b) {
  M r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

inline M kron_all(const std::vector<M>& ms) {
  M r = M::Ones(1, 1);
  for (const auto& m : ms) r = kron(r, m);
  return r;
}

inline std::vector<int> digits(int index, const std::vector<int>& dims) {
  std::vector<int> d(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    d[k] = index % dims[k];
    index /= dims[k];
  }
  return d;
}

inline int compose(const std::vector<int>& d, const std::vector<int>& dims) {
  int i = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) i = i * dims[k] + d[k];
  return i;
}

inline int product(const std::vector<int>& dims) {
  int n = 1;
  for (int d : dims) n *= d;
  return n;
}

// Sum over matching traced digits, loops over every entry of the full matrix.
inline M partial_trace(const M& m, const std::vector<int>& dims, const std::vector<bool>& keep) {
  std::vector<int> kd;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (keep[k]) kd.push_back(dims[k]);
  const int n = product(dims), nk = product(kd);
  M r = M::Zero(nk, nk);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto di = digits(i, dims), dj = digits(j, dims);
      bool match = true;
      std::vector<int> ki, kj;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (keep[k]) {
          ki.push_back(di[k]);
          kj.push_back(dj[k]);
        } else if (di[k] != dj[k]) {
          match = false;
        }
      }
      if (match) r(compose(ki, kd), compose(kj, kd)) += m(i, j);
    }
  return r;
}

inline M trace_and_replace(const M& m, const std::vector<int>& dims, const std::vector<bool>& replaced) {
  std::vector<bool> keep(dims.size());
  std::vector<int> kd;
  int dr = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    keep[k] = !replaced[k];
    if (keep[k]) kd.push_back(dims[k]);
    else dr *= dims[k];
  }
  M p = partial_trace(m, dims, keep);
  const int n = product(dims);
  M r = M::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto di = digits(i, dims), dj = digits(j, dims);
      bool diag = true;
      std::vector<int> ki, kj;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (keep[k]) {
          ki.push_back(di[k]);
          kj.push_back(dj[k]);
        } else if (di[k] != dj[k]) {
          diag = false;
        }
      }
      if (diag) r(i, j) = p(compose(ki, kd), compose(kj, kd)) / static_cast<double>(dr);
    }
  return r;
}

// new factor k is old factor perm[k].
inline M permute(const M& m, const std::vector<int>& dims, const std::vector<int>& perm) {
  std::vector<int> nd(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) nd[k] = dims[perm[k]];
  const int n = product(dims);
  M r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto di = digits(i, dims), dj = digits(j, dims);
      std::vector<int> ni(dims.size()), nj(dims.size());
      for (std::size_t k = 0; k < dims.size(); ++k) {
        ni[k] = di[perm[k]];
        nj[k] = dj[perm[k]];
      }
      r(compose(ni, nd), compose(nj, nd)) = m(i, j);
    }
  return r;
}

inline V basis(int d, int i) {
  V v = V::Zero(d);
  v(i) = 1;
  return v;
}

// sum_ij <i|M|j> |j> (x) |i>
inline V double_ket(const M& m) {
  V r = V::Zero(m.rows() * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      M e = kron(M(basis(static_cast<int>(m.cols()), j)), M(basis(static_cast<int>(m.rows()), i)));
      r += m(i, j) * V(e.col(0));
    }
  return r;
}

inline M choi(const std::vector<M>& kraus) {
  const int n = static_cast<int>(kraus[0].size());
  M r = M::Zero(n, n);
  for (const auto& k : kraus) {
    V v = double_ket(k);
    r += v * v.adjoint();
  }
  return r;
}

inline M pauli(int p) {
  M s(2, 2);
  const C i(0, 1);
  switch (p) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -i, i, 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

inline V pauli_eigenstate(int k) {
  const double h = 1.0 / std::sqrt(2.0);
  V v(2);
  if (k == 0) v << 1, 0;
  if (k == 1) v << 0, 1;
  if (k == 2) v << h, h;
  if (k == 3) v << h, C(0, h);
  return v;
}

inline M proj(const V& v) { return v * v.adjoint(); }

// Measurement operator for setting (a, b, c, d, e) in factor order (B_it, A_I, A_O, B_ot, B_oc),
// conjugated states on b, d, e, then transposed and reordered to (A_I, A_O, B_it, B_ot, B_oc).
// d = -1 puts the identity on B_ot.
inline M setting_operator(const std::array<int, 5>& idx) {
  auto bar = [](int k) { return V(pauli_eigenstate(k).conjugate()); };
  std::vector<M> fs{proj(pauli_eigenstate(idx[0])), proj(bar(idx[1])), proj(pauli_eigenstate(idx[2])),
                    idx[3] < 0 ? M(M::Identity(2, 2)) : proj(bar(idx[3])), proj(bar(idx[4]))};
  M p = kron_all(fs).transpose();
  return permute(p, {2, 2, 2, 2, 2}, {1, 2, 0, 3, 4});
}

// Coordinates Tr(sigma_p W) over n qubits by explicit Pauli strings.
inline Eigen::VectorXd pauli_coordinates(const M& w, int n) {
  const int np = 1 << (2 * n);
  Eigen::VectorXd x(np);
  for (int p = 0; p < np; ++p) {
    std::vector<M> fs;
    for (int q = 0; q < n; ++q) fs.push_back(pauli((p >> (2 * (n - 1 - q))) & 3));
    x(p) = (kron_all(fs) * w).trace().real();
  }
  return x;
}

// Solve with the inverse of a Kronecker product applied one qubit at a time.
inline Eigen::VectorXd kron_solve(const std::vector<Eigen::Matrix4d>& per_qubit, const Eigen::VectorXd& x) {
  const int n = static_cast<int>(per_qubit.size());
  Eigen::VectorXd y = x;
  for (int q = 0; q < n; ++q) {
    Eigen::Matrix4d inv = per_qubit[q].inverse();
    const int stride = 1 << (2 * (n - 1 - q));
    Eigen::VectorXd z = Eigen::VectorXd::Zero(y.size());
    for (int i = 0; i < y.size(); ++i) {
      const int digit = (i / stride) % 4;
      const int base = i - digit * stride;
      for (int k = 0; k < 4; ++k) z(i) += inv(digit, k) * y(base + k * stride);
    }
    y = z;
  }
  return y;
}

// Tr(sigma_p Pi_k) for one qubit; conj uses the conjugated fourth state.
inline Eigen::Matrix4d qubit_design(bool conj) {
  Eigen::Matrix4d b;
  for (int p = 0; p < 4; ++p)
    for (int k = 0; k < 4; ++k) {
      V v = pauli_eigenstate(k);
      if (conj) v = v.conjugate();
      b(p, k) = (pauli(p) * proj(v)).trace().real();
    }
  return b;
}

}  // namespace oracle
