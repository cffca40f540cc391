// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "iodir/layout.hpp"
#include "iodir/operator.hpp"

namespace iodir {

struct Norms {
  double hilbert_schmidt = 0.0;
  double operator_norm = 0.0;
  double trace_norm = 0.0;
};

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

// Layout is the concatenation; duplicate labels throw LayoutError.
HermitianOperator tensor_product(const std::vector<HermitianOperator>& ops);
Ket tensor_product(const std::vector<Ket>& kets);

HermitianOperator partial_trace(const HermitianOperator& op, const std::vector<std::string>& kept);
// Tr_X(op) (x) I_X / d_X with X re-inserted at its original positions.
HermitianOperator trace_and_replace(const HermitianOperator& op,
                                    const std::vector<std::string>& replaced);

// |M>> = sum_ij M_ij |j>|i>: first factor is the input (column) index.
Vector vec_double_ket(const Matrix& m);
Matrix unvec_double_ket(const Vector& v, int in_dim, int out_dim);
// Square input, labels "in", "out".
Ket double_ket(const Matrix& m);
Ket double_ket(const Matrix& m, const SystemLayout& in, const SystemLayout& out);

HermitianOperator permute_factors(const HermitianOperator& op, const std::vector<std::string>& order);
Ket permute_factors(const Ket& k, const std::vector<std::string>& order);
HermitianOperator swap_factors(const HermitianOperator& op, const std::string& a, const std::string& b);
Ket swap_factors(const Ket& k, const std::string& a, const std::string& b);
// Two-factor convenience: exchanges the first and second factor.
Ket swap_factors(const Ket& k);

HermitianOperator psd_project(const HermitianOperator& op);
Norms norms(const HermitianOperator& op);
double min_eigenvalue(const HermitianOperator& op);

// Raw-matrix forms over a dimension vector. Masks select factors.
// Precomputed index split of a composite space into (kept, traced) parts.
class IndexSplit {
 public:
  IndexSplit(const std::vector<int>& dims, const std::vector<bool>& traced);

  int kept_dim() const { return kept_dim_; }
  int traced_dim() const { return traced_dim_; }
  // rows(x)[k] = full index with traced part x and kept part k.
  const std::vector<int>& rows(int x) const { return rows_[x]; }

  Matrix partial_trace(const Matrix& m) const;
  // Embeds p (kept_dim square) as p (x) I_traced at original positions.
  Matrix embed(const Matrix& p) const;
  Matrix trace_and_replace(const Matrix& m) const;

 private:
  int kept_dim_ = 1;
  int traced_dim_ = 1;
  std::vector<std::vector<int>> rows_;
};

Matrix partial_trace(const Matrix& m, const std::vector<int>& dims, const std::vector<bool>& keep);
Matrix trace_and_replace(const Matrix& m, const std::vector<int>& dims,
                         const std::vector<bool>& replaced);
// perm[k] = old position of the factor placed at new position k.
Matrix permute(const Matrix& m, const std::vector<int>& dims, const std::vector<int>& perm);
Vector permute(const Vector& v, const std::vector<int>& dims, const std::vector<int>& perm);
Matrix psd_project(const Matrix& m);
double min_eigenvalue(const Matrix& m);

}  // namespace iodir
