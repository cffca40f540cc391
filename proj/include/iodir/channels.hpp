// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "iodir/operator.hpp"

namespace iodir {

inline constexpr double kChannelTol = 1e-9;

// Completely positive map rho -> sum K rho K^dag. No normalization check.
class KrausMap {
 public:
  KrausMap() = default;
  KrausMap(int in_dim, int out_dim, std::vector<Matrix> kraus);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  Matrix apply(const Matrix& rho) const;
  // sum K^dag K and sum K K^dag.
  Matrix dual_unit() const;
  Matrix unit_image() const;

 protected:
  int in_dim_ = 0;
  int out_dim_ = 0;
  std::vector<Matrix> kraus_;
};

// Trace-preserving Kraus family (sum K^dag K = I within tol).
class KrausChannel : public KrausMap {
 public:
  KrausChannel() = default;
  KrausChannel(int in_dim, int out_dim, std::vector<Matrix> kraus, double tol = kChannelTol);
  explicit KrausChannel(const KrausMap& m, double tol = kChannelTol);

  static KrausChannel unitary(const Matrix& u);
};

// Choi on (in, out) = sum |K>><<K|.
HermitianOperator kraus_to_choi(const KrausMap& ch);
HermitianOperator kraus_to_choi(const KrausMap& ch, const SystemLayout& in, const SystemLayout& out);

// Eigen-decomposition; one Kraus operator per eigenvalue above threshold.
// Throws DomainError on eigenvalues below -tol.
KrausMap choi_to_kraus(const HermitianOperator& choi, int in_dim, double tol = kChannelTol);

bool is_bistochastic(const KrausMap& ch, double tol = kChannelTol);

// Kraus operators transposed in the computational basis. Requires bistochastic input.
KrausChannel input_output_inversion(const KrausChannel& ch, double tol = kChannelTol);

struct BistochasticInstrument {
  std::vector<KrausMap> branches;

  KrausChannel sum() const;
};

// Columns of v and w are the basis vectors; branch i is |w_i><v_i|.
BistochasticInstrument measure_and_reprepare(const Matrix& v_basis, const Matrix& w_basis,
                                             double tol = 1e-10);

}  // namespace iodir
