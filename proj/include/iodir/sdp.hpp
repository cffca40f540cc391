// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "iodir/components.hpp"
#include "iodir/operator.hpp"
#include "iodir/supermaps.hpp"

namespace iodir::sdp {

enum class ConeKind { Psd, Free, Subspace };
using LinearMap = std::function<Matrix(const Matrix&)>;

// One Hermitian matrix variable. Its linear support is a union of
// components; the cone is applied on top of that.
struct Block {
  std::string name;
  std::shared_ptr<const ComponentBasis> basis;
  ComponentMask mask;
  ConeKind cone = ConeKind::Free;
  LinearMap subspace;  // orthogonal projector, used when cone == Subspace
  Matrix objective;    // empty means zero
};

// sum_i coeff_i X_i = rhs on the components in mask. All blocks involved
// must share one basis.
struct Coupling {
  std::string name;
  std::vector<std::pair<int, double>> terms;
  Matrix rhs;  // empty means zero
  ComponentMask mask;
};

// sum_i <a_i, X_i> = rhs
struct DenseConstraint {
  std::string name;
  std::vector<std::pair<int, Matrix>> terms;
  double rhs = 0.0;
};

// minimize sum_i <c_i, X_i> + offset over K cap A.
struct ConicProgram {
  std::vector<Block> blocks;
  std::vector<Coupling> couplings;
  std::vector<DenseConstraint> dense;
  double objective_offset = 0.0;

  int add(Block b) {
    blocks.push_back(std::move(b));
    return static_cast<int>(blocks.size()) - 1;
  }
  int index_of(const std::string& name) const;
};

struct SolverOptions {
  double tol = 1e-6;      // primal/dual/cone residuals
  double gap_tol = 1e-4;  // |primal - dual|
  int max_iter = 50000;
  double rho = 1.0;
  double relaxation = 1.6;
  int check_every = 10;
  int adapt_every = 50;
};

SolverOptions default_options();  // honours IODIR_TOL for the residual tolerance

struct SolveReport {
  bool converged = false;
  std::string status;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  int iterations = 0;
  double seconds = 0.0;
  std::map<std::string, double> residuals;
  std::vector<std::string> names;
  std::vector<Matrix> primal;  // certified primal point (exactly affine-feasible)
  std::vector<Matrix> dual;    // certified dual point (c - y orthogonal to the affine directions)

  const Matrix& primal_block(const std::string& name) const;
  const Matrix& dual_block(const std::string& name) const;
};

SolveReport solve(const ConicProgram& prog, const SolverOptions& opts = default_options());

// Robustness programs on single-slot setups.

// Restriction W = |0><0|_{pinned} (x) I_{traced} (x) W_red.
struct WitnessRestriction {
  std::string pinned = "B_it";
  std::string traced = "B_ot";
};
LinearMap restriction_projector(const SystemLayout& layout, const WitnessRestriction& r);

struct WitnessCertificate {
  HermitianOperator w0, w1, w2, w3;
};

struct RobustnessResult {
  SolveReport report;
  double robustness = 0.0;
  HermitianOperator witness;
  WitnessCertificate certificate;
};

// Tighter than the generic defaults so the witness certificate holds to 1e-8.
SolverOptions robustness_defaults();

struct RobustnessOptions {
  SolverOptions solver = robustness_defaults();
  std::optional<WitnessRestriction> restriction;
};

// maximize -Tr(WS) with W in the definite dual cone (through the W0..W3
// decomposition) and I/(d_A d_BI) - W in the dual of the general cone.
RobustnessResult solve_max_robustness(const SetupOperator& s, const RobustnessOptions& opts = {});

// minimize Tr(T)/(d_A d_BI) with S + T in the definite cone, T in the general cone.
// primal_value is r(S).
SolveReport solve_robustness_primal(const SetupOperator& s, const RobustnessOptions& opts = {});

// r(S|W): minimize Tr(T)/(d_A d_BI) subject to Tr(W(S + T)) >= 0, T general.
SolveReport solve_robustness_given_witness(const SetupOperator& s, const HermitianOperator& w,
                                           const SolverOptions& opts = default_options());

struct DualityCertificate {
  bool certified = false;
  double identity_residual = 0.0;
  double primal_gap = 0.0;
  double dual_gap = 0.0;
};

// Both reports must describe the same optimum value (robustness sense):
// the primal program's value and the dual program's value coincide.
DualityCertificate certify_duality(const SolveReport& primal, const SolveReport& dual, double tol = 1e-5);

// min over normalized definite setups of Tr(W S').
SolveReport min_over_definite(const SetupOperator& layout_and_roles, const HermitianOperator& w,
                              const SolverOptions& opts = default_options());

// Definite-cone membership via robustness.
SetupReport check_definite(const SetupOperator& s, double tol = 1e-4);

}  // namespace iodir::sdp

namespace iodir {
using sdp::check_definite;
}
