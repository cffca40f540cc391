// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "iodir/channels.hpp"
#include "iodir/components.hpp"
#include "iodir/operator.hpp"

namespace iodir {

enum class Role { SlotInput, SlotOutput, GlobalInput, GlobalOutput };

std::string role_name(Role r);
Role parse_role(const std::string& s);

// Group indices of the component basis built from a setup's roles.
inline constexpr int kGroupAI = 0;
inline constexpr int kGroupAO = 1;
inline constexpr int kGroupBI = 2;
inline constexpr int kGroupBO = 3;

class SetupOperator {
 public:
  SetupOperator() = default;
  // Every layout label needs a role; slot input and output dimensions must agree.
  SetupOperator(HermitianOperator op, std::map<std::string, Role> roles);

  const HermitianOperator& op() const { return op_; }
  const SystemLayout& layout() const { return op_.layout(); }
  const std::map<std::string, Role>& roles() const { return roles_; }

  // Labels carrying a role, in layout order.
  std::vector<std::string> labels(Role r) const;
  int dim(Role r) const;
  int d_A() const { return dim(Role::SlotInput); }
  int d_BI() const { return dim(Role::GlobalInput); }
  // d_A * d_BI
  double normalization() const { return static_cast<double>(d_A()) * d_BI(); }

  // Groups (A_I, A_O, B_I, B_O). Shared and immutable.
  std::shared_ptr<const ComponentBasis> basis() const { return basis_; }

  SetupOperator with_op(HermitianOperator op) const;

 private:
  HermitianOperator op_;
  std::map<std::string, Role> roles_;
  std::shared_ptr<const ComponentBasis> basis_;
};

enum class SubspaceId { LV, Lf, Lb, Ls };
enum class ConeId { Forward, Backward, Definite, General };

std::string subspace_name(SubspaceId s);
std::string cone_name(ConeId c);
ConeId parse_cone(const std::string& s);

// Masks over the 16 components of the (A_I, A_O, B_I, B_O) basis.
ComponentMask subspace_mask(SubspaceId s);

HermitianOperator subspace_project(const SetupOperator& s, SubspaceId which);
double subspace_residual(const SetupOperator& s, SubspaceId which);

struct ConditionResidual {
  std::string name;
  double residual = 0.0;
  bool passed = false;
};

struct SetupReport {
  ConeId cone = ConeId::General;
  std::vector<ConditionResidual> conditions;
  double min_eigenvalue = 0.0;
  double trace = 0.0;
  double expected_trace = 0.0;
  bool passed = false;
  std::string note;
};

inline constexpr double kSubspaceTol = 1e-9;

// DEFINITE is decided through the robustness program (see sdp.hpp).
SetupReport check_setup(const SetupOperator& s, ConeId cone, double tol = kSubspaceTol);

// Choi of the map K -> sum_e Gamma_e|K>> on (slot layout, output layout):
// with |K>> on the slots, the output vector is Gamma_e |K>>.
HermitianOperator induced_choi(const SystemLayout& slots, const SystemLayout& out,
                               const std::vector<Matrix>& gammas);

// Quantum time flip on a qubit target with a control qubit:
// layout (A_I, A_O, B_it, B_ic, B_ot, B_oc), rank one, trace 8.
SetupOperator qtf_choi(int d = 2);
// Control fixed to |+>: layout (A_I, A_O, B_it, B_ot, B_oc), trace 4.
SetupOperator qtf_plus_control(int d = 2);
// Gamma for the QTF with the control prepared in c0|0> + c1|1>.
Matrix qtf_gamma(int d, Complex c0, Complex c1);

// Choi of the output channel: Tr_A[(C^T (x) I_B) S]. The Choi c lives on
// (slot input, slot output); the result keeps the global factors of s in
// layout order.
HermitianOperator apply_supermap(const SetupOperator& s, const HermitianOperator& c);

// I/2 + _{A_O} S and I/2 + S - _{A_O} S.
std::pair<HermitianOperator, HermitianOperator> fixed_direction_split(const SetupOperator& s);

// Multi-slot supermaps.
struct SlotLabels {
  std::vector<std::string> input;
  std::vector<std::string> output;
};

struct MultipartiteRoles {
  std::vector<SlotLabels> slots;
  std::vector<std::string> global_input;   // may be empty
  std::vector<std::string> global_output;
};

enum class DirectionSet { General, ForwardOnly, BackwardOnly };
std::string direction_set_name(DirectionSet d);

// Groups: (slot_1 in, slot_1 out, ..., slot_N in, slot_N out, global in, global out).
ComponentBasis multipartite_basis(const SystemLayout& layout, const MultipartiteRoles& roles);

struct NamedPattern {
  std::string name;
  ComponentPattern pattern;
};
std::vector<NamedPattern> multipartite_patterns(const MultipartiteRoles& roles, DirectionSet set);

struct MultipartiteReport {
  DirectionSet set = DirectionSet::General;
  std::vector<ConditionResidual> conditions;
  double min_eigenvalue = 0.0;
  double trace = 0.0;
  double expected_trace = 0.0;
  bool passed = false;
};

MultipartiteReport check_multipartite(const HermitianOperator& op, const MultipartiteRoles& roles,
                                      DirectionSet set, double tol = kSubspaceTol);

}  // namespace iodir
