// SPDX-License-Identifier: Apache-2.0
#include "iodir/supermaps.hpp"

#include <cmath>
#include <sstream>

#include "iodir/error.hpp"
#include "iodir/sdp.hpp"
#include "iodir/tensor.hpp"

namespace iodir {

std::string role_name(Role r) {
  switch (r) {
    case Role::SlotInput: return "slot-input";
    case Role::SlotOutput: return "slot-output";
    case Role::GlobalInput: return "global-input";
    case Role::GlobalOutput: return "global-output";
  }
  return "?";
}

Role parse_role(const std::string& s) {
  if (s == "slot-input" || s == "A_I") return Role::SlotInput;
  if (s == "slot-output" || s == "A_O") return Role::SlotOutput;
  if (s == "global-input" || s == "B_I") return Role::GlobalInput;
  if (s == "global-output" || s == "B_O") return Role::GlobalOutput;
  throw ParseError("unknown role '" + s + "'");
}

SetupOperator::SetupOperator(HermitianOperator op, std::map<std::string, Role> roles)
    : op_(std::move(op)), roles_(std::move(roles)) {
  const auto& l = op_.layout();
  for (const auto& f : l.factors())
    if (!roles_.count(f.label)) throw LayoutError("factor '" + f.label + "' has no role");
  for (const auto& [label, role] : roles_)
    if (!l.contains(label)) throw LayoutError("role given for unknown factor '" + label + "'");
  if (labels(Role::SlotInput).empty() || labels(Role::SlotOutput).empty())
    throw LayoutError("setup needs slot-input and slot-output factors");
  if (labels(Role::GlobalOutput).empty()) throw LayoutError("setup needs a global-output factor");
  if (dim(Role::SlotInput) != dim(Role::SlotOutput))
    throw LayoutError("slot input and output dimensions differ");
  basis_ = std::make_shared<const ComponentBasis>(
      l, std::vector<std::vector<std::string>>{labels(Role::SlotInput), labels(Role::SlotOutput),
                                               labels(Role::GlobalInput), labels(Role::GlobalOutput)});
}

std::vector<std::string> SetupOperator::labels(Role r) const {
  std::vector<std::string> out;
  for (const auto& f : layout().factors()) {
    auto it = roles_.find(f.label);
    if (it != roles_.end() && it->second == r) out.push_back(f.label);
  }
  return out;
}

int SetupOperator::dim(Role r) const {
  int d = 1;
  for (const auto& l : labels(r)) d *= layout().dim_of(l);
  return d;
}

SetupOperator SetupOperator::with_op(HermitianOperator op) const {
  if (!(op.layout() == layout())) throw LayoutError("with_op: layout mismatch");
  SetupOperator s = *this;
  s.op_ = std::move(op);
  return s;
}

std::string subspace_name(SubspaceId s) {
  switch (s) {
    case SubspaceId::LV: return "L_V";
    case SubspaceId::Lf: return "L_f";
    case SubspaceId::Lb: return "L_b";
    case SubspaceId::Ls: return "L_s";
  }
  return "?";
}

std::string cone_name(ConeId c) {
  switch (c) {
    case ConeId::Forward: return "FORWARD";
    case ConeId::Backward: return "BACKWARD";
    case ConeId::Definite: return "DEFINITE";
    case ConeId::General: return "GENERAL";
  }
  return "?";
}

ConeId parse_cone(const std::string& s) {
  if (s == "FORWARD" || s == "forward") return ConeId::Forward;
  if (s == "BACKWARD" || s == "backward") return ConeId::Backward;
  if (s == "DEFINITE" || s == "definite") return ConeId::Definite;
  if (s == "GENERAL" || s == "general") return ConeId::General;
  throw ParseError("unknown cone '" + s + "'");
}

ComponentMask subspace_mask(SubspaceId s) {
  ComponentPattern p;
  switch (s) {
    case SubspaceId::LV: p = {{kGroupBI}, {kGroupAI, kGroupAO, kGroupBO}}; break;
    case SubspaceId::Lf: p = {{kGroupAO}, {kGroupBO}}; break;
    case SubspaceId::Lb: p = {{kGroupAI}, {kGroupBO}}; break;
    case SubspaceId::Ls: p = {{kGroupAI, kGroupAO}, {kGroupBO}}; break;
  }
  ComponentMask m = ComponentMask::all(4);
  for (int c = 0; c < 16; ++c)
    if (p.matches(c)) m.set(c, false);
  return m;
}

HermitianOperator subspace_project(const SetupOperator& s, SubspaceId which) {
  return HermitianOperator(s.layout(), s.basis()->project(s.op().matrix(), subspace_mask(which)));
}

double subspace_residual(const SetupOperator& s, SubspaceId which) {
  return (s.op().matrix() - subspace_project(s, which).matrix()).norm();
}

SetupReport check_setup(const SetupOperator& s, ConeId cone, double tol) {
  if (cone == ConeId::Definite) return check_definite(s);
  SetupReport r;
  r.cone = cone;
  std::vector<SubspaceId> subs{SubspaceId::LV};
  if (cone == ConeId::General) subs.push_back(SubspaceId::Ls);
  if (cone == ConeId::Forward) subs.push_back(SubspaceId::Lf);
  if (cone == ConeId::Backward) subs.push_back(SubspaceId::Lb);
  bool ok = true;
  for (auto id : subs) {
    double res = subspace_residual(s, id);
    r.conditions.push_back({subspace_name(id), res, res <= tol});
    ok = ok && res <= tol;
  }
  r.min_eigenvalue = min_eigenvalue(s.op());
  r.trace = s.op().trace();
  r.expected_trace = s.normalization();
  bool psd = r.min_eigenvalue >= -tol;
  bool tr = std::abs(r.trace - r.expected_trace) <= tol * std::max(1.0, r.expected_trace);
  r.conditions.push_back({"positivity", std::max(0.0, -r.min_eigenvalue), psd});
  r.conditions.push_back({"trace", std::abs(r.trace - r.expected_trace), tr});
  r.passed = ok && psd && tr;
  return r;
}

HermitianOperator induced_choi(const SystemLayout& slots, const SystemLayout& out,
                               const std::vector<Matrix>& gammas) {
  KrausMap m(slots.total_dim(), out.total_dim(), gammas);
  return kraus_to_choi(m, slots, out);
}

Matrix qtf_gamma(int d, Complex c0, Complex c1) {
  Matrix e0 = Matrix::Zero(2, 1), e1 = Matrix::Zero(2, 1);
  e0(0, 0) = c0;
  e1(1, 0) = c1;
  Matrix g(2 * d * d, d * d);
  for (int a = 0; a < d * d; ++a) {
    Matrix k = unvec_double_ket(Vector::Unit(d * d, a), d, d);
    Matrix f = kron(k, e0) + kron(Matrix(k.transpose()), e1);
    g.col(a) = vec_double_ket(f);
  }
  return g;
}

namespace {

std::map<std::string, Role> single_slot_roles(const std::vector<std::string>& gin,
                                              const std::vector<std::string>& gout) {
  std::map<std::string, Role> r{{"A_I", Role::SlotInput}, {"A_O", Role::SlotOutput}};
  for (const auto& l : gin) r[l] = Role::GlobalInput;
  for (const auto& l : gout) r[l] = Role::GlobalOutput;
  return r;
}

}  // namespace

SetupOperator qtf_choi(int d) {
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  Matrix g(4 * d * d, d * d);
  for (int a = 0; a < d * d; ++a) {
    Matrix k = unvec_double_ket(Vector::Unit(d * d, a), d, d);
    Matrix f = kron(k, p0) + kron(Matrix(k.transpose()), p1);
    g.col(a) = vec_double_ket(f);
  }
  SystemLayout slots{{"A_I", d}, {"A_O", d}};
  SystemLayout out{{"B_it", d}, {"B_ic", 2}, {"B_ot", d}, {"B_oc", 2}};
  return SetupOperator(induced_choi(slots, out, {g}),
                       single_slot_roles({"B_it", "B_ic"}, {"B_ot", "B_oc"}));
}

SetupOperator qtf_plus_control(int d) {
  const double h = 1.0 / std::sqrt(2.0);
  SystemLayout slots{{"A_I", d}, {"A_O", d}};
  SystemLayout out{{"B_it", d}, {"B_ot", d}, {"B_oc", 2}};
  return SetupOperator(induced_choi(slots, out, {qtf_gamma(d, h, h)}),
                       single_slot_roles({"B_it"}, {"B_ot", "B_oc"}));
}

HermitianOperator apply_supermap(const SetupOperator& s, const HermitianOperator& c) {
  const int dA = s.d_A();
  if (c.dim() != dA * dA) throw LayoutError("apply_supermap: channel Choi does not match the slot");
  std::vector<std::string> order = s.labels(Role::SlotInput);
  for (const auto& l : s.labels(Role::SlotOutput)) order.push_back(l);
  std::vector<std::string> globals;
  for (const auto& f : s.layout().factors()) {
    Role r = s.roles().at(f.label);
    if (r == Role::GlobalInput || r == Role::GlobalOutput) globals.push_back(f.label);
  }
  order.insert(order.end(), globals.begin(), globals.end());
  Matrix sp = permute_factors(s.op(), order).matrix();
  SystemLayout gl = s.layout().subset(globals);
  const int dg = gl.total_dim();
  const Matrix& cm = c.matrix();
  Matrix out = Matrix::Zero(dg, dg);
  for (int a = 0; a < dA * dA; ++a)
    for (int b = 0; b < dA * dA; ++b) {
      Complex w = cm(b, a);
      if (w != Complex(0.0)) out += w * sp.block(b * dg, a * dg, dg, dg);
    }
  return HermitianOperator(gl, std::move(out));
}

std::pair<HermitianOperator, HermitianOperator> fixed_direction_split(const SetupOperator& s) {
  const int n = s.op().dim();
  Matrix ao = s.basis()->trace_and_replace(s.op().matrix(), kGroupAO);
  Matrix half = 0.5 * Matrix::Identity(n, n);
  return {HermitianOperator(s.layout(), half + ao),
          HermitianOperator(s.layout(), half + s.op().matrix() - ao)};
}

std::string direction_set_name(DirectionSet d) {
  switch (d) {
    case DirectionSet::General: return "general";
    case DirectionSet::ForwardOnly: return "forward-only";
    case DirectionSet::BackwardOnly: return "backward-only";
  }
  return "?";
}

ComponentBasis multipartite_basis(const SystemLayout& layout, const MultipartiteRoles& roles) {
  std::vector<std::vector<std::string>> groups;
  for (const auto& s : roles.slots) {
    groups.push_back(s.input);
    groups.push_back(s.output);
  }
  groups.push_back(roles.global_input);
  groups.push_back(roles.global_output);
  return ComponentBasis(layout, groups);
}

namespace {

std::string group_tag(const std::vector<std::string>& labels) {
  if (labels.empty()) return "{}";
  std::string s;
  for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? "+" : "") + labels[i];
  return s;
}

std::string pattern_name(const ComponentPattern& p, const std::vector<std::string>& tags) {
  std::string s = "[";
  for (int k : p.traceless) s += "(1-" + tags[k] + ")";
  for (int k : p.traced) s += tags[k];
  return s + "]";
}

}  // namespace

std::vector<NamedPattern> multipartite_patterns(const MultipartiteRoles& roles, DirectionSet set) {
  const int n = static_cast<int>(roles.slots.size());
  if (n < 1 || n > 6) throw DomainError("multipartite checks support 1..6 slots");
  std::vector<std::string> tags;
  for (const auto& s : roles.slots) {
    tags.push_back(group_tag(s.input));
    tags.push_back(group_tag(s.output));
  }
  tags.push_back(group_tag(roles.global_input));
  tags.push_back(group_tag(roles.global_output));
  const int gin = 2 * n, gout = 2 * n + 1;

  std::vector<NamedPattern> out;
  auto add = [&](ComponentPattern p) { out.push_back({pattern_name(p, tags), std::move(p)}); };

  ComponentPattern ci{{gin}, {}};
  for (int k = 0; k < 2 * n; ++k) ci.traced.push_back(k);
  ci.traced.push_back(gout);
  add(ci);

  for (int x = 1; x < (1 << n); ++x) {
    ComponentPattern p;
    for (int k = 0; k < n; ++k)
      if (x >> k & 1) {
        p.traceless.push_back(2 * k);
        p.traceless.push_back(2 * k + 1);
      } else {
        p.traced.push_back(2 * k);
        p.traced.push_back(2 * k + 1);
      }
    p.traced.push_back(gout);
    add(p);
  }
  if (set == DirectionSet::General) return out;

  // The fixed-direction sets only need the traceless part on the far side of each slot.
  const int side = set == DirectionSet::ForwardOnly ? 1 : 0;
  for (int x = 1; x < (1 << n); ++x) {
    ComponentPattern p;
    for (int k = 0; k < n; ++k)
      if (x >> k & 1) {
        p.traceless.push_back(2 * k + side);
      } else {
        p.traced.push_back(2 * k);
        p.traced.push_back(2 * k + 1);
      }
    p.traced.push_back(gout);
    add(p);
  }
  return out;
}

MultipartiteReport check_multipartite(const HermitianOperator& op, const MultipartiteRoles& roles,
                                      DirectionSet set, double tol) {
  const auto& l = op.layout();
  for (const auto& s : roles.slots)
    if (l.subset(s.input).total_dim() != l.subset(s.output).total_dim())
      throw LayoutError("slot input and output dimensions differ");
  ComponentBasis basis = multipartite_basis(l, roles);
  auto comps = basis.decompose(op.matrix());
  MultipartiteReport r;
  r.set = set;
  bool ok = true;
  for (const auto& np : multipartite_patterns(roles, set)) {
    Matrix acc = Matrix::Zero(op.dim(), op.dim());
    for (int c = 0; c < basis.components(); ++c)
      if (np.pattern.matches(c)) acc += comps[c];
    double res = acc.norm();
    r.conditions.push_back({np.name, res, res <= tol});
    ok = ok && res <= tol;
  }
  r.min_eigenvalue = min_eigenvalue(op);
  r.trace = op.trace();
  double expected = l.subset(roles.global_input).total_dim();
  for (const auto& s : roles.slots) expected *= l.subset(s.input).total_dim();
  r.expected_trace = expected;
  bool psd = r.min_eigenvalue >= -tol;
  bool tr = std::abs(r.trace - expected) <= tol * std::max(1.0, expected);
  r.conditions.push_back({"positivity", std::max(0.0, -r.min_eigenvalue), psd});
  r.conditions.push_back({"trace", std::abs(r.trace - expected), tr});
  r.passed = ok && psd && tr;
  return r;
}

}  // namespace iodir
