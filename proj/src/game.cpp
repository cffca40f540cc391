// SPDX-License-Identifier: Apache-2.0
#include "iodir/game.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "iodir/channels.hpp"
#include "iodir/error.hpp"
#include "iodir/tensor.hpp"

namespace iodir {

std::string tag_name(GameTag t) { return t == GameTag::Plus ? "PLUS" : "MINUS"; }

GameTag parse_tag(const std::string& s) {
  if (s == "PLUS" || s == "plus" || s == "+") return GameTag::Plus;
  if (s == "MINUS" || s == "minus" || s == "-") return GameTag::Minus;
  throw ParseError("unknown gate-pair tag: " + s);
}

namespace {

const Complex kI(0.0, 1.0);

Matrix pauli(char c) {
  Matrix m(2, 2);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -kI, kI, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

bool is_unitary(const Matrix& m) {
  return m.rows() == m.cols() && (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm() <= kGateTol;
}

}  // namespace

Matrix named_gate(const std::string& name) {
  const double h = 1.0 / std::sqrt(2.0);
  if (name == "I" || name == "X" || name == "Y" || name == "Z") return pauli(name[0]);
  if (name == "U1") return h * (pauli('X') - pauli('Y'));
  if (name == "V1") return h * (pauli('X') + pauli('Y'));
  if (name == "U2") return h * (pauli('Z') - pauli('Y'));
  if (name == "V2") return h * (pauli('Z') + pauli('Y'));
  if (name == "U3") return h * (pauli('I') - kI * pauli('Y'));
  if (name == "V3") return h * (pauli('I') + kI * pauli('Y'));
  throw DomainError("unknown gate name: " + name);
}

const std::vector<std::string>& named_gates() {
  static const std::vector<std::string> n{"I", "X", "Y", "Z", "U1", "V1", "U2", "V2", "U3", "V3"};
  return n;
}

GatePair::GatePair(std::string n, Matrix u_, Matrix v_, GameTag t)
    : name(std::move(n)), u(std::move(u_)), v(std::move(v_)), tag(t) {
  if (u.rows() != v.rows() || !is_unitary(u) || !is_unitary(v))
    throw DomainError("gate pair " + name + ": gates must be unitary of equal dimension");
  double r = tag_residual();
  if (r > kGateTol) {
    std::ostringstream os;
    os << "gate pair " << name << " violates its " << tag_name(tag) << " relation (residual " << r << ")";
    throw DomainError(os.str());
  }
}

double GatePair::tag_residual() const {
  Matrix a = u * v.transpose(), b = u.transpose() * v;
  return tag == GameTag::Plus ? (a - b).norm() : (a + b).norm();
}

std::vector<GatePair> GateSets::all() const {
  std::vector<GatePair> r = plus;
  r.insert(r.end(), minus.begin(), minus.end());
  return r;
}

GateSets builtin_gate_sets() {
  static const std::vector<std::pair<std::string, std::string>> plus{
      {"I", "I"}, {"I", "X"}, {"I", "Z"}, {"X", "I"}, {"X", "X"}, {"X", "Z"}, {"Z", "I"},
      {"Z", "X"}, {"Z", "Z"}, {"U1", "V1"}, {"V1", "U1"}, {"U2", "V2"}, {"V2", "U2"}};
  static const std::vector<std::pair<std::string, std::string>> minus{
      {"Y", "I"}, {"Y", "X"}, {"Y", "Z"}, {"I", "Y"}, {"X", "Y"}, {"Z", "Y"}, {"U3", "V3"}, {"V3", "U3"}};
  GateSets g;
  for (const auto& [a, b] : plus)
    g.plus.emplace_back("(" + a + "," + b + ")", named_gate(a), named_gate(b), GameTag::Plus);
  for (const auto& [a, b] : minus)
    g.minus.emplace_back("(" + a + "," + b + ")", named_gate(a), named_gate(b), GameTag::Minus);
  return g;
}

std::vector<WeightedPair> uniform_measure(const std::vector<GatePair>& pairs) {
  if (pairs.empty()) throw DomainError("empty gate-pair list");
  std::vector<WeightedPair> r;
  for (const auto& p : pairs) r.push_back({p, 1.0 / static_cast<double>(pairs.size())});
  return r;
}

SystemLayout game_layout() { return SystemLayout::qubits({"A_I", "A_O", "B_I", "B_O", "C_O"}); }

MultipartiteRoles game_roles() { return {{{{"A_I"}, {"A_O"}}, {{"B_I"}, {"B_O"}}}, {}, {"C_O"}}; }

namespace {

Vector plus_state(bool minus) {
  Vector v(2);
  const double h = 1.0 / std::sqrt(2.0);
  v << h, minus ? -h : h;
  return v;
}

void check_state(const Vector& t) {
  if (t.size() != 2 || std::abs(t.norm() - 1.0) > 1e-10) throw DomainError("target must be a normalized qubit state");
}

// Output vector of the controlled circuit on (target, control).
Vector qtf_output(const Matrix& u, const Matrix& v, const Vector& target) {
  const double h = 1.0 / std::sqrt(2.0);
  Vector b0 = u * v.transpose() * target, b1 = u.transpose() * v * target;
  Vector out(4);
  for (int t = 0; t < 2; ++t) {
    out(2 * t) = h * b0(t);
    out(2 * t + 1) = h * b1(t);
  }
  return out;
}

// (|UV^T>> (x) |0> + |V^T U>> (x) |1>) / sqrt(2d) on (double-ket register, control).
Vector switch_output(const Matrix& u, const Matrix& v) {
  const int d = static_cast<int>(u.rows());
  Vector a = vec_double_ket(Matrix(u * v.transpose())), b = vec_double_ket(Matrix(v.transpose() * u));
  Vector out(2 * d * d);
  const double s = 1.0 / std::sqrt(2.0 * d);
  for (int r = 0; r < d * d; ++r) {
    out(2 * r) = s * a(r);
    out(2 * r + 1) = s * b(r);
  }
  return out;
}

Matrix switch_effect(bool plus) {
  Matrix p = symmetric_projector(2);
  Vector vp = plus_state(false), vm = plus_state(true);
  Matrix pp = vp * vp.adjoint(), pm = vm * vm.adjoint();
  Matrix q = Matrix::Identity(4, 4) - p;
  return plus ? Matrix(kron(p, pp) + kron(q, pm)) : Matrix(kron(q, pp) + kron(p, pm));
}

// Linear map |U>>|V>> -> F(U, V), with |U>> on (A_I, A_O) and |V>> on (B_I, B_O).
Matrix bilinear_gamma(int out_dim, const std::function<Vector(const Matrix&, const Matrix&)>& f) {
  Matrix g(out_dim, 16);
  for (int col = 0; col < 16; ++col) {
    const int j1 = col >> 3 & 1, i1 = col >> 2 & 1, j2 = col >> 1 & 1, i2 = col & 1;
    Matrix u = Matrix::Zero(2, 2), v = Matrix::Zero(2, 2);
    u(i1, j1) = 1;
    v(i2, j2) = 1;
    g.col(col) = f(u, v);
  }
  return g;
}

SystemLayout slot_layout() { return SystemLayout::qubits({"A_I", "A_O", "B_I", "B_O"}); }

}  // namespace

PortProbabilities qtf_strategy(const GatePair& pair, const Vector& target) {
  check_state(target);
  if (pair.u.rows() != 2) throw DomainError("qtf strategy is defined for qubit gates");
  Vector out = qtf_output(pair.u, pair.v, target);
  PortProbabilities p;
  for (bool minus : {false, true}) {
    Vector c = plus_state(minus);
    double s = 0;
    for (int t = 0; t < 2; ++t) s += std::norm(c(0) * out(2 * t) + c(1) * out(2 * t + 1));
    (minus ? p.port1 : p.port0) = s;
  }
  return p;
}

Matrix symmetric_projector(int d) {
  const int n = d * d;
  Matrix swap = Matrix::Zero(n, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) swap(j * d + i, i * d + j) = 1;
  return 0.5 * (Matrix::Identity(n, n) + swap);
}

double switch_strategy(const GatePair& pair) {
  if (pair.u.rows() != 2) throw DomainError("switch strategy is defined for qubit gates");
  Vector out = switch_output(pair.u, pair.v);
  if (std::abs(out.norm() - 1.0) > 1e-10) throw NumericalError("switch output state is not normalized for " + pair.name);
  Matrix e = switch_effect(pair.tag == GameTag::Plus);
  return (out.adjoint() * e * out)(0, 0).real();
}

HermitianOperator qtf_strategy_operator(const Vector& target) {
  check_state(target);
  Matrix g = bilinear_gamma(4, [&](const Matrix& u, const Matrix& v) { return qtf_output(u, v, target); });
  std::vector<Matrix> kraus;
  for (int e = 0; e < 2; ++e) kraus.push_back(g.middleRows(2 * e, 2));
  return induced_choi(slot_layout(), SystemLayout::qubits({"C_O"}), kraus);
}

HermitianOperator switch_strategy_operator() {
  Matrix g = bilinear_gamma(8, [](const Matrix& u, const Matrix& v) { return switch_output(u, v); });
  std::vector<Matrix> kraus;
  for (bool plus : {true, false}) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(switch_effect(plus));
    Vector out = plus_state(!plus);
    for (int j = 0; j < 8; ++j)
      if (es.eigenvalues()(j) > 0.5) kraus.push_back(out * es.eigenvectors().col(j).adjoint() * g);
  }
  return induced_choi(slot_layout(), SystemLayout::qubits({"C_O"}), kraus);
}

GameOperators game_operators(const std::vector<WeightedPair>& pairs) {
  double total = 0;
  for (const auto& wp : pairs) {
    if (wp.weight < 0) throw DomainError("negative weight for " + wp.pair.name);
    if (wp.pair.u.rows() != 2) throw DomainError("game operators are defined for qubit gates");
    total += wp.weight;
  }
  if (pairs.empty() || std::abs(total - 1.0) > 1e-9) throw DomainError("pair weights must sum to 1");
  const SystemLayout l = game_layout();
  Matrix mp = Matrix::Zero(32, 32), mm = Matrix::Zero(32, 32);
  for (const auto& wp : pairs) {
    Vector cu = vec_double_ket(wp.pair.u), cv = vec_double_ket(wp.pair.v);
    const bool plus = wp.pair.tag == GameTag::Plus;
    Vector c = plus_state(!plus);
    Vector k = kron(kron(cu, cv), c);
    Matrix term = (k * k.adjoint()).transpose();
    (plus ? mp : mm) += wp.weight * term;
  }
  return {HermitianOperator(l, mp), HermitianOperator(l, mm)};
}

HermitianOperator game_witness(const std::vector<WeightedPair>& pairs, double p_max) {
  if (!(p_max > 0.0 && p_max < 1.0)) throw DomainError("p_max must lie in (0, 1)");
  auto m = game_operators(pairs);
  const SystemLayout l = game_layout();
  return HermitianOperator::identity(l) * 0.25 - m.total() * (1.0 / p_max);
}

double success_probability(const GameOperators& m, const HermitianOperator& strategy) {
  if (!(strategy.layout() == game_layout())) throw LayoutError("strategy must live on (A_I, A_O, B_I, B_O, C_O)");
  return m.total().inner(strategy);
}

std::string fixed_direction_name(FixedDirection d) {
  switch (d) {
    case FixedDirection::ForwardOnly: return "forward-only";
    case FixedDirection::BackwardOnly: return "backward-only";
    default: return "convex-hull";
  }
}

FixedDirection parse_fixed_direction(const std::string& s) {
  if (s == "forward-only" || s == "forward") return FixedDirection::ForwardOnly;
  if (s == "backward-only" || s == "backward") return FixedDirection::BackwardOnly;
  if (s == "convex-hull" || s == "hull") return FixedDirection::ConvexHull;
  throw ParseError("unknown direction: " + s);
}

PmaxResult compute_pmax_fixed_direction(const std::vector<WeightedPair>& pairs, FixedDirection dir,
                                        const sdp::SolverOptions& opts) {
  auto m = game_operators(pairs);
  const SystemLayout l = game_layout();
  const auto roles = game_roles();
  auto basis = std::make_shared<const ComponentBasis>(multipartite_basis(l, roles));
  auto mask_for = [&](DirectionSet set) {
    std::vector<ComponentPattern> ps;
    for (const auto& np : multipartite_patterns(roles, set)) ps.push_back(np.pattern);
    return basis->excluding(ps);
  };
  const Matrix c = -m.total().matrix();
  sdp::ConicProgram p;
  sdp::Coupling norm{"normalization", {}, Matrix::Identity(32, 32) * (4.0 / 32.0),
                     ComponentMask::single(basis->groups(), 0)};
  if (dir != FixedDirection::BackwardOnly)
    norm.terms.emplace_back(p.add({"S_f", basis, mask_for(DirectionSet::ForwardOnly), sdp::ConeKind::Psd, {}, c}), 1.0);
  if (dir != FixedDirection::ForwardOnly)
    norm.terms.emplace_back(p.add({"S_b", basis, mask_for(DirectionSet::BackwardOnly), sdp::ConeKind::Psd, {}, c}), 1.0);
  p.couplings.push_back(norm);
  PmaxResult r;
  r.report = sdp::solve(p, opts);
  if (!r.report.converged) throw NumericalError("fixed-direction SDP did not converge: " + r.report.status);
  r.p_max = -r.report.primal_value;
  return r;
}

std::string WaveplateConvention::name() const {
  return std::string("s") + (s > 0 ? "+" : "-") + "p" + (p > 0 ? "+" : "-");
}

const std::array<WaveplateConvention, 4>& waveplate_conventions() {
  static const std::array<WaveplateConvention, 4> c{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
  return c;
}

WaveplateConvention parse_convention(const std::string& s) {
  for (const auto& c : waveplate_conventions())
    if (c.name() == s) return c;
  throw ParseError("unknown waveplate convention: " + s + " (expected s+p+, s+p-, s-p+ or s-p-)");
}

Matrix waveplate(double theta_deg, double delta, const WaveplateConvention& c) {
  auto rot = [](double t) {
    Matrix r(2, 2);
    r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return r;
  };
  const double t = c.s * theta_deg * std::numbers::pi / 180.0;
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = std::exp(Complex(0.0, c.p * delta));
  return rot(t) * d * rot(-t);
}

Matrix compose_waveplates(const std::array<double, 3>& a, const WaveplateConvention& c) {
  const double q = std::numbers::pi / 2, h = std::numbers::pi;
  return waveplate(a[2], q, c) * waveplate(a[1], h, c) * waveplate(a[0], q, c);
}

double phase_invariant_distance(const Matrix& a, const Matrix& b) {
  const double v = a.squaredNorm() + b.squaredNorm() - 2.0 * std::abs((a.adjoint() * b).trace());
  return std::sqrt(std::max(0.0, v));
}

const std::vector<GateTableRow>& gate_table() {
  static const std::vector<GateTableRow> rows = [] {
    std::vector<std::pair<std::string, std::array<double, 3>>> spec{
        {"I", {0, 0, 0}},        {"X", {0, 45, 0}},       {"Y", {90, 45, 0}},      {"Z", {90, 0, 0}},
        {"U1", {45, 67.5, 135}}, {"V1", {135, 67.5, 45}}, {"U2", {0, 22.5, 90}},   {"V2", {90, 22.5, 0}},
        {"U3", {22.5, 135, 67.5}}, {"V3", {67.5, 135, 22.5}}};
    std::vector<GateTableRow> r;
    for (const auto& [n, a] : spec) r.push_back({n, named_gate(n), a});
    return r;
  }();
  return rows;
}

int GateTableReport::passed_count() const {
  int n = 0;
  for (const auto& r : rows) n += r.passed;
  return n;
}

bool GateTableReport::all_passed() const { return passed_count() == static_cast<int>(rows.size()); }

GateTableReport verify_gate_table(const WaveplateConvention& c, double tol) {
  GateTableReport r;
  r.convention = c;
  for (const auto& row : gate_table()) {
    double d = phase_invariant_distance(compose_waveplates(row.angles, c), row.matrix);
    r.rows.push_back({row.name, d, d <= tol});
  }
  return r;
}

}  // namespace iodir
