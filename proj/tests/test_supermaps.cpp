// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "iodir/error.hpp"
#include "iodir/random.hpp"
#include "iodir/supermaps.hpp"
#include "iodir/tensor.hpp"
#include "oracles.hpp"

using namespace iodir;

namespace {

const std::vector<int> kDims{2, 2, 2, 2, 2};  // A_I, A_O, B_it, B_ot, B_oc

Matrix tr(const Matrix& m, std::vector<int> groups) {
  // groups: 0 = A_I, 1 = A_O, 2 = B_I (B_it), 3 = B_O (B_ot, B_oc)
  std::vector<bool> r(5, false);
  for (int g : groups) {
    if (g == 0) r[0] = true;
    if (g == 1) r[1] = true;
    if (g == 2) r[2] = true;
    if (g == 3) r[3] = r[4] = true;
  }
  return oracle::trace_and_replace(m, kDims, r);
}

Matrix oracle_project(const Matrix& x, SubspaceId s) {
  switch (s) {
    case SubspaceId::LV: return x - (tr(x, {0, 1, 3}) - tr(x, {0, 1, 2, 3}));
    case SubspaceId::Lf: return x - (tr(x, {3}) - tr(x, {1, 3}));
    case SubspaceId::Lb: return x - (tr(x, {3}) - tr(x, {0, 3}));
    default: return x - (tr(x, {3}) - tr(x, {1, 3}) - tr(x, {0, 3}) + tr(x, {0, 1, 3}));
  }
}

std::map<std::string, Role> qtf_roles() {
  return {{"A_I", Role::SlotInput},
          {"A_O", Role::SlotOutput},
          {"B_it", Role::GlobalInput},
          {"B_ot", Role::GlobalOutput},
          {"B_oc", Role::GlobalOutput}};
}

Matrix p0() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1;
  return m;
}

// Device fed with |0>, its output routed to B_ot; B_it discarded; B_oc in |0>.
SetupOperator simple_forward() {
  Vector phi = oracle::double_ket(Matrix::Identity(2, 2));
  Matrix m = oracle::kron_all({p0(), Matrix(phi * phi.adjoint()), Matrix::Identity(2, 2), p0()});
  // factor order (A_I, A_O, B_ot, B_it, B_oc)
  m = oracle::permute(m, kDims, {0, 1, 3, 2, 4});
  return SetupOperator(HermitianOperator(SystemLayout::qubits({"A_I", "A_O", "B_it", "B_ot", "B_oc"}), m),
                       qtf_roles());
}

Matrix gate(int p) { return oracle::pauli(p); }

}  // namespace

TEST_CASE("setup roles are validated") {
  auto l = SystemLayout::qubits({"A_I", "A_O", "B_it", "B_ot", "B_oc"});
  auto roles = qtf_roles();
  roles.erase("B_oc");
  CHECK_THROWS_AS(SetupOperator(HermitianOperator::identity(l), roles), LayoutError);
  SystemLayout bad{{"A_I", 2}, {"A_O", 3}, {"B_ot", 2}};
  CHECK_THROWS_AS(SetupOperator(HermitianOperator::identity(bad),
                                {{"A_I", Role::SlotInput}, {"A_O", Role::SlotOutput}, {"B_ot", Role::GlobalOutput}}),
                  LayoutError);
}

TEST_CASE("subspace projectors match trace-and-replace formulas") {
  Rng rng(31);
  auto s = qtf_plus_control();
  for (int t = 0; t < 5; ++t) {
    HermitianOperator x(s.layout(), random_hermitian(32, rng));
    HermitianOperator y(s.layout(), random_hermitian(32, rng));
    auto sx = s.with_op(x), sy = s.with_op(y);
    for (auto id : {SubspaceId::LV, SubspaceId::Lf, SubspaceId::Lb, SubspaceId::Ls}) {
      auto px = subspace_project(sx, id);
      CHECK((px.matrix() - oracle_project(x.matrix(), id)).norm() < 1e-11);
      CHECK((subspace_project(s.with_op(px), id).matrix() - px.matrix()).norm() < 1e-11);
      CHECK(std::abs(px.inner(y) - x.inner(subspace_project(sy, id))) < 1e-10);
    }
    // Projections onto the fixed-direction intersections commute with conjugation.
    Matrix g = random_gaussian(32, 32, rng);
    auto basis = s.basis();
    for (auto m : {subspace_mask(SubspaceId::LV) & subspace_mask(SubspaceId::Lf),
                   subspace_mask(SubspaceId::LV) & subspace_mask(SubspaceId::Lb)}) {
      CHECK((basis->project(g.adjoint(), m) - basis->project(g, m).adjoint()).norm() < 1e-11);
    }
  }
  auto id = s.with_op(HermitianOperator::identity(s.layout()));
  for (auto w : {SubspaceId::LV, SubspaceId::Lf, SubspaceId::Lb, SubspaceId::Ls})
    CHECK(subspace_residual(id, w) < 1e-13);
}

TEST_CASE("time flip lies outside both fixed-direction subspaces") {
  auto s = qtf_plus_control();
  CHECK(subspace_residual(s, SubspaceId::LV) < 1e-12);
  CHECK(subspace_residual(s, SubspaceId::Ls) < 1e-12);
  CHECK(subspace_residual(s, SubspaceId::Lf) > 0.1);
  CHECK(subspace_residual(s, SubspaceId::Lb) > 0.1);
  auto f = simple_forward();
  CHECK(subspace_residual(f, SubspaceId::LV) < 1e-12);
  CHECK(subspace_residual(f, SubspaceId::Lf) < 1e-12);
}

TEST_CASE("cone checks") {
  auto s = qtf_plus_control();
  auto g = check_setup(s, ConeId::General);
  CHECK(g.passed);
  CHECK(g.trace == doctest::Approx(4.0));
  for (const auto& c : g.conditions) CHECK(c.residual <= 1e-10);
  CHECK_FALSE(check_setup(s, ConeId::Forward).passed);
  CHECK_FALSE(check_setup(s, ConeId::Backward).passed);
  CHECK(check_setup(simple_forward(), ConeId::Forward).passed);

  Rng rng(32);
  for (int t = 0; t < 5; ++t) {
    auto f = random_forward_setup(rng), b = random_backward_setup(rng);
    CHECK(check_setup(f, ConeId::Forward).passed);
    CHECK(check_setup(b, ConeId::Backward).passed);
    auto mix = f.with_op(f.op() * 0.5 + b.op() * 0.5);
    CHECK(check_setup(mix, ConeId::General).passed);
  }
  CHECK(parse_cone("general") == ConeId::General);
  CHECK(cone_name(ConeId::Forward) == "FORWARD");
}

TEST_CASE("time flip operators") {
  auto full = qtf_choi();
  CHECK(full.layout().labels() == std::vector<std::string>{"A_I", "A_O", "B_it", "B_ic", "B_ot", "B_oc"});
  CHECK(full.op().trace() == doctest::Approx(8.0));
  auto n = norms(full.op());
  CHECK(n.operator_norm == doctest::Approx(8.0));  // rank one
  CHECK(qtf_plus_control().op().trace() == doctest::Approx(4.0));

  Rng rng(33);
  for (int t = 0; t < 5; ++t) {
    auto c = random_bistochastic(2, rng);
    Matrix out = apply_supermap(full, kraus_to_choi(c)).matrix();  // (B_it, B_ic, B_ot, B_oc)
    Matrix forward = Matrix::Zero(4, 4), backward = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        auto idx = [](int k, int ctrl) { return ((k >> 1) * 2 + ctrl) * 4 + (k & 1) * 2 + ctrl; };
        forward(i, j) = out(idx(i, 0), idx(j, 0));
        backward(i, j) = out(idx(i, 1), idx(j, 1));
      }
    CHECK((forward - kraus_to_choi(c).matrix()).norm() < 1e-12);
    CHECK((backward - kraus_to_choi(input_output_inversion(c)).matrix()).norm() < 1e-12);
  }
}

TEST_CASE("supermap application on Pauli channels") {
  auto s = qtf_plus_control();
  const double h = 1 / std::sqrt(2.0);
  Matrix plus(2, 1), minus(2, 1);
  plus << h, h;
  minus << h, -h;
  SystemLayout in = SystemLayout::qubits({"B_it"}), out = SystemLayout::qubits({"B_ot", "B_oc"});
  auto z = apply_supermap(s, kraus_to_choi(KrausChannel::unitary(gate(3))));
  CHECK((z.matrix() - kraus_to_choi(KrausMap(2, 4, {kron(gate(3), plus)}), in, out).matrix()).norm() < 1e-12);
  auto y = apply_supermap(s, kraus_to_choi(KrausChannel::unitary(gate(2))));
  CHECK((y.matrix() - kraus_to_choi(KrausMap(2, 4, {kron(gate(2), minus)}), in, out).matrix()).norm() < 1e-12);
  auto i = apply_supermap(s, kraus_to_choi(KrausChannel::unitary(gate(0))));
  CHECK((i.matrix() - kraus_to_choi(KrausMap(2, 4, {kron(gate(0), plus)}), in, out).matrix()).norm() < 1e-12);
  CHECK_THROWS_AS(apply_supermap(s, HermitianOperator::identity(SystemLayout{{"x", 3}})), LayoutError);
}

TEST_CASE("supermap application matches the Kraus construction of the flip") {
  Rng rng(34);
  auto full = qtf_choi();
  Matrix c0 = Matrix::Zero(2, 2), c1 = Matrix::Zero(2, 2);
  c0(0, 0) = 1;
  c1(1, 1) = 1;
  for (int t = 0; t < 10; ++t) {
    auto c = random_bistochastic(2, rng, 1 + t % 3);
    std::vector<Matrix> kraus;
    for (const auto& k : c.kraus()) kraus.push_back(oracle::kron(k, c0) + oracle::kron(k.transpose(), c1));
    Matrix want = oracle::choi(kraus);
    CHECK((apply_supermap(full, kraus_to_choi(c)).matrix() - want).norm() < 1e-10);
  }
}

TEST_CASE("supermap application is bilinear and normalized") {
  Rng rng(35);
  for (int t = 0; t < 5; ++t) {
    auto s1 = random_general_setup(rng), s2 = random_general_setup(rng);
    auto c1 = kraus_to_choi(random_bistochastic(2, rng)), c2 = kraus_to_choi(random_bistochastic(2, rng));
    const double q = 0.3;
    auto mixed_s = s1.with_op(s1.op() * q + s2.op() * (1 - q));
    auto lhs = apply_supermap(mixed_s, c1);
    auto rhs = apply_supermap(s1, c1) * q + apply_supermap(s2, c1) * (1 - q);
    CHECK((lhs.matrix() - rhs.matrix()).norm() < 1e-10);
    auto lc = apply_supermap(s1, c1 * q + c2 * (1 - q));
    auto rc = apply_supermap(s1, c1) * q + apply_supermap(s1, c2) * (1 - q);
    CHECK((lc.matrix() - rc.matrix()).norm() < 1e-10);
    Matrix marg = oracle::partial_trace(lhs.matrix(), {2, 2, 2}, {true, false, false});
    CHECK((marg - Matrix::Identity(2, 2)).norm() < 1e-10);
  }
}

TEST_CASE("fixed-direction split gives positive fixed-direction parts") {
  Rng rng(36);
  auto s = qtf_plus_control();
  auto mask = subspace_mask(SubspaceId::Ls) & subspace_mask(SubspaceId::LV);
  for (int t = 0; t < 20; ++t) {
    Matrix x = s.basis()->project(random_hermitian(32, rng), mask);
    x *= 0.5 * std::uniform_real_distribution<double>(0.05, 1.0)(rng) / x.norm();
    auto sx = s.with_op(HermitianOperator(s.layout(), x));
    auto [f, b] = fixed_direction_split(sx);
    CHECK(min_eigenvalue(f) >= -1e-10);
    CHECK(min_eigenvalue(b) >= -1e-10);
    CHECK(subspace_residual(s.with_op(f), SubspaceId::Lf) < 1e-10);
    CHECK(subspace_residual(s.with_op(f), SubspaceId::LV) < 1e-10);
    CHECK(subspace_residual(s.with_op(b), SubspaceId::Lb) < 1e-10);
    CHECK(subspace_residual(s.with_op(b), SubspaceId::LV) < 1e-10);
    CHECK((f.matrix() + b.matrix() - Matrix::Identity(32, 32) - x).norm() < 1e-10);
  }
}

TEST_CASE("multipartite checks") {
  MultipartiteRoles one{{{{"A_I"}, {"A_O"}}}, {"B_it"}, {"B_ot", "B_oc"}};
  Rng rng(37);
  auto s = qtf_plus_control();
  CHECK(check_multipartite(s.op(), one, DirectionSet::General).passed);
  CHECK_FALSE(check_multipartite(s.op(), one, DirectionSet::ForwardOnly).passed);
  CHECK_FALSE(check_multipartite(s.op(), one, DirectionSet::BackwardOnly).passed);
  for (int t = 0; t < 6; ++t) {
    SetupOperator x = t % 2 ? random_general_setup(rng)
                            : s.with_op(HermitianOperator(s.layout(), random_hermitian(32, rng)));
    CHECK(check_multipartite(x.op(), one, DirectionSet::General).passed == check_setup(x, ConeId::General).passed);
    auto f = random_forward_setup(rng);
    CHECK(check_multipartite(f.op(), one, DirectionSet::ForwardOnly).passed);
    CHECK(check_multipartite(f.op(), one, DirectionSet::ForwardOnly).passed == check_setup(f, ConeId::Forward).passed);
  }

  // Two independent forward combs, each feeding |0> and routing the output away.
  Vector phi = oracle::double_ket(Matrix::Identity(2, 2));
  Matrix comb = oracle::kron(p0(), Matrix(phi * phi.adjoint()));  // (in, out, global out)
  Matrix prod = oracle::kron(comb, comb);
  HermitianOperator op(SystemLayout::qubits({"A_I", "A_O", "C1", "B_I", "B_O", "C2"}), prod);
  MultipartiteRoles two{{{{"A_I"}, {"A_O"}}, {{"B_I"}, {"B_O"}}}, {}, {"C1", "C2"}};
  CHECK(check_multipartite(op, two, DirectionSet::General).passed);
  CHECK(check_multipartite(op, two, DirectionSet::ForwardOnly).passed);
  CHECK(multipartite_patterns(two, DirectionSet::General).size() == 4);
  CHECK(multipartite_patterns(two, DirectionSet::ForwardOnly).size() == 7);
}
