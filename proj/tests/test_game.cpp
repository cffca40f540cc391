// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "iodir/error.hpp"
#include "iodir/game.hpp"
#include "iodir/random.hpp"
#include "oracles.hpp"

using namespace iodir;

namespace {

double port0_oracle(const GatePair& g, const Vector& psi) {
  Vector v = (g.u * g.v.transpose() + g.u.transpose() * g.v) * psi;
  return v.squaredNorm() / 4.0;
}

}  // namespace

TEST_CASE("built-in gate pairs") {
  auto sets = builtin_gate_sets();
  CHECK(sets.plus.size() == 13);
  CHECK(sets.minus.size() == 8);
  CHECK(sets.all().size() == 21);
  for (const auto& g : sets.plus) {
    CHECK(g.tag == GameTag::Plus);
    CHECK(g.tag_residual() < kGateTol);
    CHECK((g.u * g.v.transpose() - g.u.transpose() * g.v).norm() < 1e-10);
  }
  for (const auto& g : sets.minus) {
    CHECK(g.tag == GameTag::Minus);
    CHECK((g.u * g.v.transpose() + g.u.transpose() * g.v).norm() < 1e-10);
  }
  for (const auto& n : named_gates()) {
    Matrix u = named_gate(n);
    CHECK((u.adjoint() * u - Matrix::Identity(2, 2)).norm() < 1e-12);
  }
  CHECK_THROWS(GatePair("bad", named_gate("X"), named_gate("Y"), GameTag::Plus));
  Matrix nonunitary = Matrix::Identity(2, 2) * 2.0;
  CHECK_THROWS(GatePair("bad", nonunitary, named_gate("I"), GameTag::Plus));
  CHECK(parse_tag(tag_name(GameTag::Minus)) == GameTag::Minus);
}

TEST_CASE("time flip strategy wins for every target") {
  Rng rng(71);
  auto pairs = builtin_gate_sets().all();
  for (int t = 0; t < 20; ++t) {
    Vector psi = random_state(2, rng);
    for (const auto& g : pairs) {
      auto p = qtf_strategy(g, psi);
      CHECK(p.port0 + p.port1 == doctest::Approx(1.0));
      CHECK(p.port0 == doctest::Approx(port0_oracle(g, psi)).epsilon(1e-10));
      double win = g.tag == GameTag::Plus ? p.port0 : p.port1;
      CHECK(win == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("symmetric projector") {
  for (int d : {2, 3}) {
    Matrix p = symmetric_projector(d);
    CHECK((p * p - p).norm() < 1e-12);
    CHECK((p.adjoint() - p).norm() < 1e-12);
    CHECK(p.trace().real() == doctest::Approx(d * (d + 1) / 2.0));
    Rng rng(72 + d);
    Matrix a = random_gaussian(d, d, rng);
    Vector sym = oracle::double_ket(Matrix(a + a.transpose()));
    Vector anti = oracle::double_ket(Matrix(a - a.transpose()));
    CHECK((p * sym - sym).norm() < 1e-12);
    CHECK((p * anti).norm() < 1e-12);
  }
}

TEST_CASE("switch strategy wins for every pair") {
  for (const auto& g : builtin_gate_sets().all()) CHECK(switch_strategy(g) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("strategy operators and success probability") {
  auto pairs = uniform_measure(builtin_gate_sets().all());
  auto m = game_operators(pairs);
  Rng rng(74);
  Vector psi = random_state(2, rng);
  auto q = qtf_strategy_operator(psi);
  auto s = switch_strategy_operator();
  CHECK(q.trace() == doctest::Approx(4.0));
  CHECK(s.trace() == doctest::Approx(4.0));
  CHECK(success_probability(m, q) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(success_probability(m, s) == doctest::Approx(1.0).epsilon(1e-10));

  double direct = 0;
  for (const auto& wp : pairs) direct += wp.weight * (wp.pair.tag == GameTag::Plus ? qtf_strategy(wp.pair, psi).port0
                                                                                  : qtf_strategy(wp.pair, psi).port1);
  CHECK(direct == doctest::Approx(success_probability(m, q)).epsilon(1e-10));

  auto roles = game_roles();
  for (const auto& op : {q, s}) {
    CHECK(check_multipartite(op, roles, DirectionSet::General).passed);
    CHECK_FALSE(check_multipartite(op, roles, DirectionSet::ForwardOnly).passed);
    CHECK_FALSE(check_multipartite(op, roles, DirectionSet::BackwardOnly).passed);
  }

  auto w = game_witness(pairs, 0.89);
  CHECK(w.inner(q) == doctest::Approx(1.0 - 1.0 / 0.89).epsilon(1e-9));
  CHECK(w.inner(s) == doctest::Approx(-0.1236).epsilon(1e-3));
}

TEST_CASE("game operators validate the measure") {
  auto sets = builtin_gate_sets();
  auto only_plus = game_operators(uniform_measure(sets.plus));
  CHECK(only_plus.m_minus.matrix().norm() < 1e-14);
  CHECK(only_plus.m_plus.trace() > 0);
  auto pairs = uniform_measure(sets.all());
  pairs[0].weight += 0.1;
  CHECK_THROWS(game_operators(pairs));
}

TEST_CASE("fixed-direction optimum") {
  auto sets = builtin_gate_sets();
  auto single = compute_pmax_fixed_direction(uniform_measure({sets.plus[0]}), FixedDirection::ForwardOnly);
  CHECK(single.p_max == doctest::Approx(1.0).epsilon(1e-4));
  auto uni = uniform_measure(sets.all());
  auto f = compute_pmax_fixed_direction(uni, FixedDirection::ForwardOnly);
  CHECK(f.report.converged);
  CHECK(f.p_max < 1.0 - 1e-3);
  CHECK(f.p_max > 0.5);
  auto h = compute_pmax_fixed_direction(uni, FixedDirection::ConvexHull);
  CHECK(h.p_max >= f.p_max - 1e-4);
  CHECK(parse_fixed_direction(fixed_direction_name(FixedDirection::BackwardOnly)) == FixedDirection::BackwardOnly);
}

TEST_CASE("waveplate gate table") {
  auto rep = verify_gate_table(parse_convention("s+p+"));
  CHECK(rep.all_passed());
  CHECK(rep.passed_count() == static_cast<int>(gate_table().size()));
  for (const auto& c : waveplate_conventions()) {
    Matrix j = waveplate(0.0, 1.0, c);
    CHECK((j.adjoint() * j - Matrix::Identity(2, 2)).norm() < 1e-12);
  }
  CHECK(phase_invariant_distance(named_gate("X"), named_gate("X") * Complex(0, 1)) < 1e-12);
  CHECK(phase_invariant_distance(named_gate("X"), named_gate("Z")) > 0.5);
}
