// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "iodir/operator.hpp"
#include "iodir/sdp.hpp"
#include "iodir/supermaps.hpp"

namespace iodir {

enum class GameTag { Plus, Minus };
std::string tag_name(GameTag t);
GameTag parse_tag(const std::string& s);

inline constexpr double kGateTol = 1e-10;

// Named single-qubit gates used by the game: I, X, Y, Z, U1, V1, U2, V2, U3, V3.
Matrix named_gate(const std::string& name);
const std::vector<std::string>& named_gates();

struct GatePair {
  std::string name;
  Matrix u, v;
  GameTag tag = GameTag::Plus;

  GatePair() = default;
  GatePair(std::string name, Matrix u, Matrix v, GameTag tag);  // validates
  // ||UV^T -+ U^TV|| for the sign of the tag.
  double tag_residual() const;
};

struct WeightedPair {
  GatePair pair;
  double weight = 0.0;
};

struct GateSets {
  std::vector<GatePair> plus, minus;
  std::vector<GatePair> all() const;
};

GateSets builtin_gate_sets();
std::vector<WeightedPair> uniform_measure(const std::vector<GatePair>& pairs);

// Layout (A_I, A_O, B_I, B_O, C_O) with qubit slots and roles for the multipartite checks.
SystemLayout game_layout();
MultipartiteRoles game_roles();

struct PortProbabilities {
  double port0 = 0.0;  // control found in |+>
  double port1 = 0.0;  // control found in |->
};

// Direct simulation of UV^T (x) |0><0| + U^TV (x) |1><1| on target (x) |+>.
PortProbabilities qtf_strategy(const GatePair& pair, const Vector& target);

// Projector onto {|A>> : A = A^T} on the d^2 double-ket space.
Matrix symmetric_projector(int d);

// SWITCH-based strategy: probability that the two-outcome measurement matches the tag.
double switch_strategy(const GatePair& pair);

// Strategy operators on game_layout(). Tr = 4.
HermitianOperator qtf_strategy_operator(const Vector& target);
HermitianOperator switch_strategy_operator();

struct GameOperators {
  HermitianOperator m_plus, m_minus;
  HermitianOperator total() const { return m_plus + m_minus; }
};

GameOperators game_operators(const std::vector<WeightedPair>& pairs);
// I/d^2 - (M_+ + M_-)/p_max.
HermitianOperator game_witness(const std::vector<WeightedPair>& pairs, double p_max = 0.89);
// Tr((M_+ + M_-) S).
double success_probability(const GameOperators& m, const HermitianOperator& strategy);

enum class FixedDirection { ForwardOnly, BackwardOnly, ConvexHull };
std::string fixed_direction_name(FixedDirection d);
FixedDirection parse_fixed_direction(const std::string& s);

struct PmaxResult {
  double p_max = 0.0;
  sdp::SolveReport report;
};

// max Tr((M_+ + M_-) S) over normalized strategies using both gates in one direction.
PmaxResult compute_pmax_fixed_direction(const std::vector<WeightedPair>& pairs, FixedDirection dir,
                                        const sdp::SolverOptions& opts = sdp::default_options());

// Waveplate Jones matrices J(theta, delta) = R(s theta) diag(1, e^{i p delta}) R(-s theta).
struct WaveplateConvention {
  int s = 1;
  int p = 1;
  std::string name() const;
};
const std::array<WaveplateConvention, 4>& waveplate_conventions();
WaveplateConvention parse_convention(const std::string& s);

Matrix waveplate(double theta_deg, double delta, const WaveplateConvention& c);
// QWP(qwp2) * HWP(hwp) * QWP(qwp1): the first quarter-wave plate acts first.
Matrix compose_waveplates(const std::array<double, 3>& angles, const WaveplateConvention& c);
double phase_invariant_distance(const Matrix& a, const Matrix& b);

struct GateTableRow {
  std::string name;
  Matrix matrix;
  std::array<double, 3> angles;  // qwp1, hwp, qwp2 in degrees
};
const std::vector<GateTableRow>& gate_table();

struct GateTableEntry {
  std::string name;
  double distance = 0.0;
  bool passed = false;
};

struct GateTableReport {
  WaveplateConvention convention;
  std::vector<GateTableEntry> rows;
  int passed_count() const;
  bool all_passed() const;
};

GateTableReport verify_gate_table(const WaveplateConvention& c, double tol = 1e-8);

}  // namespace iodir
