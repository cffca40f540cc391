// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iodir/operator.hpp"
#include "iodir/sdp.hpp"
#include "iodir/supermaps.hpp"

namespace iodir {

// Single-qubit states indexed 0..3: |0>, |1>, |+>, (|0> + i|1>)/sqrt(2).
Vector pauli_state(int index);
Matrix pauli_projector(int index, bool conjugated);

// Factor order of the five-qubit experiment layout.
const SystemLayout& experiment_layout();
const std::vector<std::string>& experiment_labels();

// Indices (a, b, c, d, e). d == kTraced marks an identity on B_ot
// (restricted terms always have a == 0 and d == kTraced).
inline constexpr int kTraced = -1;

struct DecompositionTerm {
  std::array<int, 5> idx{};
  double coeff = 0.0;
};

struct ProbabilityRecord {
  std::array<int, 5> idx{};
  double probability = 0.0;
  std::optional<std::int64_t> counts;
  std::optional<std::int64_t> shots;
};

struct Witness {
  HermitianOperator op;
  std::optional<sdp::WitnessCertificate> certificate;
};

// Measured operator of a term on the experiment layout:
// A_I |b><b|, A_O conj|c><c|, B_it conj|a><a|, B_ot |d><d| (or I), B_oc |e><e|.
Matrix term_operator(const std::array<int, 5>& idx);

inline constexpr double kZeroCoeff = 1e-10;
inline constexpr double kReconstructionTol = 1e-8;

struct Decomposition {
  std::vector<DecompositionTerm> terms;  // nonzero coefficients only
  double residual = 0.0;                 // ||W - sum coeff E||_2
  bool restricted = false;
  int total_terms() const { return restricted ? 64 : 1024; }
};

// Throws DomainError when restricted and W is not of the form
// |0><0|_{B_it} (x) I_{B_ot} (x) W_red (within 1e-8), or when the
// reconstruction residual exceeds 1e-8.
Decomposition decompose_witness(const HermitianOperator& w, bool restricted);
HermitianOperator reconstruct(const std::vector<DecompositionTerm>& terms);

std::vector<ProbabilityRecord> born_probabilities(const SetupOperator& s,
                                                  const std::vector<DecompositionTerm>& terms);
double estimate_robustness(const std::vector<DecompositionTerm>& terms,
                           const std::vector<ProbabilityRecord>& probs);

struct ResampleResult {
  double mean = 0.0;
  double stddev = 0.0;
  std::vector<double> samples;
};

// Poisson counts with mean shots * p per record, one stream per repetition.
ResampleResult poisson_resample(const std::vector<DecompositionTerm>& terms,
                                const std::vector<ProbabilityRecord>& probs, std::int64_t shots,
                                int repetitions, std::uint64_t seed);

double significance(double value, double stddev);

struct CertificateCheck {
  double w_residual = 0.0;      // ||W - W0 - W1||
  double w0_in_lv = 0.0;        // ||Pi_{L_V} W0||
  double w2_in_lf = 0.0;        // ||Pi_{L_f} W2||
  double w3_in_lb = 0.0;        // ||Pi_{L_b} W3||
  double min_eig_12 = 0.0;      // lambda_min(W1 - W2)
  double min_eig_13 = 0.0;      // lambda_min(W1 - W3)
  bool valid = false;
};

CertificateCheck verify_certificate(const SetupOperator& roles, const HermitianOperator& w,
                                    const sdp::WitnessCertificate& c, double tol = kReconstructionTol);

struct WitnessValidation {
  double min_over_definite = 0.0;  // min Tr(W S') over normalized definite S'
  bool nonnegative = false;
  sdp::SolveReport definite_report;
  double certificate_shift = 0.0;  // smallest t with W1 - W2 + tI, W1 - W3 + tI PSD
  bool certificate_found = false;
  std::optional<sdp::WitnessCertificate> certificate;
  std::optional<CertificateCheck> stored_certificate;
  bool valid = false;
};

// `roles` supplies the layout and role assignment (its operator is unused).
WitnessValidation validate_witness(const SetupOperator& roles, const Witness& w, double tol = 1e-6);

}  // namespace iodir
