// SPDX-License-Identifier: Apache-2.0
#include "iodir/witness.hpp"

#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include <Eigen/LU>

#include "iodir/error.hpp"
#include "iodir/random.hpp"
#include "iodir/tensor.hpp"

namespace iodir {

Vector pauli_state(int index) {
  const double h = 1.0 / std::sqrt(2.0);
  Vector v(2);
  switch (index) {
    case 0: v << 1.0, 0.0; break;
    case 1: v << 0.0, 1.0; break;
    case 2: v << h, h; break;
    case 3: v << h, Complex(0.0, h); break;
    default: throw DomainError("state index must be in 0..3");
  }
  return v;
}

Matrix pauli_projector(int index, bool conjugated) {
  Vector v = pauli_state(index);
  if (conjugated) v = v.conjugate().eval();
  return v * v.adjoint();
}

const std::vector<std::string>& experiment_labels() {
  static const std::vector<std::string> l{"A_I", "A_O", "B_it", "B_ot", "B_oc"};
  return l;
}

const SystemLayout& experiment_layout() {
  static const SystemLayout l = SystemLayout::qubits(experiment_labels());
  return l;
}

namespace {

// Position in (a, b, c, d, e) of the index measured on each layout qubit.
constexpr int kFullSlot[5] = {1, 2, 0, 3, 4};
constexpr bool kFullConj[5] = {false, true, true, false, false};
constexpr int kRedSlot[3] = {1, 2, 4};
constexpr bool kRedConj[3] = {false, true, false};

Matrix to_experiment_order(const HermitianOperator& w) {
  const auto& l = w.layout();
  for (const auto& lab : experiment_labels())
    if (!l.contains(lab) || l.dim_of(lab) != 2)
      throw LayoutError("operator must live on qubits (A_I, A_O, B_it, B_ot, B_oc)");
  if (l.size() != 5) throw LayoutError("operator must live on exactly five qubits");
  if (l == experiment_layout()) return w.matrix();
  return permute_factors(w, experiment_labels()).matrix();
}

// Pauli coordinates x_p = Tr(sigma_p W), p base-4 with the first qubit most significant.
RealVector pauli_coordinates(const Matrix& w, int nq) {
  const int n = 1 << nq, np = 1 << (2 * nq);
  RealVector x(np);
  for (int p = 0; p < np; ++p) {
    Complex acc = 0;
    for (int i = 0; i < n; ++i) {
      int k = i;
      Complex ph = 1.0;
      for (int q = 0; q < nq; ++q) {
        const int op = (p >> (2 * (nq - 1 - q))) & 3;
        const int bit = nq - 1 - q;
        const int r = (i >> bit) & 1;
        if (op == 1) k ^= 1 << bit;
        else if (op == 2) {
          k ^= 1 << bit;
          ph *= r == 0 ? Complex(0, -1) : Complex(0, 1);
        } else if (op == 3 && r == 1) ph = -ph;
      }
      // (sigma_p)_{i,k} W_{k,i}
      acc += ph * w(k, i);
    }
    x(p) = acc.real();
  }
  return x;
}

// B[p][k] = Tr(sigma_p Pi_k).
RealMatrix qubit_design(bool conj) {
  RealMatrix b(4, 4);
  b << 1, 1, 1, 1,     // I
      0, 0, 1, 0,      // X
      0, 0, 0, conj ? -1 : 1,  // Y
      1, -1, 0, 0;     // Z
  return b;
}

struct DesignSystem {
  int nq = 0;
  RealMatrix a;
  Eigen::PartialPivLU<RealMatrix> lu;
};

DesignSystem build_design(const bool* conj, int nq) {
  DesignSystem d;
  d.nq = nq;
  RealMatrix a = RealMatrix::Ones(1, 1);
  for (int q = 0; q < nq; ++q) {
    RealMatrix b = qubit_design(conj[q]);
    RealMatrix next(a.rows() * 4, a.cols() * 4);
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) next.block(i * 4, j * 4, 4, 4) = a(i, j) * b;
    a = std::move(next);
  }
  d.a = a;
  d.lu.compute(d.a);
  return d;
}

const DesignSystem& full_design() {
  static const DesignSystem d = build_design(kFullConj, 5);
  return d;
}

const DesignSystem& reduced_design() {
  static const DesignSystem d = build_design(kRedConj, 3);
  return d;
}

}  // namespace

Matrix term_operator(const std::array<int, 5>& idx) {
  Matrix m = Matrix::Ones(1, 1);
  for (int q = 0; q < 5; ++q) {
    const int k = idx[kFullSlot[q]];
    Matrix f = (q == 3 && k == kTraced) ? Matrix(Matrix::Identity(2, 2)) : pauli_projector(k, kFullConj[q]);
    m = kron(m, f);
  }
  return m;
}

HermitianOperator reconstruct(const std::vector<DecompositionTerm>& terms) {
  Matrix m = Matrix::Zero(32, 32);
  for (const auto& t : terms) m += t.coeff * term_operator(t.idx);
  return HermitianOperator(experiment_layout(), m);
}

Decomposition decompose_witness(const HermitianOperator& w, bool restricted) {
  Matrix wm = to_experiment_order(w);
  Decomposition out;
  out.restricted = restricted;
  RealVector alpha;
  if (!restricted) {
    alpha = full_design().lu.solve(pauli_coordinates(wm, 5));
    for (int t = 0; t < 1024; ++t) {
      if (std::abs(alpha(t)) < kZeroCoeff) continue;
      DecompositionTerm term;
      for (int q = 0; q < 5; ++q) term.idx[kFullSlot[q]] = (t >> (2 * (4 - q))) & 3;
      term.coeff = alpha(t);
      out.terms.push_back(term);
    }
  } else {
    auto proj = sdp::restriction_projector(experiment_layout(), {});
    double mismatch = (wm - proj(wm)).norm();
    if (mismatch > kReconstructionTol) {
      std::ostringstream os;
      os << "witness is not of the restricted form (residual " << mismatch << ")";
      throw DomainError(os.str());
    }
    // W_red = <0| Tr_{B_ot} W |0>_{B_it} / 2 on (A_I, A_O, B_oc).
    IndexSplit split(experiment_layout().dims(), {false, false, true, true, false});
    Matrix red = Matrix::Zero(8, 8);
    for (int x = 0; x < 2; ++x) red += wm(split.rows(x), split.rows(x));
    red /= 2.0;
    alpha = reduced_design().lu.solve(pauli_coordinates(red, 3));
    for (int t = 0; t < 64; ++t) {
      if (std::abs(alpha(t)) < kZeroCoeff) continue;
      DecompositionTerm term;
      term.idx = {0, 0, 0, kTraced, 0};
      for (int q = 0; q < 3; ++q) term.idx[kRedSlot[q]] = (t >> (2 * (2 - q))) & 3;
      term.coeff = alpha(t);
      out.terms.push_back(term);
    }
  }
  out.residual = (wm - reconstruct(out.terms).matrix()).norm();
  if (out.residual > kReconstructionTol) {
    std::ostringstream os;
    os << "decomposition reconstruction residual " << out.residual << " exceeds tolerance";
    throw NumericalError(os.str());
  }
  return out;
}

std::vector<ProbabilityRecord> born_probabilities(const SetupOperator& s,
                                                  const std::vector<DecompositionTerm>& terms) {
  Matrix sm = to_experiment_order(s.op());
  std::vector<ProbabilityRecord> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    ProbabilityRecord r;
    r.idx = t.idx;
    r.probability = hs_inner(term_operator(t.idx), sm);
    out.push_back(r);
  }
  return out;
}

namespace {

std::int64_t key_of(const std::array<int, 5>& idx) {
  std::int64_t k = 0;
  for (int v : idx) k = k * 8 + (v + 1);
  return k;
}

std::string idx_string(const std::array<int, 5>& idx) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < 5; ++i) os << (i ? "," : "") << idx[i];
  os << ')';
  return os.str();
}

std::vector<std::pair<double, double>> align(const std::vector<DecompositionTerm>& terms,
                                             const std::vector<ProbabilityRecord>& probs) {
  std::map<std::int64_t, double> p;
  for (const auto& r : probs) p[key_of(r.idx)] = r.probability;
  std::vector<std::pair<double, double>> out;
  for (const auto& t : terms) {
    if (t.coeff == 0.0) continue;
    auto it = p.find(key_of(t.idx));
    if (it == p.end()) throw DomainError("missing probability for term " + idx_string(t.idx));
    out.emplace_back(t.coeff, it->second);
  }
  return out;
}

}  // namespace

double estimate_robustness(const std::vector<DecompositionTerm>& terms,
                           const std::vector<ProbabilityRecord>& probs) {
  double s = 0;
  for (const auto& [c, p] : align(terms, probs)) s -= p * c;
  return s;
}

ResampleResult poisson_resample(const std::vector<DecompositionTerm>& terms,
                                const std::vector<ProbabilityRecord>& probs, std::int64_t shots,
                                int repetitions, std::uint64_t seed) {
  if (shots <= 0) throw DomainError("shots must be positive");
  if (repetitions <= 0) throw DomainError("repetitions must be positive");
  auto pairs = align(terms, probs);
  ResampleResult r;
  r.samples.resize(repetitions);
  const double n = static_cast<double>(shots);
  for (int rep = 0; rep < repetitions; ++rep) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(rep)));
    double est = 0;
    for (const auto& [c, p] : pairs) {
      double mean = n * std::clamp(p, 0.0, 1.0);
      std::int64_t k = 0;
      if (mean > 0) k = std::poisson_distribution<std::int64_t>(mean)(rng);
      est -= c * static_cast<double>(k) / n;
    }
    r.samples[rep] = est;
  }
  double sum = 0;
  for (double v : r.samples) sum += v;
  r.mean = sum / repetitions;
  double ss = 0;
  for (double v : r.samples) ss += (v - r.mean) * (v - r.mean);
  r.stddev = repetitions > 1 ? std::sqrt(ss / (repetitions - 1)) : 0.0;
  return r;
}

double significance(double value, double stddev) {
  if (!(stddev > 0)) throw DomainError("standard deviation must be positive");
  return value / stddev;
}

CertificateCheck verify_certificate(const SetupOperator& roles, const HermitianOperator& w,
                                    const sdp::WitnessCertificate& c, double tol) {
  auto basis = roles.basis();
  CertificateCheck r;
  r.w_residual = (w.matrix() - c.w0.matrix() - c.w1.matrix()).norm();
  r.w0_in_lv = basis->project(c.w0.matrix(), subspace_mask(SubspaceId::LV)).norm();
  r.w2_in_lf = basis->project(c.w2.matrix(), subspace_mask(SubspaceId::Lf)).norm();
  r.w3_in_lb = basis->project(c.w3.matrix(), subspace_mask(SubspaceId::Lb)).norm();
  r.min_eig_12 = min_eigenvalue(Matrix(c.w1.matrix() - c.w2.matrix()));
  r.min_eig_13 = min_eigenvalue(Matrix(c.w1.matrix() - c.w3.matrix()));
  r.valid = r.w_residual <= tol && r.w0_in_lv <= tol && r.w2_in_lf <= tol && r.w3_in_lb <= tol &&
            r.min_eig_12 >= -tol && r.min_eig_13 >= -tol;
  return r;
}

WitnessValidation validate_witness(const SetupOperator& roles, const Witness& w, double tol) {
  if (!(w.op.layout() == roles.layout())) throw LayoutError("witness layout does not match setup roles");
  WitnessValidation v;
  auto opts = sdp::robustness_defaults();
  v.definite_report = sdp::min_over_definite(roles, w.op, opts);
  v.min_over_definite = v.definite_report.primal_value;
  v.nonnegative = v.min_over_definite >= -tol;

  auto basis = roles.basis();
  const int n = w.op.dim();
  const auto all = ComponentMask::all(4);
  sdp::ConicProgram p;
  const int i0 = p.add({"W0", basis, ~subspace_mask(SubspaceId::LV), sdp::ConeKind::Free, {}, {}});
  const int i1 = p.add({"W1", basis, all, sdp::ConeKind::Free, {}, {}});
  const int i2 = p.add({"W2", basis, ~subspace_mask(SubspaceId::Lf), sdp::ConeKind::Free, {}, {}});
  const int i3 = p.add({"W3", basis, ~subspace_mask(SubspaceId::Lb), sdp::ConeKind::Free, {}, {}});
  const int ip1 = p.add({"P1", basis, all, sdp::ConeKind::Psd, {}, {}});
  const int ip2 = p.add({"P2", basis, all, sdp::ConeKind::Psd, {}, {}});
  const int it = p.add({"tI", basis, ComponentMask::single(4, 0), sdp::ConeKind::Free, {},
                        Matrix::Identity(n, n) / static_cast<double>(n)});
  p.couplings.push_back({"split", {{i0, 1}, {i1, 1}}, w.op.matrix(), all});
  p.couplings.push_back({"forward", {{i1, 1}, {i2, -1}, {it, 1}, {ip1, -1}}, {}, all});
  p.couplings.push_back({"backward", {{i1, 1}, {i3, -1}, {it, 1}, {ip2, -1}}, {}, all});
  auto rep = sdp::solve(p, opts);
  v.certificate_shift = rep.primal_value;
  v.certificate_found = rep.converged && rep.primal_value <= tol;
  if (v.certificate_found) {
    const auto& L = roles.layout();
    v.certificate = sdp::WitnessCertificate{HermitianOperator(L, rep.primal[i0]), HermitianOperator(L, rep.primal[i1]),
                                            HermitianOperator(L, rep.primal[i2]), HermitianOperator(L, rep.primal[i3])};
  }
  if (w.certificate) v.stored_certificate = verify_certificate(roles, w.op, *w.certificate);
  bool cert_ok = v.certificate_found || (v.stored_certificate && v.stored_certificate->valid);
  v.valid = v.nonnegative && cert_ok;
  return v;
}

}  // namespace iodir
