// SPDX-License-Identifier: Apache-2.0
#include "iodir/sdp.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "iodir/error.hpp"
#include "iodir/kernels.hpp"
#include "iodir/tensor.hpp"

namespace iodir::sdp {

int ConicProgram::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].name == name) return static_cast<int>(i);
  throw DomainError("no block named '" + name + "'");
}

SolverOptions default_options() {
  SolverOptions o;
  if (const char* env = std::getenv("IODIR_TOL")) {
    char* end = nullptr;
    double t = std::strtod(env, &end);
    if (end != env && t > 0) o.tol = t;
  }
  return o;
}

SolverOptions robustness_defaults() {
  SolverOptions o = default_options();
  o.tol = std::min(o.tol, 1e-9);
  o.gap_tol = 1e-8;
  return o;
}

const Matrix& SolveReport::primal_block(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return primal.at(i);
  throw DomainError("no block named '" + name + "'");
}

const Matrix& SolveReport::dual_block(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return dual.at(i);
  throw DomainError("no block named '" + name + "'");
}

namespace {

using Blocks = std::vector<Matrix>;

double* raw(Matrix& m) { return reinterpret_cast<double*>(m.data()); }
const double* raw(const Matrix& m) { return reinterpret_cast<const double*>(m.data()); }
std::size_t len(const Matrix& m) { return 2 * static_cast<std::size_t>(m.size()); }

double inner(const Blocks& a, const Blocks& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += kernels::dot(len(a[i]), raw(a[i]), raw(b[i]));
  return s;
}

// y = a*x + b*y blockwise
void axpby(double a, const Blocks& x, double b, Blocks& y) {
  for (std::size_t i = 0; i < x.size(); ++i) kernels::axpby(len(x[i]), a, raw(x[i]), b, raw(y[i]));
}

double dist_sq(const Blocks& a, const Blocks& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]).squaredNorm();
  return s;
}

struct ComponentSystem {
  std::vector<int> blocks;     // active blocks (global indices)
  std::vector<int> couplings;  // active couplings
  RealMatrix a;                // couplings x blocks
  RealMatrix pinv;             // blocks x couplings
  std::vector<Matrix> rhs;     // per active coupling
};

struct BasisGroup {
  const ComponentBasis* basis = nullptr;
  std::vector<int> blocks;
  std::vector<ComponentSystem> comps;
};

class Solver {
 public:
  Solver(const ConicProgram& p, const SolverOptions& o) : p_(p), o_(o) {
    validate();
    build_groups();
    const int nb = static_cast<int>(p_.blocks.size());
    zero_.resize(nb);
    c_.resize(nb);
    for (int i = 0; i < nb; ++i) {
      const int n = p_.blocks[i].basis->dim();
      zero_[i] = Matrix::Zero(n, n);
      c_[i] = p_.blocks[i].objective.size() ? p_.blocks[i].objective : zero_[i];
    }
    build_dense();
    b_ = project_affine(zero_);
  }

  SolveReport run();

 private:
  void validate() const;
  void build_groups();
  void build_dense();
  Blocks project_base(const Blocks& v) const;
  Blocks project_affine(const Blocks& v) const;
  Blocks project_linear(const Blocks& v) const {
    Blocks x = project_affine(v);
    axpby(-1.0, b_, 1.0, x);
    return x;
  }
  Matrix project_cone(int i, const Matrix& m) const;
  double primal_cone_dist(int i, const Matrix& m) const;
  double dual_cone_dist(int i, const Matrix& m) const;

  const ConicProgram& p_;
  SolverOptions o_;
  std::vector<BasisGroup> groups_;
  Blocks zero_, c_, b_;
  std::vector<Blocks> g_;  // dense constraint directions projected onto the linear part
  RealMatrix gram_pinv_;
};

void Solver::validate() const {
  if (p_.blocks.empty()) throw DomainError("program has no variables");
  for (const auto& b : p_.blocks) {
    if (!b.basis) throw DomainError("block '" + b.name + "' has no basis");
    if (b.mask.groups() != b.basis->groups()) throw DomainError("block '" + b.name + "' mask mismatch");
    if (b.cone == ConeKind::Subspace && !b.subspace)
      throw DomainError("block '" + b.name + "' subspace cone without projector");
    const int n = b.basis->dim();
    if (b.objective.size() && (b.objective.rows() != n || b.objective.cols() != n))
      throw DomainError("block '" + b.name + "' objective has the wrong size");
  }
  for (const auto& c : p_.couplings) {
    if (c.terms.empty()) throw DomainError("coupling '" + c.name + "' has no terms");
    const ComponentBasis* basis = p_.blocks.at(c.terms.front().first).basis.get();
    for (const auto& [i, coeff] : c.terms)
      if (p_.blocks.at(i).basis.get() != basis)
        throw DomainError("coupling '" + c.name + "' mixes bases");
    if (c.mask.groups() != basis->groups()) throw DomainError("coupling '" + c.name + "' mask mismatch");
  }
}

void Solver::build_groups() {
  for (int i = 0; i < static_cast<int>(p_.blocks.size()); ++i) {
    const ComponentBasis* b = p_.blocks[i].basis.get();
    BasisGroup* g = nullptr;
    for (auto& x : groups_)
      if (x.basis == b) g = &x;
    if (!g) {
      groups_.push_back({b, {}, {}});
      g = &groups_.back();
    }
    g->blocks.push_back(i);
  }
  for (auto& g : groups_) {
    std::vector<int> cpl;
    for (int k = 0; k < static_cast<int>(p_.couplings.size()); ++k)
      if (p_.blocks[p_.couplings[k].terms.front().first].basis.get() == g.basis) cpl.push_back(k);
    std::vector<std::vector<Matrix>> rhs_comps(p_.couplings.size());
    for (int k : cpl)
      if (p_.couplings[k].rhs.size()) rhs_comps[k] = g.basis->decompose(p_.couplings[k].rhs);

    g.comps.resize(g.basis->components());
    for (int s = 0; s < g.basis->components(); ++s) {
      auto& cs = g.comps[s];
      for (int i : g.blocks)
        if (p_.blocks[i].mask.contains(s)) cs.blocks.push_back(i);
      for (int k : cpl)
        if (p_.couplings[k].mask.contains(s)) cs.couplings.push_back(k);
      const int nc = static_cast<int>(cs.couplings.size()), na = static_cast<int>(cs.blocks.size());
      if (nc == 0) continue;
      cs.a = RealMatrix::Zero(nc, na);
      for (int r = 0; r < nc; ++r)
        for (const auto& [i, coeff] : p_.couplings[cs.couplings[r]].terms)
          for (int col = 0; col < na; ++col)
            if (cs.blocks[col] == i) cs.a(r, col) += coeff;
      const int n = g.basis->dim();
      for (int k : cs.couplings)
        cs.rhs.push_back(rhs_comps[k].empty() ? Matrix::Zero(n, n) : rhs_comps[k][s]);
      if (na > 0) cs.pinv = cs.a.completeOrthogonalDecomposition().pseudoInverse();
      else cs.pinv = RealMatrix::Zero(0, nc);
      // The right-hand side must lie in the range of the coefficient matrix.
      RealMatrix proj = na > 0 ? RealMatrix(cs.a * cs.pinv) : RealMatrix::Zero(nc, nc);
      for (int r = 0; r < nc; ++r) {
        Matrix res = cs.rhs[r];
        for (int q = 0; q < nc; ++q) res -= proj(r, q) * cs.rhs[q];
        if (res.norm() > 1e-9 * (1.0 + cs.rhs[r].norm())) {
          std::ostringstream os;
          os << "coupling '" << p_.couplings[cs.couplings[r]].name << "' is inconsistent on component " << s;
          throw DomainError(os.str());
        }
      }
    }
  }
}

Blocks Solver::project_base(const Blocks& v) const {
  Blocks x(v.size());
  for (const auto& g : groups_) {
    std::vector<std::vector<Matrix>> comps(p_.blocks.size());
    for (int i : g.blocks) {
      const int n = g.basis->dim();
      x[i] = Matrix::Zero(n, n);
      comps[i] = g.basis->decompose(v[i]);
    }
    for (int s = 0; s < g.basis->components(); ++s) {
      const auto& cs = g.comps[s];
      if (cs.blocks.empty()) continue;
      if (cs.couplings.empty()) {
        for (int i : cs.blocks) x[i] += comps[i][s];
        continue;
      }
      const int nc = static_cast<int>(cs.couplings.size()), na = static_cast<int>(cs.blocks.size());
      std::vector<Matrix> r(nc);
      for (int k = 0; k < nc; ++k) {
        r[k] = -cs.rhs[k];
        for (int col = 0; col < na; ++col)
          if (cs.a(k, col) != 0.0) r[k] += cs.a(k, col) * comps[cs.blocks[col]][s];
      }
      for (int col = 0; col < na; ++col) {
        Matrix xi = comps[cs.blocks[col]][s];
        for (int k = 0; k < nc; ++k)
          if (cs.pinv(col, k) != 0.0) xi -= cs.pinv(col, k) * r[k];
        x[cs.blocks[col]] += xi;
      }
    }
  }
  return x;
}

void Solver::build_dense() {
  const int nd = static_cast<int>(p_.dense.size());
  if (nd == 0) return;
  Blocks b0 = project_base(zero_);
  for (const auto& d : p_.dense) {
    Blocks a = zero_;
    for (const auto& [i, m] : d.terms) a.at(i) += m;
    Blocks gk = project_base(a);
    axpby(-1.0, b0, 1.0, gk);
    g_.push_back(std::move(gk));
  }
  RealMatrix gram(nd, nd);
  for (int k = 0; k < nd; ++k)
    for (int l = 0; l < nd; ++l) gram(k, l) = inner(g_[k], g_[l]);
  gram_pinv_ = gram.completeOrthogonalDecomposition().pseudoInverse();
}

Blocks Solver::project_affine(const Blocks& v) const {
  Blocks x = project_base(v);
  const int nd = static_cast<int>(p_.dense.size());
  if (nd == 0) return x;
  RealVector t(nd);
  for (int k = 0; k < nd; ++k) {
    double s = -p_.dense[k].rhs;
    for (const auto& [i, m] : p_.dense[k].terms) s += hs_inner(m, x[i]);
    t(k) = s;
  }
  RealVector mu = gram_pinv_ * t;
  for (int k = 0; k < nd; ++k) axpby(-mu(k), g_[k], 1.0, x);
  return x;
}

Matrix Solver::project_cone(int i, const Matrix& m) const {
  const auto& b = p_.blocks[i];
  switch (b.cone) {
    case ConeKind::Psd: return psd_project(m);
    case ConeKind::Free: return m;
    case ConeKind::Subspace: return b.subspace(m);
  }
  return m;
}

double negative_part_norm(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  return es.eigenvalues().cwiseMin(0.0).norm();
}

double Solver::primal_cone_dist(int i, const Matrix& m) const {
  const auto& b = p_.blocks[i];
  switch (b.cone) {
    case ConeKind::Psd: return negative_part_norm(m);
    case ConeKind::Free: return 0.0;
    case ConeKind::Subspace: return (m - b.subspace(m)).norm();
  }
  return 0.0;
}

double Solver::dual_cone_dist(int i, const Matrix& m) const {
  const auto& b = p_.blocks[i];
  switch (b.cone) {
    case ConeKind::Psd: return negative_part_norm(m);
    case ConeKind::Free: return m.norm();
    case ConeKind::Subspace: return b.subspace(m).norm();
  }
  return 0.0;
}

SolveReport Solver::run() {
  auto t0 = std::chrono::steady_clock::now();
  const int nb = static_cast<int>(p_.blocks.size());
  double rho = o_.rho;
  const double alpha = o_.relaxation;
  Blocks z = zero_, u = zero_, x, zprev, xhat(nb);

  SolveReport rep;
  for (const auto& b : p_.blocks) rep.names.push_back(b.name);
  rep.status = "max_iter";

  double rp = 0, rd = 0;
  for (int it = 1; it <= o_.max_iter; ++it) {
    Blocks v = z;
    axpby(-1.0, u, 1.0, v);
    axpby(-1.0 / rho, c_, 1.0, v);
    x = project_affine(v);
    for (int i = 0; i < nb; ++i) {
      xhat[i] = x[i];
      kernels::axpby(len(z[i]), 1.0 - alpha, raw(z[i]), alpha, raw(xhat[i]));
    }
    zprev = z;
    for (int i = 0; i < nb; ++i) z[i] = project_cone(i, xhat[i] + u[i]);
    for (int i = 0; i < nb; ++i) {
      kernels::axpy(len(xhat[i]), 1.0, raw(xhat[i]), raw(u[i]));
      kernels::axpy(len(z[i]), -1.0, raw(z[i]), raw(u[i]));
    }

    const bool check = it % o_.check_every == 0 || it == o_.max_iter;
    const bool adapt = o_.adapt_every > 0 && it % o_.adapt_every == 0;
    if (!check && !adapt) continue;
    rp = std::sqrt(dist_sq(x, z));
    rd = rho * std::sqrt(dist_sq(z, zprev));

    if (check && rp <= o_.tol && rd <= o_.tol) {
      // Certified pair: x_c exactly affine, y_c with c - y_c orthogonal to L.
      Blocks xc = project_affine(z);
      Blocks y = u;
      for (auto& m : y) m *= -rho;
      Blocks cy = c_;
      axpby(-1.0, y, 1.0, cy);
      Blocks corr = project_linear(cy);
      Blocks yc = y;
      axpby(1.0, corr, 1.0, yc);
      Blocks cmy = c_;
      axpby(-1.0, yc, 1.0, cmy);
      double pval = inner(c_, xc) + p_.objective_offset;
      double dval = inner(cmy, b_) + p_.objective_offset;
      double pc = 0, dc = 0;
      for (int i = 0; i < nb; ++i) {
        pc = std::hypot(pc, primal_cone_dist(i, xc[i]));
        dc = std::hypot(dc, dual_cone_dist(i, yc[i]));
      }
      double gap = std::abs(pval - dval);
      rep.primal_value = pval;
      rep.dual_value = dval;
      rep.gap = gap;
      rep.iterations = it;
      rep.residuals = {{"primal_affine", rp}, {"dual_step", rd}, {"primal_cone", pc}, {"dual_cone", dc}};
      rep.primal = std::move(xc);
      rep.dual = std::move(yc);
      if (pc <= o_.tol && dc <= o_.tol && gap <= o_.gap_tol) {
        rep.converged = true;
        rep.status = "converged";
        break;
      }
    }
    if (adapt) {
      double scale = 1.0;
      if (rp > 10.0 * rd) scale = 2.0;
      else if (rd > 10.0 * rp) scale = 0.5;
      if (scale != 1.0) {
        rho *= scale;
        for (auto& m : u) m /= scale;
      }
    }
  }
  if (!rep.converged) {
    // Report the final iterate with certified quantities for diagnostics.
    Blocks xc = project_affine(z);
    Blocks y = u;
    for (auto& m : y) m *= -rho;
    Blocks cy = c_;
    axpby(-1.0, y, 1.0, cy);
    Blocks yc = y;
    axpby(1.0, project_linear(cy), 1.0, yc);
    Blocks cmy = c_;
    axpby(-1.0, yc, 1.0, cmy);
    rep.primal_value = inner(c_, xc) + p_.objective_offset;
    rep.dual_value = inner(cmy, b_) + p_.objective_offset;
    rep.gap = std::abs(rep.primal_value - rep.dual_value);
    rep.iterations = o_.max_iter;
    double pc = 0, dc = 0;
    for (int i = 0; i < nb; ++i) {
      pc = std::hypot(pc, primal_cone_dist(i, xc[i]));
      dc = std::hypot(dc, dual_cone_dist(i, yc[i]));
    }
    rep.residuals = {{"primal_affine", rp}, {"dual_step", rd}, {"primal_cone", pc}, {"dual_cone", dc}};
    rep.primal = std::move(xc);
    rep.dual = std::move(yc);
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

SolveReport solve(const ConicProgram& prog, const SolverOptions& opts) {
  Solver s(prog, opts);
  return s.run();
}

LinearMap restriction_projector(const SystemLayout& layout, const WitnessRestriction& r) {
  const std::size_t ip = layout.index_of(r.pinned), itr = layout.index_of(r.traced);
  std::vector<bool> mask(layout.size(), false);
  mask[ip] = mask[itr] = true;
  auto split = std::make_shared<IndexSplit>(layout.dims(), mask);
  const int dp = layout[ip].dim, dt = layout[itr].dim;
  // Traced index is row-major over the two factors in layout order.
  auto pinned_zero = [ip, itr, dp, dt](int x) {
    int pin = ip < itr ? x / dt : x % dp;
    return pin == 0;
  };
  return [split, pinned_zero, dt](const Matrix& w) -> Matrix {
    Matrix m = Matrix::Zero(split->kept_dim(), split->kept_dim());
    for (int x = 0; x < split->traced_dim(); ++x)
      if (pinned_zero(x)) m += w(split->rows(x), split->rows(x));
    m /= static_cast<double>(dt);
    const int n = split->kept_dim() * split->traced_dim();
    Matrix out = Matrix::Zero(n, n);
    for (int x = 0; x < split->traced_dim(); ++x)
      if (pinned_zero(x)) out(split->rows(x), split->rows(x)) = m;
    return out;
  };
}

namespace {

Matrix scaled_identity(int n, double s) { return s * Matrix::Identity(n, n); }

}  // namespace

RobustnessResult solve_max_robustness(const SetupOperator& s, const RobustnessOptions& opts) {
  auto basis = s.basis();
  const int n = s.op().dim();
  const double d = s.normalization();
  const auto all = ComponentMask::all(4);
  const auto lv = subspace_mask(SubspaceId::LV), lf = subspace_mask(SubspaceId::Lf),
             lb = subspace_mask(SubspaceId::Lb), ls = subspace_mask(SubspaceId::Ls);

  ConicProgram p;
  Block w{"W", basis, all, ConeKind::Free, {}, s.op().matrix()};
  if (opts.restriction) {
    w.cone = ConeKind::Subspace;
    w.subspace = restriction_projector(s.layout(), *opts.restriction);
  }
  const int iw = p.add(w);
  const int iw0 = p.add({"W0", basis, ~lv, ConeKind::Free, {}, {}});
  const int ip1 = p.add({"P1", basis, all, ConeKind::Psd, {}, {}});
  const int ip2 = p.add({"P2", basis, all, ConeKind::Psd, {}, {}});
  const int iw2 = p.add({"W2", basis, ~lf, ConeKind::Free, {}, {}});
  const int iw3 = p.add({"W3", basis, ~lb, ConeKind::Free, {}, {}});
  const int iq = p.add({"Q", basis, all, ConeKind::Psd, {}, {}});
  const int ir = p.add({"R", basis, ~(ls & lv), ConeKind::Free, {}, {}});
  p.couplings.push_back({"definite-split", {{iw, 1}, {iw0, -1}, {ip1, -1}, {iw2, -1}}, {}, all});
  p.couplings.push_back({"w1-consistency", {{ip1, 1}, {iw2, 1}, {ip2, -1}, {iw3, -1}}, {}, all});
  p.couplings.push_back({"normalization", {{iw, 1}, {iq, 1}, {ir, 1}}, scaled_identity(n, 1.0 / d), all});

  RobustnessResult r;
  r.report = solve(p, opts.solver);
  // Report in the maximization sense: values are robustness.
  r.report.primal_value = -r.report.primal_value;
  r.report.dual_value = -r.report.dual_value;
  r.robustness = r.report.primal_value;
  const auto& rep = r.report;
  const auto& L = s.layout();
  r.witness = HermitianOperator(L, rep.primal[iw]);
  Matrix w1 = rep.primal[ip1] + rep.primal[iw2];
  r.certificate = {HermitianOperator(L, rep.primal[iw0]), HermitianOperator(L, w1),
                   HermitianOperator(L, rep.primal[iw2]), HermitianOperator(L, rep.primal[iw3])};
  return r;
}

SolveReport solve_robustness_primal(const SetupOperator& s, const RobustnessOptions& opts) {
  auto basis = s.basis();
  const int n = s.op().dim();
  const double d = s.normalization();
  const auto all = ComponentMask::all(4);
  const auto lv = subspace_mask(SubspaceId::LV), lf = subspace_mask(SubspaceId::Lf),
             lb = subspace_mask(SubspaceId::Lb), ls = subspace_mask(SubspaceId::Ls);
  ConicProgram p;
  const int ixf = p.add({"Xf", basis, lv & lf, ConeKind::Psd, {}, {}});
  const int ixb = p.add({"Xb", basis, lv & lb, ConeKind::Psd, {}, {}});
  const int it = p.add({"T", basis, ls & lv, ConeKind::Psd, {}, scaled_identity(n, 1.0 / d)});
  Coupling c{"definite-sum", {{ixf, 1}, {ixb, 1}, {it, -1}}, s.op().matrix(), all};
  if (opts.restriction) {
    LinearMap pr = restriction_projector(s.layout(), *opts.restriction);
    LinearMap perp = [pr](const Matrix& m) -> Matrix { return m - pr(m); };
    const int id = p.add({"D", basis, all, ConeKind::Subspace, perp, {}});
    c.terms.push_back({id, -1});
  }
  p.couplings.push_back(std::move(c));
  return solve(p, opts.solver);
}

SolveReport solve_robustness_given_witness(const SetupOperator& s, const HermitianOperator& w,
                                           const SolverOptions& opts) {
  if (!(w.layout() == s.layout())) throw LayoutError("witness layout does not match setup");
  auto basis = s.basis();
  const int n = s.op().dim();
  const double d = s.normalization();
  const auto lv = subspace_mask(SubspaceId::LV), ls = subspace_mask(SubspaceId::Ls);
  auto scalar = std::make_shared<const ComponentBasis>(SystemLayout{{"slack", 1}},
                                                       std::vector<std::vector<std::string>>{});
  ConicProgram p;
  const int it = p.add({"T", basis, ls & lv, ConeKind::Psd, {}, scaled_identity(n, 1.0 / d)});
  const int is = p.add({"sigma", scalar, ComponentMask::all(0), ConeKind::Psd, {}, {}});
  p.dense.push_back({"witness-nonnegative", {{it, w.matrix()}, {is, -Matrix::Identity(1, 1)}},
                     -w.inner(s.op())});
  return solve(p, opts);
}

DualityCertificate certify_duality(const SolveReport& primal, const SolveReport& dual, double tol) {
  DualityCertificate c;
  c.identity_residual = std::abs(primal.primal_value - dual.primal_value);
  c.primal_gap = primal.gap;
  c.dual_gap = dual.gap;
  c.certified = primal.converged && dual.converged && c.identity_residual <= 10.0 * tol;
  return c;
}

SolveReport min_over_definite(const SetupOperator& s, const HermitianOperator& w, const SolverOptions& opts) {
  if (!(w.layout() == s.layout())) throw LayoutError("witness layout does not match setup");
  auto basis = s.basis();
  const int n = s.op().dim();
  const double d = s.normalization();
  const auto lv = subspace_mask(SubspaceId::LV), lf = subspace_mask(SubspaceId::Lf),
             lb = subspace_mask(SubspaceId::Lb);
  ConicProgram p;
  const int ixf = p.add({"Xf", basis, lv & lf, ConeKind::Psd, {}, w.matrix()});
  const int ixb = p.add({"Xb", basis, lv & lb, ConeKind::Psd, {}, w.matrix()});
  p.couplings.push_back({"trace", {{ixf, 1}, {ixb, 1}}, scaled_identity(n, d / n), ComponentMask::single(4, 0)});
  return solve(p, opts);
}

SetupReport check_definite(const SetupOperator& s, double tol) {
  SetupReport r = check_setup(s, ConeId::General, kSubspaceTol);
  r.cone = ConeId::Definite;
  RobustnessOptions o;
  auto res = solve_max_robustness(s, o);
  r.conditions.push_back({"robustness", res.robustness, res.robustness <= tol});
  r.passed = r.passed && res.report.converged && res.robustness <= tol;
  r.note = res.report.converged ? "membership decided by robustness program"
                                : "robustness program did not converge";
  return r;
}

}  // namespace iodir::sdp
