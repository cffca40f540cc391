// SPDX-License-Identifier: Apache-2.0
#include "iodir/random.hpp"

#include <cmath>

#include "iodir/tensor.hpp"

namespace iodir {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

Matrix random_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

Matrix random_isometry(int rows, int cols, Rng& rng) {
  Matrix g = random_gaussian(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  // Fix column phases against the R diagonal so the distribution is Haar.
  Matrix r = qr.matrixQR();
  for (int j = 0; j < cols; ++j) {
    Complex d = r(j, j);
    double a = std::abs(d);
    if (a > 0) q.col(j) *= d / a;
  }
  return q;
}

Matrix random_unitary(int d, Rng& rng) { return random_isometry(d, d, rng); }

Matrix random_hermitian(int d, Rng& rng) {
  Matrix g = random_gaussian(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

Vector random_state(int d, Rng& rng) {
  Matrix g = random_gaussian(d, 1, rng);
  return g.col(0).normalized();
}

KrausChannel random_bistochastic(int d, Rng& rng, int terms) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> w(terms);
  double total = 0;
  for (auto& x : w) total += (x = u(rng));
  std::vector<Matrix> kraus;
  for (int i = 0; i < terms; ++i) kraus.push_back(std::sqrt(w[i] / total) * random_unitary(d, rng));
  return KrausChannel(d, d, std::move(kraus));
}

namespace {

const SystemLayout& slot_layout() {
  static const SystemLayout l{{"A_I", 2}, {"A_O", 2}};
  return l;
}

const SystemLayout& global_layout() {
  static const SystemLayout l{{"B_it", 2}, {"B_ot", 2}, {"B_oc", 2}};
  return l;
}

std::map<std::string, Role> five_qubit_roles() {
  return {{"A_I", Role::SlotInput},
          {"A_O", Role::SlotOutput},
          {"B_it", Role::GlobalInput},
          {"B_ot", Role::GlobalOutput},
          {"B_oc", Role::GlobalOutput}};
}

// Columns: output Choi vectors for each matrix unit placed in the slot.
template <class F>
Matrix gamma_from(F&& f) {
  Matrix first;
  for (int a = 0; a < 4; ++a) {
    Matrix k = unvec_double_ket(Vector::Unit(4, a), 2, 2);
    Vector v = vec_double_ket(f(k));
    if (a == 0) first = Matrix::Zero(v.size(), 4);
    first.col(a) = v;
  }
  return first;
}

SetupOperator random_comb(Rng& rng, bool forward, int mem, int env) {
  const int dbi = 2, dbo = 4;
  Matrix w1 = random_isometry(2 * mem, dbi, rng);
  Matrix w2 = random_isometry(dbo * env, 2 * mem, rng);
  Matrix im = Matrix::Identity(mem, mem);
  std::vector<Matrix> gammas;
  for (int e = 0; e < env; ++e) {
    // Rows of w2 are ordered (B_O, E); pick E = e.
    Matrix sel = Matrix::Zero(dbo, dbo * env);
    for (int b = 0; b < dbo; ++b) sel(b, b * env + e) = 1.0;
    gammas.push_back(gamma_from([&](const Matrix& k) -> Matrix {
      Matrix kk = forward ? k : Matrix(k.transpose());
      return sel * w2 * kron(kk, im) * w1;
    }));
  }
  return SetupOperator(induced_choi(slot_layout(), global_layout(), gammas), five_qubit_roles());
}

SetupOperator mix(const std::vector<std::pair<double, SetupOperator>>& parts) {
  Matrix m = Matrix::Zero(32, 32);
  for (const auto& [w, s] : parts) m += w * s.op().matrix();
  return parts.front().second.with_op(HermitianOperator(parts.front().second.layout(), m));
}

}  // namespace

SetupOperator random_forward_setup(Rng& rng, int memory_dim, int env_dim) {
  return random_comb(rng, true, memory_dim, env_dim);
}

SetupOperator random_backward_setup(Rng& rng, int memory_dim, int env_dim) {
  return random_comb(rng, false, memory_dim, env_dim);
}

SetupOperator random_definite_mixture(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double p = u(rng);
  auto f = random_forward_setup(rng);
  auto b = random_backward_setup(rng);
  return mix({{p, f}, {1.0 - p, b}});
}

SetupOperator random_general_setup(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double t = u(rng) * M_PI / 2, phi = u(rng) * 2 * M_PI;
  Matrix g = qtf_gamma(2, std::cos(t), std::polar(std::sin(t), phi));
  Matrix uin = random_unitary(2, rng), uout = random_unitary(4, rng);
  Matrix dressed = gamma_from([&](const Matrix& k) -> Matrix {
    Matrix f = unvec_double_ket(g * vec_double_ket(k), 2, 4);
    return uout * f * uin;
  });
  SetupOperator flip(induced_choi(slot_layout(), global_layout(), {dressed}), five_qubit_roles());
  double w[3] = {u(rng), u(rng), u(rng) + 0.5};
  double total = w[0] + w[1] + w[2];
  return mix({{w[0] / total, random_forward_setup(rng)},
              {w[1] / total, random_backward_setup(rng)},
              {w[2] / total, flip}});
}

}  // namespace iodir
