// Copyright 2026 The Cyclerec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cyclerec/dense_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace cyclerec::dense {

namespace {

using Mat2 = Eigen::Matrix2cd;

const Complex kI{0.0, 1.0};

void check_size(int n, int cap, const char* what) {
  if (n < 1 || n > cap) {
    throw std::invalid_argument(std::string(what) + ": n = " + std::to_string(n) +
                                " outside [1, " + std::to_string(cap) + "]");
  }
}

int dim(int n) { return 1 << n; }
int pauli_dim(int n) { return 1 << (2 * n); }

Mat2 single_qubit_matrix(const std::string& name) {
  const double r = 1.0 / std::sqrt(2.0);
  Mat2 m;
  if (name == "I") {
    m << 1, 0, 0, 1;
  } else if (name == "X") {
    m << 0, 1, 1, 0;
  } else if (name == "Y") {
    m << 0, -kI, kI, 0;
  } else if (name == "Z") {
    m << 1, 0, 0, -1;
  } else if (name == "H") {
    m << r, r, r, -r;
  } else if (name == "S") {
    m << 1, 0, 0, kI;
  } else if (name == "Sdg") {
    m << 1, 0, 0, -kI;
  } else if (name == "H_YZ") {
    m << r, -kI * r, kI * r, -r;
  } else {
    throw std::invalid_argument("no single-qubit matrix for gate '" + name + "'");
  }
  return m;
}

Unitary embed_single(const Mat2& g, int q, int n) {
  int d = dim(n);
  Unitary u = Unitary::Zero(d, d);
  for (int c = 0; c < d; ++c) {
    int b = (c >> q) & 1;
    for (int b2 = 0; b2 < 2; ++b2) {
      int r = (c & ~(1 << q)) | (b2 << q);
      u(r, c) += g(b2, b);
    }
  }
  return u;
}

const std::vector<Unitary>& all_paulis(int n) {
  static const auto cache = [] {
    std::array<std::vector<Unitary>, kMaxQubits + 1> c;
    for (int k = 1; k <= kMaxQubits; ++k) {
      for (int i = 0; i < pauli_dim(k); ++i) c[k].push_back(pauli_matrix(basis_pauli(k, i)));
    }
    return c;
  }();
  return cache[n];
}

std::vector<TransferMatrix> all_pauli_ptms(int n) {
  std::vector<TransferMatrix> out;
  for (const auto& p : all_paulis(n)) out.push_back(ptm_of_unitary(p));
  return out;
}

}  // namespace

TransferMatrix TransferMatrix::identity(int n) {
  check_size(n, kMaxQubits, "TransferMatrix");
  return {n, Eigen::MatrixXd::Identity(pauli_dim(n), pauli_dim(n))};
}

TransferMatrix TransferMatrix::operator*(const TransferMatrix& rhs) const {
  if (n != rhs.n) throw std::invalid_argument("TransferMatrix product: size mismatch");
  return {n, m * rhs.m};
}

int basis_index(const Pauli& p) {
  int idx = 0;
  for (int q = p.num_qubits() - 1; q >= 0; --q) idx = idx * 4 + p.letter_code(q);
  return idx;
}

Pauli basis_pauli(int n, int index) {
  uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    int c = (index >> (2 * q)) & 3;
    if (c == 1 || c == 2) x |= uint64_t{1} << q;
    if (c == 2 || c == 3) z |= uint64_t{1} << q;
  }
  return Pauli(n, x, z);
}

Unitary pauli_matrix(const Pauli& p) {
  int n = p.num_qubits();
  check_size(n, kMaxQubits, "pauli_matrix");
  int d = dim(n);
  uint64_t x = p.x_bits(), z = p.z_bits();
  Complex phase = std::pow(kI, std::popcount(x & z)) * static_cast<double>(p.sign());
  Unitary u = Unitary::Zero(d, d);
  for (int c = 0; c < d; ++c) {
    int r = c ^ static_cast<int>(x);
    double s = (std::popcount(z & static_cast<uint64_t>(c)) & 1) ? -1.0 : 1.0;
    u(r, c) = phase * s;
  }
  return u;
}

Unitary gate_unitary(const Gate& g, int n) {
  check_size(n, kMaxQubits, "gate_unitary");
  for (int q : g.qubits) {
    if (q < 0 || q >= n) throw std::invalid_argument("gate_unitary: qubit out of range");
  }
  int d = dim(n);
  if (g.name == "CX" || g.name == "CZ" || g.name == "SWAP") {
    if (g.qubits.size() != 2 || g.qubits[0] == g.qubits[1]) {
      throw std::invalid_argument("gate_unitary: " + g.name + " needs two distinct qubits");
    }
    int a = g.qubits[0], b = g.qubits[1];
    Unitary u = Unitary::Zero(d, d);
    for (int c = 0; c < d; ++c) {
      int ba = (c >> a) & 1, bb = (c >> b) & 1;
      if (g.name == "CX") {
        u(c ^ (ba << b), c) = 1.0;
      } else if (g.name == "CZ") {
        u(c, c) = (ba && bb) ? -1.0 : 1.0;
      } else {
        int r = (c & ~((1 << a) | (1 << b))) | (bb << a) | (ba << b);
        u(r, c) = 1.0;
      }
    }
    return u;
  }
  Mat2 m = single_qubit_matrix(g.name);
  Unitary u = Unitary::Identity(d, d);
  for (int q : g.qubits) u = embed_single(m, q, n) * u;
  return u;
}

Unitary cycle_unitary(const std::vector<Gate>& gates, int n) {
  Unitary u = Unitary::Identity(dim(n), dim(n));
  for (const auto& g : gates) u = gate_unitary(g, n) * u;
  return u;
}

Unitary rotation_unitary(const CoherentTerm& term, int n) {
  check_size(n, kMaxQubits, "rotation_unitary");
  Mat2 axis = single_qubit_matrix(std::string(1, term.axis));
  Mat2 u = std::cos(term.angle / 2) * Mat2::Identity() - kI * std::sin(term.angle / 2) * axis;
  return embed_single(u, term.qubit, n);
}

TransferMatrix ptm_of_unitary(const Unitary& u, double tol) {
  int d = static_cast<int>(u.rows());
  int n = std::countr_zero(static_cast<unsigned>(d));
  if (u.cols() != d || dim(n) != d) throw std::invalid_argument("ptm_of_unitary: bad shape");
  check_size(n, kMaxQubits, "ptm_of_unitary");
  double err = (u.adjoint() * u - Unitary::Identity(d, d)).norm();
  if (err > tol) {
    throw std::invalid_argument("ptm_of_unitary: not unitary (deviation " + std::to_string(err) +
                                ")");
  }
  return ptm_of_kraus({u});
}

TransferMatrix ptm_of_kraus(const std::vector<Unitary>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("ptm_of_kraus: empty Kraus set");
  int d = static_cast<int>(kraus[0].rows());
  int n = std::countr_zero(static_cast<unsigned>(d));
  check_size(n, kMaxQubits, "ptm_of_kraus");
  const auto& ps = all_paulis(n);
  int D = pauli_dim(n);
  TransferMatrix out{n, Eigen::MatrixXd::Zero(D, D)};
  for (int q = 0; q < D; ++q) {
    Unitary image = Unitary::Zero(d, d);
    for (const auto& k : kraus) image += k * ps[q] * k.adjoint();
    for (int p = 0; p < D; ++p) out.m(p, q) = (ps[p] * image).trace().real() / d;
  }
  return out;
}

TransferMatrix ptm_of_pauli_channel(const PauliDistribution& p) {
  int n = p.num_qubits();
  check_size(n, kMaxQubits, "ptm_of_pauli_channel");
  TransferMatrix out{n, Eigen::MatrixXd::Zero(pauli_dim(n), pauli_dim(n))};
  for (const auto& [pauli, w] : p.entries()) out.m += w * ptm_of_unitary(pauli_matrix(pauli)).m;
  return out;
}

TransferMatrix ptm_of_clifford(const CliffordOp& c) {
  int n = c.num_qubits();
  check_size(n, kMaxQubits, "ptm_of_clifford");
  int D = pauli_dim(n);
  TransferMatrix out{n, Eigen::MatrixXd::Zero(D, D)};
  for (int q = 0; q < D; ++q) {
    Pauli img = c.conjugate(basis_pauli(n, q));
    out.m(basis_index(img), q) = img.sign();
  }
  return out;
}

TransferMatrix pauli_twirl(const TransferMatrix& m) {
  check_size(m.n, kMaxQubits, "pauli_twirl");
  auto ptms = all_pauli_ptms(m.n);
  TransferMatrix out{m.n, Eigen::MatrixXd::Zero(m.m.rows(), m.m.cols())};
  for (const auto& p : ptms) out.m += p.m.transpose() * m.m * p.m;
  out.m /= static_cast<double>(ptms.size());
  return out;
}

double process_fidelity(const TransferMatrix& m) { return m.m.trace() / m.m.rows(); }

double spectral_norm(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

double max_off_diagonal(const Eigen::MatrixXd& m) {
  double worst = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (i != j) worst = std::max(worst, std::abs(m(i, j)));
    }
  }
  return worst;
}

std::vector<Unitary> random_kraus(int n, int rank, double strength, RngStream& rng) {
  check_size(n, kMaxQubits, "random_kraus");
  if (rank < 1) throw std::invalid_argument("random_kraus: rank must be >= 1");
  int d = dim(n);
  std::normal_distribution<double> g(0.0, 1.0);
  auto gaussian = [&] {
    Unitary a(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
    }
    return a;
  };
  std::vector<Unitary> ks;
  ks.push_back(Unitary::Identity(d, d) + strength * gaussian());
  for (int k = 1; k < rank; ++k) ks.push_back(strength * gaussian());
  Unitary s = Unitary::Zero(d, d);
  for (const auto& k : ks) s += k.adjoint() * k;
  Eigen::SelfAdjointEigenSolver<Unitary> es(s);
  Unitary inv_sqrt = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                     es.eigenvectors().adjoint();
  for (auto& k : ks) k = k * inv_sqrt;
  return ks;
}

Unitary random_local_unitary(int n, RngStream& rng) {
  check_size(n, kMaxQubits, "random_local_unitary");
  Unitary u = Unitary::Identity(dim(n), dim(n));
  for (int q = 0; q < n; ++q) {
    for (char a : {'Z', 'X', 'Z'}) {
      u = rotation_unitary({q, a, 2 * std::numbers::pi * rng.uniform()}, n) * u;
    }
  }
  return u;
}

Unitary gate_dependent_error(const Unitary& e, const Eigen::VectorXd& a, double eps) {
  auto r = ptm_of_unitary(e).m;
  if (a.size() != r.rows()) throw std::invalid_argument("gate_dependent_error: bad vector size");
  // squaring breaks the sign covariance; reversing mixes the components
  Eigen::VectorXd c = (r * a).array().square().matrix().reverse();
  int n = std::countr_zero(static_cast<unsigned>(e.rows()));
  const auto& ps = all_paulis(n);
  Unitary k = Unitary::Zero(e.rows(), e.cols());
  for (int i = 1; i < c.size(); ++i) k += c(i) * ps[i];
  Eigen::SelfAdjointEigenSolver<Unitary> es(k);
  Eigen::VectorXcd ph(es.eigenvalues().size());
  for (int i = 0; i < ph.size(); ++i) ph(i) = std::exp(Complex(0, -eps * es.eigenvalues()(i)));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

TransferMatrix average_rc_circuit(const DenseCircuit& c, const TransferMatrix& hard_impl,
                                  const EasyImpl& easy_impl) {
  check_size(c.n, kMaxRcQubits, "average_rc_circuit");
  int m = c.m();
  if (m < 1 || m > kMaxRcLength) {
    throw std::invalid_argument("average_rc_circuit: m = " + std::to_string(m) +
                                " outside [1, " + std::to_string(kMaxRcLength) + "]");
  }
  const auto& ps = all_paulis(c.n);
  int D = pauli_dim(c.n);
  std::vector<Unitary> corr;
  for (const auto& t : ps) corr.push_back(c.hard.adjoint() * t * c.hard);

  long tuples = 1;
  for (int i = 0; i < m; ++i) tuples *= D;
  TransferMatrix sum{c.n, Eigen::MatrixXd::Zero(D, D)};
  std::vector<int> t(m);
  for (long code = 0; code < tuples; ++code) {
    long r = code;
    for (int i = 0; i < m; ++i) {
      t[i] = static_cast<int>(r % D);
      r /= D;
    }
    TransferMatrix acc = easy_impl(corr[t[0]] * c.easy[0]);
    for (int i = 1; i < m; ++i) {
      acc = easy_impl(corr[t[i]] * c.easy[i] * ps[t[i - 1]]) * hard_impl * acc;
    }
    acc = easy_impl(c.easy[m] * ps[t[m - 1]]) * hard_impl * acc;
    sum.m += acc.m;
  }
  sum.m /= static_cast<double>(tuples);
  return sum;
}

TransferMatrix effective_dressed_cycle(const Unitary& h, const Unitary& e,
                                       const TransferMatrix& hard_impl,
                                       const EasyImpl& easy_impl) {
  int n = hard_impl.n;
  check_size(n, kMaxRcQubits, "effective_dressed_cycle");
  const auto& ps = all_paulis(n);
  auto ptms = all_pauli_ptms(n);
  int D = pauli_dim(n);
  TransferMatrix sum{n, Eigen::MatrixXd::Zero(D, D)};
  for (int i = 0; i < D; ++i) {
    Unitary tc = h.adjoint() * ps[i] * h;
    for (int j = 0; j < D; ++j) {
      sum.m += ptms[i].m * hard_impl.m * easy_impl(tc * e * ps[j]).m * ptms[j].m.transpose();
    }
  }
  sum.m /= static_cast<double>(D) * D;
  return sum;
}

TransferMatrix effective_product(const DenseCircuit& c, const TransferMatrix& hard_impl,
                                 const EasyImpl& easy_impl) {
  check_size(c.n, kMaxRcQubits, "effective_product");
  int m = c.m();
  if (m < 1) throw std::invalid_argument("effective_product: m must be >= 1");
  const auto& ps = all_paulis(c.n);
  auto ptms = all_pauli_ptms(c.n);
  int D = pauli_dim(c.n);

  TransferMatrix first{c.n, Eigen::MatrixXd::Zero(D, D)};
  TransferMatrix last{c.n, Eigen::MatrixXd::Zero(D, D)};
  for (int i = 0; i < D; ++i) {
    Unitary tc = c.hard.adjoint() * ps[i] * c.hard;
    first.m += ptms[i].m * hard_impl.m * easy_impl(tc * c.easy[0]).m;
    last.m += easy_impl(c.easy[m] * ps[i]).m * ptms[i].m.transpose();
  }
  first.m /= D;
  last.m /= D;

  TransferMatrix acc = first;
  for (int i = 1; i < m; ++i) {
    acc = effective_dressed_cycle(c.hard, c.easy[i], hard_impl, easy_impl) * acc;
  }
  return last * acc;
}

std::vector<double> outcome_probabilities(const TransferMatrix& c) {
  int n = c.n;
  int d = dim(n);
  std::vector<int> ztype;
  for (int z = 0; z < d; ++z) ztype.push_back(basis_index(Pauli(n, 0, static_cast<uint64_t>(z))));
  std::vector<double> out(d, 0.0);
  for (int s = 0; s < d; ++s) {
    double acc = 0.0;
    for (int zp = 0; zp < d; ++zp) {
      double sign = (std::popcount(static_cast<unsigned>(zp & s)) & 1) ? -1.0 : 1.0;
      for (int zq = 0; zq < d; ++zq) acc += sign * c.m(ztype[zp], ztype[zq]);
    }
    out[s] = acc / d;
  }
  return out;
}

TransferMatrix bit_flip_channel(const std::vector<double>& rates) {
  int n = static_cast<int>(rates.size());
  check_size(n, kMaxQubits, "bit_flip_channel");
  PauliDistribution p(n);
  for (int x = 0; x < dim(n); ++x) {
    double w = 1.0;
    for (int q = 0; q < n; ++q) w *= ((x >> q) & 1) ? rates[q] : 1.0 - rates[q];
    p.add(Pauli(n, static_cast<uint64_t>(x), 0), w);
  }
  return ptm_of_pauli_channel(p);
}

}  // namespace cyclerec::dense
