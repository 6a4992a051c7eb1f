#pragma once

// Two-qubit unitary algebra: Pauli basis, gate set, coherent error operator.
//
// Tensor order is qubit 1 (left factor) ⊗ qubit 2 (right factor). Basis
// index b = 2*b1 + b2, so |00> is index 0.

#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gsc {

template <typename Scalar>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using Matrix4c = Eigen::Matrix<std::complex<Scalar>, 4, 4>;
template <typename Scalar>
using Vector4c = Eigen::Matrix<std::complex<Scalar>, 4, 1>;

using Matrix4cd = Matrix4c<double>;
using Vector4cd = Vector4c<double>;

inline constexpr int kNumPaulis = 15;

/// Coefficients p_1..p_15 of the coherent error; entry k-1 holds p_k.
using ErrorVector = Eigen::Matrix<double, kNumPaulis, 1>;

enum class Axis { X, Y };

/// Index k in 1..15 of tau_k = sigma_i ⊗ sigma_j with k = 4i + j.
class PauliIndex {
 public:
  explicit PauliIndex(int k) : k_(k) {
    if (k < 1 || k > kNumPaulis)
      throw std::domain_error("Pauli index out of range 1..15: " + std::to_string(k));
  }
  static PauliIndex from_pair(int i, int j) {
    if (i < 0 || i > 3 || j < 0 || j > 3)
      throw std::domain_error("Pauli pair entries must lie in 0..3");
    return PauliIndex(4 * i + j);
  }
  int value() const { return k_; }
  int first() const { return k_ / 4; }
  int second() const { return k_ % 4; }
  friend bool operator==(PauliIndex, PauliIndex) = default;

 private:
  int k_;
};

/// sigma_0..sigma_3.
template <typename Scalar = double>
Matrix2c<Scalar> pauli(int i) {
  using C = std::complex<Scalar>;
  Matrix2c<Scalar> s;
  switch (i) {
    case 0: s << C(1), C(0), C(0), C(1); break;
    case 1: s << C(0), C(1), C(1), C(0); break;
    case 2: s << C(0), C(0, -1), C(0, 1), C(0); break;
    case 3: s << C(1), C(0), C(0), C(-1); break;
    default: throw std::domain_error("single-qubit Pauli index must lie in 0..3");
  }
  return s;
}

template <typename Scalar>
Matrix4c<Scalar> kron(const Matrix2c<Scalar>& a, const Matrix2c<Scalar>& b) {
  Matrix4c<Scalar> out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.template block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return out;
}

template <typename Scalar = double>
Matrix4c<Scalar> pauli_tau(PauliIndex k) {
  return kron<Scalar>(pauli<Scalar>(k.first()), pauli<Scalar>(k.second()));
}

template <typename Scalar = double>
Matrix4c<Scalar> pauli_tau(int k) {
  return pauli_tau<Scalar>(PauliIndex(k));
}

/// |0><0| ⊗ I + |1><1| ⊗ sigma_1, control on qubit 1.
template <typename Scalar = double>
Matrix4c<Scalar> cnot() {
  Matrix4c<Scalar> u = Matrix4c<Scalar>::Zero();
  u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = Scalar(1);
  return u;
}

/// exp(-i theta/2 sigma_axis) on `qubit` (1 or 2), identity on the other.
template <typename Scalar = double>
Matrix4c<Scalar> rotation_gate(Axis axis, int qubit, Scalar theta) {
  using C = std::complex<Scalar>;
  if (!std::isfinite(theta)) throw std::domain_error("rotation angle must be finite");
  if (qubit != 1 && qubit != 2) throw std::domain_error("qubit must be 1 or 2");
  const Scalar c = std::cos(theta / 2);
  const Scalar s = std::sin(theta / 2);
  Matrix2c<Scalar> g;
  if (axis == Axis::X)
    g << C(c), C(0, -s), C(0, -s), C(c);
  else
    g << C(c), C(-s), C(s), C(c);
  const Matrix2c<Scalar> id = Matrix2c<Scalar>::Identity();
  return qubit == 1 ? kron<Scalar>(g, id) : kron<Scalar>(id, g);
}

/// Hermitian generator sum_k p_k tau_k.
Matrix4cd error_generator(const ErrorVector& p);

/// exp(-i sum_k p_k tau_k), via eigendecomposition of the Hermitian generator.
Matrix4cd error_operator_exact(const ErrorVector& p);

/// I - i sum_k p_k tau_k (first-order truncation, not unitary).
Matrix4cd error_operator_linear(const ErrorVector& p);

/// CNOT * E(p): the error acts before the ideal gate.
Matrix4cd perturbed_cnot(const ErrorVector& p);

/// Pauli coordinates of a Hermitian matrix, c_k = Tr(H tau_k) / 4.
ErrorVector pauli_coordinates(const Matrix4cd& hermitian);

/// Inverse of error_operator_exact on its principal branch: the p with
/// exp(-i sum p_k tau_k) = u, up to a global phase discarded with the trace.
ErrorVector error_vector_of(const Matrix4cd& u);

/// Average gate fidelity of u against the identity, (d + |Tr u|^2)/(d(d+1)).
double average_gate_fidelity(const Matrix4cd& u);

/// max |(U^dagger U - I)_ij|.
double unitarity_defect(const Matrix4cd& u);

}  // namespace gsc
