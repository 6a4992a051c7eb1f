#include "gsc/quantum.hpp"

#include <array>

namespace gsc {

namespace {

const std::array<Matrix4cd, kNumPaulis + 1>& tau_table() {
  static const std::array<Matrix4cd, kNumPaulis + 1> table = [] {
    std::array<Matrix4cd, kNumPaulis + 1> t;
    t[0] = Matrix4cd::Identity();
    for (int k = 1; k <= kNumPaulis; ++k) t[k] = pauli_tau<double>(k);
    return t;
  }();
  return table;
}

void require_finite(const ErrorVector& p) {
  if (!p.allFinite()) throw std::domain_error("error vector has non-finite entries");
}

}  // namespace

Matrix4cd error_generator(const ErrorVector& p) {
  require_finite(p);
  const auto& tau = tau_table();
  Matrix4cd h = Matrix4cd::Zero();
  for (int k = 1; k <= kNumPaulis; ++k) h += p[k - 1] * tau[k];
  return h;
}

Matrix4cd error_operator_exact(const ErrorVector& p) {
  const Matrix4cd h = error_generator(p);
  Eigen::SelfAdjointEigenSolver<Matrix4cd> eig(h);
  const Eigen::Vector4d& w = eig.eigenvalues();
  Vector4cd phases;
  for (int i = 0; i < 4; ++i) phases[i] = std::polar(1.0, -w[i]);
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

Matrix4cd error_operator_linear(const ErrorVector& p) {
  return Matrix4cd::Identity() - std::complex<double>(0, 1) * error_generator(p);
}

Matrix4cd perturbed_cnot(const ErrorVector& p) { return cnot<double>() * error_operator_exact(p); }

ErrorVector pauli_coordinates(const Matrix4cd& hermitian) {
  const auto& tau = tau_table();
  ErrorVector c;
  for (int k = 1; k <= kNumPaulis; ++k) c[k - 1] = (hermitian * tau[k]).trace().real() / 4.0;
  return c;
}

ErrorVector error_vector_of(const Matrix4cd& u) {
  // A unitary is normal, so its complex Schur form is diagonal and the
  // Schur vectors are an orthonormal eigenbasis even for repeated phases.
  Eigen::ComplexSchur<Matrix4cd> schur(u);
  const Matrix4cd& q = schur.matrixU();
  Eigen::Vector4d angles;
  for (int i = 0; i < 4; ++i) angles[i] = std::arg(schur.matrixT()(i, i));
  // u = exp(-i H)  =>  H = -Q diag(arg) Q^dagger.
  const Matrix4cd h = -(q * angles.cast<std::complex<double>>().asDiagonal() * q.adjoint());
  return pauli_coordinates(0.5 * (h + h.adjoint()));
}

double average_gate_fidelity(const Matrix4cd& u) {
  constexpr double d = 4.0;
  return (d + std::norm(u.trace())) / (d * (d + 1.0));
}

double unitarity_defect(const Matrix4cd& u) {
  return (u.adjoint() * u - Matrix4cd::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace gsc
