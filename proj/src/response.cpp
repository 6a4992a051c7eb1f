#include "gsc/response.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gsc {

namespace {

// Diagonal of tau_3 or tau_12; both measurements are diagonal.
Eigen::Vector4d measurement_diagonal(PauliIndex m) {
  return pauli_tau<double>(m).diagonal().real();
}

// Every tau_k is a signed permutation with phases in {1, i, -1, -i}:
// Im <x| tau_k |y> = sum_b sign_b * part_b(conj(x_b) y_perm(b)), where part
// picks the imaginary (phase +-1) or real (phase +-i) component.
struct PauliAction {
  std::array<int, 4> entry;    // b * 4 + perm(b)
  std::array<double, 4> sign;
  std::array<bool, 4> real_part;
};

const std::array<PauliAction, kNumPaulis>& pauli_actions() {
  static const std::array<PauliAction, kNumPaulis> table = [] {
    std::array<PauliAction, kNumPaulis> t;
    for (int k = 1; k <= kNumPaulis; ++k) {
      const Matrix4cd tau = pauli_tau<double>(k);
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) {
          const std::complex<double> ph = tau(b, c);
          if (std::abs(ph) < 0.5) continue;
          t[k - 1].entry[b] = 4 * b + c;
          t[k - 1].real_part[b] = std::abs(ph.imag()) > 0.5;
          t[k - 1].sign[b] = t[k - 1].real_part[b] ? ph.imag() : ph.real();
        }
    }
    return t;
  }();
  return table;
}

// Rotation about a fixed axis on one qubit, kept as (cos, sin) of the half
// angle so it can be applied in place and inverted by negating the sine.
struct HalfAngle {
  double c = 1.0;
  double s = 0.0;
};

void apply_gate(const GateToken& g, HalfAngle h, Vector4cd& v, bool adjoint) {
  if (g.is_cnot()) {
    std::swap(v[2], v[3]);
    return;
  }
  const double s = adjoint ? -h.s : h.s;
  const int mask = g.qubit == 1 ? 2 : 1;
  for (int b = 0; b < 4; ++b) {
    if (b & mask) continue;
    const std::complex<double> v0 = v[b], v1 = v[b | mask];
    if (g.axis == Axis::X) {
      const std::complex<double> is(0.0, s);
      v[b] = h.c * v0 - is * v1;
      v[b | mask] = h.c * v1 - is * v0;
    } else {
      v[b] = h.c * v0 - s * v1;
      v[b | mask] = s * v0 + h.c * v1;
    }
  }
}

// Small fixed buffer: settings rarely exceed a handful of gates.
template <typename T>
class GateBuffer {
 public:
  explicit GateBuffer(size_t n) : n_(n) {
    if (n > inline_.size()) heap_.resize(n);
  }
  T& operator[](size_t i) { return n_ > inline_.size() ? heap_[i] : inline_[i]; }

 private:
  size_t n_;
  std::array<T, 8> inline_{};
  std::vector<T> heap_;
};

}  // namespace

Vector4cd output_state(const Setting& setting, const Matrix4cd& cnot_gate, const AngleTable& angles) {
  Vector4cd psi = Vector4cd::Zero();
  psi[0] = 1.0;
  for (const auto& g : setting.gates) psi = (g.is_cnot() ? cnot_gate : g.rotation_matrix(angles)) * psi;
  return psi;
}

double response_with_gate(const Setting& setting, const Matrix4cd& cnot_gate, const AngleTable& angles) {
  const Vector4cd psi = output_state(setting, cnot_gate, angles);
  return psi.cwiseAbs2().dot(measurement_diagonal(setting.measurement));
}

double response(const Setting& setting, const ErrorVector& p, const AngleTable& angles) {
  return response_with_gate(setting, perturbed_cnot(p), angles);
}

LinearResponse linear_response(const Setting& setting, const AngleTable& angles) {
  // With U = G_n ... G_1 and each CNOT token realised as CNOT (I - i p.tau),
  // dR/dp_u = 2 Re <psi| M dU |00> = 2 sum_c Im <chi_c| tau_u |phi_c>, where
  // phi_c is the state entering occurrence c and chi_c = A_c^dagger M psi
  // pulls the measured output back through everything from that CNOT on.
  const auto& actions = pauli_actions();

  const size_t n = setting.gates.size();
  GateBuffer<HalfAngle> half(n);
  GateBuffer<Vector4cd> entering(n);
  Vector4cd psi = Vector4cd::Zero();
  psi[0] = 1.0;
  for (size_t i = 0; i < n; ++i) {
    const GateToken& g = setting.gates[i];
    if (!g.is_cnot()) {
      const double theta = g.angle(angles);
      if (!std::isfinite(theta)) throw std::domain_error("rotation angle must be finite");
      half[i] = {std::cos(theta / 2), std::sin(theta / 2)};
    }
    entering[i] = psi;
    apply_gate(g, half[i], psi, false);
  }

  const Eigen::Vector4d mdiag = measurement_diagonal(setting.measurement);
  LinearResponse out;
  double plus = 0.0;
  double minus = 0.0;
  for (int b = 0; b < 4; ++b) (mdiag[b] > 0 ? plus : minus) += std::norm(psi[b]);
  out.value = plus - minus;
  out.prob_plus = plus;
  out.prob_minus = minus;

  Vector4cd back = mdiag.cast<std::complex<double>>().cwiseProduct(psi);
  for (size_t i = n; i-- > 0;) {
    apply_gate(setting.gates[i], half[i], back, true);  // now includes gate i itself
    if (!setting.gates[i].is_cnot()) continue;
    const Vector4cd& phi = entering[i];
    std::array<double, 16> re, im;
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        const double xr = back[b].real(), xi = -back[b].imag();
        const double yr = phi[c].real(), yi = phi[c].imag();
        re[4 * b + c] = xr * yr - xi * yi;
        im[4 * b + c] = xr * yi + xi * yr;
      }
    for (int u = 0; u < kNumPaulis; ++u) {
      const PauliAction& a = actions[u];
      double z = 0.0;
      for (int b = 0; b < 4; ++b) z += a.sign[b] * (a.real_part[b] ? re[a.entry[b]] : im[a.entry[b]]);
      out.gradient[u] += 2.0 * z;
    }
  }
  return out;
}

}  // namespace gsc
