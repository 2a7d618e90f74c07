// Copyright 2026 The Polarized Authors
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

#include "polarized/jones.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polarized {

JonesMatrix JonesMatrix::adjoint() const {
  return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
}

bool JonesMatrix::is_finite() const {
  return std::all_of(m_.begin(), m_.end(),
                     [](Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

JonesMatrix operator*(const JonesMatrix& a, const JonesMatrix& b) {
  return {a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
          a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)};
}

JonesMatrix operator*(Complex c, const JonesMatrix& m) {
  return {c * m(0, 0), c * m(0, 1), c * m(1, 0), c * m(1, 1)};
}

PolarizationState operator*(const JonesMatrix& m, const PolarizationState& s) {
  return {m(0, 0) * s.x + m(0, 1) * s.y, m(1, 0) * s.x + m(1, 1) * s.y};
}

double max_entry_distance(const JonesMatrix& a, const JonesMatrix& b) {
  double worst = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
    }
  }
  return worst;
}

namespace {

Complex aligning_phase(const JonesMatrix& a, const JonesMatrix& b) {
  Complex overlap = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      overlap += std::conj(a(r, c)) * b(r, c);
    }
  }
  const double magnitude = std::abs(overlap);
  return magnitude > 0.0 ? overlap / magnitude : Complex{1.0};
}

}  // namespace

double phase_aligned_distance(const JonesMatrix& a, const JonesMatrix& b) {
  return max_entry_distance(aligning_phase(a, b) * a, b);
}

bool is_unitary(const JonesMatrix& m, double tolerance) {
  return m.is_finite() && max_entry_distance(m.adjoint() * m, JonesMatrix::identity()) <= tolerance;
}

Complex unit_phase(double theta) {
  const double quarter_turns = theta / (kPi / 2);
  if (std::isfinite(quarter_turns) && std::abs(quarter_turns) < 0x1p52 &&
      std::nearbyint(quarter_turns) == quarter_turns) {
    static constexpr std::array<Complex, 4> kQuarter = {Complex{1, 0}, Complex{0, 1}, Complex{-1, 0},
                                                        Complex{0, -1}};
    auto k = static_cast<long long>(quarter_turns) % 4;
    if (k < 0) k += 4;
    return kQuarter[static_cast<std::size_t>(k)];
  }
  return std::polar(1.0, theta);
}

JonesMatrix waveplate_unitary(const WaveplateSpec& spec) {
  if (!std::isfinite(spec.eta) || !std::isfinite(spec.phi)) {
    throw InvalidArgument("waveplate parameters must be finite");
  }
  const Complex rotation = unit_phase(spec.phi);
  const double c = rotation.real();
  const double s = rotation.imag();
  const Complex fast = unit_phase(spec.eta / 2);
  const Complex slow = unit_phase(-spec.eta / 2);
  // R(phi) diag(fast, slow) R(-phi), expanded.
  const Complex off = c * s * (fast - slow);
  return {c * c * fast + s * s * slow, off, off, s * s * fast + c * c * slow};
}

PolarizationState apply_jones(const JonesMatrix& m, const PolarizationState& s) { return m * s; }

double intensity(const PolarizationState& s) { return s.intensity(); }

PolarizationState encode_bit(Bit b) {
  if (b > 1) throw InvalidArgument("bit must be 0 or 1");
  return b == 1 ? PolarizationState{1.0, 0.0} : PolarizationState{0.0, 1.0};
}

Bit decode_bit(const PolarizationState& s) {
  constexpr double kTolerance = 1e-9;
  const double ax = std::abs(s.x);
  const double ay = std::abs(s.y);
  if (std::abs(ax - 1.0) <= kTolerance && ay <= kTolerance) return 1;
  if (std::abs(ay - 1.0) <= kTolerance && ax <= kTolerance) return 0;
  throw DecodeError("polarization state is not a logical basis state");
}

JonesMatrix qhq_compose(const QhqAngles& angles) {
  return waveplate_unitary(WaveplateSpec::quarter_wave(angles.first_quarter)) *
         waveplate_unitary(WaveplateSpec::half_wave(angles.half)) *
         waveplate_unitary(WaveplateSpec::quarter_wave(angles.second_quarter));
}

namespace {

// U = w I - i (x sx + y sy + z sz) for U in SU(2).
struct Quaternion {
  double w, x, y, z;
};

// Adding +0.0 clears negative zeros so atan2 stays on its principal branch.
Quaternion quaternion_of(const JonesMatrix& u) {
  return {(u(0, 0) + u(1, 1)).real() / 2 + 0.0, -(u(0, 1) + u(1, 0)).imag() / 2 + 0.0,
          (u(1, 0) - u(0, 1)).real() / 2 + 0.0, (u(1, 1) - u(0, 0)).imag() / 2 + 0.0};
}

// Q(a) H(b) Q(c) = -Ry(2a) Rx(4b - 2a - 2c) Ry(-2c) with Rn(t) = exp(-i t/2 n.s),
// so the angles follow from the Y-X-Y Euler decomposition of -U.
QhqAngles closed_form_angles(const JonesMatrix& target) {
  const Quaternion q = quaternion_of(-1.0 * target);
  const double sum_half = std::atan2(q.y, q.w);    // (alpha + gamma) / 2
  const double diff_half = std::atan2(-q.z, q.x);  // (alpha - gamma) / 2
  const double beta = 2 * std::atan2(std::hypot(q.x, q.z), std::hypot(q.w, q.y));
  const double alpha = sum_half + diff_half;
  const double gamma = sum_half - diff_half;
  return {alpha / 2, (beta + alpha - gamma) / 4, -gamma / 2};
}

std::array<double, 8> residual(const JonesMatrix& target, const QhqAngles& angles) {
  const JonesMatrix m = qhq_compose(angles);
  const JonesMatrix aligned = aligning_phase(m, target) * m;
  std::array<double, 8> r{};
  for (int i = 0; i < 4; ++i) {
    const Complex d = aligned(i / 2, i % 2) - target(i / 2, i % 2);
    r[static_cast<std::size_t>(2 * i)] = d.real();
    r[static_cast<std::size_t>(2 * i + 1)] = d.imag();
  }
  return r;
}

double squared_norm(const std::array<double, 8>& r) {
  double total = 0.0;
  for (double v : r) total += v * v;
  return total;
}

double& component(QhqAngles& a, int k) {
  return k == 0 ? a.first_quarter : (k == 1 ? a.half : a.second_quarter);
}

// Solves the 3x3 system by Cramer's rule; returns false when singular.
bool solve3(const std::array<std::array<double, 3>, 3>& m, const std::array<double, 3>& rhs,
            std::array<double, 3>& out) {
  auto det3 = [](const std::array<std::array<double, 3>, 3>& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double det = det3(m);
  if (std::abs(det) < 1e-300) return false;
  for (std::size_t col = 0; col < 3; ++col) {
    auto replaced = m;
    for (std::size_t row = 0; row < 3; ++row) replaced[row][col] = rhs[row];
    out[col] = det3(replaced) / det;
  }
  return true;
}

}  // namespace

namespace detail {

QhqAngles refine_qhq(const JonesMatrix& target, QhqAngles start, int max_iterations) {
  constexpr double kStep = 1e-7;
  QhqAngles current = start;
  auto r = residual(target, current);
  double cost = squared_norm(r);
  double damping = 1e-3;

  for (int iter = 0; iter < max_iterations && cost > 1e-30; ++iter) {
    std::array<std::array<double, 8>, 3> jacobian{};
    for (int k = 0; k < 3; ++k) {
      QhqAngles plus = current;
      QhqAngles minus = current;
      component(plus, k) += kStep;
      component(minus, k) -= kStep;
      const auto rp = residual(target, plus);
      const auto rm = residual(target, minus);
      for (std::size_t i = 0; i < 8; ++i) jacobian[static_cast<std::size_t>(k)][i] = (rp[i] - rm[i]) / (2 * kStep);
    }
    std::array<std::array<double, 3>, 3> normal{};
    std::array<double, 3> gradient{};
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) {
        for (std::size_t i = 0; i < 8; ++i) normal[a][b] += jacobian[a][i] * jacobian[b][i];
      }
      for (std::size_t i = 0; i < 8; ++i) gradient[a] -= jacobian[a][i] * r[i];
    }

    bool improved = false;
    for (int attempt = 0; attempt < 20 && !improved; ++attempt) {
      auto damped = normal;
      for (std::size_t a = 0; a < 3; ++a) damped[a][a] += damping * (1.0 + normal[a][a]);
      std::array<double, 3> delta{};
      if (!solve3(damped, gradient, delta)) {
        damping *= 10;
        continue;
      }
      QhqAngles candidate = current;
      for (int k = 0; k < 3; ++k) component(candidate, k) += delta[static_cast<std::size_t>(k)];
      const auto rc = residual(target, candidate);
      const double candidate_cost = squared_norm(rc);
      if (candidate_cost < cost) {
        current = candidate;
        r = rc;
        cost = candidate_cost;
        damping = std::max(damping / 10, 1e-12);
        improved = true;
      } else {
        damping *= 10;
      }
    }
    if (!improved) break;
  }
  return current;
}

}  // namespace detail

QhqAngles qhq_synthesize(const JonesMatrix& target) {
  if (!is_unitary(target, kSynthesisTolerance)) {
    throw InvalidArgument("Q-H-Q synthesis target is not unitary");
  }
  if (std::abs(target.determinant() - 1.0) > kSynthesisTolerance) {
    throw InvalidArgument("Q-H-Q synthesis target must have unit determinant");
  }
  QhqAngles angles = closed_form_angles(target);
  if (phase_aligned_distance(qhq_compose(angles), target) <= kSynthesisTolerance) return angles;

  QhqAngles best = detail::refine_qhq(target, angles);
  double best_distance = phase_aligned_distance(qhq_compose(best), target);
  // Multi-start over a coarse grid when the local descent stalls.
  for (int i = 0; i < 4 && best_distance > kSynthesisTolerance; ++i) {
    for (int j = 0; j < 4 && best_distance > kSynthesisTolerance; ++j) {
      for (int k = 0; k < 4 && best_distance > kSynthesisTolerance; ++k) {
        const QhqAngles start{i * kPi / 4, j * kPi / 4, k * kPi / 4};
        const QhqAngles candidate = detail::refine_qhq(target, start);
        const double distance = phase_aligned_distance(qhq_compose(candidate), target);
        if (distance < best_distance) {
          best = candidate;
          best_distance = distance;
        }
      }
    }
  }
  return best;
}

std::string to_string(const JonesMatrix& m) {
  std::ostringstream out;
  out.precision(17);
  out << "[[" << m(0, 0) << ", " << m(0, 1) << "], [" << m(1, 0) << ", " << m(1, 1) << "]]";
  return out.str();
}

}  // namespace polarized
