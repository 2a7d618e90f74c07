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

#ifndef POLARIZED_JONES_H
#define POLARIZED_JONES_H

#include <array>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace polarized {

using Complex = std::complex<double>;
using Bit = std::uint8_t;

inline constexpr double kPi = std::numbers::pi;

/// Tolerance for identities that hold exactly in exact arithmetic.
inline constexpr double kExactTolerance = 1e-12;
/// Tolerance for synthesized or optimized quantities.
inline constexpr double kSynthesisTolerance = 1e-10;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Jones vector of one fully polarized beam. The vector carries the beam's
/// scalar amplitude as well as its polarization, so intensity is |x|^2 + |y|^2.
struct PolarizationState {
  Complex x;
  Complex y;

  double intensity() const { return std::norm(x) + std::norm(y); }

  static PolarizationState vacuum() { return {}; }

  friend bool operator==(const PolarizationState&, const PolarizationState&) = default;
  friend PolarizationState operator+(const PolarizationState& a, const PolarizationState& b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend PolarizationState operator-(const PolarizationState& a, const PolarizationState& b) {
    return {a.x - b.x, a.y - b.y};
  }
  friend PolarizationState operator*(Complex c, const PolarizationState& s) { return {c * s.x, c * s.y}; }
};

/// 2x2 complex transfer matrix, row-major.
class JonesMatrix {
 public:
  JonesMatrix() : JonesMatrix(1.0, 0.0, 0.0, 1.0) {}
  JonesMatrix(Complex m00, Complex m01, Complex m10, Complex m11) : m_{m00, m01, m10, m11} {}

  static JonesMatrix identity() { return {}; }
  static JonesMatrix diagonal(Complex d0, Complex d1) { return {d0, 0.0, 0.0, d1}; }

  Complex operator()(int row, int col) const { return m_[static_cast<std::size_t>(2 * row + col)]; }

  JonesMatrix adjoint() const;
  Complex determinant() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  bool is_finite() const;

  friend JonesMatrix operator*(const JonesMatrix& a, const JonesMatrix& b);
  friend JonesMatrix operator*(Complex c, const JonesMatrix& m);
  friend PolarizationState operator*(const JonesMatrix& m, const PolarizationState& s);
  friend bool operator==(const JonesMatrix&, const JonesMatrix&) = default;

 private:
  std::array<Complex, 4> m_;
};

/// Largest entrywise modulus of a - b.
double max_entry_distance(const JonesMatrix& a, const JonesMatrix& b);

/// Entrywise distance after multiplying `a` by the global phase that best
/// aligns it with `b`.
double phase_aligned_distance(const JonesMatrix& a, const JonesMatrix& b);

/// True when M^dagger M = I entrywise within `tolerance`.
bool is_unitary(const JonesMatrix& m, double tolerance = kExactTolerance);

/// e^{i theta}. Exact (no rounding residue) when theta is an exact multiple
/// of pi/2 in double precision.
Complex unit_phase(double theta);

/// Birefringent plate: retardance `eta` between the x and y field
/// components, slow axis at angle `phi` from x. Both in radians.
struct WaveplateSpec {
  double eta = 0.0;
  double phi = 0.0;

  static WaveplateSpec half_wave(double phi) { return {kPi, phi}; }
  static WaveplateSpec quarter_wave(double phi) { return {kPi / 2, phi}; }

  friend bool operator==(const WaveplateSpec&, const WaveplateSpec&) = default;
};

/// R(phi) diag(e^{i eta/2}, e^{-i eta/2}) R(-phi). Unitary, determinant 1.
/// Throws InvalidArgument on non-finite input.
JonesMatrix waveplate_unitary(const WaveplateSpec& spec);

PolarizationState apply_jones(const JonesMatrix& m, const PolarizationState& s);

double intensity(const PolarizationState& s);

/// Logical 1 is x-polarized, logical 0 is y-polarized; both unit intensity.
PolarizationState encode_bit(Bit b);

/// Inverse of encode_bit, insensitive to global phase. Throws DecodeError
/// when `s` is not within 1e-9 of a logical basis state.
Bit decode_bit(const PolarizationState& s);

/// Slow-axis angles of a quarter-half-quarter plate stack. The composed
/// transform is Q(first_quarter) * H(half) * Q(second_quarter), so the beam
/// meets `second_quarter` first.
struct QhqAngles {
  double first_quarter = 0.0;
  double half = 0.0;
  double second_quarter = 0.0;
};

JonesMatrix qhq_compose(const QhqAngles& angles);

/// Finds plate angles whose composition equals `target` up to global phase.
/// `target` must be unitary with unit determinant within 1e-10.
QhqAngles qhq_synthesize(const JonesMatrix& target);

namespace detail {

/// Levenberg-Marquardt descent on the phase-aligned residual, starting from
/// `start`. Used when the closed-form angles miss the synthesis tolerance.
QhqAngles refine_qhq(const JonesMatrix& target, QhqAngles start, int max_iterations = 200);

}  // namespace detail

std::string to_string(const JonesMatrix& m);

}  // namespace polarized

#endif  // POLARIZED_JONES_H
