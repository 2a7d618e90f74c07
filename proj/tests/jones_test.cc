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

#include <cmath>
#include <limits>

#include "gtest/gtest.h"
#include "test_support.h"

using namespace polarized;

namespace {

// Independent evaluation of R(phi) diag(e^{i eta/2}, e^{-i eta/2}) R(-phi)
// with plain trig, no exact-phase snapping.
JonesMatrix plate_by_definition(double eta, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  const JonesMatrix rot(c, -s, s, c);
  const JonesMatrix unrot(c, s, -s, c);
  return rot * JonesMatrix::diagonal(std::polar(1.0, eta / 2), std::polar(1.0, -eta / 2)) * unrot;
}

const Complex I{0.0, 1.0};

}  // namespace

TEST(Waveplate, half_wave_at_zero_is_diag_i_minus_i) {
  EXPECT_EQ(waveplate_unitary({kPi, 0.0}), JonesMatrix::diagonal(I, -I));
}

TEST(Waveplate, zero_retardance_is_identity) {
  EXPECT_EQ(waveplate_unitary({0.0, 0.0}), JonesMatrix::identity());
  for (double phi : {0.3, 1.0, -2.5, kPi / 3, 7.0}) {
    EXPECT_LE(max_entry_distance(waveplate_unitary({0.0, phi}), JonesMatrix::identity()), 1e-15) << phi;
  }
}

TEST(Waveplate, half_wave_at_45_degrees_is_i_sigma_x) {
  const JonesMatrix expected(0.0, I, I, 0.0);
  EXPECT_LE(max_entry_distance(waveplate_unitary({kPi, kPi / 4}), expected), 1e-15);
  EXPECT_LE(max_entry_distance(plate_by_definition(kPi, kPi / 4), expected), 1e-15);
}

TEST(Waveplate, matches_definition_for_random_parameters) {
  auto rng = testkit::make_rng(1);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    const double eta = angle(rng), phi = angle(rng);
    EXPECT_LE(max_entry_distance(waveplate_unitary({eta, phi}), plate_by_definition(eta, phi)), 1e-14);
  }
}

TEST(Waveplate, unitary_with_unit_determinant) {
  auto rng = testkit::make_rng(2);
  std::uniform_real_distribution<double> angle(-20.0, 20.0);
  for (int i = 0; i < 2000; ++i) {
    const auto u = waveplate_unitary({angle(rng), angle(rng)});
    EXPECT_TRUE(is_unitary(u, kExactTolerance));
    EXPECT_LE(std::abs(u.determinant() - 1.0), kExactTolerance);
  }
}

TEST(Waveplate, half_wave_with_quarter_phase_realizes_sigma_z_sign) {
  const JonesMatrix flipped = I * waveplate_unitary(WaveplateSpec::half_wave(0.0));
  EXPECT_EQ(flipped, JonesMatrix::diagonal(-1.0, 1.0));
  EXPECT_EQ(flipped * encode_bit(1), (PolarizationState{-1.0, 0.0}));
  EXPECT_EQ(flipped * encode_bit(0), (PolarizationState{0.0, 1.0}));
}

TEST(Waveplate, rejects_non_finite_input) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(waveplate_unitary({nan, 0.0}), InvalidArgument);
  EXPECT_THROW(waveplate_unitary({0.0, inf}), InvalidArgument);
}

TEST(UnitPhase, exact_at_quarter_turns) {
  EXPECT_EQ(unit_phase(0.0), Complex(1.0, 0.0));
  EXPECT_EQ(unit_phase(kPi / 2), Complex(0.0, 1.0));
  EXPECT_EQ(unit_phase(kPi), Complex(-1.0, 0.0));
  EXPECT_EQ(unit_phase(-kPi / 2), Complex(0.0, -1.0));
  EXPECT_EQ(unit_phase(3 * kPi), Complex(-1.0, 0.0));
  EXPECT_LE(std::abs(unit_phase(0.7) - std::polar(1.0, 0.7)), 1e-16);
}

TEST(ApplyJones, examples) {
  EXPECT_EQ(apply_jones(JonesMatrix::identity(), {1.0, 0.0}), (PolarizationState{1.0, 0.0}));
  EXPECT_EQ(apply_jones(JonesMatrix::diagonal(I, -I), {1.0, 0.0}), (PolarizationState{I, 0.0}));
  const Complex a{0.3, -0.2}, b{-0.7, 0.1};
  EXPECT_EQ(apply_jones(JonesMatrix(0.0, I, I, 0.0), {a, b}), (PolarizationState{I * b, I * a}));
}

TEST(ApplyJones, unitary_preserves_intensity) {
  auto rng = testkit::make_rng(3);
  for (int i = 0; i < 1000; ++i) {
    const PolarizationState s{testkit::random_complex(rng), testkit::random_complex(rng)};
    const auto u = testkit::random_su2(rng);
    EXPECT_NEAR(intensity(apply_jones(u, s)), intensity(s), kExactTolerance);
  }
}

TEST(Intensity, examples) {
  EXPECT_EQ(intensity({1.0, 0.0}), 1.0);
  EXPECT_EQ(intensity({-0.5, 0.0}), 0.25);
  EXPECT_EQ(intensity({0.0, 0.0}), 0.0);
}

TEST(BitEncoding, x_is_one_y_is_zero) {
  EXPECT_EQ(encode_bit(1), (PolarizationState{1.0, 0.0}));
  EXPECT_EQ(encode_bit(0), (PolarizationState{0.0, 1.0}));
  for (Bit b : {Bit{0}, Bit{1}}) EXPECT_EQ(decode_bit(encode_bit(b)), b);
  EXPECT_THROW(encode_bit(2), InvalidArgument);
}

TEST(BitEncoding, decode_ignores_global_phase) {
  EXPECT_EQ(decode_bit({0.0, 1.0}), 0);
  for (double theta : {0.0, 0.4, 2.0, -3.0}) {
    EXPECT_EQ(decode_bit({std::polar(1.0, theta), 0.0}), 1);
    EXPECT_EQ(decode_bit({0.0, std::polar(1.0, theta)}), 0);
  }
}

TEST(BitEncoding, decode_rejects_non_basis_states) {
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_THROW(decode_bit({h, h}), DecodeError);
  EXPECT_THROW(decode_bit({0.5, 0.0}), DecodeError);
  EXPECT_THROW(decode_bit({0.0, 0.0}), DecodeError);
}

TEST(Qhq, zero_angles_compose_to_minus_identity) {
  // diag(e^{i pi/4}, e^{-i pi/4}) diag(i, -i) diag(e^{i pi/4}, e^{-i pi/4}) = diag(-1, -1).
  EXPECT_LE(max_entry_distance(qhq_compose({0.0, 0.0, 0.0}), -1.0 * JonesMatrix::identity()), 1e-15);
}

TEST(Qhq, compose_is_unitary) {
  auto rng = testkit::make_rng(4);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < 500; ++i) {
    EXPECT_TRUE(is_unitary(qhq_compose({angle(rng), angle(rng), angle(rng)}), 1e-10));
  }
}

TEST(Qhq, synthesizes_identity) {
  const auto angles = qhq_synthesize(JonesMatrix::identity());
  EXPECT_LE(phase_aligned_distance(qhq_compose(angles), JonesMatrix::identity()), kSynthesisTolerance);
}

TEST(Qhq, synthesizes_i_sigma_x_with_half_wave_at_45_degrees) {
  const JonesMatrix target(0.0, I, I, 0.0);

  // Brute-force oracle: every grid point on multiples of pi/8 whose
  // composition hits the target.
  int solutions = 0;
  bool grid_has_zero_quarter_solution = false;
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      for (int c = 0; c < 8; ++c) {
        const QhqAngles g{a * kPi / 8, b * kPi / 8, c * kPi / 8};
        if (phase_aligned_distance(qhq_compose(g), target) < 1e-12) {
          ++solutions;
          if (a == 0 && c == 0 && b == 2) grid_has_zero_quarter_solution = true;
        }
      }
    }
  }
  ASSERT_GT(solutions, 0);
  ASSERT_TRUE(grid_has_zero_quarter_solution);

  const auto angles = qhq_synthesize(target);
  EXPECT_NEAR(angles.half, kPi / 4, 1e-12);
  EXPECT_NEAR(std::remainder(angles.first_quarter, kPi), 0.0, 1e-12);
  EXPECT_NEAR(std::remainder(angles.second_quarter, kPi), 0.0, 1e-12);
  EXPECT_LE(phase_aligned_distance(qhq_compose(angles), target), kSynthesisTolerance);
}

TEST(Qhq, round_trips_haar_random_targets) {
  auto rng = testkit::make_rng(5);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto target = testkit::random_su2(rng);
    worst = std::max(worst, phase_aligned_distance(qhq_compose(qhq_synthesize(target)), target));
  }
  EXPECT_LE(worst, kSynthesisTolerance);
}

TEST(Qhq, round_trips_waveplate_targets) {
  for (double eta : {0.0, kPi / 2, kPi, 3 * kPi / 2, 0.3}) {
    for (double phi : {0.0, kPi / 8, kPi / 4, kPi / 2, 1.1}) {
      const auto target = waveplate_unitary({eta, phi});
      EXPECT_LE(phase_aligned_distance(qhq_compose(qhq_synthesize(target)), target), kSynthesisTolerance)
          << eta << " " << phi;
    }
  }
}

TEST(Qhq, numeric_refinement_converges_from_perturbed_start) {
  auto rng = testkit::make_rng(6);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  for (int i = 0; i < 50; ++i) {
    const QhqAngles truth{angle(rng), angle(rng), angle(rng)};
    const auto target = qhq_compose(truth);
    const QhqAngles start{truth.first_quarter + jitter(rng), truth.half + jitter(rng),
                          truth.second_quarter + jitter(rng)};
    const auto refined = detail::refine_qhq(target, start);
    EXPECT_LE(phase_aligned_distance(qhq_compose(refined), target), kSynthesisTolerance);
  }
}

TEST(Qhq, rejects_non_su2_targets) {
  EXPECT_THROW(qhq_synthesize(JonesMatrix(1.0, 1.0, 0.0, 1.0)), InvalidArgument);
  EXPECT_THROW(qhq_synthesize(JonesMatrix::diagonal(I, I)), InvalidArgument);  // det = -1
  EXPECT_THROW(qhq_synthesize(JonesMatrix::diagonal(2.0, 0.5)), InvalidArgument);
}

TEST(PhaseAlignedDistance, ignores_global_phase) {
  auto rng = testkit::make_rng(7);
  const auto u = testkit::random_su2(rng);
  EXPECT_LE(phase_aligned_distance(std::polar(1.0, 1.234) * u, u), 1e-15);
  EXPECT_GT(max_entry_distance(std::polar(1.0, 1.234) * u, u), 0.1);
}
