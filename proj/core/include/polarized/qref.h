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

#ifndef POLARIZED_QREF_H
#define POLARIZED_QREF_H

#include <cstdint>
#include <span>
#include <vector>

#include "polarized/bv.h"
#include "polarized/jones.h"

namespace polarized {

/// Largest register the dense reference simulates.
inline constexpr std::size_t kMaxQubits = 20;

/// Dense n-qubit pure state. Qubit 1 is the most significant bit of the basis
/// index; an oracle target register, when present, is the least significant.
class StateVector {
 public:
  /// Computational basis state |index>.
  static StateVector basis(std::size_t qubits, std::uint64_t index);
  template <class Tag>
  static StateVector basis(const BitString<Tag>& bits) {
    return basis(bits.size(), bits.to_index());
  }
  /// Throws InvalidArgument unless the length is 2^qubits and the norm is 1
  /// within 1e-12.
  static StateVector from_amplitudes(std::size_t qubits, std::vector<Complex> amplitudes);

  std::size_t qubits() const { return qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex operator[](std::uint64_t index) const { return amplitudes_[index]; }
  double norm_squared() const;

  /// |this> (x) |other>, with `other` taking the low-order bits.
  StateVector tensor(const StateVector& other) const;

 private:
  StateVector(std::size_t qubits, std::vector<Complex> amplitudes)
      : qubits_(qubits), amplitudes_(std::move(amplitudes)) {}

  friend class StateOps;
  std::size_t qubits_ = 0;
  std::vector<Complex> amplitudes_;
};

/// Max amplitude deviation after aligning global phase on the first
/// amplitude of `b` with non-negligible modulus.
double phase_aligned_distance(const StateVector& a, const StateVector& b);
double max_amplitude_distance(const StateVector& a, const StateVector& b);

/// Single-qubit Hadamard on every qubit.
StateVector hadamard_all(const StateVector& s);

/// Single-qubit sigma_z on `qubit` (1-based).
StateVector apply_sigma_z(const StateVector& s, std::size_t qubit);

/// |x>|y> -> |x>|y xor a.x> on n+1 qubits.
StateVector apply_standard_oracle(const HiddenString& a, const StateVector& s);

/// |x> -> (-1)^{a.x} |x> on n qubits, as one diagonal map.
StateVector apply_phase_oracle(const HiddenString& a, const StateVector& s);

/// The same map built from local sigma_z^{a_j} factors.
StateVector apply_factored_oracle(const HiddenString& a, const StateVector& s);

enum class OracleVariant { standard, phase, factored };

struct OracleForm {
  OracleVariant variant = OracleVariant::phase;
  HiddenString hidden;

  /// sigma_z exponents of the factored form: the bits of `hidden`.
  std::vector<Bit> exponents() const { return {hidden.bits().begin(), hidden.bits().end()}; }
  StateVector apply(const StateVector& s) const;
};

/// Prepares |x>|0>, applies the standard oracle and reads the target: f(x).
Bit oracle_classical_mode(const HiddenString& a, const InputString& x);

struct QuantumOutcome {
  BasisString outcome;
  double probability = 0.0;
  StateVector final_state;
  /// States after preparation, each Hadamard layer and the oracle.
  std::vector<StateVector> stages;
};

/// |0>^n |1> -> H -> standard oracle -> H, outcome read on the first n qubits.
QuantumOutcome quantum_bv(const HiddenString& a);

/// |0>^n -> H -> phase oracle -> H, no target register.
QuantumOutcome quantum_bv_phase_form(const HiddenString& a);

/// Probability of each outcome on the first `register_qubits` qubits.
std::vector<double> marginal_distribution(const StateVector& s, std::size_t register_qubits);

/// 2^-n sum_x (-1)^{a.x} (-1)^{x.z}. Summed in integers, so the result is
/// exactly 1 or 0.
template <class TagA, class TagZ>
double orthogonality_sum(const BitString<TagA>& a, const BitString<TagZ>& z);

double orthogonality_sum(std::span<const Bit> a, std::span<const Bit> z);

template <class TagA, class TagZ>
double orthogonality_sum(const BitString<TagA>& a, const BitString<TagZ>& z) {
  return orthogonality_sum(a.bits(), z.bits());
}

/// Tr(rho_j^2) of each single-qubit reduced state, in qubit order.
std::vector<double> purity_per_qubit(const StateVector& s);

/// Standard oracle on |x>|-> equals the phase oracle on |x> times |->.
bool phase_kickback_check(const HiddenString& a, const InputString& x);

/// Maximum amplitude deviation behind phase_kickback_check.
double phase_kickback_deviation(const HiddenString& a, const InputString& x);

}  // namespace polarized

#endif  // POLARIZED_QREF_H
