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

#include "polarized/qref.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace polarized {

class StateOps {
 public:
  static StateVector make(std::size_t qubits, std::vector<Complex> amplitudes) {
    return StateVector(qubits, std::move(amplitudes));
  }
  static std::vector<Complex>& data(StateVector& s) { return s.amplitudes_; }
};

namespace {

void check_qubits(std::size_t qubits) {
  if (qubits == 0 || qubits > kMaxQubits) {
    throw InvalidArgument("register size must be between 1 and " + std::to_string(kMaxQubits) + " qubits, got " +
                          std::to_string(qubits));
  }
}

std::uint64_t mask_of(std::span<const Bit> bits) {
  std::uint64_t value = 0;
  for (Bit b : bits) value = (value << 1) | b;
  return value;
}

int parity(std::uint64_t v) { return std::popcount(v) & 1; }

void require_qubits(const StateVector& s, std::size_t expected, const char* what) {
  if (s.qubits() != expected) {
    throw InvalidArgument(std::string(what) + " expects " + std::to_string(expected) + " qubits, got " +
                          std::to_string(s.qubits()));
  }
}

}  // namespace

StateVector StateVector::basis(std::size_t qubits, std::uint64_t index) {
  check_qubits(qubits);
  const std::uint64_t dim = std::uint64_t{1} << qubits;
  if (index >= dim) throw InvalidArgument("basis index out of range");
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return StateVector(qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::size_t qubits, std::vector<Complex> amplitudes) {
  check_qubits(qubits);
  if (amplitudes.size() != (std::size_t{1} << qubits)) {
    throw InvalidArgument("state of " + std::to_string(qubits) + " qubits needs " +
                          std::to_string(std::size_t{1} << qubits) + " amplitudes");
  }
  StateVector s(qubits, std::move(amplitudes));
  if (std::abs(s.norm_squared() - 1.0) > kExactTolerance) throw InvalidArgument("state vector is not normalized");
  return s;
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amplitudes_) total += std::norm(a);
  return total;
}

StateVector StateVector::tensor(const StateVector& other) const {
  check_qubits(qubits_ + other.qubits_);
  std::vector<Complex> amps(amplitudes_.size() * other.amplitudes_.size());
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    for (std::size_t k = 0; k < other.amplitudes_.size(); ++k) {
      amps[i * other.amplitudes_.size() + k] = amplitudes_[i] * other.amplitudes_[k];
    }
  }
  return StateVector(qubits_ + other.qubits_, std::move(amps));
}

double max_amplitude_distance(const StateVector& a, const StateVector& b) {
  if (a.dimension() != b.dimension()) throw InvalidArgument("states have different sizes");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double phase_aligned_distance(const StateVector& a, const StateVector& b) {
  if (a.dimension() != b.dimension()) throw InvalidArgument("states have different sizes");
  constexpr double kNegligible = 1e-12;
  Complex phase = 1.0;
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    if (std::abs(b[i]) > kNegligible) {
      if (std::abs(a[i]) > kNegligible) phase = (b[i] / std::abs(b[i])) / (a[i] / std::abs(a[i]));
      break;
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) worst = std::max(worst, std::abs(phase * a[i] - b[i]));
  return worst;
}

StateVector hadamard_all(const StateVector& s) {
  StateVector out = s;
  auto& amps = StateOps::data(out);
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t stride = 1; stride < amps.size(); stride <<= 1) {
    for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
      for (std::size_t i = base; i < base + stride; ++i) {
        const Complex lo = amps[i];
        const Complex hi = amps[i + stride];
        amps[i] = h * (lo + hi);
        amps[i + stride] = h * (lo - hi);
      }
    }
  }
  return out;
}

StateVector apply_sigma_z(const StateVector& s, std::size_t qubit) {
  if (qubit == 0 || qubit > s.qubits()) throw InvalidArgument("qubit index out of range");
  StateVector out = s;
  auto& amps = StateOps::data(out);
  const std::uint64_t bit = std::uint64_t{1} << (s.qubits() - qubit);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & bit) amps[i] = -amps[i];
  }
  return out;
}

StateVector apply_standard_oracle(const HiddenString& a, const StateVector& s) {
  require_qubits(s, a.size() + 1, "standard oracle");
  const std::uint64_t mask = mask_of(a.bits());
  std::vector<Complex> amps(s.dimension());
  for (std::uint64_t i = 0; i < s.dimension(); ++i) {
    const std::uint64_t x = i >> 1;
    amps[i ^ static_cast<std::uint64_t>(parity(x & mask))] = s[i];
  }
  return StateOps::make(s.qubits(), std::move(amps));
}

StateVector apply_phase_oracle(const HiddenString& a, const StateVector& s) {
  require_qubits(s, a.size(), "phase oracle");
  const std::uint64_t mask = mask_of(a.bits());
  StateVector out = s;
  auto& amps = StateOps::data(out);
  for (std::uint64_t x = 0; x < amps.size(); ++x) {
    if (parity(x & mask)) amps[x] = -amps[x];
  }
  return out;
}

StateVector apply_factored_oracle(const HiddenString& a, const StateVector& s) {
  require_qubits(s, a.size(), "factored oracle");
  StateVector out = s;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] == 1) out = apply_sigma_z(out, j + 1);
  }
  return out;
}

StateVector OracleForm::apply(const StateVector& s) const {
  switch (variant) {
    case OracleVariant::standard:
      return apply_standard_oracle(hidden, s);
    case OracleVariant::phase:
      return apply_phase_oracle(hidden, s);
    case OracleVariant::factored:
      return apply_factored_oracle(hidden, s);
  }
  throw InvalidArgument("unknown oracle variant");
}

Bit oracle_classical_mode(const HiddenString& a, const InputString& x) {
  if (a.size() != x.size()) throw InvalidArgument("hidden string and input differ in length");
  const std::uint64_t input = x.to_index() << 1;
  const StateVector out = apply_standard_oracle(a, StateVector::basis(a.size() + 1, input));
  // The oracle permutes basis states, so exactly one of |x>|0>, |x>|1> is occupied.
  return std::norm(out[input | 1]) > 0.5 ? 1 : 0;
}

std::vector<double> marginal_distribution(const StateVector& s, std::size_t register_qubits) {
  if (register_qubits == 0 || register_qubits > s.qubits()) throw InvalidArgument("register size out of range");
  const std::size_t dropped = s.qubits() - register_qubits;
  std::vector<double> probs(std::size_t{1} << register_qubits, 0.0);
  for (std::uint64_t i = 0; i < s.dimension(); ++i) probs[i >> dropped] += std::norm(s[i]);
  return probs;
}

namespace {

QuantumOutcome read_out(std::vector<StateVector> stages, std::size_t register_qubits) {
  const auto probs = marginal_distribution(stages.back(), register_qubits);
  const auto best = static_cast<std::uint64_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
  QuantumOutcome result{BasisString::from_index(best, register_qubits), probs[best], stages.back(), {}};
  result.stages = std::move(stages);
  return result;
}

}  // namespace

QuantumOutcome quantum_bv(const HiddenString& a) {
  const std::size_t n = a.size();
  std::vector<StateVector> stages;
  stages.push_back(StateVector::basis(n + 1, 1));
  stages.push_back(hadamard_all(stages.back()));
  stages.push_back(apply_standard_oracle(a, stages.back()));
  stages.push_back(hadamard_all(stages.back()));
  return read_out(std::move(stages), n);
}

QuantumOutcome quantum_bv_phase_form(const HiddenString& a) {
  const std::size_t n = a.size();
  std::vector<StateVector> stages;
  stages.push_back(StateVector::basis(n, 0));
  stages.push_back(hadamard_all(stages.back()));
  stages.push_back(apply_phase_oracle(a, stages.back()));
  stages.push_back(hadamard_all(stages.back()));
  return read_out(std::move(stages), n);
}

double orthogonality_sum(std::span<const Bit> a, std::span<const Bit> z) {
  if (a.size() != z.size()) throw InvalidArgument("strings differ in length");
  check_qubits(a.size());
  const std::uint64_t ma = mask_of(a);
  const std::uint64_t mz = mask_of(z);
  const std::uint64_t dim = std::uint64_t{1} << a.size();
  std::int64_t total = 0;
  for (std::uint64_t x = 0; x < dim; ++x) total += parity(x & ma) == parity(x & mz) ? 1 : -1;
  return static_cast<double>(total) / static_cast<double>(dim);
}

std::vector<double> purity_per_qubit(const StateVector& s) {
  std::vector<double> out;
  out.reserve(s.qubits());
  for (std::size_t j = 1; j <= s.qubits(); ++j) {
    const std::uint64_t bit = std::uint64_t{1} << (s.qubits() - j);
    double p0 = 0.0, p1 = 0.0;
    Complex coherence = 0.0;
    for (std::uint64_t i = 0; i < s.dimension(); ++i) {
      if (i & bit) continue;
      p0 += std::norm(s[i]);
      p1 += std::norm(s[i | bit]);
      coherence += s[i] * std::conj(s[i | bit]);
    }
    out.push_back(p0 * p0 + p1 * p1 + 2 * std::norm(coherence));
  }
  return out;
}

double phase_kickback_deviation(const HiddenString& a, const InputString& x) {
  if (a.size() != x.size()) throw InvalidArgument("hidden string and input differ in length");
  const double h = 1.0 / std::sqrt(2.0);
  const StateVector minus = StateVector::from_amplitudes(1, {h, -h});
  const StateVector data = StateVector::basis(x);
  const StateVector kicked = apply_standard_oracle(a, data.tensor(minus));
  const StateVector expected = apply_phase_oracle(a, data).tensor(minus);
  return max_amplitude_distance(kicked, expected);
}

bool phase_kickback_check(const HiddenString& a, const InputString& x) {
  return phase_kickback_deviation(a, x) <= kExactTolerance;
}

}  // namespace polarized
