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

#ifndef POLARIZED_BV_H
#define POLARIZED_BV_H

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polarized/jones.h"
#include "polarized/network.h"

namespace polarized {

/// Ordered bits b_1 ... b_n. The tag keeps hidden strings, inputs and
/// measured outcomes from mixing.
template <class Tag>
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::vector<Bit> bits) : bits_(std::move(bits)) {
    for (Bit b : bits_) {
      if (b > 1) throw InvalidArgument("bit string entries must be 0 or 1");
    }
  }

  /// Parses "10110". Throws InvalidArgument on any other character or an
  /// empty string.
  static BitString parse(std::string_view text) {
    if (text.empty()) throw InvalidArgument("bit string must not be empty");
    std::vector<Bit> bits;
    bits.reserve(text.size());
    for (char c : text) {
      if (c != '0' && c != '1') throw InvalidArgument("bit string may only contain '0' and '1': " + std::string(text));
      bits.push_back(static_cast<Bit>(c - '0'));
    }
    return BitString(std::move(bits));
  }

  /// Bit j of the string is bit (n-1-j) of `value`, so b_1 is the most
  /// significant bit.
  static BitString from_index(std::uint64_t value, std::size_t n) {
    std::vector<Bit> bits(n);
    for (std::size_t j = 0; j < n; ++j) bits[j] = static_cast<Bit>((value >> (n - 1 - j)) & 1U);
    return BitString(std::move(bits));
  }

  static BitString all_ones(std::size_t n) { return BitString(std::vector<Bit>(n, 1)); }

  std::uint64_t to_index() const {
    std::uint64_t value = 0;
    for (Bit b : bits_) value = (value << 1) | b;
    return value;
  }

  std::size_t size() const { return bits_.size(); }
  Bit operator[](std::size_t j) const { return bits_[j]; }
  std::span<const Bit> bits() const { return bits_; }

  std::string to_string() const {
    std::string out;
    for (Bit b : bits_) out.push_back(static_cast<char>('0' + b));
    return out;
  }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<Bit> bits_;
};

struct HiddenTag;
struct InputTag;
struct OutcomeTag;

/// The vector a defining f(x) = a.x mod 2.
using HiddenString = BitString<HiddenTag>;
using InputString = BitString<InputTag>;
/// Computational-basis measurement result.
using BasisString = BitString<OutcomeTag>;

/// a_1 x_1 xor ... xor a_n x_n. Throws InvalidArgument on length mismatch.
Bit f_reference(const HiddenString& a, const InputString& x);

/// Pairwise XOR reduction: each round XORs neighbours, an unpaired last bit
/// moves to the next round unchanged. Throws InvalidArgument when empty.
Bit xor_fold(std::span<const Bit> bits);

/// Optical elements the oracle places on every beam in one pass.
struct OracleStage {
  /// arms[j] is the (possibly empty) element chain for beam j+1, in beam
  /// order. Element ids are unique across the stage.
  std::vector<std::vector<Element>> arms;
};

/// Black box around a hidden string. Callers can ask for its optical
/// realization or for classical function values, and the oracle counts both;
/// it never reveals `a` directly.
class HiddenStringOracle {
 public:
  explicit HiddenStringOracle(HiddenString hidden) : hidden_(std::move(hidden)) {}

  std::size_t size() const { return hidden_.size(); }

  /// One optical query: per beam j with a_j = 1 a half-wave plate
  /// (eta = pi, phi = 0) followed by a pi/2 phase shifter, which together
  /// act as diag(-1, +1); nothing when a_j = 0.
  OracleStage optical_stage();

  /// Classical-mode query f(x).
  Bit query(const InputString& x);

  std::size_t optical_queries() const { return optical_queries_; }
  std::size_t classical_queries() const { return classical_queries_; }

 private:
  HiddenString hidden_;
  std::size_t optical_queries_ = 0;
  std::size_t classical_queries_ = 0;
};

/// Clone-and-interfere circuit: per beam, source -> 50/50 splitter; the
/// transmitted clone passes the oracle, the reflected clone gets a pi phase;
/// both recombine on a second 50/50 splitter whose port 1 feeds detector D_j.
struct BvCircuit {
  std::size_t n = 0;
  Netlist net;
  std::vector<std::string> detector_names;
  /// Per-beam bit threshold as a fraction of that beam's input intensity.
  double threshold = 0.5;
  /// Number of oracle stages each beam traverses.
  std::vector<std::size_t> oracle_stages_per_beam;
  /// Ids of the oracle elements placed on each beam.
  std::vector<std::vector<std::string>> oracle_elements;
};

inline constexpr double kReadoutThreshold = 0.5;

BvCircuit build_bv_circuit(const OracleStage& stage, const InputString& x);
BvCircuit build_bv_circuit(const HiddenString& a, const InputString& x);

/// Per-beam detector intensities in beam order.
std::vector<double> detector_intensities(const BvCircuit& circuit);

/// Propagates and thresholds each detector: returns (x_1 a_1, ..., x_n a_n).
std::vector<Bit> read_bits(const BvCircuit& circuit);

/// Recovers `a` from one optical pass with the all-ones probe.
HiddenString find_hidden_string(HiddenStringOracle& oracle);
HiddenString find_hidden_string(const HiddenString& a);

/// Optical f(x): detector bits folded with XOR.
Bit eval_f_optical(HiddenStringOracle& oracle, const InputString& x);
Bit eval_f_optical(const HiddenString& a, const InputString& x);

struct BaselineResult {
  HiddenString recovered;
  std::size_t queries = 0;
};

/// Classical recovery: asks f(e_j) for every unit vector e_j.
BaselineResult classical_baseline(const std::function<Bit(const InputString&)>& oracle, std::size_t n);

}  // namespace polarized

#endif  // POLARIZED_BV_H
