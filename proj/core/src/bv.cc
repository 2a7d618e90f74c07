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

#include "polarized/bv.h"

#include <string>

namespace polarized {

namespace {

void require_same_length(std::size_t a, std::size_t x) {
  if (a != x) {
    throw InvalidArgument("hidden string has " + std::to_string(a) + " bits but input has " + std::to_string(x));
  }
}

}  // namespace

Bit f_reference(const HiddenString& a, const InputString& x) {
  require_same_length(a.size(), x.size());
  Bit acc = 0;
  for (std::size_t j = 0; j < a.size(); ++j) acc ^= static_cast<Bit>(a[j] & x[j]);
  return acc;
}

Bit xor_fold(std::span<const Bit> bits) {
  if (bits.empty()) throw InvalidArgument("xor_fold needs at least one bit");
  std::vector<Bit> layer(bits.begin(), bits.end());
  while (layer.size() > 1) {
    std::vector<Bit> next;
    next.reserve((layer.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < layer.size(); i += 2) next.push_back(static_cast<Bit>(layer[i] ^ layer[i + 1]));
    if (layer.size() % 2 == 1) next.push_back(layer.back());
    layer = std::move(next);
  }
  return layer.front();
}

OracleStage HiddenStringOracle::optical_stage() {
  ++optical_queries_;
  OracleStage stage;
  stage.arms.resize(hidden_.size());
  for (std::size_t j = 0; j < hidden_.size(); ++j) {
    if (hidden_[j] == 0) continue;
    const std::string prefix = "U" + std::to_string(j + 1);
    // H(phi=0) = diag(i, -i); the extra e^{i pi/2} makes it diag(-1, +1).
    stage.arms[j].push_back({prefix + "_hwp", Waveplate{WaveplateSpec::half_wave(0.0)}});
    stage.arms[j].push_back({prefix + "_ps", PhaseShifter{kPi / 2}});
  }
  return stage;
}

Bit HiddenStringOracle::query(const InputString& x) {
  ++classical_queries_;
  return f_reference(hidden_, x);
}

BvCircuit build_bv_circuit(const OracleStage& stage, const InputString& x) {
  const std::size_t n = stage.arms.size();
  require_same_length(n, x.size());
  if (n == 0) throw InvalidArgument("circuit needs at least one beam");

  BvCircuit circuit;
  circuit.n = n;
  circuit.threshold = kReadoutThreshold;
  Netlist& net = circuit.net;
  for (std::size_t j = 0; j < n; ++j) {
    const std::string k = std::to_string(j + 1);
    const std::string source = "S" + k, split = "BS" + k, merge = "BS" + k + "p", detector = "D" + k;
    const std::string mirror_in = "M" + k + "a", reference = "R" + k, mirror_out = "M" + k + "b";

    net.add(source, Source{encode_bit(x[j]), 1.0});
    net.add(split, BeamSplitter{0.5, 0.5});
    net.connect({source, 0}, {split, 0});

    // Transmitted clone through the oracle.
    PortRef tail{split, 0};
    std::vector<std::string> oracle_ids;
    for (const auto& e : stage.arms[j]) {
      net.add(e.id, e.kind);
      net.connect(tail, {e.id, 0});
      tail = {e.id, 0};
      oracle_ids.push_back(e.id);
    }
    net.add(merge, BeamSplitter{0.5, 0.5});
    net.connect(tail, {merge, 0});

    // Reflected clone: mirror, pi phase, mirror.
    net.add(mirror_in, Mirror{1});
    net.add(reference, PhaseShifter{kPi});
    net.add(mirror_out, Mirror{1});
    net.connect({split, 1}, {mirror_in, 0});
    net.connect({mirror_in, 0}, {reference, 0});
    net.connect({reference, 0}, {mirror_out, 0});
    net.connect({mirror_out, 0}, {merge, 1});

    net.add(detector, Detector{});
    net.connect({merge, 1}, {detector, 0});

    circuit.detector_names.push_back(detector);
    circuit.oracle_stages_per_beam.push_back(1);
    circuit.oracle_elements.push_back(std::move(oracle_ids));
  }
  return circuit;
}

BvCircuit build_bv_circuit(const HiddenString& a, const InputString& x) {
  require_same_length(a.size(), x.size());
  HiddenStringOracle oracle(a);
  return build_bv_circuit(oracle.optical_stage(), x);
}

std::vector<double> detector_intensities(const BvCircuit& circuit) {
  const PortAmplitudes amps = propagate(circuit.net);
  std::vector<double> out;
  out.reserve(circuit.n);
  for (const auto& name : circuit.detector_names) out.push_back(amps.input(name).intensity());
  return out;
}

std::vector<Bit> read_bits(const BvCircuit& circuit) {
  const auto intensities = detector_intensities(circuit);
  std::vector<Bit> bits;
  bits.reserve(circuit.n);
  for (std::size_t j = 0; j < circuit.n; ++j) {
    const auto* source = std::get_if<Source>(&circuit.net.find("S" + std::to_string(j + 1))->kind);
    const double input = source ? source->emitted().intensity() : 1.0;
    bits.push_back(intensities[j] >= circuit.threshold * input ? 1 : 0);
  }
  return bits;
}

HiddenString find_hidden_string(HiddenStringOracle& oracle) {
  const BvCircuit circuit = build_bv_circuit(oracle.optical_stage(), InputString::all_ones(oracle.size()));
  return HiddenString(read_bits(circuit));
}

HiddenString find_hidden_string(const HiddenString& a) {
  HiddenStringOracle oracle(a);
  return find_hidden_string(oracle);
}

Bit eval_f_optical(HiddenStringOracle& oracle, const InputString& x) {
  require_same_length(oracle.size(), x.size());
  const auto bits = read_bits(build_bv_circuit(oracle.optical_stage(), x));
  return xor_fold(bits);
}

Bit eval_f_optical(const HiddenString& a, const InputString& x) {
  HiddenStringOracle oracle(a);
  return eval_f_optical(oracle, x);
}

BaselineResult classical_baseline(const std::function<Bit(const InputString&)>& oracle, std::size_t n) {
  if (n == 0) throw InvalidArgument("classical baseline needs n >= 1");
  BaselineResult result;
  std::vector<Bit> recovered(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Bit> unit(n, 0);
    unit[j] = 1;
    recovered[j] = oracle(InputString(std::move(unit)));
    ++result.queries;
  }
  result.recovered = HiddenString(std::move(recovered));
  return result;
}

}  // namespace polarized
