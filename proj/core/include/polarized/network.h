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

#ifndef POLARIZED_NETWORK_H
#define POLARIZED_NETWORK_H

#include <cmath>
#include <compare>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "polarized/jones.h"

namespace polarized {

/// Emits `polarization` rescaled to carry `intensity`. The direction vector
/// need not be normalized.
struct Source {
  PolarizationState polarization{1.0, 0.0};
  double intensity = 1.0;

  PolarizationState emitted() const;
  friend bool operator==(const Source&, const Source&) = default;
};

/// Lossless two-port splitter. Port 0 out = sqrt(t) in0 - sqrt(r) in1,
/// port 1 out = sqrt(r) in0 + sqrt(t) in1.
struct BeamSplitter {
  double transmission = 0.5;
  double reflection = 0.5;
  friend bool operator==(const BeamSplitter&, const BeamSplitter&) = default;
};

struct Waveplate {
  WaveplateSpec spec;
  friend bool operator==(const Waveplate&, const Waveplate&) = default;
};

/// Polarization-independent phase e^{i theta}.
struct PhaseShifter {
  double theta = 0.0;
  friend bool operator==(const PhaseShifter&, const PhaseShifter&) = default;
};

struct Mirror {
  int sign = 1;
  friend bool operator==(const Mirror&, const Mirror&) = default;
};

/// Records the intensity arriving on its single input. Labeled by its id.
struct Detector {
  friend bool operator==(const Detector&, const Detector&) = default;
};

using ElementKind = std::variant<Source, BeamSplitter, Waveplate, PhaseShifter, Mirror, Detector>;

int input_arity(const ElementKind& kind);
int output_arity(const ElementKind& kind);
std::string_view kind_name(const ElementKind& kind);

struct Element {
  std::string id;
  ElementKind kind;
  friend bool operator==(const Element&, const Element&) = default;
};

struct PortRef {
  std::string element;
  int port = 0;
  friend auto operator<=>(const PortRef&, const PortRef&) = default;
};

/// Directed link from an output port to an input port.
struct Connection {
  PortRef from;
  PortRef to;
  friend auto operator<=>(const Connection&, const Connection&) = default;
};

/// Graph of optical elements. Unconnected inputs read vacuum; unconnected
/// outputs are open terminal ports.
class Netlist {
 public:
  Netlist& add(std::string id, ElementKind kind);
  Netlist& connect(PortRef from, PortRef to);

  std::span<const Element> elements() const { return elements_; }
  std::span<const Connection> connections() const { return connections_; }
  const Element* find(std::string_view id) const;
  std::size_t size() const { return elements_.size(); }

  /// Order-insensitive: two netlists are equal when they declare the same
  /// elements and the same connections.
  friend bool operator==(const Netlist& a, const Netlist& b);

 private:
  std::vector<Element> elements_;
  std::vector<Connection> connections_;
};

bool is_valid_identifier(std::string_view id);

struct Diagnostic {
  enum class Code {
    bad_identifier,
    duplicate_id,
    bad_parameter,
    lossy_splitter,
    unknown_element,
    bad_port,
    port_reused,
    cycle,
    unconnected_detector,
  };
  Code code;
  std::string element;
  std::string message;
  /// Index into Netlist::connections() when the problem is a connection.
  std::optional<std::size_t> connection;
};

/// Empty iff the netlist is well formed: valid unique identifiers, finite
/// lossless parameters, resolvable connections, no port used twice, acyclic,
/// and every detector fed.
std::vector<Diagnostic> validate(const Netlist& net);

class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Splitter action on the amplitudes of two beams; polarization untouched.
/// Throws InvalidArgument unless t, r >= 0 and t + r = 1 within 1e-12.
std::pair<PolarizationState, PolarizationState> beamsplitter_transfer(double t, double r,
                                                                      const PolarizationState& in0,
                                                                      const PolarizationState& in1);

enum class PortSide { input, output };

struct PortKey {
  std::string element;
  PortSide side = PortSide::output;
  int port = 0;
  friend auto operator<=>(const PortKey&, const PortKey&) = default;
};

/// Amplitude on every input and output port after propagation.
class PortAmplitudes {
 public:
  void set(PortKey key, const PolarizationState& state) { states_[std::move(key)] = state; }
  const PolarizationState& at(const PortKey& key) const { return states_.at(key); }
  const PolarizationState& input(std::string_view element, int port = 0) const;
  const PolarizationState& output(std::string_view element, int port = 0) const;

  auto begin() const { return states_.begin(); }
  auto end() const { return states_.end(); }
  std::size_t size() const { return states_.size(); }

  friend bool operator==(const PortAmplitudes&, const PortAmplitudes&) = default;

 private:
  std::map<PortKey, PolarizationState> states_;
};

/// Evaluates the netlist in topological order, ties broken by identifier.
/// Throws StructuralError when validate() reports anything.
PortAmplitudes propagate(const Netlist& net);

/// Element ids in the order propagate() evaluates them.
std::vector<std::string> evaluation_order(const Netlist& net);

struct DetectorReading {
  std::string name;
  double intensity = 0.0;
  friend bool operator==(const DetectorReading&, const DetectorReading&) = default;
};

/// One reading per detector, in netlist declaration order.
std::vector<DetectorReading> detector_readings(const PortAmplitudes& amps, const Netlist& net);

struct EnergyAudit {
  double input_total = 0.0;
  double terminal_total = 0.0;
  double imbalance() const { return std::abs(input_total - terminal_total); }
};

/// Source intensity against intensity on terminal ports (detector inputs and
/// unconnected outputs).
EnergyAudit energy_audit(const PortAmplitudes& amps, const Netlist& net);

std::string to_string(const Diagnostic& d);

}  // namespace polarized

#endif  // POLARIZED_NETWORK_H
