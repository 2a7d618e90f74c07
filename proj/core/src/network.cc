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

#include "polarized/network.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <unordered_map>

namespace polarized {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool finite(const PolarizationState& s) {
  return std::isfinite(s.x.real()) && std::isfinite(s.x.imag()) && std::isfinite(s.y.real()) &&
         std::isfinite(s.y.imag());
}

bool lossless(double t, double r) {
  return std::isfinite(t) && std::isfinite(r) && t >= 0.0 && r >= 0.0 &&
         std::abs(t + r - 1.0) <= kExactTolerance;
}

}  // namespace

PolarizationState Source::emitted() const {
  const double norm = polarization.intensity();
  if (norm == 0.0) return PolarizationState::vacuum();
  return std::sqrt(intensity / norm) * polarization;
}

int input_arity(const ElementKind& kind) {
  return std::visit(Overloaded{[](const Source&) { return 0; }, [](const BeamSplitter&) { return 2; },
                               [](const auto&) { return 1; }},
                    kind);
}

int output_arity(const ElementKind& kind) {
  return std::visit(Overloaded{[](const Detector&) { return 0; }, [](const BeamSplitter&) { return 2; },
                               [](const auto&) { return 1; }},
                    kind);
}

std::string_view kind_name(const ElementKind& kind) {
  return std::visit(Overloaded{[](const Source&) { return std::string_view{"source"}; },
                               [](const BeamSplitter&) { return std::string_view{"beam splitter"}; },
                               [](const Waveplate&) { return std::string_view{"waveplate"}; },
                               [](const PhaseShifter&) { return std::string_view{"phase shifter"}; },
                               [](const Mirror&) { return std::string_view{"mirror"}; },
                               [](const Detector&) { return std::string_view{"detector"}; }},
                    kind);
}

Netlist& Netlist::add(std::string id, ElementKind kind) {
  elements_.push_back({std::move(id), std::move(kind)});
  return *this;
}

Netlist& Netlist::connect(PortRef from, PortRef to) {
  connections_.push_back({std::move(from), std::move(to)});
  return *this;
}

const Element* Netlist::find(std::string_view id) const {
  auto it = std::find_if(elements_.begin(), elements_.end(), [&](const Element& e) { return e.id == id; });
  return it == elements_.end() ? nullptr : &*it;
}

bool operator==(const Netlist& a, const Netlist& b) {
  if (a.elements_.size() != b.elements_.size() || a.connections_.size() != b.connections_.size()) {
    return false;
  }
  auto by_id = [](const Element* x, const Element* y) { return x->id < y->id; };
  std::vector<const Element*> ea, eb;
  for (const auto& e : a.elements_) ea.push_back(&e);
  for (const auto& e : b.elements_) eb.push_back(&e);
  std::stable_sort(ea.begin(), ea.end(), by_id);
  std::stable_sort(eb.begin(), eb.end(), by_id);
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (!(*ea[i] == *eb[i])) return false;
  }
  auto ca = a.connections_;
  auto cb = b.connections_;
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  return ca == cb;
}

bool is_valid_identifier(std::string_view id) {
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (id.empty() || !alpha(id.front())) return false;
  return std::all_of(id.begin() + 1, id.end(), [&](char c) { return alpha(c) || digit(c); });
}

namespace {

void check_parameters(const Element& e, std::vector<Diagnostic>& out) {
  using Code = Diagnostic::Code;
  auto bad = [&](std::string message) { out.push_back({Code::bad_parameter, e.id, std::move(message), {}}); };
  std::visit(Overloaded{
                 [&](const Source& s) {
                   if (!finite(s.polarization)) bad("source polarization must be finite");
                   else if (s.polarization.intensity() == 0.0) bad("source polarization must be nonzero");
                   if (!std::isfinite(s.intensity) || s.intensity < 0.0) {
                     bad("source intensity must be finite and non-negative");
                   }
                 },
                 [&](const BeamSplitter& bs) {
                   if (!lossless(bs.transmission, bs.reflection)) {
                     out.push_back({Code::lossy_splitter, e.id, "t + r must equal 1 (t, r >= 0)", {}});
                   }
                 },
                 [&](const Waveplate& w) {
                   if (!std::isfinite(w.spec.eta) || !std::isfinite(w.spec.phi)) {
                     bad("waveplate eta and phi must be finite");
                   }
                 },
                 [&](const PhaseShifter& p) {
                   if (!std::isfinite(p.theta)) bad("phase must be finite");
                 },
                 [&](const Mirror& m) {
                   if (m.sign != 1 && m.sign != -1) bad("mirror sign must be +1 or -1");
                 },
                 [](const Detector&) {},
             },
             e.kind);
}

// Index-based view of a netlist. Connections that fail validation are
// dropped so the cycle check can still run.
struct Compiled {
  std::vector<const Element*> nodes;
  std::unordered_map<std::string_view, std::size_t> index;
  // feeds[node][input port] = (source node, source output port)
  std::vector<std::vector<std::optional<std::pair<std::size_t, int>>>> feeds;
  std::vector<std::vector<bool>> output_used;
  std::vector<std::vector<std::size_t>> successors;
};

Compiled compile(const Netlist& net, std::vector<Diagnostic>* diagnostics) {
  using Code = Diagnostic::Code;
  Compiled g;
  for (const auto& e : net.elements()) {
    if (g.index.contains(e.id)) continue;
    g.index.emplace(e.id, g.nodes.size());
    g.nodes.push_back(&e);
    g.feeds.emplace_back(static_cast<std::size_t>(input_arity(e.kind)));
    g.output_used.emplace_back(static_cast<std::size_t>(output_arity(e.kind)), false);
    g.successors.emplace_back();
  }
  auto report = [&](Code code, std::string element, std::string message, std::size_t connection) {
    if (diagnostics) diagnostics->push_back({code, std::move(element), std::move(message), connection});
  };

  const auto connections = net.connections();
  for (std::size_t ci = 0; ci < connections.size(); ++ci) {
    const auto& c = connections[ci];
    auto from = g.index.find(c.from.element);
    auto to = g.index.find(c.to.element);
    if (from == g.index.end()) {
      report(Code::unknown_element, c.from.element, "connection from unknown element '" + c.from.element + "'", ci);
      continue;
    }
    if (to == g.index.end()) {
      report(Code::unknown_element, c.to.element, "connection to unknown element '" + c.to.element + "'", ci);
      continue;
    }
    const std::size_t src = from->second;
    const std::size_t dst = to->second;
    if (c.from.port < 0 || c.from.port >= static_cast<int>(g.output_used[src].size())) {
      report(Code::bad_port, c.from.element,
             "output port " + std::to_string(c.from.port) + " does not exist on " +
                 std::string(kind_name(g.nodes[src]->kind)) + " '" + c.from.element + "'",
             ci);
      continue;
    }
    if (c.to.port < 0 || c.to.port >= static_cast<int>(g.feeds[dst].size())) {
      report(Code::bad_port, c.to.element,
             "input port " + std::to_string(c.to.port) + " does not exist on " +
                 std::string(kind_name(g.nodes[dst]->kind)) + " '" + c.to.element + "'",
             ci);
      continue;
    }
    const auto out_port = static_cast<std::size_t>(c.from.port);
    const auto in_port = static_cast<std::size_t>(c.to.port);
    if (g.output_used[src][out_port]) {
      report(Code::port_reused, c.from.element,
             "output port " + c.from.element + "." + std::to_string(c.from.port) + " is already connected", ci);
      continue;
    }
    if (g.feeds[dst][in_port]) {
      report(Code::port_reused, c.to.element,
             "input port " + c.to.element + "." + std::to_string(c.to.port) + " is already connected", ci);
      continue;
    }
    g.output_used[src][out_port] = true;
    g.feeds[dst][in_port] = std::make_pair(src, c.from.port);
    g.successors[src].push_back(dst);
  }
  return g;
}

// Kahn's algorithm with the smallest identifier first among ready nodes.
// Returns the order; nodes left out lie on or behind a cycle.
std::vector<std::size_t> topological_order(const Compiled& g) {
  std::vector<std::size_t> indegree(g.nodes.size(), 0);
  for (const auto& succ : g.successors) {
    for (auto s : succ) ++indegree[s];
  }
  auto later = [&](std::size_t a, std::size_t b) { return g.nodes[a]->id > g.nodes[b]->id; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)> ready(later);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<std::size_t> order;
  order.reserve(g.nodes.size());
  while (!ready.empty()) {
    const auto node = ready.top();
    ready.pop();
    order.push_back(node);
    for (auto s : g.successors[node]) {
      if (--indegree[s] == 0) ready.push(s);
    }
  }
  return order;
}

}  // namespace

std::vector<Diagnostic> validate(const Netlist& net) {
  using Code = Diagnostic::Code;
  std::vector<Diagnostic> out;
  std::set<std::string_view> seen;
  for (const auto& e : net.elements()) {
    if (!is_valid_identifier(e.id)) {
      out.push_back({Code::bad_identifier, e.id, "identifier '" + e.id + "' must match [A-Za-z_][A-Za-z0-9_]*", {}});
    }
    if (!seen.insert(e.id).second) {
      out.push_back({Code::duplicate_id, e.id, "duplicate identifier '" + e.id + "'", {}});
    }
    check_parameters(e, out);
  }

  const Compiled g = compile(net, &out);

  const auto order = topological_order(g);
  if (order.size() != g.nodes.size()) {
    std::vector<bool> placed(g.nodes.size(), false);
    for (auto i : order) placed[i] = true;
    std::vector<std::string> stuck;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      if (!placed[i]) stuck.push_back(g.nodes[i]->id);
    }
    std::sort(stuck.begin(), stuck.end());
    std::string list;
    for (const auto& id : stuck) list += (list.empty() ? "" : ", ") + id;
    out.push_back({Code::cycle, stuck.front(), "netlist contains a cycle through: " + list, {}});
  }

  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (std::holds_alternative<Detector>(g.nodes[i]->kind) && !g.feeds[i][0]) {
      out.push_back({Code::unconnected_detector, g.nodes[i]->id,
                     "detector '" + g.nodes[i]->id + "' has no input connection", {}});
    }
  }
  return out;
}

StructuralError::StructuralError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error([&] {
        std::string message = "invalid netlist:";
        for (const auto& d : diagnostics) message += "\n  " + to_string(d);
        return message;
      }()),
      diagnostics_(std::move(diagnostics)) {}

std::pair<PolarizationState, PolarizationState> beamsplitter_transfer(double t, double r,
                                                                      const PolarizationState& in0,
                                                                      const PolarizationState& in1) {
  if (!lossless(t, r)) throw InvalidArgument("beam splitter must be lossless: t, r >= 0 and t + r = 1");
  const double st = std::sqrt(t);
  const double sr = std::sqrt(r);
  return {PolarizationState{st * in0.x - sr * in1.x, st * in0.y - sr * in1.y},
          PolarizationState{sr * in0.x + st * in1.x, sr * in0.y + st * in1.y}};
}

const PolarizationState& PortAmplitudes::input(std::string_view element, int port) const {
  return at({std::string(element), PortSide::input, port});
}

const PolarizationState& PortAmplitudes::output(std::string_view element, int port) const {
  return at({std::string(element), PortSide::output, port});
}

std::vector<std::string> evaluation_order(const Netlist& net) {
  if (auto diagnostics = validate(net); !diagnostics.empty()) throw StructuralError(std::move(diagnostics));
  const Compiled g = compile(net, nullptr);
  std::vector<std::string> ids;
  for (auto i : topological_order(g)) ids.push_back(g.nodes[i]->id);
  return ids;
}

PortAmplitudes propagate(const Netlist& net) {
  if (auto diagnostics = validate(net); !diagnostics.empty()) throw StructuralError(std::move(diagnostics));
  const Compiled g = compile(net, nullptr);

  std::vector<std::array<PolarizationState, 2>> outputs(g.nodes.size());
  PortAmplitudes amps;
  for (const auto node : topological_order(g)) {
    const Element& e = *g.nodes[node];
    std::array<PolarizationState, 2> in{};
    for (std::size_t p = 0; p < g.feeds[node].size(); ++p) {
      if (const auto& feed = g.feeds[node][p]) in[p] = outputs[feed->first][static_cast<std::size_t>(feed->second)];
      amps.set({e.id, PortSide::input, static_cast<int>(p)}, in[p]);
    }
    auto& out = outputs[node];
    std::visit(Overloaded{
                   [&](const Source& s) { out[0] = s.emitted(); },
                   [&](const BeamSplitter& bs) {
                     std::tie(out[0], out[1]) = beamsplitter_transfer(bs.transmission, bs.reflection, in[0], in[1]);
                   },
                   [&](const Waveplate& w) { out[0] = waveplate_unitary(w.spec) * in[0]; },
                   [&](const PhaseShifter& p) { out[0] = unit_phase(p.theta) * in[0]; },
                   [&](const Mirror& m) { out[0] = static_cast<double>(m.sign) * in[0]; },
                   [](const Detector&) {},
               },
               e.kind);
    for (int p = 0; p < output_arity(e.kind); ++p) {
      amps.set({e.id, PortSide::output, p}, out[static_cast<std::size_t>(p)]);
    }
  }
  return amps;
}

std::vector<DetectorReading> detector_readings(const PortAmplitudes& amps, const Netlist& net) {
  std::vector<DetectorReading> readings;
  for (const auto& e : net.elements()) {
    if (std::holds_alternative<Detector>(e.kind)) {
      readings.push_back({e.id, amps.input(e.id).intensity()});
    }
  }
  return readings;
}

EnergyAudit energy_audit(const PortAmplitudes& amps, const Netlist& net) {
  std::set<PortRef> connected_outputs;
  for (const auto& c : net.connections()) connected_outputs.insert(c.from);

  EnergyAudit audit;
  for (const auto& e : net.elements()) {
    if (const auto* s = std::get_if<Source>(&e.kind)) audit.input_total += s->emitted().intensity();
    if (std::holds_alternative<Detector>(e.kind)) audit.terminal_total += amps.input(e.id).intensity();
    for (int p = 0; p < output_arity(e.kind); ++p) {
      if (!connected_outputs.contains(PortRef{e.id, p})) audit.terminal_total += amps.output(e.id, p).intensity();
    }
  }
  return audit;
}

std::string to_string(const Diagnostic& d) {
  return d.element.empty() ? d.message : d.element + ": " + d.message;
}

}  // namespace polarized
