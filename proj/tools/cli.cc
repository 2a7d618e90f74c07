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

#include "cli.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "polarized/bv.h"
#include "polarized/dsl.h"
#include "polarized/jones.h"
#include "polarized/network.h"
#include "polarized/qref.h"
#include "report.h"

namespace polarized::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kMaxCheckQubits = 10;

std::string fixed(double value) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << value;
  return s.str();
}

double canonical_angle(double radians) {
  double a = std::fmod(radians, 2 * kPi);
  if (a < 0) a += 2 * kPi;
  if (a >= 2 * kPi) a = 0.0;
  return a + 0.0;
}

/// Within tolerance of 0 or of the full per-beam input intensity.
bool dichotomous(double intensity, double input) {
  return std::abs(intensity) <= kExactTolerance || std::abs(intensity - input) <= kExactTolerance;
}

class ParseFailure : public std::runtime_error {
 public:
  ParseFailure(std::string file, std::vector<ParseDiagnostic> diagnostics)
      : std::runtime_error("parse failure"), file_(std::move(file)), diagnostics_(std::move(diagnostics)) {}
  const std::string& file() const { return file_; }
  const std::vector<ParseDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::string file_;
  std::vector<ParseDiagnostic> diagnostics_;
};

RunReport bv_find(const std::string& bits, const std::string& emit_path) {
  const HiddenString a = HiddenString::parse(bits);
  HiddenStringOracle oracle(a);
  const BvCircuit circuit = build_bv_circuit(oracle.optical_stage(), InputString::all_ones(a.size()));
  const PortAmplitudes amps = propagate(circuit.net);
  const auto readings = detector_readings(amps, circuit.net);
  const HiddenString recovered(read_bits(circuit));
  const EnergyAudit audit = energy_audit(amps, circuit.net);

  if (!emit_path.empty()) {
    std::ofstream file(emit_path, std::ios::binary);
    file << serialize_netlist(circuit.net);
    if (!file) throw InvalidArgument("cannot write circuit to '" + emit_path + "'");
  }

  RunReport report;
  report.command = "bv find";
  report.parameters = {{"a", bits}};
  report.detectors = readings;
  report.bits = recovered.to_string();
  report.result["recovered"] = recovered.to_string();
  report.result["optical_queries"] = oracle.optical_queries();
  report.result["element_count"] = circuit.net.size();
  report.result["input_intensity"] = audit.input_total;
  report.result["terminal_intensity"] = audit.terminal_total;

  bool two_valued = true;
  for (const auto& r : readings) two_valued = two_valued && dichotomous(r.intensity, 1.0);
  report.checks.push_back({"recovered_matches_hidden", recovered == a, ""});
  report.checks.push_back({"single_oracle_query", oracle.optical_queries() == 1, ""});
  report.checks.push_back({"detector_dichotomy", two_valued, "each detector reads 0 or the full beam intensity"});
  report.checks.push_back({"energy_conserved", audit.imbalance() <= kExactTolerance, fixed(audit.imbalance())});
  return report;
}

RunReport bv_eval(const std::string& a_bits, const std::string& x_bits) {
  const HiddenString a = HiddenString::parse(a_bits);
  const InputString x = InputString::parse(x_bits);
  if (a.size() != x.size()) throw InvalidArgument("--a and --x must have the same length");
  HiddenStringOracle oracle(a);
  const BvCircuit circuit = build_bv_circuit(oracle.optical_stage(), x);
  const PortAmplitudes amps = propagate(circuit.net);
  const auto bits = read_bits(circuit);
  const Bit optical = xor_fold(bits);
  const Bit reference = f_reference(a, x);

  RunReport report;
  report.command = "bv eval";
  report.parameters = {{"a", a_bits}, {"x", x_bits}};
  report.detectors = detector_readings(amps, circuit.net);
  std::string bit_text;
  for (Bit b : bits) bit_text.push_back(static_cast<char>('0' + b));
  report.bits = bit_text;
  report.result["f_optical"] = optical;
  report.result["f_reference"] = reference;
  report.checks.push_back({"optical_matches_reference", optical == reference, ""});
  return report;
}

RunReport run_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  ParseResult parsed = parse_netlist(buffer.str());
  if (!parsed.ok()) throw ParseFailure(path, std::move(parsed.diagnostics));

  const Netlist& net = *parsed.netlist;
  const PortAmplitudes amps = propagate(net);
  const EnergyAudit audit = energy_audit(amps, net);

  RunReport report;
  report.command = "run";
  report.parameters = {{"file", path}};
  report.detectors = detector_readings(amps, net);
  report.result["element_count"] = net.size();
  report.result["connection_count"] = net.connections().size();
  report.result["input_intensity"] = audit.input_total;
  report.result["terminal_intensity"] = audit.terminal_total;
  report.checks.push_back({"energy_conserved", audit.imbalance() <= kExactTolerance, fixed(audit.imbalance())});
  return report;
}

RunReport qref_bv(const std::string& bits, bool phase_form) {
  const HiddenString a = HiddenString::parse(bits);
  const QuantumOutcome outcome = phase_form ? quantum_bv_phase_form(a) : quantum_bv(a);

  RunReport report;
  report.command = "qref bv";
  report.parameters = {{"a", bits}, {"pipeline", phase_form ? "phase" : "standard"}};
  report.bits = outcome.outcome.to_string();
  report.result["outcome"] = outcome.outcome.to_string();
  report.result["probability"] = outcome.probability;
  report.result["qubits"] = outcome.final_state.qubits();
  report.checks.push_back({"outcome_equals_hidden", outcome.outcome.to_string() == bits, ""});
  report.checks.push_back({"probability_one", std::abs(outcome.probability - 1.0) <= kExactTolerance,
                           fixed(std::abs(outcome.probability - 1.0))});
  return report;
}

RunReport qref_check(std::size_t n, const std::string& only) {
  if (n == 0 || n > kMaxCheckQubits) {
    throw InvalidArgument("--n must be between 1 and " + std::to_string(kMaxCheckQubits));
  }
  std::vector<HiddenString> hidden;
  if (!only.empty()) {
    hidden.push_back(HiddenString::parse(only));
    if (hidden.back().size() != n) throw InvalidArgument("--a must have --n bits");
  } else {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) hidden.push_back(HiddenString::from_index(v, n));
  }

  double oracle_dev = 0.0, kickback_dev = 0.0, min_purity = 1.0, bv_dev = 0.0;
  bool outcomes_ok = true;
  json failures = json::array();
  for (const auto& a : hidden) {
    double a_oracle = 0.0, a_kick = 0.0, a_purity = 1.0, a_bv = 0.0;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
      const StateVector basis = StateVector::basis(n, b);
      a_oracle = std::max(a_oracle, max_amplitude_distance(apply_phase_oracle(a, basis), apply_factored_oracle(a, basis)));
      a_kick = std::max(a_kick, phase_kickback_deviation(a, InputString::from_index(b, n)));
    }
    const QuantumOutcome phase = quantum_bv_phase_form(a);
    for (const auto& stage : phase.stages) {
      for (double p : purity_per_qubit(stage)) a_purity = std::min(a_purity, p);
    }
    const QuantumOutcome standard = quantum_bv(a);
    a_bv = std::max(std::abs(phase.probability - 1.0), std::abs(standard.probability - 1.0));
    const bool outcome_ok = phase.outcome.to_string() == a.to_string() && standard.outcome.to_string() == a.to_string();

    if (a_oracle > kExactTolerance || a_kick > kExactTolerance || 1.0 - a_purity > kExactTolerance ||
        a_bv > kExactTolerance || !outcome_ok) {
      failures.push_back(a.to_string());
    }
    oracle_dev = std::max(oracle_dev, a_oracle);
    kickback_dev = std::max(kickback_dev, a_kick);
    min_purity = std::min(min_purity, a_purity);
    bv_dev = std::max(bv_dev, a_bv);
    outcomes_ok = outcomes_ok && outcome_ok;
  }

  RunReport report;
  report.command = "qref check";
  report.parameters = {{"n", std::to_string(n)}, {"a", only.empty() ? "all" : only}};
  report.result["hidden_strings_checked"] = hidden.size();
  report.result["max_oracle_deviation"] = oracle_dev;
  report.result["max_kickback_deviation"] = kickback_dev;
  report.result["min_purity"] = min_purity;
  report.result["max_probability_deviation"] = bv_dev;
  report.result["failures"] = std::move(failures);
  report.checks.push_back({"oracle_equivalence", oracle_dev <= kExactTolerance, fixed(oracle_dev)});
  report.checks.push_back({"phase_kickback", kickback_dev <= kExactTolerance, fixed(kickback_dev)});
  report.checks.push_back({"separability", 1.0 - min_purity <= kExactTolerance, fixed(1.0 - min_purity)});
  report.checks.push_back({"bv_determinism", outcomes_ok && bv_dev <= kExactTolerance, fixed(bv_dev)});
  return report;
}

RunReport baseline(const std::string& bits) {
  const HiddenString a = HiddenString::parse(bits);
  HiddenStringOracle classical(a);
  const BaselineResult result =
      classical_baseline([&](const InputString& x) { return classical.query(x); }, a.size());
  HiddenStringOracle optical(a);
  const HiddenString recovered = find_hidden_string(optical);

  RunReport report;
  report.command = "baseline";
  report.parameters = {{"a", bits}};
  report.bits = result.recovered.to_string();
  report.result["recovered"] = result.recovered.to_string();
  report.result["queries"] = result.queries;
  report.result["optical_recovered"] = recovered.to_string();
  report.result["optical_queries"] = optical.optical_queries();
  report.checks.push_back({"query_count_is_n", result.queries == a.size() && classical.classical_queries() == a.size(),
                           std::to_string(result.queries)});
  report.checks.push_back({"agrees_with_optical", result.recovered == recovered, ""});
  return report;
}

RunReport synth(const std::vector<double>& values) {
  if (values.size() != 8) throw InvalidArgument("--matrix needs 8 reals: re00 im00 re01 im01 re10 im10 re11 im11");
  const JonesMatrix target({values[0], values[1]}, {values[2], values[3]}, {values[4], values[5]},
                           {values[6], values[7]});
  const QhqAngles angles = qhq_synthesize(target);
  const double residual = phase_aligned_distance(qhq_compose(angles), target);

  RunReport report;
  report.command = "synth";
  std::string matrix;
  for (double v : values) matrix += (matrix.empty() ? "" : " ") + format_number(v);
  report.parameters = {{"matrix", matrix}};
  report.result["first_quarter"] = canonical_angle(angles.first_quarter);
  report.result["half"] = canonical_angle(angles.half);
  report.result["second_quarter"] = canonical_angle(angles.second_quarter);
  report.result["residual"] = residual;
  report.checks.push_back({"residual_within_tolerance", residual <= kSynthesisTolerance, fixed(residual)});
  return report;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polarization-optics Bernstein-Vazirani laboratory", "polarized"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "Add wall_time_ms to the report");

  std::string a_bits, x_bits, emit_path, file_path;
  bool phase_form = false;
  std::size_t n = 0;
  std::vector<double> matrix;

  auto* bv = app.add_subcommand("bv", "Optical Bernstein-Vazirani circuits");
  bv->require_subcommand(1);
  auto* bv_find_cmd = bv->add_subcommand("find", "Recover the hidden string with one optical query");
  bv_find_cmd->add_option("--a", a_bits, "Hidden string, e.g. 10110")->required();
  bv_find_cmd->add_option("--emit-circuit", emit_path, "Write the generated circuit as .onl");
  auto* bv_eval_cmd = bv->add_subcommand("eval", "Compute f(x) optically");
  bv_eval_cmd->add_option("--a", a_bits, "Hidden string")->required();
  bv_eval_cmd->add_option("--x", x_bits, "Input string")->required();

  auto* run_cmd = app.add_subcommand("run", "Propagate an .onl netlist");
  run_cmd->add_option("file", file_path, "Netlist file")->required();

  auto* qref = app.add_subcommand("qref", "Quantum state-vector reference");
  qref->require_subcommand(1);
  auto* qref_bv_cmd = qref->add_subcommand("bv", "Hadamard-based Bernstein-Vazirani");
  qref_bv_cmd->add_option("--a", a_bits, "Hidden string")->required();
  qref_bv_cmd->add_flag("--phase-form", phase_form, "Use the n-qubit phase oracle without a target qubit");
  auto* qref_check_cmd = qref->add_subcommand("check", "Oracle equivalence, kickback and separability suite");
  qref_check_cmd->add_option("--n", n, "Number of data qubits")->required();
  qref_check_cmd->add_option("--a", a_bits, "Single hidden string (default: all 2^n)");

  auto* baseline_cmd = app.add_subcommand("baseline", "Classical n-query recovery");
  baseline_cmd->add_option("--a", a_bits, "Hidden string")->required();

  auto* synth_cmd = app.add_subcommand("synth", "Quarter-half-quarter plate angles for an SU(2) matrix");
  synth_cmd->add_option("--matrix", matrix, "re00 im00 re01 im01 re10 im10 re11 im11")->expected(8)->required();

  std::vector<const char*> argv{"polarized"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidArguments;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    RunReport report;
    if (bv_find_cmd->parsed()) {
      report = bv_find(a_bits, emit_path);
    } else if (bv_eval_cmd->parsed()) {
      report = bv_eval(a_bits, x_bits);
    } else if (run_cmd->parsed()) {
      report = run_file(file_path);
    } else if (qref_bv_cmd->parsed()) {
      report = qref_bv(a_bits, phase_form);
    } else if (qref_check_cmd->parsed()) {
      report = qref_check(n, a_bits);
    } else if (baseline_cmd->parsed()) {
      report = baseline(a_bits);
    } else {
      report = synth(matrix);
    }
    if (timing) {
      report.wall_time_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    out << report.render();
    if (!report.all_passed()) {
      for (const auto& c : report.checks) {
        if (!c.passed) err << "check failed: " << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
      }
      return kCheckFailed;
    }
    return kSuccess;
  } catch (const ParseFailure& e) {
    for (const auto& d : e.diagnostics()) err << e.file() << ":" << to_string(d) << "\n";
    return kParseError;
  } catch (const StructuralError& e) {
    err << e.what() << "\n";
    return kParseError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidArguments;
  }
}

}  // namespace polarized::cli
