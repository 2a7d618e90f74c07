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

#ifndef POLARIZED_DSL_H
#define POLARIZED_DSL_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polarized/network.h"

// Line-oriented optical netlist format (.onl):
//
//   version 1
//   beam S1 pol=H intensity=1          # pol: H | V | (re,im,re,im)
//   bs BS1 t=0.5 r=0.5
//   wp W1 eta=1pi phi=0.25pi
//   ps P1 theta=0.5pi
//   mirror M1 sign=-1                  # sign optional, default +1
//   det D1
//   connect S1.0 -> BS1.0              # 0-based output -> input port
//
// `#` starts a comment. Numbers are decimals, optionally scaled by pi
// ("0.5pi", "-pi"). H is x-polarized (logical 1), V is y-polarized.

namespace polarized {

inline constexpr int kNetlistFormatVersion = 1;

struct ParseDiagnostic {
  enum class Severity { error, warning };
  int line = 1;
  int column = 1;
  std::string message;
  Severity severity = Severity::error;

  friend bool operator==(const ParseDiagnostic&, const ParseDiagnostic&) = default;
};

struct ParseResult {
  /// Set only when there are no error diagnostics; always validates.
  std::optional<Netlist> netlist;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return netlist.has_value(); }
};

/// Parses the whole document and reports every problem found, recovering at
/// the next line after each error. Never throws on malformed input.
ParseResult parse_netlist(std::string_view text);

/// Canonical text: elements by identifier, connections in lexical order,
/// 17 significant digits, exact pi multiples as "<k>pi". LF line endings.
/// Throws StructuralError when the netlist does not validate.
std::string serialize_netlist(const Netlist& net);

/// Canonical rendering of one number.
std::string format_number(double value);

/// Parses "<decimal>", "<decimal>pi" or "[+-]pi". Returns nullopt on
/// anything else, including non-finite values.
std::optional<double> parse_number(std::string_view token);

std::string to_string(const ParseDiagnostic& d);

}  // namespace polarized

#endif  // POLARIZED_DSL_H
