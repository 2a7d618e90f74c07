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

#include "polarized/dsl.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

namespace polarized {

namespace {

struct Token {
  std::string_view text;
  int column = 1;
};

struct Position {
  int line = 1;
  int column = 1;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

std::optional<int> parse_port(std::string_view text) {
  if (text.empty() || text.size() > 9) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value < 0) return std::nullopt;
  return value;
}

std::string quoted(std::string_view text) {
  std::string out = "'";
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x20 || u >= 0x7f) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\x%02x", u);
      out += buf;
    } else {
      out += c;
    }
  }
  return out + "'";
}

class Parser {
 public:
  ParseResult run(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line_ = line_no;
      auto tokens = tokenize(line);
      if (!tokens.empty()) statement(tokens);
      if (end == text.size()) break;
      pos = end + 1;
    }
    check_structure();

    std::stable_sort(diagnostics_.begin(), diagnostics_.end(), [](const auto& a, const auto& b) {
      return std::tie(a.line, a.column) < std::tie(b.line, b.column);
    });
    ParseResult result;
    result.diagnostics = std::move(diagnostics_);
    const bool failed = std::any_of(result.diagnostics.begin(), result.diagnostics.end(), [](const auto& d) {
      return d.severity == ParseDiagnostic::Severity::error;
    });
    if (!failed) result.netlist = std::move(net_);
    return result;
  }

 private:
  using Attributes = std::map<std::string_view, Token>;

  void error(int column, std::string message) {
    diagnostics_.push_back({line_, column, std::move(message), ParseDiagnostic::Severity::error});
  }

  void statement(const std::vector<Token>& tokens) {
    const std::string_view keyword = tokens[0].text;
    if (keyword == "version") return version(tokens);
    if (keyword == "connect") return connection(tokens);
    if (keyword == "beam" || keyword == "bs" || keyword == "wp" || keyword == "ps" || keyword == "mirror" ||
        keyword == "det") {
      return element(tokens);
    }
    error(tokens[0].column, "unknown keyword " + quoted(keyword));
  }

  void version(const std::vector<Token>& tokens) {
    if (tokens.size() != 2) return error(tokens[0].column, "expected 'version <number>'");
    if (tokens[1].text != std::to_string(kNetlistFormatVersion)) {
      error(tokens[1].column, "unsupported format version " + quoted(tokens[1].text));
    }
  }

  std::optional<Attributes> attributes(const std::vector<Token>& tokens, std::initializer_list<std::string_view> allowed) {
    Attributes attrs;
    bool ok = true;
    for (std::size_t i = 2; i < tokens.size(); ++i) {
      const auto& t = tokens[i];
      const auto eq = t.text.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        error(t.column, "expected key=value, got " + quoted(t.text));
        ok = false;
        continue;
      }
      const auto key = t.text.substr(0, eq);
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        error(t.column, "unknown attribute " + quoted(key) + " for '" + std::string(tokens[0].text) + "'");
        ok = false;
        continue;
      }
      if (attrs.contains(key)) {
        error(t.column, "duplicate attribute " + quoted(key));
        ok = false;
        continue;
      }
      attrs.emplace(key, Token{t.text.substr(eq + 1), t.column + static_cast<int>(eq) + 1});
    }
    if (!ok) return std::nullopt;
    return attrs;
  }

  std::optional<double> number(const Attributes& attrs, std::string_view key, const Token& keyword,
                               std::optional<double> fallback = std::nullopt) {
    auto it = attrs.find(key);
    if (it == attrs.end()) {
      if (fallback) return fallback;
      error(keyword.column, "missing attribute '" + std::string(key) + "'");
      return std::nullopt;
    }
    auto value = parse_number(it->second.text);
    if (!value) error(it->second.column, "bad number " + quoted(it->second.text) + " for '" + std::string(key) + "'");
    return value;
  }

  std::optional<PolarizationState> polarization(const Attributes& attrs, const Token& keyword) {
    auto it = attrs.find("pol");
    if (it == attrs.end()) {
      error(keyword.column, "missing attribute 'pol'");
      return std::nullopt;
    }
    const std::string_view text = it->second.text;
    if (text == "H") return PolarizationState{1.0, 0.0};
    if (text == "V") return PolarizationState{0.0, 1.0};
    if (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
      std::string_view inner = text.substr(1, text.size() - 2);
      std::vector<double> parts;
      while (true) {
        const auto comma = inner.find(',');
        auto value = parse_number(inner.substr(0, comma));
        if (!value) break;
        parts.push_back(*value);
        if (comma == std::string_view::npos) break;
        inner.remove_prefix(comma + 1);
      }
      if (parts.size() == 4 && std::count(text.begin(), text.end(), ',') == 3) {
        return PolarizationState{{parts[0], parts[1]}, {parts[2], parts[3]}};
      }
    }
    error(it->second.column, "bad polarization " + quoted(text) + ": expected H, V or (re,im,re,im)");
    return std::nullopt;
  }

  void element(const std::vector<Token>& tokens) {
    const Token& keyword = tokens[0];
    if (tokens.size() < 2) return error(keyword.column, "missing identifier after '" + std::string(keyword.text) + "'");
    const Token& id_token = tokens[1];
    const std::string id(id_token.text);
    bool id_ok = true;
    if (!is_valid_identifier(id)) {
      error(id_token.column, "bad identifier " + quoted(id) + ": must match [A-Za-z_][A-Za-z0-9_]*");
      id_ok = false;
    } else if (auto it = positions_.find(id); it != positions_.end()) {
      error(id_token.column,
            "duplicate identifier " + quoted(id) + " (first declared on line " + std::to_string(it->second.line) + ")");
      return;
    }

    std::optional<ElementKind> kind;
    const std::string_view k = keyword.text;
    if (k == "beam") {
      if (auto attrs = attributes(tokens, {"pol", "intensity"})) {
        auto pol = polarization(*attrs, keyword);
        auto level = number(*attrs, "intensity", keyword, 1.0);
        if (pol && level) kind = Source{*pol, *level};
      }
    } else if (k == "bs") {
      if (auto attrs = attributes(tokens, {"t", "r"})) {
        auto t = number(*attrs, "t", keyword);
        auto r = number(*attrs, "r", keyword);
        if (t && r) kind = BeamSplitter{*t, *r};
      }
    } else if (k == "wp") {
      if (auto attrs = attributes(tokens, {"eta", "phi"})) {
        auto eta = number(*attrs, "eta", keyword);
        auto phi = number(*attrs, "phi", keyword);
        if (eta && phi) kind = Waveplate{{*eta, *phi}};
      }
    } else if (k == "ps") {
      if (auto attrs = attributes(tokens, {"theta"})) {
        if (auto theta = number(*attrs, "theta", keyword)) kind = PhaseShifter{*theta};
      }
    } else if (k == "mirror") {
      if (auto attrs = attributes(tokens, {"sign"})) {
        int sign = 1;
        bool sign_ok = true;
        if (auto it = attrs->find("sign"); it != attrs->end()) {
          const auto text = it->second.text;
          if (text == "-1") {
            sign = -1;
          } else if (text != "+1" && text != "1") {
            error(it->second.column, "bad mirror sign " + quoted(text) + ": expected +1 or -1");
            sign_ok = false;
          }
        }
        if (sign_ok) kind = Mirror{sign};
      }
    } else {
      if (tokens.size() > 2) {
        error(tokens[2].column, "'det' takes no attributes");
      } else {
        kind = Detector{};
      }
    }

    if (!id_ok) return;
    if (!kind) {
      broken_.insert(id);
      return;
    }
    positions_.emplace(id, Position{line_, id_token.column});
    net_.add(id, std::move(*kind));
  }

  std::optional<PortRef> endpoint(const Token& t) {
    const auto dot = t.text.rfind('.');
    if (dot == std::string_view::npos) {
      error(t.column, "expected <id>.<port>, got " + quoted(t.text));
      return std::nullopt;
    }
    const auto id = t.text.substr(0, dot);
    if (!is_valid_identifier(id)) {
      error(t.column, "bad identifier " + quoted(id) + " in connection");
      return std::nullopt;
    }
    auto port = parse_port(t.text.substr(dot + 1));
    if (!port) {
      error(t.column + static_cast<int>(dot) + 1, "bad port number " + quoted(t.text.substr(dot + 1)));
      return std::nullopt;
    }
    return PortRef{std::string(id), *port};
  }

  void connection(const std::vector<Token>& tokens) {
    if (tokens.size() != 4 || tokens[2].text != "->") {
      return error(tokens[0].column, "expected 'connect <id>.<port> -> <id>.<port>'");
    }
    auto from = endpoint(tokens[1]);
    auto to = endpoint(tokens[3]);
    if (!from || !to) return;
    if (broken_.contains(from->element) || broken_.contains(to->element)) return;
    connection_positions_.push_back({Position{line_, tokens[1].column}, Position{line_, tokens[3].column}});
    net_.connect(std::move(*from), std::move(*to));
  }

  void check_structure() {
    for (const auto& d : validate(net_)) {
      Position at;
      if (d.connection) {
        const auto& [from, to] = connection_positions_[*d.connection];
        at = d.element == net_.connections()[*d.connection].from.element ? from : to;
      } else if (auto it = positions_.find(d.element); it != positions_.end()) {
        at = it->second;
      }
      diagnostics_.push_back({at.line, at.column, d.message, ParseDiagnostic::Severity::error});
    }
  }

  Netlist net_;
  int line_ = 0;
  std::map<std::string, Position, std::less<>> positions_;
  std::set<std::string, std::less<>> broken_;
  std::vector<std::pair<Position, Position>> connection_positions_;
  std::vector<ParseDiagnostic> diagnostics_;
};

}  // namespace

std::optional<double> parse_number(std::string_view token) {
  if (token.empty()) return std::nullopt;
  double scale = 1.0;
  if (token.size() >= 2 && token.substr(token.size() - 2) == "pi") {
    scale = kPi;
    token.remove_suffix(2);
    if (token.empty() || token == "+") return kPi;
    if (token == "-") return -kPi;
  }
  if (token.front() == '+') token.remove_prefix(1);
  if (token.empty() || !(std::isdigit(static_cast<unsigned char>(token.front())) || token.front() == '-' ||
                         token.front() == '.')) {
    return std::nullopt;
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  value *= scale;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  const double turns = value / kPi;
  // Dyadic multiples of pi that survive the round trip render as "<k>pi".
  if (std::isfinite(turns) && std::abs(turns) < 1e6 && turns * kPi == value &&
      std::nearbyint(turns * 1024) == turns * 1024) {
    std::snprintf(buf, sizeof buf, "%.17gpi", turns);
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

ParseResult parse_netlist(std::string_view text) { return Parser{}.run(text); }

std::string serialize_netlist(const Netlist& net) {
  if (auto diagnostics = validate(net); !diagnostics.empty()) throw StructuralError(std::move(diagnostics));

  std::vector<const Element*> elements;
  for (const auto& e : net.elements()) elements.push_back(&e);
  std::sort(elements.begin(), elements.end(), [](const Element* a, const Element* b) { return a->id < b->id; });
  std::vector<Connection> connections(net.connections().begin(), net.connections().end());
  std::sort(connections.begin(), connections.end());

  std::string out = "version " + std::to_string(kNetlistFormatVersion) + "\n";
  for (const Element* e : elements) {
    std::visit(
        [&](const auto& kind) {
          using T = std::decay_t<decltype(kind)>;
          if constexpr (std::is_same_v<T, Source>) {
            const auto& p = kind.polarization;
            std::string pol;
            if (p == PolarizationState{1.0, 0.0}) {
              pol = "H";
            } else if (p == PolarizationState{0.0, 1.0}) {
              pol = "V";
            } else {
              pol = "(" + format_number(p.x.real()) + "," + format_number(p.x.imag()) + "," +
                    format_number(p.y.real()) + "," + format_number(p.y.imag()) + ")";
            }
            out += "beam " + e->id + " pol=" + pol + " intensity=" + format_number(kind.intensity);
          } else if constexpr (std::is_same_v<T, BeamSplitter>) {
            out += "bs " + e->id + " t=" + format_number(kind.transmission) + " r=" + format_number(kind.reflection);
          } else if constexpr (std::is_same_v<T, Waveplate>) {
            out += "wp " + e->id + " eta=" + format_number(kind.spec.eta) + " phi=" + format_number(kind.spec.phi);
          } else if constexpr (std::is_same_v<T, PhaseShifter>) {
            out += "ps " + e->id + " theta=" + format_number(kind.theta);
          } else if constexpr (std::is_same_v<T, Mirror>) {
            out += "mirror " + e->id + (kind.sign == -1 ? " sign=-1" : "");
          } else {
            out += "det " + e->id;
          }
        },
        e->kind);
    out += '\n';
  }
  for (const auto& c : connections) {
    out += "connect " + c.from.element + "." + std::to_string(c.from.port) + " -> " + c.to.element + "." +
           std::to_string(c.to.port) + "\n";
  }
  return out;
}

std::string to_string(const ParseDiagnostic& d) {
  return std::to_string(d.line) + ":" + std::to_string(d.column) + ": " +
         (d.severity == ParseDiagnostic::Severity::error ? "error" : "warning") + ": " + d.message;
}

}  // namespace polarized
