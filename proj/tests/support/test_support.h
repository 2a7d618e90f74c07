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

#ifndef POLARIZED_TESTS_SUPPORT_H
#define POLARIZED_TESTS_SUPPORT_H

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <algorithm>
#include <random>
#include <string>

#include "polarized/jones.h"
#include "polarized/network.h"

namespace polarized::testkit {

/// Seed for randomized tests: POLARIZED_SEED when set, else a fixed value.
inline std::uint64_t test_seed() {
  if (const char* env = std::getenv("POLARIZED_SEED")) {
    char* end = nullptr;
    const auto value = std::strtoull(env, &end, 10);
    if (end != env) return value;
  }
  return 20260101;
}

inline std::mt19937_64 make_rng(std::uint64_t salt = 0) { return std::mt19937_64(test_seed() ^ (salt * 0x9E3779B97F4A7C15ULL)); }

/// Haar-random SU(2): a uniformly distributed unit quaternion.
inline JonesMatrix random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  double w, x, y, z, norm;
  do {
    w = gauss(rng), x = gauss(rng), y = gauss(rng), z = gauss(rng);
    norm = std::sqrt(w * w + x * x + y * y + z * z);
  } while (norm < 1e-6);
  w /= norm, x /= norm, y /= norm, z /= norm;
  return {Complex{w, z}, Complex{y, x}, Complex{-y, x}, Complex{w, -z}};
}

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

/// Random valid netlist of at most `max_elements` elements: sources first,
/// then splitters, plates, shifters, mirrors and detectors whose inputs are
/// wired to free outputs of earlier elements, which keeps the graph acyclic.
inline Netlist random_netlist(std::mt19937_64& rng, std::size_t max_elements = 50) {
  std::uniform_int_distribution<std::size_t> total_dist(2, max_elements);
  const std::size_t total = total_dist(rng);
  std::uniform_int_distribution<std::size_t> source_dist(1, std::max<std::size_t>(1, total / 4));
  const std::size_t sources = source_dist(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);

  Netlist net;
  std::vector<PortRef> free_outputs;
  for (std::size_t i = 0; i < sources; ++i) {
    PolarizationState pol{random_complex(rng), random_complex(rng)};
    if (pol.intensity() < 1e-3) pol = {1.0, 0.0};
    const std::string id = "S" + std::to_string(i);
    net.add(id, Source{pol, 0.1 + 1.9 * unit(rng)});
    free_outputs.push_back({id, 0});
  }

  auto take_free = [&]() -> std::optional<PortRef> {
    if (free_outputs.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, free_outputs.size() - 1);
    const auto k = pick(rng);
    PortRef port = free_outputs[k];
    free_outputs.erase(free_outputs.begin() + static_cast<std::ptrdiff_t>(k));
    return port;
  };

  std::uniform_int_distribution<int> kind_dist(0, 4);
  for (std::size_t i = sources; i < total; ++i) {
    const int kind = kind_dist(rng);
    const std::string id = "E" + std::to_string(i);
    ElementKind element;
    switch (kind) {
      case 0: {
        const double t = unit(rng);
        element = BeamSplitter{t, 1.0 - t};
        break;
      }
      case 1:
        element = Waveplate{{angle(rng), angle(rng)}};
        break;
      case 2:
        element = PhaseShifter{angle(rng)};
        break;
      case 3:
        element = Mirror{unit(rng) < 0.5 ? 1 : -1};
        break;
      default:
        if (free_outputs.empty()) {
          element = Mirror{1};
        } else {
          element = Detector{};
        }
        break;
    }
    net.add(id, element);
    for (int p = 0; p < input_arity(element); ++p) {
      const bool must = std::holds_alternative<Detector>(element);
      if (must || unit(rng) < 0.8) {
        if (auto from = take_free()) net.connect(*from, {id, p});
      }
    }
    for (int p = 0; p < output_arity(element); ++p) free_outputs.push_back({id, p});
  }
  return net;
}

}  // namespace polarized::testkit

#endif  // POLARIZED_TESTS_SUPPORT_H
