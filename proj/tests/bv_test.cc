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

#include <algorithm>
#include <numeric>

#include "gtest/gtest.h"
#include "test_support.h"

using namespace polarized;

namespace {

// Brute-force a.x mod 2 over the string characters.
Bit dot_mod2(const std::string& a, const std::string& x) {
  int ones = 0;
  for (std::size_t j = 0; j < a.size(); ++j) ones += (a[j] == '1' && x[j] == '1');
  return static_cast<Bit>(ones % 2);
}

// |1/2((-1)^{x_j a_j} - 1)|^2 for unit input.
double expected_intensity(Bit a, Bit x) { return (a & x) ? 1.0 : 0.0; }

template <class T>
std::size_t count_kind(const Netlist& net) {
  return static_cast<std::size_t>(std::count_if(net.elements().begin(), net.elements().end(),
                                                [](const Element& e) { return std::holds_alternative<T>(e.kind); }));
}

}  // namespace

TEST(BitString, parse_and_index_round_trip) {
  const auto a = HiddenString::parse("10110");
  EXPECT_EQ(a.size(), 5u);
  EXPECT_EQ(a.to_index(), 0b10110u);
  EXPECT_EQ(HiddenString::from_index(0b10110, 5), a);
  EXPECT_EQ(a.to_string(), "10110");
  EXPECT_THROW(HiddenString::parse(""), InvalidArgument);
  EXPECT_THROW(HiddenString::parse("10a"), InvalidArgument);
  EXPECT_THROW(HiddenString(std::vector<Bit>{0, 2}), InvalidArgument);
}

TEST(FReference, examples) {
  EXPECT_EQ(f_reference(HiddenString::parse("110"), InputString::parse("101")), 1);
  EXPECT_EQ(f_reference(HiddenString::parse("111"), InputString::parse("111")), 1);
  for (const char* x : {"000", "101", "111"}) EXPECT_EQ(f_reference(HiddenString::parse("000"), InputString::parse(x)), 0);
  EXPECT_THROW(f_reference(HiddenString::parse("11"), InputString::parse("111")), InvalidArgument);
}

TEST(XorFold, examples) {
  EXPECT_EQ(xor_fold(std::vector<Bit>{1, 1, 0}), 0);
  EXPECT_EQ(xor_fold(std::vector<Bit>{1}), 1);
  EXPECT_EQ(xor_fold(std::vector<Bit>{1, 0, 1, 1, 1}), 0);
  EXPECT_THROW(xor_fold(std::vector<Bit>{}), InvalidArgument);
}

TEST(XorFold, independent_of_pairing_order) {
  auto rng = testkit::make_rng(20);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<std::size_t> len(1, 40);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Bit> bits(len(rng));
    for (auto& b : bits) b = static_cast<Bit>(bit(rng));
    // Random pairing tree: repeatedly merge two random survivors.
    std::vector<Bit> pool = bits;
    while (pool.size() > 1) {
      std::shuffle(pool.begin(), pool.end(), rng);
      const Bit merged = pool[pool.size() - 1] ^ pool[pool.size() - 2];
      pool.resize(pool.size() - 2);
      pool.push_back(merged);
    }
    EXPECT_EQ(xor_fold(bits), pool.front());
  }
}

TEST(BuildCircuit, has_one_source_two_splitters_and_one_detector_per_beam) {
  for (const char* a : {"1", "0", "101", "1111111111", "0000000000"}) {
    const auto hidden = HiddenString::parse(a);
    const auto c = build_bv_circuit(hidden, InputString::all_ones(hidden.size()));
    EXPECT_EQ(c.n, hidden.size());
    EXPECT_EQ(count_kind<Source>(c.net), hidden.size());
    EXPECT_EQ(count_kind<BeamSplitter>(c.net), 2 * hidden.size());
    EXPECT_EQ(count_kind<Detector>(c.net), hidden.size());
    EXPECT_TRUE(validate(c.net).empty());
    EXPECT_EQ(c.oracle_stages_per_beam, std::vector<std::size_t>(hidden.size(), 1));
    for (const auto& b : c.net.elements()) {
      if (const auto* bs = std::get_if<BeamSplitter>(&b.kind)) {
        EXPECT_EQ(bs->transmission, 0.5);
        EXPECT_EQ(bs->reflection, 0.5);
      }
    }
  }
}

TEST(BuildCircuit, element_count_grows_linearly) {
  for (std::size_t n = 1; n <= 64; n *= 2) {
    const auto ones = build_bv_circuit(HiddenString::all_ones(n), InputString::all_ones(n));
    const auto zeros = build_bv_circuit(HiddenString(std::vector<Bit>(n, 0)), InputString::all_ones(n));
    EXPECT_EQ(ones.net.size(), 9 * n);
    EXPECT_EQ(zeros.net.size(), 7 * n);
  }
}

TEST(BuildCircuit, oracle_elements_sit_on_the_transmitted_arm) {
  const auto c = build_bv_circuit(HiddenString::parse("10"), InputString::parse("11"));
  ASSERT_EQ(c.oracle_elements.size(), 2u);
  EXPECT_EQ(c.oracle_elements[0], (std::vector<std::string>{"U1_hwp", "U1_ps"}));
  EXPECT_TRUE(c.oracle_elements[1].empty());
  const auto* hwp = std::get_if<Waveplate>(&c.net.find("U1_hwp")->kind);
  ASSERT_NE(hwp, nullptr);
  EXPECT_EQ(hwp->spec, WaveplateSpec::half_wave(0.0));
}

TEST(BuildCircuit, rejects_length_mismatch) {
  EXPECT_THROW(build_bv_circuit(HiddenString::parse("10"), InputString::parse("1")), InvalidArgument);
}

TEST(DetectorIntensities, follow_interference_formula_per_arm) {
  const auto check = [](const char* a, const char* x) {
    const auto hidden = HiddenString::parse(a);
    const auto input = InputString::parse(x);
    const auto got = detector_intensities(build_bv_circuit(hidden, input));
    ASSERT_EQ(got.size(), hidden.size());
    for (std::size_t j = 0; j < got.size(); ++j) {
      EXPECT_NEAR(got[j], expected_intensity(hidden[j], input[j]), kExactTolerance) << a << " " << x << " " << j;
    }
  };
  check("1", "1");
  check("0", "1");
  check("1010", "1111");
  check("1101", "0110");
}

TEST(DetectorIntensities, each_detector_depends_only_on_its_own_arm) {
  auto rng = testkit::make_rng(21);
  std::uniform_int_distribution<std::uint64_t> word(0, (1u << 8) - 1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = HiddenString::from_index(word(rng), 8);
    const auto x = InputString::from_index(word(rng), 8);
    const auto base = detector_intensities(build_bv_circuit(a, x));
    for (std::size_t j = 0; j < 8; ++j) {
      // Flip every other bit, keep (a_j, x_j).
      std::vector<Bit> a2(a.bits().begin(), a.bits().end()), x2(x.bits().begin(), x.bits().end());
      for (std::size_t k = 0; k < 8; ++k) {
        if (k != j) a2[k] ^= 1, x2[k] ^= 1;
      }
      const auto other = detector_intensities(build_bv_circuit(HiddenString(a2), InputString(x2)));
      EXPECT_EQ(other[j], base[j]);
    }
  }
}

TEST(ReadBits, examples) {
  auto bits = [](const char* a, const char* x) {
    const auto v = read_bits(build_bv_circuit(HiddenString::parse(a), InputString::parse(x)));
    std::string s;
    for (Bit b : v) s.push_back(static_cast<char>('0' + b));
    return s;
  };
  EXPECT_EQ(bits("101", "111"), "101");
  EXPECT_EQ(bits("101", "010"), "000");
  EXPECT_EQ(bits("1", "1"), "1");
}

TEST(FindHiddenString, uses_a_single_optical_query) {
  HiddenStringOracle oracle(HiddenString::parse("10110"));
  EXPECT_EQ(find_hidden_string(oracle), HiddenString::parse("10110"));
  EXPECT_EQ(oracle.optical_queries(), 1u);
  EXPECT_EQ(oracle.classical_queries(), 0u);
}

TEST(FindHiddenString, extremes) {
  EXPECT_EQ(find_hidden_string(HiddenString::parse("00000")), HiddenString::parse("00000"));
  EXPECT_EQ(find_hidden_string(HiddenString::parse("11111")), HiddenString::parse("11111"));
}

TEST(FindHiddenString, exhaustive_up_to_eight_bits) {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      const auto a = HiddenString::from_index(v, n);
      ASSERT_EQ(find_hidden_string(a), a);
    }
  }
}

TEST(EvalFOptical, examples) {
  EXPECT_EQ(eval_f_optical(HiddenString::parse("110"), InputString::parse("101")), 1);
  EXPECT_EQ(eval_f_optical(HiddenString::parse("111"), InputString::parse("111")), 1);
  EXPECT_THROW(eval_f_optical(HiddenString::parse("11"), InputString::parse("1")), InvalidArgument);
}

TEST(EvalFOptical, exhaustive_against_brute_force_up_to_five_bits) {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::uint64_t av = 0; av < (std::uint64_t{1} << n); ++av) {
      for (std::uint64_t xv = 0; xv < (std::uint64_t{1} << n); ++xv) {
        const auto a = HiddenString::from_index(av, n);
        const auto x = InputString::from_index(xv, n);
        ASSERT_EQ(eval_f_optical(a, x), dot_mod2(a.to_string(), x.to_string()));
      }
    }
  }
}

TEST(ClassicalBaseline, queries_unit_vectors) {
  HiddenStringOracle oracle(HiddenString::parse("011"));
  std::vector<std::string> asked;
  const auto result = classical_baseline(
      [&](const InputString& x) {
        asked.push_back(x.to_string());
        return oracle.query(x);
      },
      3);
  EXPECT_EQ(asked, (std::vector<std::string>{"100", "010", "001"}));
  EXPECT_EQ(result.recovered, HiddenString::parse("011"));
  EXPECT_EQ(result.queries, 3u);
  EXPECT_EQ(oracle.classical_queries(), 3u);
}

TEST(ClassicalBaseline, agrees_with_optical_recovery) {
  for (std::size_t n = 1; n <= 7; ++n) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      const auto a = HiddenString::from_index(v, n);
      HiddenStringOracle oracle(a);
      const auto result = classical_baseline([&](const InputString& x) { return oracle.query(x); }, n);
      ASSERT_EQ(result.recovered, find_hidden_string(a));
      ASSERT_EQ(result.queries, n);
    }
  }
}
