// Copyright 2026 The shatrsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string_view>
#include <vector>

#include "shatrsim/assembler.hpp"
#include "shatrsim/keccak.hpp"
#include "shatrsim/machine.hpp"
#include "shatrsim/shatr_unit.hpp"

namespace testing_support {

inline constexpr std::size_t kSmallMemory = std::size_t{1} << 20;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

inline shatrsim::keccak::KeccakState random_state(std::mt19937_64& g) {
  shatrsim::keccak::KeccakState s;
  for (auto& l : s.lanes) l = g();
  return s;
}

inline std::vector<std::uint8_t> random_bytes(std::mt19937_64& g, std::size_t n) {
  std::vector<std::uint8_t> v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(g());
  return v;
}

/// Assembles `source` and loads it into a fresh machine.
inline std::unique_ptr<shatrsim::emu::Machine> load(std::string_view source, bool with_shatr = false,
                                                     std::size_t memory = kSmallMemory) {
  auto m = std::make_unique<shatrsim::emu::Machine>(memory);
  if (with_shatr) shatrsim::shatr::attach(*m);
  m->load_program(shatrsim::asmr::assemble(source));
  return m;
}

/// Assembles, loads and runs `source` to completion.
inline std::unique_ptr<shatrsim::emu::Machine> run(std::string_view source, bool with_shatr = false,
                                                    std::uint64_t budget = 1'000'000) {
  auto m = load(source, with_shatr);
  m->run(budget);
  return m;
}

}  // namespace testing_support
