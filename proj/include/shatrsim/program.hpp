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

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace shatrsim {

/// Code is always loaded here; data segments carry absolute addresses.
inline constexpr std::uint64_t kCodeBase = 0x1000;

struct DataSegment {
  std::uint64_t address = 0;
  std::vector<std::uint8_t> bytes;

  friend bool operator==(const DataSegment&, const DataSegment&) = default;
};

struct AssembledProgram {
  std::vector<std::uint8_t> code;  // little-endian 32-bit words
  std::vector<DataSegment> data;
  std::uint64_t entry_offset = 0;  // relative to kCodeBase
  std::map<std::string, std::uint64_t> symbols;

  std::size_t word_count() const noexcept { return code.size() / 4; }

  std::uint32_t word(std::size_t i) const noexcept {
    return static_cast<std::uint32_t>(code[4 * i]) | (static_cast<std::uint32_t>(code[4 * i + 1]) << 8) |
           (static_cast<std::uint32_t>(code[4 * i + 2]) << 16) |
           (static_cast<std::uint32_t>(code[4 * i + 3]) << 24);
  }

  std::vector<std::uint32_t> words() const {
    std::vector<std::uint32_t> out(word_count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = word(i);
    return out;
  }

  void push_word(std::uint32_t w) {
    for (unsigned k = 0; k < 4; ++k) code.push_back(static_cast<std::uint8_t>(w >> (8 * k)));
  }

  /// Highest address (exclusive) touched by code or data.
  std::uint64_t end_address() const noexcept {
    std::uint64_t end = kCodeBase + code.size();
    for (const auto& seg : data) end = std::max<std::uint64_t>(end, seg.address + seg.bytes.size());
    return end;
  }

  friend bool operator==(const AssembledProgram&, const AssembledProgram&) = default;
};

}  // namespace shatrsim
