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

// Keccak-f round execution unit.
//
// The unit owns 25 architecturally visible 64-bit lane registers (200 bytes).
// Software moves lanes in and out with ordinary Zicsr instructions; lane i
// (i = 5*y + x) is CSR 0x800 + i. A single instruction advances the lanes by
// one round:
//
//   shatr rs1      31      25 24  20 19  15 14  12 11   7 6       0
//                  [0000000][00000][ rs1 ][ 000 ][00000][0001011]
//
// rs1 holds the round index 0..23, which selects the iota constant. Any other
// value in funct7/rs2/funct3/rd under opcode 0x0B is an illegal instruction.

#include <array>
#include <cstdint>
#include <memory>
#include <string>

#include "shatrsim/isa.hpp"
#include "shatrsim/keccak.hpp"
#include "shatrsim/machine.hpp"

namespace shatrsim::shatr {

inline constexpr std::uint8_t kOpcode = isa::major::kCustom0;
inline constexpr std::uint16_t kLaneCsrBase = 0x800;
inline constexpr std::uint16_t kLaneCsrLast = kLaneCsrBase + keccak::kLaneCount - 1;
inline constexpr std::string_view kMnemonic = "shatr";

constexpr std::uint16_t lane_csr(std::size_t lane) noexcept {
  return static_cast<std::uint16_t>(kLaneCsrBase + lane);
}

constexpr bool is_lane_csr(std::uint16_t address) noexcept {
  return address >= kLaneCsrBase && address <= kLaneCsrLast;
}

inline std::uint32_t encode_shatr(std::uint8_t rs1) {
  if (rs1 > 31) throw isa::EncodeError("shatr: rs1 register out of range");
  return (static_cast<std::uint32_t>(rs1) << 15) | kOpcode;
}

inline isa::DecodedInstruction decode_shatr(std::uint32_t word, std::uint64_t pc = 0) {
  if ((word & 0x7F) != kOpcode) throw isa::DecodeError(word, pc, "not a custom-0 word");
  if ((word & ~(0x1Fu << 15)) != kOpcode)
    throw isa::DecodeError(word, pc, "shatr requires funct7, rs2, funct3 and rd to be zero");
  return isa::DecodedInstruction{isa::Opcode::Custom, isa::Category::Custom, kMnemonic,
                                 isa::Fields{.rs1 = isa::bits::rs1(word)}, word};
}

/// The unit's private state: lane i at index i.
using LaneRegisterFile = keccak::KeccakState;

/// One shatr step: the round index is read from x[rs1].
inline void execute_shatr(const emu::MachineState& state, LaneRegisterFile& file, std::uint8_t rs1) {
  const std::uint64_t round = state.x(rs1);
  if (round >= keccak::kRounds)
    throw emu::Fault(emu::FaultKind::IllegalOperand, state.pc, 0,
                     "shatr round index " + std::to_string(round) + " outside 0..23");
  file = keccak::keccak_round(file, static_cast<unsigned>(round));
}

class ShatrUnit final : public emu::Extension {
 public:
  emu::ExtensionClaim claim() const override {
    return {"shatr", kOpcode, emu::CsrRange{kLaneCsrBase, kLaneCsrLast}};
  }

  isa::DecodedInstruction decode(std::uint32_t word, std::uint64_t pc) const override {
    return decode_shatr(word, pc);
  }

  void execute(const isa::DecodedInstruction& insn, emu::MachineState& state) override {
    execute_shatr(state, lanes_, insn.fields.rs1);
  }

  std::uint64_t read_csr(std::uint16_t address) override {
    return lanes_.lanes[address - kLaneCsrBase];
  }

  void write_csr(std::uint16_t address, std::uint64_t value) override {
    lanes_.lanes[address - kLaneCsrBase] = value;
  }

  const LaneRegisterFile& lanes() const noexcept { return lanes_; }
  void load(const LaneRegisterFile& file) noexcept { lanes_ = file; }

 private:
  LaneRegisterFile lanes_{};
};

/// Registers a fresh unit (zeroed lanes) on the machine.
inline std::shared_ptr<ShatrUnit> attach(emu::Machine& machine) {
  auto unit = std::make_shared<ShatrUnit>();
  machine.register_extension(unit);
  return unit;
}

}  // namespace shatrsim::shatr
