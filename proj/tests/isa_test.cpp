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

#include <gtest/gtest.h>

#include "oracle/rv_encode.hpp"
#include "shatrsim/isa.hpp"
#include "support.hpp"

using namespace shatrsim;
using isa::Category;
using isa::Fields;
using isa::Opcode;

TEST(IsaEncode, KnownWords) {
  EXPECT_EQ(isa::encode(Opcode::Addi, {.rd = 1, .rs1 = 0, .imm = 5}), 0x00500093u);
  EXPECT_EQ(isa::encode(Opcode::Lui, {.rd = 5, .imm = 0x12345}), 0x123452B7u);
  EXPECT_EQ(isa::encode(Opcode::Jal, {.rd = 0, .imm = 0}), 0x0000006Fu);
  EXPECT_EQ(isa::encode(Opcode::Sd, {.rs1 = 2, .rs2 = 5, .imm = 8}), 0x00513423u);
  EXPECT_EQ(isa::encode(Opcode::Ld, {.rd = 10, .rs1 = 11, .imm = 0}), 0x0005B503u);
  EXPECT_EQ(isa::encode(Opcode::Beq, {.rs1 = 0, .rs2 = 0, .imm = -4}), 0xFE000EE3u);
  EXPECT_EQ(isa::encode(Opcode::Csrrw, {.rd = 0, .rs1 = 5, .csr = 0x800}), 0x80029073u);
  EXPECT_EQ(isa::encode(Opcode::Ecall, {}), 0x00000073u);
  EXPECT_EQ(isa::encode(Opcode::Srai, {.rd = 3, .rs1 = 4, .imm = 63}), 0x43F25193u);
  EXPECT_EQ(isa::encode(Opcode::Sub, {.rd = 1, .rs1 = 2, .rs2 = 3}), 0x403100B3u);
}

TEST(IsaEncode, RangeChecks) {
  EXPECT_THROW(isa::encode(Opcode::Addi, {.rd = 1, .imm = 2048}), isa::EncodeError);
  EXPECT_THROW(isa::encode(Opcode::Addi, {.rd = 1, .imm = -2049}), isa::EncodeError);
  EXPECT_THROW(isa::encode(Opcode::Slli, {.rd = 1, .imm = 64}), isa::EncodeError);
  EXPECT_THROW(isa::encode(Opcode::Slliw, {.rd = 1, .imm = 32}), isa::EncodeError);
  EXPECT_THROW(isa::encode(Opcode::Beq, {.imm = 3}), isa::EncodeError);
  EXPECT_THROW(isa::encode(Opcode::Beq, {.imm = 4096}), isa::EncodeError);
  EXPECT_THROW(isa::encode(Opcode::Jal, {.imm = 1 << 20}), isa::EncodeError);
  EXPECT_THROW(isa::encode(Opcode::Lui, {.imm = 0x100000}), isa::EncodeError);
  EXPECT_THROW(isa::encode(Opcode::Csrrwi, {.imm = 32, .csr = 0x340}), isa::EncodeError);
  EXPECT_THROW(isa::encode(Opcode::Csrrw, {.csr = 0x1000}), isa::EncodeError);
  EXPECT_THROW(isa::encode(Opcode::Add, {.rd = 32}), isa::EncodeError);
  EXPECT_NO_THROW(isa::encode(Opcode::Beq, {.imm = 4094}));
  EXPECT_NO_THROW(isa::encode(Opcode::Beq, {.imm = -4096}));
}

TEST(IsaDecode, AgreesWithIndependentEncoderOnRandomInstructions) {
  auto g = testing_support::rng(101);
  for (int i = 0; i < 20000; ++i) {
    const auto s = oracle::rv::random_instruction(g);
    const auto d = isa::decode(s.word);
    ASSERT_EQ(d.mnemonic, s.op->name) << std::hex << s.word;
    ASSERT_EQ(d.raw, s.word);
    const auto& f = d.fields;
    switch (s.op->kind) {
      case oracle::rv::Kind::R:
        ASSERT_EQ(f.rd, s.rd);
        ASSERT_EQ(f.rs1, s.rs1);
        ASSERT_EQ(f.rs2, s.rs2);
        break;
      case oracle::rv::Kind::S:
      case oracle::rv::Kind::B:
        ASSERT_EQ(f.rs1, s.rs1);
        ASSERT_EQ(f.rs2, s.rs2);
        ASSERT_EQ(f.imm, s.imm);
        break;
      case oracle::rv::Kind::Csr:
        ASSERT_EQ(f.rd, s.rd);
        ASSERT_EQ(f.rs1, s.rs1);
        ASSERT_EQ(f.csr, s.csr);
        break;
      case oracle::rv::Kind::CsrI:
        ASSERT_EQ(f.rd, s.rd);
        ASSERT_EQ(f.csr, s.csr);
        ASSERT_EQ(f.imm, s.imm);
        break;
      case oracle::rv::Kind::Sys: break;
      default:
        ASSERT_EQ(f.rd, s.rd);
        if (s.op->kind != oracle::rv::Kind::U && s.op->kind != oracle::rv::Kind::J) {
          ASSERT_EQ(f.rs1, s.rs1);
        }
        ASSERT_EQ(f.imm, s.imm);
    }
  }
}

TEST(IsaDecode, EncodeDecodeFixpointOnRandomInstructions) {
  auto g = testing_support::rng(102);
  for (int i = 0; i < 20000; ++i) {
    const auto s = oracle::rv::random_instruction(g);
    const auto d = isa::decode(s.word);
    const std::uint32_t again = isa::encode(d.op, d.fields);
    ASSERT_EQ(again, s.word) << d.mnemonic;
    ASSERT_EQ(isa::decode(again).fields, d.fields);
  }
}

TEST(IsaDecode, ArbitraryWordsDecodeStrictlyOrThrow) {
  auto g = testing_support::rng(103);
  std::size_t decoded = 0;
  for (int i = 0; i < 200000; ++i) {
    const auto w = static_cast<std::uint32_t>(g());
    try {
      const auto d = isa::decode(w);
      ASSERT_EQ(isa::encode(d.op, d.fields), w) << std::hex << w;
      ++decoded;
    } catch (const isa::DecodeError&) {
    }
  }
  EXPECT_GT(decoded, 1000u);
}

TEST(IsaDecode, RejectsReservedAndNonCanonicalEncodings) {
  EXPECT_THROW(isa::decode(0x00000000), isa::DecodeError);
  EXPECT_THROW(isa::decode(0xFFFFFFFF), isa::DecodeError);
  EXPECT_THROW(isa::decode(0x00100073), isa::DecodeError);  // ebreak
  EXPECT_THROW(isa::decode(0x00000173), isa::DecodeError);  // ecall with rd != 0
  EXPECT_THROW(isa::decode(0x02208033), isa::DecodeError);  // mul (M extension)
  EXPECT_THROW(isa::decode(0x0005000B), isa::DecodeError);  // custom-0 without an extension
  EXPECT_THROW(isa::decode(0x00007003), isa::DecodeError);  // load funct3 = 7
  EXPECT_THROW(isa::decode(0x80001013), isa::DecodeError);  // slli with funct6 != 0
  EXPECT_THROW(isa::decode(0x0200101B), isa::DecodeError);  // slliw with shamt bit 5
  EXPECT_THROW(isa::try_decode(0).value(), std::bad_optional_access);
  EXPECT_TRUE(isa::try_decode(0x00500093).has_value());
}

TEST(IsaDecode, DecodeErrorCarriesWordAndPc) {
  try {
    isa::decode(0xFFFFFFFF, 0x1234);
    FAIL();
  } catch (const isa::DecodeError& e) {
    EXPECT_EQ(e.raw(), 0xFFFFFFFFu);
    EXPECT_EQ(e.pc(), 0x1234u);
  }
}

TEST(IsaCategories, EveryBaseOpcodeHasOneCategory) {
  auto cat = [](Opcode op) { return isa::info(op).category; };
  EXPECT_EQ(cat(Opcode::Add), Category::IntAlu);
  EXPECT_EQ(cat(Opcode::Lui), Category::IntAlu);
  EXPECT_EQ(cat(Opcode::Ld), Category::MemRead);
  EXPECT_EQ(cat(Opcode::Sb), Category::MemWrite);
  EXPECT_EQ(cat(Opcode::Jal), Category::Branch);
  EXPECT_EQ(cat(Opcode::Jalr), Category::Branch);
  EXPECT_EQ(cat(Opcode::Bgeu), Category::Branch);
  EXPECT_EQ(cat(Opcode::Csrrci), Category::Csr);
  EXPECT_EQ(cat(Opcode::Ecall), Category::Other);
  auto g = testing_support::rng(104);
  for (int i = 0; i < 2000; ++i) {
    const auto s = oracle::rv::random_instruction(g);
    const auto d = isa::decode(s.word);
    ASSERT_EQ(d.category, isa::info(d.op).category);
  }
}

TEST(IsaNames, OpcodeLookupRoundTrips) {
  for (const auto& e : isa::kOpcodeTable) {
    if (e.format == isa::Format::Custom) {
      EXPECT_FALSE(isa::opcode_from_name(e.name).has_value());
      continue;
    }
    EXPECT_EQ(isa::opcode_from_name(e.name), e.op);
  }
  EXPECT_EQ(isa::category_name(Category::MemWrite), "mem_write");
}
