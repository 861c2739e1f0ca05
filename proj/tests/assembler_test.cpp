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

#include <string>

#include "oracle/rv_encode.hpp"
#include "shatrsim/assembler.hpp"
#include "shatrsim/image.hpp"
#include "shatrsim/kernels.hpp"
#include "support.hpp"

using namespace shatrsim;
using asmr::AssemblyError;

namespace {

std::size_t error_line(std::string_view src) {
  try {
    asmr::assemble(src);
  } catch (const AssemblyError& e) {
    return e.line();
  }
  return 0;
}

std::string exit_with(const std::string& body) { return ".text\n_start:\n" + body + "    li a7, 0\n    ecall\n"; }

void expect_same_image(const AssembledProgram& a, const AssembledProgram& b) {
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(a.data, b.data);
  EXPECT_EQ(a.entry_offset, b.entry_offset);
}

}  // namespace

TEST(SourceUnit, TextRoundTrip) {
  const auto u = asmr::SourceUnit::from_text("a\r\nb\n\nc");
  ASSERT_EQ(u.lines, (std::vector<std::string>{"a", "b", "", "c"}));
  EXPECT_EQ(u.text(), "a\nb\n\nc\n");
  EXPECT_EQ(asmr::SourceUnit::from_text(u.text()), u);
  EXPECT_TRUE(asmr::SourceUnit::from_text("").lines.empty());
}

TEST(Assembler, EncodesBaseInstructions) {
  const auto p = asmr::assemble(
      ".text\n"
      "  addi ra, zero, 5   # comment\n"
      "  lui t0, 0x12345\n"
      "  sd t0, 8(sp)\n"
      "  ld a0, (a1)\n"
      "  csrrw x0, 0x800, t0\n"
      "  ecall\n"
      "  srai gp, tp, 63\n"
      "  SUB x1, x2, x3\n");
  EXPECT_EQ(p.words(), (std::vector<std::uint32_t>{0x00500093, 0x123452B7, 0x00513423, 0x0005B503, 0x80029073,
                                                   0x00000073, 0x43F25193, 0x403100B3}));
  EXPECT_TRUE(p.data.empty());
}

TEST(Assembler, LabelsAndPseudoInstructions) {
  const auto p = asmr::assemble(
      ".text\n"
      "top:\n"
      "  nop\n"
      "  mv a0, a1\n"
      "  j top\n"
      "  jal fn\n"
      "  beq x0, x0, top\n"
      "fn: ret\n"
      "  jalr t0\n"
      "  shatr t1\n");
  EXPECT_EQ(p.words(), (std::vector<std::uint32_t>{
                           isa::encode(isa::Opcode::Addi, {}),
                           isa::encode(isa::Opcode::Addi, {.rd = 10, .rs1 = 11}),
                           isa::encode(isa::Opcode::Jal, {.rd = 0, .imm = -8}),
                           isa::encode(isa::Opcode::Jal, {.rd = 1, .imm = 8}),
                           isa::encode(isa::Opcode::Beq, {.imm = -16}),
                           isa::encode(isa::Opcode::Jalr, {.rd = 0, .rs1 = 1}),
                           isa::encode(isa::Opcode::Jalr, {.rd = 1, .rs1 = 5}),
                           shatr::encode_shatr(6),
                       }));
  EXPECT_EQ(p.symbols.at("top"), kCodeBase);
  EXPECT_EQ(p.symbols.at("fn"), kCodeBase + 20);
  EXPECT_EQ(p.entry_offset, 0u);
}

TEST(Assembler, StartLabelSetsEntry) {
  const auto p = asmr::assemble(".text\n  nop\n  nop\n_start: ecall\n");
  EXPECT_EQ(p.entry_offset, 8u);
}

TEST(Assembler, DataDirectives) {
  const auto p = asmr::assemble(
      ".data\n"
      ".org 0x200\n"
      "tab: .dword 0x0102030405060708, -1\n"
      "     .byte 1, 0xff, -1\n"
      "     .align 3\n"
      "nxt: .byte 7\n"
      ".org 0x300\n"
      ".byte 9\n"
      ".text\n"
      "_start: li t0, tab\n"
      "  ld a0, 0(t0)\n"
      "  li a7, 0\n"
      "  ecall\n");
  ASSERT_EQ(p.data.size(), 2u);
  EXPECT_EQ(p.data[0].address, 0x200u);
  EXPECT_EQ(p.data[0].bytes.size(), 25u);
  EXPECT_EQ(p.data[0].bytes[0], 0x08);
  EXPECT_EQ(p.data[0].bytes[15], 0xFF);
  EXPECT_EQ(p.data[0].bytes[18], 0xFF);
  EXPECT_EQ(p.data[0].bytes[24], 7);
  EXPECT_EQ(p.symbols.at("nxt"), 0x218u);
  EXPECT_EQ(p.data[1], (DataSegment{0x300, {9}}));
  emu::Machine m(testing_support::kSmallMemory);
  m.load_program(p);
  m.run(100);
  EXPECT_EQ(m.state().exit_status, 0x0102030405060708u);
}

TEST(Assembler, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line(".text\n  frob x1\n"), 2u);
  EXPECT_EQ(error_line(".text\n\n  addi x1, x2\n"), 3u);
  EXPECT_EQ(error_line(".text\n  addi x1, x32, 0\n"), 2u);
  EXPECT_EQ(error_line(".text\n  addi x1, x2, 2048\n"), 2u);
  EXPECT_EQ(error_line(".text\n  j nowhere\n"), 2u);
  EXPECT_EQ(error_line(".text\na:\na:\n"), 3u);
  EXPECT_EQ(error_line(".text\n.org 0x100\n"), 2u);
  EXPECT_EQ(error_line(".data\n  nop\n"), 2u);
  EXPECT_EQ(error_line(".text\n  .dword 1\n"), 2u);
  EXPECT_EQ(error_line(".data\n.org 0x10\n.byte 1, 2\n.org 0x11\n.byte 3\n"), 5u);
  EXPECT_EQ(error_line(".data\n.org 0x1000\n.byte 1\n.text\n  nop\n"), 3u);
  EXPECT_EQ(error_line(".data\n.byte 256\n"), 2u);
  EXPECT_EQ(error_line(".text\n  ld a0, 8[sp]\n"), 2u);
  EXPECT_EQ(error_line(".text\n  csrrw x0, 0x1000, t0\n"), 2u);
  EXPECT_EQ(error_line(".text\n  addi x1, , 0\n"), 2u);
  EXPECT_EQ(error_line(".frob\n"), 1u);
  EXPECT_EQ(error_line(".text\n  shatr\n"), 2u);
  try {
    asmr::assemble(".text\n  nop\n  bogus\n");
    FAIL();
  } catch (const AssemblyError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("line 3: ", 0), 0u) << e.what();
  }
}

TEST(Assembler, BranchRangeIsChecked) {
  std::string src = ".text\ntop:\n";
  for (int i = 0; i < 1100; ++i) src += "  nop\n";
  src += "  beq x0, x0, top\n";
  EXPECT_EQ(error_line(src), 1103u);
}

TEST(Assembler, LiMaterializesArbitraryConstants) {
  auto g = testing_support::rng(301);
  std::vector<std::int64_t> values = {0, 1, -1, 2047, -2048, 2048, -2049, 0x7FFFFFFF, -0x80000000LL, 0x80000000LL,
                                      INT64_MAX, INT64_MIN, 0x123456789ABCDEF0LL, 0x800, 0xFFFFFFFFLL};
  for (int i = 0; i < 1000; ++i) {
    const unsigned width = 1 + static_cast<unsigned>(g() % 64);
    std::uint64_t v = g();
    if (width < 64) v &= (std::uint64_t{1} << width) - 1;
    if (g() & 1) v = ~v + 1;
    values.push_back(static_cast<std::int64_t>(v));
  }
  for (const std::int64_t v : values) {
    const auto m = testing_support::run(exit_with("    li a0, " + std::to_string(v) + "\n"));
    ASSERT_EQ(static_cast<std::int64_t>(m->state().exit_status), v);
    const auto words = asmr::assemble(".text\n li a0, " + std::to_string(v) + "\n").word_count();
    ASSERT_LE(words, 8u) << v;
    if (v >= -2048 && v < 2048) {
      ASSERT_EQ(words, 1u);
    } else if (v >= INT32_MIN && v <= INT32_MAX) {
      ASSERT_LE(words, 2u);
    }
  }
}

TEST(Assembler, LiAcceptsHexAndSymbols) {
  const auto m = testing_support::run(exit_with("    li a0, 0xdeadbeefcafe\n"));
  EXPECT_EQ(m->state().exit_status, 0xdeadbeefcafeu);
  const auto p = asmr::assemble(".data\n.org 0x5678\nbuf: .byte 0\n" + exit_with("    li a0, buf\n"));
  emu::Machine mm(testing_support::kSmallMemory);
  mm.load_program(p);
  mm.run(100);
  EXPECT_EQ(mm.state().exit_status, 0x5678u);
}

TEST(Disassembler, FormatInstruction) {
  auto fmt = [](std::uint32_t w) { return asmr::format_instruction(asmr::decode_any(w)); };
  EXPECT_EQ(fmt(0x00500093), "addi x1, x0, 5");
  EXPECT_EQ(fmt(0x123452B7), "lui x5, 0x12345");
  EXPECT_EQ(fmt(0x00513423), "sd x5, 8(x2)");
  EXPECT_EQ(fmt(0x80029073), "csrrw x0, 0x800, x5");
  EXPECT_EQ(fmt(0x00000073), "ecall");
  EXPECT_EQ(fmt(0xFE000EE3), "beq x0, x0, -4");
  EXPECT_EQ(fmt(0x0005000B), "shatr x10");
  EXPECT_THROW(fmt(0xFFFFFFFF), isa::DecodeError);
}

TEST(Disassembler, RandomInstructionsRoundTripThroughText) {
  auto g = testing_support::rng(302);
  for (int i = 0; i < 20000; ++i) {
    const auto s = oracle::rv::random_instruction(g);
    const std::string line = asmr::format_instruction(asmr::decode_any(s.word));
    const auto p = asmr::assemble(".text\n    " + line + "\n");
    ASSERT_EQ(p.words(), std::vector<std::uint32_t>{s.word}) << line;
  }
  for (unsigned r = 0; r < 32; ++r) {
    const std::uint32_t w = shatr::encode_shatr(static_cast<std::uint8_t>(r));
    const auto p = asmr::assemble(".text\n    " + asmr::format_instruction(asmr::decode_any(w)) + "\n");
    ASSERT_EQ(p.words(), std::vector<std::uint32_t>{w});
  }
}

TEST(Disassembler, AllKernelsRoundTrip) {
  for (auto v : keccak::kAllVariants) {
    for (auto st : kernels::kAllStrategies) {
      const auto img = asmr::assemble(kernels::generate_kernel({v, st, {}}));
      const auto text = asmr::disassemble(img);
      const auto again = asmr::assemble(text);
      expect_same_image(again, img);
      EXPECT_EQ(asmr::disassemble(again), text);
    }
  }
}

TEST(Disassembler, RejectsUndecodableCode) {
  AssembledProgram p;
  p.push_word(0x00000093);
  p.push_word(0xFFFFFFFF);
  try {
    asmr::disassemble(p);
    FAIL();
  } catch (const asmr::DisassemblyError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
  p.code.push_back(0);
  EXPECT_THROW(asmr::disassemble(p), asmr::DisassemblyError);
}

TEST(Image, WriteReadRoundTrip) {
  for (auto st : kernels::kAllStrategies) {
    auto img = asmr::assemble(kernels::generate_kernel({keccak::Variant::Sha3_224, st, {}}));
    const std::string text = write_image(img);
    EXPECT_EQ(text.rfind("shatrsim-image 1\n", 0), 0u);
    const auto back = read_image(text);
    expect_same_image(back, img);
    EXPECT_EQ(write_image(back), text);
  }
  EXPECT_THROW(read_image(""), ImageFormatError);
  EXPECT_THROW(read_image("hello\n"), ImageFormatError);
  EXPECT_THROW(read_image("shatrsim-image 1\ncode 123\n"), ImageFormatError);
  EXPECT_THROW(read_image("shatrsim-image 1\ndata 0x10 zz\n"), ImageFormatError);
  EXPECT_THROW(read_image("shatrsim-image 1\nbogus\n"), ImageFormatError);
}
