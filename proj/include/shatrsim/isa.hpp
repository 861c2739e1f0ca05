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

// RV64I + Zicsr encoding tables, the base decoder and the matching encoder.
//
// Decoding is strict: any word whose reserved bits are not canonical is
// rejected, so a successful decode always re-encodes to the same word.

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shatrsim::isa {

enum class Category : std::uint8_t { IntAlu, MemRead, MemWrite, Branch, Csr, Custom, Other };

inline constexpr std::size_t kCategoryCount = 7;

inline constexpr std::array<Category, kCategoryCount> kAllCategories = {
    Category::IntAlu, Category::MemRead, Category::MemWrite, Category::Branch,
    Category::Csr,    Category::Custom,  Category::Other};

constexpr std::string_view category_name(Category c) noexcept {
  switch (c) {
    case Category::IntAlu: return "int_alu";
    case Category::MemRead: return "mem_read";
    case Category::MemWrite: return "mem_write";
    case Category::Branch: return "branch";
    case Category::Csr: return "csr";
    case Category::Custom: return "custom";
    case Category::Other: return "other";
  }
  return "?";
}

enum class Format : std::uint8_t {
  R,        // rd, rs1, rs2
  I,        // rd, rs1, imm12
  Shift64,  // rd, rs1, shamt6
  Shift32,  // rd, rs1, shamt5
  Load,     // rd, imm12(rs1)
  Store,    // rs2, imm12(rs1)
  Branch,   // rs1, rs2, offset13
  U,        // rd, imm20
  J,        // rd, offset21
  Jalr,     // rd, imm12(rs1)
  Csr,      // rd, csr, rs1
  CsrImm,   // rd, csr, uimm5
  System,   // no operands
  Custom,   // owned by an extension
};

enum class Opcode : std::uint8_t {
  Lui, Auipc, Jal, Jalr,
  Beq, Bne, Blt, Bge, Bltu, Bgeu,
  Lb, Lh, Lw, Ld, Lbu, Lhu, Lwu,
  Sb, Sh, Sw, Sd,
  Addi, Slti, Sltiu, Xori, Ori, Andi, Slli, Srli, Srai,
  Add, Sub, Sll, Slt, Sltu, Xor, Srl, Sra, Or, And,
  Addiw, Slliw, Srliw, Sraiw,
  Addw, Subw, Sllw, Srlw, Sraw,
  Ecall,
  Csrrw, Csrrs, Csrrc, Csrrwi, Csrrsi, Csrrci,
  Custom,
};

struct OpcodeInfo {
  Opcode op;
  std::string_view name;
  Format format;
  std::uint8_t major;
  std::uint8_t funct3;
  std::uint8_t funct7;  // funct6 << 1 for Shift64
  Category category;
};

namespace major {
inline constexpr std::uint8_t kLoad = 0x03;
inline constexpr std::uint8_t kCustom0 = 0x0B;
inline constexpr std::uint8_t kOpImm = 0x13;
inline constexpr std::uint8_t kAuipc = 0x17;
inline constexpr std::uint8_t kOpImm32 = 0x1B;
inline constexpr std::uint8_t kStore = 0x23;
inline constexpr std::uint8_t kOp = 0x33;
inline constexpr std::uint8_t kLui = 0x37;
inline constexpr std::uint8_t kOp32 = 0x3B;
inline constexpr std::uint8_t kBranch = 0x63;
inline constexpr std::uint8_t kJalr = 0x67;
inline constexpr std::uint8_t kJal = 0x6F;
inline constexpr std::uint8_t kSystem = 0x73;
}  // namespace major

inline constexpr std::array<OpcodeInfo, 57> kOpcodeTable = {{
    {Opcode::Lui, "lui", Format::U, major::kLui, 0, 0, Category::IntAlu},
    {Opcode::Auipc, "auipc", Format::U, major::kAuipc, 0, 0, Category::IntAlu},
    {Opcode::Jal, "jal", Format::J, major::kJal, 0, 0, Category::Branch},
    {Opcode::Jalr, "jalr", Format::Jalr, major::kJalr, 0, 0, Category::Branch},
    {Opcode::Beq, "beq", Format::Branch, major::kBranch, 0, 0, Category::Branch},
    {Opcode::Bne, "bne", Format::Branch, major::kBranch, 1, 0, Category::Branch},
    {Opcode::Blt, "blt", Format::Branch, major::kBranch, 4, 0, Category::Branch},
    {Opcode::Bge, "bge", Format::Branch, major::kBranch, 5, 0, Category::Branch},
    {Opcode::Bltu, "bltu", Format::Branch, major::kBranch, 6, 0, Category::Branch},
    {Opcode::Bgeu, "bgeu", Format::Branch, major::kBranch, 7, 0, Category::Branch},
    {Opcode::Lb, "lb", Format::Load, major::kLoad, 0, 0, Category::MemRead},
    {Opcode::Lh, "lh", Format::Load, major::kLoad, 1, 0, Category::MemRead},
    {Opcode::Lw, "lw", Format::Load, major::kLoad, 2, 0, Category::MemRead},
    {Opcode::Ld, "ld", Format::Load, major::kLoad, 3, 0, Category::MemRead},
    {Opcode::Lbu, "lbu", Format::Load, major::kLoad, 4, 0, Category::MemRead},
    {Opcode::Lhu, "lhu", Format::Load, major::kLoad, 5, 0, Category::MemRead},
    {Opcode::Lwu, "lwu", Format::Load, major::kLoad, 6, 0, Category::MemRead},
    {Opcode::Sb, "sb", Format::Store, major::kStore, 0, 0, Category::MemWrite},
    {Opcode::Sh, "sh", Format::Store, major::kStore, 1, 0, Category::MemWrite},
    {Opcode::Sw, "sw", Format::Store, major::kStore, 2, 0, Category::MemWrite},
    {Opcode::Sd, "sd", Format::Store, major::kStore, 3, 0, Category::MemWrite},
    {Opcode::Addi, "addi", Format::I, major::kOpImm, 0, 0, Category::IntAlu},
    {Opcode::Slti, "slti", Format::I, major::kOpImm, 2, 0, Category::IntAlu},
    {Opcode::Sltiu, "sltiu", Format::I, major::kOpImm, 3, 0, Category::IntAlu},
    {Opcode::Xori, "xori", Format::I, major::kOpImm, 4, 0, Category::IntAlu},
    {Opcode::Ori, "ori", Format::I, major::kOpImm, 6, 0, Category::IntAlu},
    {Opcode::Andi, "andi", Format::I, major::kOpImm, 7, 0, Category::IntAlu},
    {Opcode::Slli, "slli", Format::Shift64, major::kOpImm, 1, 0x00, Category::IntAlu},
    {Opcode::Srli, "srli", Format::Shift64, major::kOpImm, 5, 0x00, Category::IntAlu},
    {Opcode::Srai, "srai", Format::Shift64, major::kOpImm, 5, 0x20, Category::IntAlu},
    {Opcode::Add, "add", Format::R, major::kOp, 0, 0x00, Category::IntAlu},
    {Opcode::Sub, "sub", Format::R, major::kOp, 0, 0x20, Category::IntAlu},
    {Opcode::Sll, "sll", Format::R, major::kOp, 1, 0x00, Category::IntAlu},
    {Opcode::Slt, "slt", Format::R, major::kOp, 2, 0x00, Category::IntAlu},
    {Opcode::Sltu, "sltu", Format::R, major::kOp, 3, 0x00, Category::IntAlu},
    {Opcode::Xor, "xor", Format::R, major::kOp, 4, 0x00, Category::IntAlu},
    {Opcode::Srl, "srl", Format::R, major::kOp, 5, 0x00, Category::IntAlu},
    {Opcode::Sra, "sra", Format::R, major::kOp, 5, 0x20, Category::IntAlu},
    {Opcode::Or, "or", Format::R, major::kOp, 6, 0x00, Category::IntAlu},
    {Opcode::And, "and", Format::R, major::kOp, 7, 0x00, Category::IntAlu},
    {Opcode::Addiw, "addiw", Format::I, major::kOpImm32, 0, 0, Category::IntAlu},
    {Opcode::Slliw, "slliw", Format::Shift32, major::kOpImm32, 1, 0x00, Category::IntAlu},
    {Opcode::Srliw, "srliw", Format::Shift32, major::kOpImm32, 5, 0x00, Category::IntAlu},
    {Opcode::Sraiw, "sraiw", Format::Shift32, major::kOpImm32, 5, 0x20, Category::IntAlu},
    {Opcode::Addw, "addw", Format::R, major::kOp32, 0, 0x00, Category::IntAlu},
    {Opcode::Subw, "subw", Format::R, major::kOp32, 0, 0x20, Category::IntAlu},
    {Opcode::Sllw, "sllw", Format::R, major::kOp32, 1, 0x00, Category::IntAlu},
    {Opcode::Srlw, "srlw", Format::R, major::kOp32, 5, 0x00, Category::IntAlu},
    {Opcode::Sraw, "sraw", Format::R, major::kOp32, 5, 0x20, Category::IntAlu},
    {Opcode::Ecall, "ecall", Format::System, major::kSystem, 0, 0, Category::Other},
    {Opcode::Csrrw, "csrrw", Format::Csr, major::kSystem, 1, 0, Category::Csr},
    {Opcode::Csrrs, "csrrs", Format::Csr, major::kSystem, 2, 0, Category::Csr},
    {Opcode::Csrrc, "csrrc", Format::Csr, major::kSystem, 3, 0, Category::Csr},
    {Opcode::Csrrwi, "csrrwi", Format::CsrImm, major::kSystem, 5, 0, Category::Csr},
    {Opcode::Csrrsi, "csrrsi", Format::CsrImm, major::kSystem, 6, 0, Category::Csr},
    {Opcode::Csrrci, "csrrci", Format::CsrImm, major::kSystem, 7, 0, Category::Csr},
    {Opcode::Custom, "custom", Format::Custom, major::kCustom0, 0, 0, Category::Custom},
}};

constexpr const OpcodeInfo& info(Opcode op) noexcept {
  return kOpcodeTable[static_cast<std::size_t>(op)];
}

static_assert([] {
  for (std::size_t i = 0; i < kOpcodeTable.size(); ++i)
    if (static_cast<std::size_t>(kOpcodeTable[i].op) != i) return false;
  return true;
}());

inline std::optional<Opcode> opcode_from_name(std::string_view name) noexcept {
  for (const auto& e : kOpcodeTable)
    if (e.format != Format::Custom && e.name == name) return e.op;
  return std::nullopt;
}

/// Operand fields shared by every format. For CsrImm the 5-bit immediate is
/// carried in `imm` and `rs1` stays zero; U-type `imm` is the raw 20-bit field.
struct Fields {
  std::uint8_t rd = 0;
  std::uint8_t rs1 = 0;
  std::uint8_t rs2 = 0;
  std::int64_t imm = 0;
  std::uint16_t csr = 0;

  friend constexpr bool operator==(const Fields&, const Fields&) = default;
};

struct DecodedInstruction {
  Opcode op = Opcode::Custom;
  Category category = Category::Other;
  std::string_view mnemonic;
  Fields fields;
  std::uint32_t raw = 0;
};

class DecodeError : public std::runtime_error {
 public:
  DecodeError(std::uint32_t raw, std::uint64_t pc, const std::string& why)
      : std::runtime_error(describe(raw, pc, why)), raw_(raw), pc_(pc) {}

  std::uint32_t raw() const noexcept { return raw_; }
  std::uint64_t pc() const noexcept { return pc_; }

 private:
  static std::string describe(std::uint32_t raw, std::uint64_t pc, const std::string& why) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "illegal instruction 0x%08x at pc 0x%llx: ", raw,
                  static_cast<unsigned long long>(pc));
    return buf + why;
  }

  std::uint32_t raw_;
  std::uint64_t pc_;
};

class EncodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace bits {

constexpr std::uint32_t field(std::uint32_t w, unsigned lo, unsigned width) noexcept {
  return (w >> lo) & ((1u << width) - 1);
}

constexpr std::int64_t sign_extend(std::uint64_t v, unsigned width) noexcept {
  const std::uint64_t m = std::uint64_t{1} << (width - 1);
  v &= (m << 1) - 1;
  return static_cast<std::int64_t>((v ^ m) - m);
}

constexpr std::uint8_t rd(std::uint32_t w) noexcept { return static_cast<std::uint8_t>(field(w, 7, 5)); }
constexpr std::uint8_t rs1(std::uint32_t w) noexcept { return static_cast<std::uint8_t>(field(w, 15, 5)); }
constexpr std::uint8_t rs2(std::uint32_t w) noexcept { return static_cast<std::uint8_t>(field(w, 20, 5)); }
constexpr std::uint32_t funct3(std::uint32_t w) noexcept { return field(w, 12, 3); }
constexpr std::uint32_t funct7(std::uint32_t w) noexcept { return field(w, 25, 7); }

constexpr std::int64_t imm_i(std::uint32_t w) noexcept { return sign_extend(w >> 20, 12); }
constexpr std::int64_t imm_s(std::uint32_t w) noexcept {
  return sign_extend((field(w, 25, 7) << 5) | field(w, 7, 5), 12);
}
constexpr std::int64_t imm_b(std::uint32_t w) noexcept {
  return sign_extend((field(w, 31, 1) << 12) | (field(w, 7, 1) << 11) | (field(w, 25, 6) << 5) |
                         (field(w, 8, 4) << 1),
                     13);
}
constexpr std::int64_t imm_j(std::uint32_t w) noexcept {
  return sign_extend((field(w, 31, 1) << 20) | (field(w, 12, 8) << 12) | (field(w, 20, 1) << 11) |
                         (field(w, 21, 10) << 1),
                     21);
}

}  // namespace bits

namespace detail {

inline const OpcodeInfo* find(std::uint8_t major, std::uint32_t funct3, std::uint32_t funct7,
                              Format fmt_hint_any = Format::Custom) {
  for (const auto& e : kOpcodeTable) {
    if (e.major != major || e.funct3 != funct3) continue;
    if (fmt_hint_any != Format::Custom && e.format != fmt_hint_any) continue;
    if (e.format == Format::R || e.format == Format::Shift32 || e.format == Format::Shift64) {
      if (e.funct7 != funct7) continue;
    }
    return &e;
  }
  return nullptr;
}

inline DecodedInstruction make(const OpcodeInfo& e, std::uint32_t raw, Fields f) {
  return DecodedInstruction{e.op, e.category, e.name, f, raw};
}

}  // namespace detail

/// Decodes a base RV64I/Zicsr word. Custom-opcode words are rejected here;
/// extensions decode those.
inline DecodedInstruction decode(std::uint32_t w, std::uint64_t pc = 0) {
  using namespace bits;
  const auto major = static_cast<std::uint8_t>(w & 0x7F);
  const std::uint32_t f3 = funct3(w);
  const std::uint32_t f7 = funct7(w);

  auto fail = [&](const char* why) -> DecodedInstruction { throw DecodeError(w, pc, why); };

  switch (major) {
    case major::kLui:
    case major::kAuipc: {
      const auto& e = info(major == major::kLui ? Opcode::Lui : Opcode::Auipc);
      return detail::make(e, w, Fields{.rd = rd(w), .imm = static_cast<std::int64_t>(w >> 12)});
    }
    case major::kJal:
      return detail::make(info(Opcode::Jal), w, Fields{.rd = rd(w), .imm = imm_j(w)});
    case major::kJalr:
      if (f3 != 0) return fail("jalr funct3 must be zero");
      return detail::make(info(Opcode::Jalr), w,
                          Fields{.rd = rd(w), .rs1 = rs1(w), .imm = imm_i(w)});
    case major::kBranch: {
      const auto* e = detail::find(major, f3, 0);
      if (!e) return fail("reserved branch funct3");
      return detail::make(*e, w, Fields{.rs1 = rs1(w), .rs2 = rs2(w), .imm = imm_b(w)});
    }
    case major::kLoad: {
      const auto* e = detail::find(major, f3, 0);
      if (!e) return fail("reserved load width");
      return detail::make(*e, w, Fields{.rd = rd(w), .rs1 = rs1(w), .imm = imm_i(w)});
    }
    case major::kStore: {
      const auto* e = detail::find(major, f3, 0);
      if (!e) return fail("reserved store width");
      return detail::make(*e, w, Fields{.rs1 = rs1(w), .rs2 = rs2(w), .imm = imm_s(w)});
    }
    case major::kOpImm: {
      if (f3 == 1 || f3 == 5) {
        // funct6 in bits 31:26, shamt in 25:20
        const std::uint32_t f6 = field(w, 26, 6);
        const auto* e = detail::find(major, f3, f6 << 1, Format::Shift64);
        if (!e) return fail("reserved shift-immediate encoding");
        return detail::make(*e, w,
                            Fields{.rd = rd(w), .rs1 = rs1(w),
                                   .imm = static_cast<std::int64_t>(field(w, 20, 6))});
      }
      const auto* e = detail::find(major, f3, 0, Format::I);
      if (!e) return fail("reserved op-imm funct3");
      return detail::make(*e, w, Fields{.rd = rd(w), .rs1 = rs1(w), .imm = imm_i(w)});
    }
    case major::kOpImm32: {
      if (f3 == 1 || f3 == 5) {
        const auto* e = detail::find(major, f3, f7, Format::Shift32);
        if (!e) return fail("reserved 32-bit shift-immediate encoding");
        return detail::make(*e, w,
                            Fields{.rd = rd(w), .rs1 = rs1(w),
                                   .imm = static_cast<std::int64_t>(field(w, 20, 5))});
      }
      if (f3 != 0) return fail("reserved op-imm-32 funct3");
      return detail::make(info(Opcode::Addiw), w,
                          Fields{.rd = rd(w), .rs1 = rs1(w), .imm = imm_i(w)});
    }
    case major::kOp:
    case major::kOp32: {
      const auto* e = detail::find(major, f3, f7, Format::R);
      if (!e) return fail("reserved register-register encoding");
      return detail::make(*e, w, Fields{.rd = rd(w), .rs1 = rs1(w), .rs2 = rs2(w)});
    }
    case major::kSystem: {
      if (f3 == 0) {
        if (w != 0x00000073) return fail("unsupported system instruction");
        return detail::make(info(Opcode::Ecall), w, Fields{});
      }
      const auto* e = detail::find(major, f3, 0);
      if (!e) return fail("reserved system funct3");
      const auto csr = static_cast<std::uint16_t>(w >> 20);
      if (e->format == Format::CsrImm)
        return detail::make(*e, w,
                            Fields{.rd = rd(w), .imm = static_cast<std::int64_t>(rs1(w)), .csr = csr});
      return detail::make(*e, w, Fields{.rd = rd(w), .rs1 = rs1(w), .csr = csr});
    }
    default:
      return fail("unsupported major opcode");
  }
}

inline std::optional<DecodedInstruction> try_decode(std::uint32_t w) noexcept {
  try {
    return decode(w);
  } catch (const DecodeError&) {
    return std::nullopt;
  }
}

namespace detail {

inline void check_reg(std::uint8_t r, const char* what) {
  if (r > 31) throw EncodeError(std::string(what) + " register out of range");
}

inline void check_range(std::int64_t v, std::int64_t lo, std::int64_t hi, std::string_view name,
                        std::string_view what) {
  if (v < lo || v > hi)
    throw EncodeError(std::string(name) + ": " + std::string(what) + " " + std::to_string(v) +
                      " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

}  // namespace detail

/// Encodes a base instruction. Throws EncodeError on out-of-range operands.
inline std::uint32_t encode(Opcode op, const Fields& f) {
  const OpcodeInfo& e = info(op);
  detail::check_reg(f.rd, "rd");
  detail::check_reg(f.rs1, "rs1");
  detail::check_reg(f.rs2, "rs2");
  const std::uint32_t base = e.major | (static_cast<std::uint32_t>(e.funct3) << 12);
  const std::uint32_t rd = static_cast<std::uint32_t>(f.rd) << 7;
  const std::uint32_t rs1 = static_cast<std::uint32_t>(f.rs1) << 15;
  const std::uint32_t rs2 = static_cast<std::uint32_t>(f.rs2) << 20;
  const auto imm = static_cast<std::uint64_t>(f.imm);

  switch (e.format) {
    case Format::R:
      return base | rd | rs1 | rs2 | (static_cast<std::uint32_t>(e.funct7) << 25);
    case Format::I:
    case Format::Load:
    case Format::Jalr:
      detail::check_range(f.imm, -2048, 2047, e.name, "immediate");
      return base | rd | rs1 | (static_cast<std::uint32_t>(imm & 0xFFF) << 20);
    case Format::Shift64:
      detail::check_range(f.imm, 0, 63, e.name, "shift amount");
      return base | rd | rs1 | (static_cast<std::uint32_t>(imm) << 20) |
             (static_cast<std::uint32_t>(e.funct7 >> 1) << 26);
    case Format::Shift32:
      detail::check_range(f.imm, 0, 31, e.name, "shift amount");
      return base | rd | rs1 | (static_cast<std::uint32_t>(imm) << 20) |
             (static_cast<std::uint32_t>(e.funct7) << 25);
    case Format::Store:
      detail::check_range(f.imm, -2048, 2047, e.name, "offset");
      return base | rs1 | rs2 | (static_cast<std::uint32_t>(imm & 0x1F) << 7) |
             (static_cast<std::uint32_t>((imm >> 5) & 0x7F) << 25);
    case Format::Branch: {
      detail::check_range(f.imm, -4096, 4094, e.name, "branch offset");
      if (f.imm & 1) throw EncodeError(std::string(e.name) + ": branch offset must be even");
      const auto v = static_cast<std::uint32_t>(imm);
      return base | rs1 | rs2 | (((v >> 11) & 1) << 7) | (((v >> 1) & 0xF) << 8) |
             (((v >> 5) & 0x3F) << 25) | (((v >> 12) & 1) << 31);
    }
    case Format::U:
      detail::check_range(f.imm, 0, 0xFFFFF, e.name, "upper immediate");
      return base | rd | (static_cast<std::uint32_t>(imm) << 12);
    case Format::J: {
      detail::check_range(f.imm, -(1 << 20), (1 << 20) - 2, e.name, "jump offset");
      if (f.imm & 1) throw EncodeError(std::string(e.name) + ": jump offset must be even");
      const auto v = static_cast<std::uint32_t>(imm);
      return base | rd | (((v >> 12) & 0xFF) << 12) | (((v >> 11) & 1) << 20) |
             (((v >> 1) & 0x3FF) << 21) | (((v >> 20) & 1) << 31);
    }
    case Format::Csr:
      detail::check_range(f.csr, 0, 0xFFF, e.name, "csr address");
      return base | rd | rs1 | (static_cast<std::uint32_t>(f.csr) << 20);
    case Format::CsrImm:
      detail::check_range(f.imm, 0, 31, e.name, "csr immediate");
      detail::check_range(f.csr, 0, 0xFFF, e.name, "csr address");
      return base | rd | (static_cast<std::uint32_t>(imm) << 15) |
             (static_cast<std::uint32_t>(f.csr) << 20);
    case Format::System:
      return 0x00000073;
    case Format::Custom:
      break;
  }
  throw EncodeError("custom opcodes are encoded by their extension");
}

}  // namespace shatrsim::isa
