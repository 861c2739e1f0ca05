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

// Two-pass assembler for RV64I + Zicsr + shatr, and the matching
// disassembler.
//
// Source syntax, one statement per line:
//
//   label:                      # labels may share a line with a statement
//   addi a0, zero, 5            # ABI or numeric (x0..x31) register names
//   ld   t0, 8(s0)              # loads/stores use offset(base)
//   beq  t0, x0, loop           # branch/jump targets: label or byte offset
//   .text / .data               # section switch (.text is the default)
//   .org 0x200                  # .data only: absolute placement
//   .dword 1, 0x8082            # .data only
//   .byte 0x06, 128             # .data only
//   .align 3                    # align to 2^n (nop padding in .text)
//
// Pseudo-instructions: li, mv, j, ret, nop. `li rd, <integer>` expands to the
// shortest lui/addi(w)/slli sequence; `li rd, <symbol>` is always lui+addiw.
// If `_start` is defined in .text it is the entry point, otherwise offset 0.

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shatrsim/isa.hpp"
#include "shatrsim/program.hpp"
#include "shatrsim/shatr_unit.hpp"

namespace shatrsim::asmr {

struct SourceUnit {
  std::vector<std::string> lines;

  static SourceUnit from_text(std::string_view text) {
    SourceUnit u;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t nl = text.find('\n', pos);
      const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
      std::string_view line = text.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (nl == std::string_view::npos && line.empty()) break;
      u.lines.emplace_back(line);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    return u;
  }

  std::string text() const {
    std::string out;
    for (const auto& l : lines) {
      out += l;
      out += '\n';
    }
    return out;
  }

  void add(std::string line) { lines.push_back(std::move(line)); }
  void append(const SourceUnit& other) {
    lines.insert(lines.end(), other.lines.begin(), other.lines.end());
  }

  friend bool operator==(const SourceUnit&, const SourceUnit&) = default;
};

class AssemblyError : public std::runtime_error {
 public:
  AssemblyError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DisassemblyError : public std::runtime_error {
 public:
  DisassemblyError(std::size_t offset, const std::string& message)
      : std::runtime_error("offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// ---------------------------------------------------------------------------
// Lexical helpers

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$';
}

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !is_ident_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), is_ident_char);
}

/// Decimal or 0x-hex, optional sign. Hex literals may use the full 64 bits.
inline std::optional<std::int64_t> parse_int(std::string_view s) {
  s = trim(s);
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) return std::nullopt;
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    base = 16;
    s.remove_prefix(2);
  }
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  if (base == 10 && !neg && v > static_cast<std::uint64_t>(INT64_MAX)) return std::nullopt;
  if (base == 10 && neg && v > static_cast<std::uint64_t>(INT64_MAX) + 1) return std::nullopt;
  const auto sv = static_cast<std::int64_t>(v);
  return neg ? static_cast<std::int64_t>(0 - v) : sv;
}

inline std::vector<std::string_view> split_operands(std::string_view s) {
  std::vector<std::string_view> out;
  s = trim(s);
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = s.find(',', pos);
    out.push_back(trim(s.substr(pos, comma == std::string_view::npos ? s.npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline std::string hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace detail

inline std::optional<std::uint8_t> parse_register(std::string_view name) {
  static const std::map<std::string, std::uint8_t, std::less<>> kAbi = {
      {"zero", 0}, {"ra", 1},  {"sp", 2},   {"gp", 3},   {"tp", 4},  {"t0", 5},  {"t1", 6},
      {"t2", 7},   {"s0", 8},  {"fp", 8},   {"s1", 9},   {"a0", 10}, {"a1", 11}, {"a2", 12},
      {"a3", 13},  {"a4", 14}, {"a5", 15},  {"a6", 16},  {"a7", 17}, {"s2", 18}, {"s3", 19},
      {"s4", 20},  {"s5", 21}, {"s6", 22},  {"s7", 23},  {"s8", 24}, {"s9", 25}, {"s10", 26},
      {"s11", 27}, {"t3", 28}, {"t4", 29},  {"t5", 30},  {"t6", 31}};
  const std::string n = detail::lower(detail::trim(name));
  if (n.size() >= 2 && n[0] == 'x' && std::all_of(n.begin() + 1, n.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    if (n.size() > 3 || (n.size() == 3 && n[1] == '0')) return std::nullopt;
    const int v = std::stoi(n.substr(1));
    if (v > 31) return std::nullopt;
    return static_cast<std::uint8_t>(v);
  }
  auto it = kAbi.find(n);
  if (it == kAbi.end()) return std::nullopt;
  return it->second;
}

inline std::optional<std::uint16_t> parse_csr(std::string_view s) {
  const std::string n = detail::lower(detail::trim(s));
  if (n == "mscratch") return 0x340;
  if (n == "cycle") return 0xC00;
  if (n == "instret") return 0xC02;
  auto v = detail::parse_int(n);
  if (!v || *v < 0 || *v > 0xFFF) return std::nullopt;
  return static_cast<std::uint16_t>(*v);
}

/// Encodes one instruction by mnemonic; `shatr` is the custom-0 extension.
inline std::uint32_t encode_instruction(std::string_view mnemonic, const isa::Fields& fields) {
  const std::string m = detail::lower(mnemonic);
  if (m == shatr::kMnemonic) return shatr::encode_shatr(fields.rs1);
  auto op = isa::opcode_from_name(m);
  if (!op) throw isa::EncodeError("unknown mnemonic '" + m + "'");
  return isa::encode(*op, fields);
}

/// Decoder used by the disassembler: base ISA plus the shatr encoding.
inline isa::DecodedInstruction decode_any(std::uint32_t word, std::uint64_t pc = 0) {
  if ((word & 0x7F) == shatr::kOpcode) return shatr::decode_shatr(word, pc);
  return isa::decode(word, pc);
}

inline std::string format_instruction(const isa::DecodedInstruction& d) {
  using isa::Format;
  const auto& f = d.fields;
  auto x = [](unsigned r) { return "x" + std::to_string(r); };
  const std::string m(d.mnemonic);
  if (d.op == isa::Opcode::Custom) return m + " " + x(f.rs1);
  switch (isa::info(d.op).format) {
    case Format::R: return m + " " + x(f.rd) + ", " + x(f.rs1) + ", " + x(f.rs2);
    case Format::I:
    case Format::Shift64:
    case Format::Shift32: return m + " " + x(f.rd) + ", " + x(f.rs1) + ", " + std::to_string(f.imm);
    case Format::Load:
    case Format::Jalr: return m + " " + x(f.rd) + ", " + std::to_string(f.imm) + "(" + x(f.rs1) + ")";
    case Format::Store: return m + " " + x(f.rs2) + ", " + std::to_string(f.imm) + "(" + x(f.rs1) + ")";
    case Format::Branch: return m + " " + x(f.rs1) + ", " + x(f.rs2) + ", " + std::to_string(f.imm);
    case Format::U: return m + " " + x(f.rd) + ", " + detail::hex(static_cast<std::uint64_t>(f.imm));
    case Format::J: return m + " " + x(f.rd) + ", " + std::to_string(f.imm);
    case Format::Csr: return m + " " + x(f.rd) + ", " + detail::hex(f.csr) + ", " + x(f.rs1);
    case Format::CsrImm:
      return m + " " + x(f.rd) + ", " + detail::hex(f.csr) + ", " + std::to_string(f.imm);
    case Format::System:
    case Format::Custom: break;
  }
  return m;
}

/// Shortest lui/addi(w)/slli sequence that leaves `value` in rd.
inline void materialize_constant(std::uint8_t rd, std::int64_t value,
                                 std::vector<std::pair<isa::Opcode, isa::Fields>>& out) {
  using isa::Opcode;
  if (value >= -2048 && value <= 2047) {
    out.push_back({Opcode::Addi, {.rd = rd, .rs1 = 0, .imm = value}});
    return;
  }
  if (value >= INT32_MIN && value <= INT32_MAX) {
    const std::int64_t hi = (value + 0x800) >> 12;
    const std::int64_t lo = value - (hi << 12);
    out.push_back({Opcode::Lui, {.rd = rd, .imm = hi & 0xFFFFF}});
    if (lo != 0) out.push_back({Opcode::Addiw, {.rd = rd, .rs1 = rd, .imm = lo}});
    return;
  }
  const std::int64_t lo12 = isa::bits::sign_extend(static_cast<std::uint64_t>(value), 12);
  std::int64_t hi = static_cast<std::int64_t>(static_cast<std::uint64_t>(value) -
                                              static_cast<std::uint64_t>(lo12)) >> 12;
  const int tz = std::countr_zero(static_cast<std::uint64_t>(hi));
  hi >>= tz;
  materialize_constant(rd, hi, out);
  out.push_back({Opcode::Slli, {.rd = rd, .rs1 = rd, .imm = 12 + tz}});
  if (lo12 != 0) out.push_back({Opcode::Addi, {.rd = rd, .rs1 = rd, .imm = lo12}});
}

// ---------------------------------------------------------------------------
// Assembler

namespace detail {

enum class Section { Text, Data };

struct Statement {
  std::size_t line = 0;
  std::string op;  // mnemonic or directive, lower case
  std::vector<std::string> operands;
  Section section = Section::Text;
  std::uint64_t address = 0;  // absolute
};

class Assembler {
 public:
  AssembledProgram run(const SourceUnit& src) {
    parse(src);
    layout();
    emit();
    finish();
    return std::move(out_);
  }

 private:
  [[noreturn]] static void error(std::size_t line, const std::string& msg) {
    throw AssemblyError(line, msg);
  }

  void parse(const SourceUnit& src) {
    for (std::size_t i = 0; i < src.lines.size(); ++i) {
      const std::size_t line_no = i + 1;
      std::string_view line = src.lines[i];
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      // Leading labels.
      while (true) {
        const std::size_t colon = line.find(':');
        if (colon == std::string_view::npos) break;
        const std::string_view name = trim(line.substr(0, colon));
        if (!is_identifier(name)) break;
        Statement lab;
        lab.line = line_no;
        lab.op = ":" + std::string(name);
        statements_.push_back(std::move(lab));
        line = trim(line.substr(colon + 1));
      }
      if (line.empty()) continue;
      const std::size_t sp = line.find_first_of(" \t");
      Statement st;
      st.line = line_no;
      st.op = lower(line.substr(0, sp));
      if (sp != std::string_view::npos)
        for (auto o : split_operands(line.substr(sp))) st.operands.emplace_back(o);
      for (const auto& o : st.operands)
        if (o.empty()) error(line_no, "empty operand");
      statements_.push_back(std::move(st));
    }
  }

  static bool is_label_stmt(const Statement& s) { return !s.op.empty() && s.op[0] == ':'; }

  std::size_t instruction_words(const Statement& s) {
    if (s.op == "li") {
      if (s.operands.size() != 2) error(s.line, "li expects rd, value");
      if (auto v = parse_int(s.operands[1])) {
        std::vector<std::pair<isa::Opcode, isa::Fields>> seq;
        materialize_constant(0, *v, seq);
        return seq.size();
      }
      if (!is_identifier(s.operands[1])) error(s.line, "malformed li operand '" + s.operands[1] + "'");
      return 2;
    }
    return 1;
  }

  void layout() {
    Section section = Section::Text;
    std::uint64_t text_off = 0;
    std::uint64_t data_addr = 0;
    for (auto& s : statements_) {
      s.section = section;
      s.address = section == Section::Text ? kCodeBase + text_off : data_addr;
      if (s.op.empty()) continue;
      if (is_label_stmt(s)) {
        const std::string name = s.op.substr(1);
        if (!symbols_.emplace(name, s.address).second) error(s.line, "duplicate label '" + name + "'");
        if (section == Section::Text) text_symbols_.insert(name);
        continue;
      }
      if (s.op == ".text") {
        expect_count(s, 0);
        section = Section::Text;
        continue;
      }
      if (s.op == ".data") {
        expect_count(s, 0);
        section = Section::Data;
        continue;
      }
      if (s.op == ".org") {
        expect_count(s, 1);
        if (section != Section::Data) error(s.line, ".org is only valid in .data");
        auto v = parse_int(s.operands[0]);
        if (!v || *v < 0) error(s.line, "malformed .org address '" + s.operands[0] + "'");
        data_addr = static_cast<std::uint64_t>(*v);
        s.address = data_addr;
        continue;
      }
      if (s.op == ".align") {
        expect_count(s, 1);
        auto v = parse_int(s.operands[0]);
        if (!v || *v < 0 || *v > 12) error(s.line, "malformed .align exponent");
        const std::uint64_t a = std::uint64_t{1} << *v;
        if (section == Section::Text) {
          const std::uint64_t ta = std::max<std::uint64_t>(a, 4);
          text_off = (text_off + ta - 1) & ~(ta - 1);
        } else {
          data_addr = (data_addr + a - 1) & ~(a - 1);
        }
        continue;
      }
      if (s.op == ".dword" || s.op == ".byte") {
        if (section != Section::Data) error(s.line, s.op + " is only valid in .data");
        if (s.operands.empty()) error(s.line, s.op + " expects at least one value");
        data_addr += s.operands.size() * (s.op == ".dword" ? 8 : 1);
        continue;
      }
      if (s.op[0] == '.') error(s.line, "unknown directive '" + s.op + "'");
      if (section != Section::Text) error(s.line, "instructions are only valid in .text");
      text_off += 4 * instruction_words(s);
    }
  }

  static void expect_count(const Statement& s, std::size_t n) {
    if (s.operands.size() != n)
      error(s.line, s.op + " expects " + std::to_string(n) + " operand(s), got " +
                        std::to_string(s.operands.size()));
  }

  std::uint8_t reg(const Statement& s, std::size_t i) const {
    auto r = parse_register(s.operands[i]);
    if (!r) error(s.line, "malformed register '" + s.operands[i] + "'");
    return *r;
  }

  std::int64_t imm(const Statement& s, std::size_t i) const {
    auto v = parse_int(s.operands[i]);
    if (!v) error(s.line, "malformed immediate '" + s.operands[i] + "'");
    return *v;
  }

  std::uint64_t value_or_symbol(const Statement& s, const std::string& text) const {
    if (auto v = parse_int(text)) return static_cast<std::uint64_t>(*v);
    auto it = symbols_.find(text);
    if (it == symbols_.end()) {
      if (is_identifier(text)) error(s.line, "undefined label '" + text + "'");
      error(s.line, "malformed value '" + text + "'");
    }
    return it->second;
  }

  // Branch/jump target: a label or a literal pc-relative byte offset.
  std::int64_t target(const Statement& s, std::size_t i) const {
    const std::string& t = s.operands[i];
    if (auto v = parse_int(t)) return *v;
    auto it = symbols_.find(t);
    if (it == symbols_.end()) {
      if (is_identifier(t)) error(s.line, "undefined label '" + t + "'");
      error(s.line, "malformed branch target '" + t + "'");
    }
    return static_cast<std::int64_t>(it->second - s.address);
  }

  // offset(base) or (base)
  std::pair<std::int64_t, std::uint8_t> mem_operand(const Statement& s, std::size_t i) const {
    const std::string& t = s.operands[i];
    const auto open = t.find('(');
    const auto close = t.rfind(')');
    if (open == std::string::npos || close != t.size() - 1 || close < open)
      error(s.line, "malformed memory operand '" + t + "'");
    const std::string_view off = trim(std::string_view(t).substr(0, open));
    std::int64_t v = 0;
    if (!off.empty()) {
      auto p = parse_int(off);
      if (!p) error(s.line, "malformed offset '" + std::string(off) + "'");
      v = *p;
    }
    auto r = parse_register(std::string_view(t).substr(open + 1, close - open - 1));
    if (!r) error(s.line, "malformed base register in '" + t + "'");
    return {v, *r};
  }

  void put(const Statement& s, isa::Opcode op, const isa::Fields& f) {
    try {
      out_.push_word(isa::encode(op, f));
    } catch (const isa::EncodeError& e) {
      error(s.line, e.what());
    }
  }

  void emit_instruction(const Statement& s) {
    using isa::Fields;
    using isa::Format;
    using isa::Opcode;
    const std::string& m = s.op;
    const std::size_t n = s.operands.size();
    auto need = [&](std::size_t k) {
      if (n != k)
        error(s.line, m + " expects " + std::to_string(k) + " operand(s), got " + std::to_string(n));
    };

    if (m == shatr::kMnemonic) {
      need(1);
      out_.push_word(shatr::encode_shatr(reg(s, 0)));
      return;
    }
    if (m == "nop") {
      need(0);
      return put(s, Opcode::Addi, {});
    }
    if (m == "mv") {
      need(2);
      return put(s, Opcode::Addi, {.rd = reg(s, 0), .rs1 = reg(s, 1)});
    }
    if (m == "j") {
      need(1);
      return put(s, Opcode::Jal, {.rd = 0, .imm = target(s, 0)});
    }
    if (m == "ret") {
      need(0);
      return put(s, Opcode::Jalr, {.rd = 0, .rs1 = 1});
    }
    if (m == "li") {
      need(2);
      const std::uint8_t rd = reg(s, 0);
      std::vector<std::pair<Opcode, Fields>> seq;
      if (auto v = parse_int(s.operands[1])) {
        materialize_constant(rd, *v, seq);
      } else {
        const std::uint64_t addr = value_or_symbol(s, s.operands[1]);
        if (addr > 0x7FFFF7FF) error(s.line, "symbol address too large for li");
        const auto v32 = static_cast<std::int64_t>(addr);
        const std::int64_t hi = (v32 + 0x800) >> 12;
        seq.push_back({Opcode::Lui, {.rd = rd, .imm = hi & 0xFFFFF}});
        seq.push_back({Opcode::Addiw, {.rd = rd, .rs1 = rd, .imm = v32 - (hi << 12)}});
      }
      for (const auto& [op, f] : seq) put(s, op, f);
      return;
    }

    auto op = isa::opcode_from_name(m);
    if (!op) error(s.line, "unknown mnemonic '" + m + "'");
    switch (isa::info(*op).format) {
      case Format::R:
        need(3);
        return put(s, *op, {.rd = reg(s, 0), .rs1 = reg(s, 1), .rs2 = reg(s, 2)});
      case Format::I:
      case Format::Shift64:
      case Format::Shift32:
        need(3);
        return put(s, *op, {.rd = reg(s, 0), .rs1 = reg(s, 1), .imm = imm(s, 2)});
      case Format::Load: {
        need(2);
        auto [off, base] = mem_operand(s, 1);
        return put(s, *op, {.rd = reg(s, 0), .rs1 = base, .imm = off});
      }
      case Format::Store: {
        need(2);
        auto [off, base] = mem_operand(s, 1);
        return put(s, *op, {.rs1 = base, .rs2 = reg(s, 0), .imm = off});
      }
      case Format::Branch:
        need(3);
        return put(s, *op, {.rs1 = reg(s, 0), .rs2 = reg(s, 1), .imm = target(s, 2)});
      case Format::U:
        need(2);
        return put(s, *op, {.rd = reg(s, 0), .imm = imm(s, 1)});
      case Format::J:
        if (n == 1) return put(s, *op, {.rd = 1, .imm = target(s, 0)});
        need(2);
        return put(s, *op, {.rd = reg(s, 0), .imm = target(s, 1)});
      case Format::Jalr: {
        if (n == 1) return put(s, *op, {.rd = 1, .rs1 = reg(s, 0)});
        need(2);
        auto [off, base] = mem_operand(s, 1);
        return put(s, *op, {.rd = reg(s, 0), .rs1 = base, .imm = off});
      }
      case Format::Csr: {
        need(3);
        auto c = parse_csr(s.operands[1]);
        if (!c) error(s.line, "malformed CSR '" + s.operands[1] + "'");
        return put(s, *op, {.rd = reg(s, 0), .rs1 = reg(s, 2), .csr = *c});
      }
      case Format::CsrImm: {
        need(3);
        auto c = parse_csr(s.operands[1]);
        if (!c) error(s.line, "malformed CSR '" + s.operands[1] + "'");
        return put(s, *op, {.rd = reg(s, 0), .imm = imm(s, 2), .csr = *c});
      }
      case Format::System:
        need(0);
        return put(s, *op, {});
      case Format::Custom: break;
    }
    error(s.line, "unknown mnemonic '" + m + "'");
  }

  void data_bytes(const Statement& s, std::uint64_t address, const std::vector<std::uint8_t>& bytes) {
    if (segments_.empty() || segments_.back().address + segments_.back().bytes.size() != address)
      segments_.push_back({address, {}, s.line});
    auto& seg = segments_.back().bytes;
    seg.insert(seg.end(), bytes.begin(), bytes.end());
  }

  void emit() {
    for (const auto& s : statements_) {
      if (s.op.empty() || is_label_stmt(s) || s.op == ".text" || s.op == ".data" || s.op == ".org")
        continue;
      if (s.op == ".align") {
        if (s.section == Section::Text) {
          const std::uint64_t a = std::max<std::uint64_t>(std::uint64_t{1} << imm(s, 0), 4);
          while ((out_.code.size() % a) != 0) out_.push_word(isa::encode(isa::Opcode::Addi, {}));
        } else {
          const std::uint64_t a = std::uint64_t{1} << imm(s, 0);
          std::uint64_t addr = s.address;
          std::vector<std::uint8_t> pad;
          while ((addr + pad.size()) % a != 0) pad.push_back(0);
          if (!pad.empty()) data_bytes(s, addr, pad);
        }
        continue;
      }
      if (s.op == ".dword" || s.op == ".byte") {
        std::vector<std::uint8_t> bytes;
        for (const auto& o : s.operands) {
          const std::uint64_t v = value_or_symbol(s, o);
          if (s.op == ".byte") {
            const auto sv = static_cast<std::int64_t>(v);
            if (sv < -128 || sv > 255) error(s.line, ".byte value out of range: " + o);
            bytes.push_back(static_cast<std::uint8_t>(v));
          } else {
            for (unsigned k = 0; k < 8; ++k) bytes.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
          }
        }
        data_bytes(s, s.address, bytes);
        continue;
      }
      if (out_.code.size() != s.address - kCodeBase)
        error(s.line, "internal layout mismatch");
      emit_instruction(s);
    }
  }

  void finish() {
    struct Span {
      std::uint64_t lo, hi;
      std::size_t line;
    };
    std::vector<Span> spans;
    for (const auto& seg : segments_)
      if (!seg.bytes.empty()) spans.push_back({seg.address, seg.address + seg.bytes.size(), seg.line});
    std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < spans.size(); ++i)
      if (spans[i].lo < spans[i - 1].hi) error(spans[i].line, "data overlaps earlier data");
    const std::uint64_t code_end = kCodeBase + out_.code.size();
    for (const auto& sp : spans)
      if (sp.lo < code_end && kCodeBase < sp.hi && !out_.code.empty())
        error(sp.line, "data overlaps the code section");

    for (auto& seg : segments_)
      if (!seg.bytes.empty()) out_.data.push_back({seg.address, std::move(seg.bytes)});
    out_.symbols = symbols_;
    if (auto it = symbols_.find("_start"); it != symbols_.end() && text_symbols_.count("_start"))
      out_.entry_offset = it->second - kCodeBase;
  }

  struct PendingSegment {
    std::uint64_t address;
    std::vector<std::uint8_t> bytes;
    std::size_t line;
  };

  std::vector<Statement> statements_;
  std::map<std::string, std::uint64_t> symbols_;
  std::set<std::string> text_symbols_;
  std::vector<PendingSegment> segments_;
  AssembledProgram out_;
};

}  // namespace detail

/// Assembles a whole translation unit. Throws AssemblyError (with a 1-based
/// line number); no partial image is ever returned.
inline AssembledProgram assemble(const SourceUnit& source) {
  return detail::Assembler{}.run(source);
}

inline AssembledProgram assemble(std::string_view text) { return assemble(SourceUnit::from_text(text)); }

/// Canonical text: numeric register names, decimal immediates and offsets,
/// hex CSR addresses and upper immediates.
inline SourceUnit disassemble(const AssembledProgram& image) {
  if (image.code.size() % 4 != 0) throw DisassemblyError(image.code.size(), "code size not a multiple of 4");
  SourceUnit out;
  out.add(".text");
  for (std::size_t i = 0; i < image.word_count(); ++i) {
    if (image.entry_offset != 0 && image.entry_offset == 4 * i) out.add("_start:");
    try {
      out.add("    " + format_instruction(decode_any(image.word(i), kCodeBase + 4 * i)));
    } catch (const isa::DecodeError& e) {
      throw DisassemblyError(4 * i, e.what());
    }
  }
  if (!image.data.empty()) {
    out.add(".data");
    for (const auto& seg : image.data) {
      out.add(".org " + detail::hex(seg.address));
      for (std::size_t off = 0; off < seg.bytes.size(); off += 16) {
        std::string line = ".byte ";
        for (std::size_t k = off; k < std::min(seg.bytes.size(), off + 16); ++k) {
          if (k != off) line += ", ";
          line += detail::hex(seg.bytes[k]);
        }
        out.add(line);
      }
    }
  }
  return out;
}

}  // namespace shatrsim::asmr
