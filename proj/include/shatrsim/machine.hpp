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

// Deterministic RV64I + Zicsr interpreter.
//
// Machine mode only: no MMU, no traps, no interrupts. Every failure is a
// Fault exception and leaves the machine halted. Guests talk to the host
// through `ecall` with the service number in a7:
//
//   a7 = 0  exit(a0)
//   a7 = 1  region_begin(a0)
//   a7 = 2  region_end(a0)
//   a7 = 3  emit_digest(address a0, length a1)
//
// Instructions retired strictly between a region's begin and end ecalls are
// added to that region's counters; ecalls themselves never are.

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shatrsim/isa.hpp"
#include "shatrsim/program.hpp"

namespace shatrsim::emu {

using isa::Category;
using isa::DecodedInstruction;
using isa::Opcode;

inline constexpr std::size_t kDefaultMemorySize = std::size_t{16} << 20;

namespace reg {
inline constexpr unsigned kZero = 0, kRa = 1, kSp = 2, kA0 = 10, kA1 = 11, kA7 = 17;
}

namespace hypercall {
inline constexpr std::uint64_t kExit = 0;
inline constexpr std::uint64_t kRegionBegin = 1;
inline constexpr std::uint64_t kRegionEnd = 2;
inline constexpr std::uint64_t kEmitDigest = 3;
}  // namespace hypercall

/// Region 1 brackets exactly one Keccak-f permutation in the guest kernels.
inline constexpr std::uint64_t kPermutationRegion = 1;

namespace csr {
inline constexpr std::uint16_t kMscratch = 0x340;
inline constexpr std::uint16_t kCycle = 0xC00;
inline constexpr std::uint16_t kInstret = 0xC02;
constexpr bool read_only(std::uint16_t address) noexcept { return (address >> 10) == 0x3; }
}  // namespace csr

enum class FaultKind : std::uint8_t {
  IllegalInstruction,
  MemoryOutOfBounds,
  MisalignedAccess,
  MisalignedFetch,
  IllegalCsr,
  IllegalOperand,
  UnknownHypercall,
  RegionMismatch,
  BudgetExceeded,
  Halted,
};

constexpr const char* fault_kind_name(FaultKind k) noexcept {
  switch (k) {
    case FaultKind::IllegalInstruction: return "illegal instruction";
    case FaultKind::MemoryOutOfBounds: return "memory access out of bounds";
    case FaultKind::MisalignedAccess: return "misaligned memory access";
    case FaultKind::MisalignedFetch: return "misaligned instruction fetch";
    case FaultKind::IllegalCsr: return "illegal CSR access";
    case FaultKind::IllegalOperand: return "illegal operand";
    case FaultKind::UnknownHypercall: return "unknown hypercall";
    case FaultKind::RegionMismatch: return "region marker mismatch";
    case FaultKind::BudgetExceeded: return "instruction budget exceeded";
    case FaultKind::Halted: return "machine halted";
  }
  return "fault";
}

class Fault : public std::runtime_error {
 public:
  Fault(FaultKind kind, std::uint64_t pc, std::uint64_t address, const std::string& detail = {})
      : std::runtime_error(describe(kind, pc, address, detail)),
        kind_(kind),
        pc_(pc),
        address_(address) {}

  FaultKind kind() const noexcept { return kind_; }
  std::uint64_t pc() const noexcept { return pc_; }
  std::uint64_t address() const noexcept { return address_; }

 private:
  static std::string describe(FaultKind kind, std::uint64_t pc, std::uint64_t address,
                              const std::string& detail) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s at pc 0x%llx (address 0x%llx)", fault_kind_name(kind),
                  static_cast<unsigned long long>(pc), static_cast<unsigned long long>(address));
    return detail.empty() ? std::string(buf) : std::string(buf) + ": " + detail;
  }

  FaultKind kind_;
  std::uint64_t pc_;
  std::uint64_t address_;
};

class RegistrationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CostModel {
  std::uint64_t base_cycles_per_instruction = 1;
  std::uint64_t extra_mem_access_cycles = 0;
  std::uint64_t shatr_cycles = 1;

  std::uint64_t cycles(Category c) const noexcept {
    switch (c) {
      case Category::MemRead:
      case Category::MemWrite: return base_cycles_per_instruction + extra_mem_access_cycles;
      case Category::Custom: return shatr_cycles;
      default: return base_cycles_per_instruction;
    }
  }
};

using CategoryCounters = std::array<std::uint64_t, isa::kCategoryCount>;

inline std::uint64_t total(const CategoryCounters& c) noexcept {
  return std::accumulate(c.begin(), c.end(), std::uint64_t{0});
}

struct RegionStats {
  CategoryCounters counters{};
  std::uint64_t entry_count = 0;
  bool active = false;

  std::uint64_t retired() const noexcept { return total(counters); }
  std::uint64_t count(Category c) const noexcept { return counters[static_cast<std::size_t>(c)]; }

  friend bool operator==(const RegionStats&, const RegionStats&) = default;
};

struct ExecutionStats {
  CategoryCounters global{};
  std::map<std::uint64_t, RegionStats> regions;
  std::uint64_t total_cycles = 0;

  std::uint64_t retired() const noexcept { return total(global); }
  std::uint64_t count(Category c) const noexcept { return global[static_cast<std::size_t>(c)]; }

  const RegionStats* region(std::uint64_t id) const {
    auto it = regions.find(id);
    return it == regions.end() ? nullptr : &it->second;
  }

  friend bool operator==(const ExecutionStats&, const ExecutionStats&) = default;
};

struct MachineState {
  std::uint64_t pc = kCodeBase;
  std::array<std::uint64_t, 32> gpr{};
  std::map<std::uint16_t, std::uint64_t> csr_file{{csr::kMscratch, 0}};
  std::vector<std::uint8_t> memory;
  bool halted = false;
  std::uint64_t exit_status = 0;
  std::optional<std::string> fault;

  std::uint64_t x(unsigned r) const noexcept { return gpr[r]; }
  void set_x(unsigned r, std::uint64_t v) noexcept {
    if (r != reg::kZero) gpr[r] = v;
  }

  bool in_bounds(std::uint64_t address, std::uint64_t size) const noexcept {
    return address <= memory.size() && size <= memory.size() - address;
  }

  std::uint64_t load(std::uint64_t address, unsigned size) const {
    std::uint64_t v = 0;
    for (unsigned k = 0; k < size; ++k) v |= static_cast<std::uint64_t>(memory[address + k]) << (8 * k);
    return v;
  }

  void store(std::uint64_t address, unsigned size, std::uint64_t v) {
    for (unsigned k = 0; k < size; ++k) memory[address + k] = static_cast<std::uint8_t>(v >> (8 * k));
  }

  friend bool operator==(const MachineState&, const MachineState&) = default;
};

struct CsrRange {
  std::uint16_t first = 0;
  std::uint16_t last = 0;  // inclusive

  constexpr bool contains(std::uint16_t a) const noexcept { return a >= first && a <= last; }
  constexpr bool overlaps(const CsrRange& o) const noexcept {
    return first <= o.last && o.first <= last;
  }
};

struct ExtensionClaim {
  std::string name;
  std::optional<std::uint8_t> major_opcode;
  std::optional<CsrRange> csrs;
};

/// Hook for custom opcodes and extension-owned CSRs.
class Extension {
 public:
  virtual ~Extension() = default;

  virtual ExtensionClaim claim() const = 0;

  /// Called for words whose major opcode this extension claimed. Throws
  /// isa::DecodeError for encodings it does not accept.
  virtual DecodedInstruction decode(std::uint32_t word, std::uint64_t pc) const {
    throw isa::DecodeError(word, pc, "extension defines no instructions");
  }

  virtual void execute(const DecodedInstruction& insn, MachineState& state) {
    throw Fault(FaultKind::IllegalInstruction, state.pc, 0, std::string(insn.mnemonic));
  }

  virtual std::uint64_t read_csr(std::uint16_t address) = 0;
  virtual void write_csr(std::uint16_t address, std::uint64_t value) = 0;
};

struct EmittedBytes {
  std::uint64_t address = 0;
  std::vector<std::uint8_t> bytes;

  friend bool operator==(const EmittedBytes&, const EmittedBytes&) = default;
};

class Machine {
 public:
  explicit Machine(std::size_t memory_size = kDefaultMemorySize, CostModel cost = {})
      : cost_(cost) {
    state_.memory.assign(memory_size, 0);
    state_.set_x(reg::kSp, stack_top());
  }

  Machine(const Machine&) = delete;
  Machine& operator=(const Machine&) = delete;
  Machine(Machine&&) = default;
  Machine& operator=(Machine&&) = default;

  MachineState& state() noexcept { return state_; }
  const MachineState& state() const noexcept { return state_; }
  ExecutionStats& stats() noexcept { return stats_; }
  const ExecutionStats& stats() const noexcept { return stats_; }
  const CostModel& cost() const noexcept { return cost_; }
  void set_cost(const CostModel& c) noexcept { cost_ = c; }
  const std::vector<EmittedBytes>& emitted() const noexcept { return emitted_; }

  std::uint64_t stack_top() const noexcept { return state_.memory.size() & ~std::uint64_t{15}; }

  void register_extension(std::shared_ptr<Extension> ext) {
    if (!ext) throw RegistrationError("null extension");
    const ExtensionClaim c = ext->claim();
    if (c.major_opcode) {
      const std::uint8_t op = *c.major_opcode;
      if (op > 0x7F || (op & 0x3) != 0x3) throw RegistrationError(c.name + ": invalid major opcode");
      for (const auto& e : isa::kOpcodeTable)
        if (e.format != isa::Format::Custom && e.major == op)
          throw RegistrationError(c.name + ": major opcode belongs to the base ISA");
      if (by_opcode_[op])
        throw RegistrationError(c.name + ": major opcode already claimed by " +
                                by_opcode_[op]->claim().name);
    }
    if (c.csrs) {
      if (c.csrs->first > c.csrs->last || c.csrs->last > 0xFFF)
        throw RegistrationError(c.name + ": invalid CSR range");
      for (const auto& [addr, value] : state_.csr_file)
        if (c.csrs->contains(addr)) throw RegistrationError(c.name + ": CSR range overlaps base CSRs");
      if (c.csrs->contains(csr::kCycle) || c.csrs->contains(csr::kInstret))
        throw RegistrationError(c.name + ": CSR range overlaps base counters");
      for (const auto& [range, owner] : csr_claims_)
        if (range.overlaps(*c.csrs))
          throw RegistrationError(c.name + ": CSR range already claimed by " + owner->claim().name);
    }
    if (c.major_opcode) by_opcode_[*c.major_opcode] = ext.get();
    if (c.csrs) csr_claims_.emplace_back(*c.csrs, ext.get());
    extensions_.push_back(std::move(ext));
  }

  DecodedInstruction decode(std::uint32_t word, std::uint64_t pc = 0) const {
    if (Extension* ext = by_opcode_[word & 0x7F]) return ext->decode(word, pc);
    return isa::decode(word, pc);
  }

  /// Clears memory, registers and statistics, then places the image.
  void load_program(const AssembledProgram& image) {
    if (image.code.size() % 4 != 0) throw LoadError("code size is not a multiple of 4");
    if (image.entry_offset % 4 != 0 || (image.entry_offset >= image.code.size() && !image.code.empty()))
      throw LoadError("entry point outside the code section");
    if (!state_.in_bounds(kCodeBase, image.code.size()))
      throw LoadError("code section does not fit in guest memory");
    for (const auto& seg : image.data)
      if (!state_.in_bounds(seg.address, seg.bytes.size()))
        throw LoadError("data segment at " + std::to_string(seg.address) + " does not fit in guest memory");

    const std::size_t size = state_.memory.size();
    state_ = MachineState{};
    state_.memory.assign(size, 0);
    std::copy(image.code.begin(), image.code.end(), state_.memory.begin() + kCodeBase);
    for (const auto& seg : image.data)
      std::copy(seg.bytes.begin(), seg.bytes.end(),
                state_.memory.begin() + static_cast<std::ptrdiff_t>(seg.address));
    state_.pc = kCodeBase + image.entry_offset;
    state_.set_x(reg::kSp, stack_top());
    stats_ = ExecutionStats{};
    active_.clear();
    emitted_.clear();
  }

  void step() {
    if (state_.halted) throw Fault(FaultKind::Halted, state_.pc, 0);
    try {
      execute_one();
    } catch (const std::exception& e) {
      state_.halted = true;
      state_.fault = e.what();
      throw;
    }
  }

  /// Steps until the guest exits; returns its exit status.
  std::uint64_t run(std::uint64_t max_instructions) {
    std::uint64_t executed = 0;
    while (!state_.halted) {
      if (executed == max_instructions) {
        Fault f(FaultKind::BudgetExceeded, state_.pc, 0,
                std::to_string(max_instructions) + " instructions retired");
        state_.halted = true;
        state_.fault = f.what();
        throw f;
      }
      step();
      ++executed;
    }
    return state_.exit_status;
  }

 private:
  [[noreturn]] void fault(FaultKind kind, std::uint64_t address, const std::string& detail = {}) const {
    throw Fault(kind, state_.pc, address, detail);
  }

  void check_access(std::uint64_t address, unsigned size) const {
    if (!state_.in_bounds(address, size)) fault(FaultKind::MemoryOutOfBounds, address);
    if (address % size != 0) fault(FaultKind::MisalignedAccess, address);
  }

  void jump(std::uint64_t target, std::uint64_t& next) const {
    if (target % 4 != 0) fault(FaultKind::MisalignedFetch, target);
    next = target;
  }

  std::uint64_t read_csr(std::uint16_t address) {
    for (const auto& [range, owner] : csr_claims_)
      if (range.contains(address)) return owner->read_csr(address);
    if (address == csr::kCycle) return stats_.total_cycles;
    if (address == csr::kInstret) return stats_.retired();
    auto it = state_.csr_file.find(address);
    if (it == state_.csr_file.end()) fault(FaultKind::IllegalCsr, address, "unclaimed CSR");
    return it->second;
  }

  void write_csr(std::uint16_t address, std::uint64_t value) {
    if (csr::read_only(address)) fault(FaultKind::IllegalCsr, address, "write to read-only CSR");
    for (const auto& [range, owner] : csr_claims_)
      if (range.contains(address)) return owner->write_csr(address, value);
    auto it = state_.csr_file.find(address);
    if (it == state_.csr_file.end()) fault(FaultKind::IllegalCsr, address, "unclaimed CSR");
    it->second = value;
  }

  // CSR reads have no side effects here, so every form reads first. Set and
  // clear with a zero source do not write.
  void csr_op(const DecodedInstruction& d) {
    const auto& f = d.fields;
    const bool imm_form = d.op == Opcode::Csrrwi || d.op == Opcode::Csrrsi || d.op == Opcode::Csrrci;
    const std::uint64_t src = imm_form ? static_cast<std::uint64_t>(f.imm) : state_.x(f.rs1);
    const bool src_is_zero = imm_form ? f.imm == 0 : f.rs1 == reg::kZero;
    switch (d.op) {
      case Opcode::Csrrw:
      case Opcode::Csrrwi: {
        const std::uint64_t old = read_csr(f.csr);
        write_csr(f.csr, src);
        state_.set_x(f.rd, old);
        break;
      }
      case Opcode::Csrrs:
      case Opcode::Csrrsi: {
        const std::uint64_t old = read_csr(f.csr);
        if (!src_is_zero) write_csr(f.csr, old | src);
        state_.set_x(f.rd, old);
        break;
      }
      default: {
        const std::uint64_t old = read_csr(f.csr);
        if (!src_is_zero) write_csr(f.csr, old & ~src);
        state_.set_x(f.rd, old);
        break;
      }
    }
  }

  void do_hypercall() {
    const std::uint64_t service = state_.x(reg::kA7);
    const std::uint64_t a0 = state_.x(reg::kA0);
    switch (service) {
      case hypercall::kExit:
        state_.halted = true;
        state_.exit_status = a0;
        return;
      case hypercall::kRegionBegin: {
        RegionStats& r = stats_.regions[a0];
        if (r.active) fault(FaultKind::RegionMismatch, 0, "region " + std::to_string(a0) + " already active");
        r.active = true;
        ++r.entry_count;
        active_.push_back(&r);
        return;
      }
      case hypercall::kRegionEnd: {
        auto it = stats_.regions.find(a0);
        if (it == stats_.regions.end() || !it->second.active)
          fault(FaultKind::RegionMismatch, 0, "region_end(" + std::to_string(a0) + ") without begin");
        it->second.active = false;
        std::erase(active_, &it->second);
        return;
      }
      case hypercall::kEmitDigest: {
        const std::uint64_t len = state_.x(reg::kA1);
        if (!state_.in_bounds(a0, len)) fault(FaultKind::MemoryOutOfBounds, a0, "emit_digest range");
        const auto first = state_.memory.begin() + static_cast<std::ptrdiff_t>(a0);
        emitted_.push_back({a0, {first, first + static_cast<std::ptrdiff_t>(len)}});
        return;
      }
      default:
        fault(FaultKind::UnknownHypercall, 0, "a7 = " + std::to_string(service));
    }
  }

  void retire(Category c, bool count_in_regions) {
    const auto idx = static_cast<std::size_t>(c);
    ++stats_.global[idx];
    stats_.total_cycles += cost_.cycles(c);
    if (count_in_regions)
      for (RegionStats* r : active_) ++r->counters[idx];
  }

  void execute_one() {
    const std::uint64_t pc = state_.pc;
    if (!state_.in_bounds(pc, 4)) fault(FaultKind::MemoryOutOfBounds, pc, "instruction fetch");
    const auto word = static_cast<std::uint32_t>(state_.load(pc, 4));
    const DecodedInstruction d = decode(word, pc);
    const auto& f = d.fields;
    const std::uint64_t a = state_.x(f.rs1);
    const std::uint64_t b = state_.x(f.rs2);
    const auto imm = static_cast<std::uint64_t>(f.imm);
    auto sext32 = [](std::uint64_t v) {
      return static_cast<std::uint64_t>(static_cast<std::int64_t>(static_cast<std::int32_t>(v)));
    };
    std::uint64_t next = pc + 4;
    bool is_ecall = false;

    switch (d.op) {
      case Opcode::Lui: state_.set_x(f.rd, sext32(imm << 12)); break;
      case Opcode::Auipc: state_.set_x(f.rd, pc + sext32(imm << 12)); break;
      case Opcode::Jal:
        jump(pc + imm, next);
        state_.set_x(f.rd, pc + 4);
        break;
      case Opcode::Jalr:
        jump((a + imm) & ~std::uint64_t{1}, next);
        state_.set_x(f.rd, pc + 4);
        break;
      case Opcode::Beq: if (a == b) jump(pc + imm, next); break;
      case Opcode::Bne: if (a != b) jump(pc + imm, next); break;
      case Opcode::Blt:
        if (static_cast<std::int64_t>(a) < static_cast<std::int64_t>(b)) jump(pc + imm, next);
        break;
      case Opcode::Bge:
        if (static_cast<std::int64_t>(a) >= static_cast<std::int64_t>(b)) jump(pc + imm, next);
        break;
      case Opcode::Bltu: if (a < b) jump(pc + imm, next); break;
      case Opcode::Bgeu: if (a >= b) jump(pc + imm, next); break;

      case Opcode::Lb: case Opcode::Lh: case Opcode::Lw: case Opcode::Ld:
      case Opcode::Lbu: case Opcode::Lhu: case Opcode::Lwu: {
        static constexpr unsigned kSize[] = {1, 2, 4, 8, 1, 2, 4};
        const unsigned size = kSize[static_cast<int>(d.op) - static_cast<int>(Opcode::Lb)];
        const std::uint64_t addr = a + imm;
        check_access(addr, size);
        std::uint64_t v = state_.load(addr, size);
        if (d.op == Opcode::Lb || d.op == Opcode::Lh || d.op == Opcode::Lw)
          v = static_cast<std::uint64_t>(isa::bits::sign_extend(v, 8 * size));
        state_.set_x(f.rd, v);
        break;
      }
      case Opcode::Sb: case Opcode::Sh: case Opcode::Sw: case Opcode::Sd: {
        const unsigned size = 1u << (static_cast<int>(d.op) - static_cast<int>(Opcode::Sb));
        const std::uint64_t addr = a + imm;
        check_access(addr, size);
        state_.store(addr, size, b);
        break;
      }

      case Opcode::Addi: state_.set_x(f.rd, a + imm); break;
      case Opcode::Slti: state_.set_x(f.rd, static_cast<std::int64_t>(a) < f.imm); break;
      case Opcode::Sltiu: state_.set_x(f.rd, a < imm); break;
      case Opcode::Xori: state_.set_x(f.rd, a ^ imm); break;
      case Opcode::Ori: state_.set_x(f.rd, a | imm); break;
      case Opcode::Andi: state_.set_x(f.rd, a & imm); break;
      case Opcode::Slli: state_.set_x(f.rd, a << imm); break;
      case Opcode::Srli: state_.set_x(f.rd, a >> imm); break;
      case Opcode::Srai: state_.set_x(f.rd, static_cast<std::uint64_t>(static_cast<std::int64_t>(a) >> imm)); break;

      case Opcode::Add: state_.set_x(f.rd, a + b); break;
      case Opcode::Sub: state_.set_x(f.rd, a - b); break;
      case Opcode::Sll: state_.set_x(f.rd, a << (b & 63)); break;
      case Opcode::Slt:
        state_.set_x(f.rd, static_cast<std::int64_t>(a) < static_cast<std::int64_t>(b));
        break;
      case Opcode::Sltu: state_.set_x(f.rd, a < b); break;
      case Opcode::Xor: state_.set_x(f.rd, a ^ b); break;
      case Opcode::Srl: state_.set_x(f.rd, a >> (b & 63)); break;
      case Opcode::Sra:
        state_.set_x(f.rd, static_cast<std::uint64_t>(static_cast<std::int64_t>(a) >> (b & 63)));
        break;
      case Opcode::Or: state_.set_x(f.rd, a | b); break;
      case Opcode::And: state_.set_x(f.rd, a & b); break;

      case Opcode::Addiw: state_.set_x(f.rd, sext32(a + imm)); break;
      case Opcode::Slliw: state_.set_x(f.rd, sext32(static_cast<std::uint32_t>(a) << imm)); break;
      case Opcode::Srliw: state_.set_x(f.rd, sext32(static_cast<std::uint32_t>(a) >> imm)); break;
      case Opcode::Sraiw:
        state_.set_x(f.rd, sext32(static_cast<std::uint32_t>(static_cast<std::int32_t>(a) >> imm)));
        break;
      case Opcode::Addw: state_.set_x(f.rd, sext32(a + b)); break;
      case Opcode::Subw: state_.set_x(f.rd, sext32(a - b)); break;
      case Opcode::Sllw: state_.set_x(f.rd, sext32(static_cast<std::uint32_t>(a) << (b & 31))); break;
      case Opcode::Srlw: state_.set_x(f.rd, sext32(static_cast<std::uint32_t>(a) >> (b & 31))); break;
      case Opcode::Sraw:
        state_.set_x(f.rd,
                     sext32(static_cast<std::uint32_t>(static_cast<std::int32_t>(a) >> (b & 31))));
        break;

      case Opcode::Ecall:
        is_ecall = true;
        do_hypercall();
        break;

      case Opcode::Csrrw: case Opcode::Csrrs: case Opcode::Csrrc:
      case Opcode::Csrrwi: case Opcode::Csrrsi: case Opcode::Csrrci:
        csr_op(d);
        break;

      case Opcode::Custom:
        by_opcode_[word & 0x7F]->execute(d, state_);
        break;
    }

    state_.pc = next;
    retire(d.category, !is_ecall);
  }

  MachineState state_;
  ExecutionStats stats_;
  CostModel cost_;
  std::vector<std::shared_ptr<Extension>> extensions_;
  std::array<Extension*, 128> by_opcode_{};
  std::vector<std::pair<CsrRange, Extension*>> csr_claims_;
  std::vector<RegionStats*> active_;
  std::vector<EmittedBytes> emitted_;
};

}  // namespace shatrsim::emu
