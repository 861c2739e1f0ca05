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

// Generators for the guest SHA-3 kernels.
//
// All three strategies share one driver (padding, absorb, squeeze, digest
// emission) and differ only in the permutation between the region markers:
//
//   sw-regopt  fully unrolled Keccak-f, the 25 lanes held in x1..x31 with
//              pi done by register renaming; one lane spilled per round
//   sw-mem     round loop over a state that lives in memory; every step
//              loads its operands and stores its results
//   shatr      25 lane CSR writes, 24 shatr instructions, 25 CSR reads
//
// Guest entry convention: a0 = message address, a1 = message length in
// bytes. All fixed buffers sit below 0x800 so they are addressed off x0.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "shatrsim/assembler.hpp"
#include "shatrsim/keccak.hpp"
#include "shatrsim/shatr_unit.hpp"

namespace shatrsim::kernels {

using asmr::SourceUnit;
using keccak::Variant;

enum class Strategy : std::uint8_t { SwRegopt, SwMem, Shatr };

inline constexpr std::array<Strategy, 3> kAllStrategies = {Strategy::SwRegopt, Strategy::SwMem,
                                                          Strategy::Shatr};

constexpr std::string_view strategy_name(Strategy s) noexcept {
  switch (s) {
    case Strategy::SwRegopt: return "sw-regopt";
    case Strategy::SwMem: return "sw-mem";
    case Strategy::Shatr: return "shatr";
  }
  return "?";
}

inline Strategy parse_strategy(std::string_view name) {
  for (Strategy s : kAllStrategies)
    if (strategy_name(s) == name) return s;
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

struct GuestLayout {
  std::uint64_t state = 0x100;            // 200 bytes, the sponge state
  std::uint64_t round_constants = 0x200;  // 24 dwords (software strategies)
  std::uint64_t scratch = 0x300;          // C[5], D[5] / spill slot
  std::uint64_t temp_state = 0x400;       // B[25] for sw-mem
  std::uint64_t digest = 0x500;           // up to 64 bytes
  std::uint64_t pad_block = 0x580;        // up to 144 bytes
  std::uint64_t driver_save = 0x680;      // message ptr, remaining, final flag
  std::uint64_t message = 0x10000;

  struct Buffer {
    const char* name;
    std::uint64_t address;
    std::uint64_t size;
  };

  std::array<Buffer, 7> fixed_buffers() const {
    return {{{"state", state, 200},
             {"round_constants", round_constants, 192},
             {"scratch", scratch, 80},
             {"temp_state", temp_state, 200},
             {"digest", digest, 64},
             {"pad_block", pad_block, 144},
             {"driver_save", driver_save, 24}}};
  }

  /// Buffers must be disjoint, 8-aligned and below 0x800 (x0-relative), and
  /// must not reach into the code section.
  void validate() const {
    const auto bufs = fixed_buffers();
    for (std::size_t i = 0; i < bufs.size(); ++i) {
      const auto& b = bufs[i];
      if (b.address % 8 != 0) throw std::invalid_argument(std::string(b.name) + " is not 8-aligned");
      if (b.address + b.size > 0x800)
        throw std::invalid_argument(std::string(b.name) + " is not addressable off x0");
      for (std::size_t j = 0; j < i; ++j)
        if (b.address < bufs[j].address + bufs[j].size && bufs[j].address < b.address + b.size)
          throw std::invalid_argument(std::string(b.name) + " overlaps " + bufs[j].name);
    }
    if (message < kCodeBase) throw std::invalid_argument("message buffer below the code base");
  }
};

struct KernelSpec {
  Variant variant = Variant::Sha3_256;
  Strategy strategy = Strategy::Shatr;
  GuestLayout layout{};
};

inline std::string kernel_file_name(const KernelSpec& spec) {
  return std::string(keccak::variant_name(spec.variant)) + "-" +
         std::string(strategy_name(spec.strategy)) + ".s";
}

namespace detail {

inline std::string x(unsigned r) { return "x" + std::to_string(r); }
inline std::string num(std::uint64_t v) { return std::to_string(v); }
inline std::string mem(std::uint64_t addr) { return std::to_string(addr) + "(x0)"; }

struct Out {
  SourceUnit& u;
  void ins(const std::string& text) { u.add("    " + text); }
  void label(const std::string& name) { u.add(name + ":"); }
  void comment(const std::string& text) { u.add("    # " + text); }
  void raw(const std::string& text) { u.add(text); }
};

inline void rotl(Out& o, unsigned reg, unsigned tmp, unsigned amount) {
  if (amount == 0) return;
  o.ins("slli " + x(tmp) + ", " + x(reg) + ", " + num(amount));
  o.ins("srli " + x(reg) + ", " + x(reg) + ", " + num(64 - amount));
  o.ins("or " + x(reg) + ", " + x(reg) + ", " + x(tmp));
}

inline std::size_t lane(unsigned x_, unsigned y_) { return keccak::KeccakState::index(x_, y_); }

}  // namespace detail

struct DriverFragment {
  SourceUnit prologue;  // data, entry, block loop, absorb, region_begin
  SourceUnit epilogue;  // region_end, loop back, squeeze, emit, exit
};

inline DriverFragment gen_driver(const KernelSpec& spec, const GuestLayout& L) {
  using detail::mem;
  using detail::num;
  L.validate();
  const auto p = keccak::params(spec.variant);
  const std::uint64_t rate = p.rate_bytes;
  const std::uint64_t save_ptr = L.driver_save, save_len = L.driver_save + 8,
                      save_final = L.driver_save + 16;

  DriverFragment f;
  detail::Out o{f.prologue};
  o.raw("# " + std::string(keccak::variant_name(spec.variant)) + " kernel, permutation strategy " +
        std::string(strategy_name(spec.strategy)));
  o.raw("# entry: a0 = message address, a1 = message length (bytes)");
  if (spec.strategy != Strategy::Shatr) {
    o.raw(".data");
    o.raw(".org " + num(L.round_constants));
    o.label("round_constants");
    for (std::uint64_t rc : keccak::round_constants().rc) o.raw("    .dword " + asmr::detail::hex(rc));
  }
  o.raw(".text");
  o.label("_start");
  o.ins("sd a0, " + mem(save_ptr));
  o.ins("sd a1, " + mem(save_len));
  o.ins("sd x0, " + mem(save_final));
  o.label("next_block");
  o.ins("ld s0, " + mem(save_ptr));
  o.ins("ld s1, " + mem(save_len));
  o.ins("addi t0, x0, " + num(rate));
  o.ins("bltu s1, t0, final_block");
  o.ins("addi t0, s0, " + num(rate));
  o.ins("sd t0, " + mem(save_ptr));
  o.ins("addi t0, s1, -" + num(rate));
  o.ins("sd t0, " + mem(save_len));
  o.ins("j absorb");

  o.label("final_block");
  o.comment("pad10*1 into a zeroed block: tail bytes, then 0x06 ... 0x80");
  for (std::uint64_t i = 0; i < rate / 8; ++i) o.ins("sd x0, " + mem(L.pad_block + 8 * i));
  o.ins("addi t1, x0, " + num(L.pad_block));
  o.ins("beq s1, x0, pad_bytes");
  o.label("copy_tail");
  o.ins("lbu t2, 0(s0)");
  o.ins("sb t2, 0(t1)");
  o.ins("addi s0, s0, 1");
  o.ins("addi t1, t1, 1");
  o.ins("addi s1, s1, -1");
  o.ins("bne s1, x0, copy_tail");
  o.label("pad_bytes");
  o.ins("lbu t2, 0(t1)");
  o.ins("xori t2, t2, " + num(keccak::kDomainPadByte));
  o.ins("sb t2, 0(t1)");
  o.ins("lbu t2, " + mem(L.pad_block + rate - 1));
  o.ins("xori t2, t2, " + num(keccak::kFinalPadBit));
  o.ins("sb t2, " + mem(L.pad_block + rate - 1));
  o.ins("addi t0, x0, 1");
  o.ins("sd t0, " + mem(save_final));
  o.ins("addi s0, x0, " + num(L.pad_block));

  o.label("absorb");
  o.comment("state lane ^= little-endian load of 8 block bytes");
  o.ins("addi t3, x0, " + num(L.state));
  o.ins("addi t4, x0, " + num(rate / 8));
  o.label("absorb_lane");
  o.ins("lbu t0, 0(s0)");
  for (unsigned k = 1; k < 8; ++k) {
    o.ins("lbu t1, " + num(k) + "(s0)");
    o.ins("slli t1, t1, " + num(8 * k));
    o.ins("or t0, t0, t1");
  }
  o.ins("ld t1, 0(t3)");
  o.ins("xor t0, t0, t1");
  o.ins("sd t0, 0(t3)");
  o.ins("addi s0, s0, 8");
  o.ins("addi t3, t3, 8");
  o.ins("addi t4, t4, -1");
  o.ins("bne t4, x0, absorb_lane");
  o.ins("addi a0, x0, 1");
  o.ins("addi a7, x0, 1");
  o.ins("ecall");  // region_begin(1)

  detail::Out e{f.epilogue};
  e.ins("addi a0, x0, 1");
  e.ins("addi a7, x0, 2");
  e.ins("ecall");  // region_end(1)
  e.ins("ld t0, " + mem(save_final));
  e.ins("bne t0, x0, squeeze");
  e.ins("j next_block");
  e.label("squeeze");
  e.ins("addi t1, x0, " + num(L.state));
  e.ins("addi t2, x0, " + num(L.digest));
  e.ins("addi t3, x0, " + num(p.digest_bytes));
  e.label("squeeze_byte");
  e.ins("lbu t0, 0(t1)");
  e.ins("sb t0, 0(t2)");
  e.ins("addi t1, t1, 1");
  e.ins("addi t2, t2, 1");
  e.ins("addi t3, t3, -1");
  e.ins("bne t3, x0, squeeze_byte");
  e.ins("addi a0, x0, " + num(L.digest));
  e.ins("addi a1, x0, " + num(p.digest_bytes));
  e.ins("addi a7, x0, 3");
  e.ins("ecall");  // emit_digest
  e.ins("addi a0, x0, 0");
  e.ins("addi a7, x0, 0");
  e.ins("ecall");  // exit(0)
  return f;
}

/// Register-resident Keccak-f, fully unrolled.
inline SourceUnit gen_permutation_regopt(const GuestLayout& L) {
  using detail::lane;
  using detail::mem;
  using detail::num;
  using detail::x;
  SourceUnit u;
  detail::Out o{u};
  const auto& rho = keccak::rho_offsets();

  std::array<unsigned, 25> reg{};  // lane index -> register
  std::vector<unsigned> free;
  for (unsigned i = 0; i < 25; ++i) {
    reg[i] = i + 1;
    o.ins("ld " + x(reg[i]) + ", " + mem(L.state + 8 * i));
  }
  for (unsigned r = 31; r >= 26; --r) free.push_back(r);
  auto take = [&] {
    const unsigned r = free.back();
    free.pop_back();
    return r;
  };

  const std::uint64_t spill = L.scratch;
  for (unsigned round = 0; round < keccak::kRounds; ++round) {
    o.comment("round " + num(round));

    // theta
    std::array<unsigned, 5> c{};
    for (unsigned cx = 0; cx < 5; ++cx) {
      c[cx] = take();
      o.ins("xor " + x(c[cx]) + ", " + x(reg[lane(cx, 0)]) + ", " + x(reg[lane(cx, 1)]));
      for (unsigned y = 2; y < 5; ++y)
        o.ins("xor " + x(c[cx]) + ", " + x(c[cx]) + ", " + x(reg[lane(cx, y)]));
    }
    const unsigned d = take();
    const std::size_t spilled = lane(4, 4);
    const unsigned u2 = reg[spilled];
    o.ins("sd " + x(u2) + ", " + mem(spill));
    for (unsigned cx = 0; cx < 5; ++cx) {
      const unsigned next = c[(cx + 1) % 5], prev = c[(cx + 4) % 5];
      o.ins("slli " + x(d) + ", " + x(next) + ", 1");
      o.ins("srli " + x(u2) + ", " + x(next) + ", 63");
      o.ins("or " + x(d) + ", " + x(d) + ", " + x(u2));
      o.ins("xor " + x(d) + ", " + x(d) + ", " + x(prev));
      for (unsigned y = 0; y < 5; ++y) {
        if (lane(cx, y) == spilled) continue;
        o.ins("xor " + x(reg[lane(cx, y)]) + ", " + x(reg[lane(cx, y)]) + ", " + x(d));
      }
    }
    o.ins("ld " + x(u2) + ", " + mem(spill));
    o.ins("xor " + x(u2) + ", " + x(u2) + ", " + x(d));
    free.push_back(d);
    for (unsigned cx = 5; cx-- > 0;) free.push_back(c[cx]);

    // rho, then pi by renaming: lane (x, y) moves to (y, 2x + 3y)
    {
      const unsigned t = take();
      std::array<unsigned, 25> moved{};
      for (unsigned y = 0; y < 5; ++y)
        for (unsigned cx = 0; cx < 5; ++cx) {
          const unsigned r = reg[lane(cx, y)];
          detail::rotl(o, r, t, rho.offset[cx][y]);
          moved[lane(y, (2 * cx + 3 * y) % 5)] = r;
        }
      reg = moved;
      free.push_back(t);
    }

    // chi, row by row; rows 0 and 1 land in fresh registers
    for (unsigned y = 0; y < 5; ++y) {
      std::array<unsigned, 5> b{};
      for (unsigned cx = 0; cx < 5; ++cx) b[cx] = reg[lane(cx, y)];
      const unsigned n0 = take(), n1 = take(), t = take();
      // dst = self ^ (~a1 & a2)
      auto fresh = [&](unsigned dst, unsigned self, unsigned a1, unsigned a2) {
        o.ins("xori " + x(dst) + ", " + x(a1) + ", -1");
        o.ins("and " + x(dst) + ", " + x(dst) + ", " + x(a2));
        o.ins("xor " + x(dst) + ", " + x(dst) + ", " + x(self));
      };
      auto in_place = [&](unsigned self, unsigned a1, unsigned a2) {
        o.ins("xori " + x(t) + ", " + x(a1) + ", -1");
        o.ins("and " + x(t) + ", " + x(t) + ", " + x(a2));
        o.ins("xor " + x(self) + ", " + x(self) + ", " + x(t));
      };
      fresh(n0, b[0], b[1], b[2]);
      fresh(n1, b[1], b[2], b[3]);
      in_place(b[2], b[3], b[4]);
      in_place(b[3], b[4], b[0]);
      in_place(b[4], b[0], b[1]);
      reg[lane(0, y)] = n0;
      reg[lane(1, y)] = n1;
      free.push_back(t);
      free.push_back(b[1]);
      free.push_back(b[0]);
    }

    // iota
    {
      const unsigned t = take();
      o.ins("ld " + x(t) + ", " + mem(L.round_constants + 8 * round));
      o.ins("xor " + x(reg[0]) + ", " + x(reg[0]) + ", " + x(t));
      free.push_back(t);
    }
  }
  for (unsigned i = 0; i < 25; ++i) o.ins("sd " + x(reg[i]) + ", " + mem(L.state + 8 * i));
  return u;
}

/// Memory-resident Keccak-f with a round loop.
inline SourceUnit gen_permutation_mem(const GuestLayout& L) {
  using detail::lane;
  using detail::mem;
  using detail::num;
  SourceUnit u;
  detail::Out o{u};
  const auto& rho = keccak::rho_offsets();
  auto A = [&](std::size_t i) { return mem(L.state + 8 * i); };
  auto B = [&](std::size_t i) { return mem(L.temp_state + 8 * i); };
  auto C = [&](unsigned i) { return mem(L.scratch + 8 * i); };
  auto D = [&](unsigned i) { return mem(L.scratch + 40 + 8 * i); };

  o.ins("addi s2, x0, " + num(L.round_constants));
  o.ins("addi s3, x0, " + num(keccak::kRounds));
  o.label("keccak_round");
  o.comment("theta: column parities");
  for (unsigned cx = 0; cx < 5; ++cx) {
    o.ins("ld t0, " + A(lane(cx, 0)));
    for (unsigned y = 1; y < 5; ++y) {
      o.ins("ld t1, " + A(lane(cx, y)));
      o.ins("xor t0, t0, t1");
    }
    o.ins("sd t0, " + C(cx));
  }
  o.comment("theta: D[x] = C[x-1] ^ rotl(C[x+1], 1)");
  for (unsigned cx = 0; cx < 5; ++cx) {
    o.ins("ld t0, " + C((cx + 4) % 5));
    o.ins("ld t1, " + C((cx + 1) % 5));
    o.ins("slli t2, t1, 1");
    o.ins("srli t1, t1, 63");
    o.ins("or t1, t1, t2");
    o.ins("xor t0, t0, t1");
    o.ins("sd t0, " + D(cx));
  }
  o.comment("theta: apply");
  for (unsigned y = 0; y < 5; ++y)
    for (unsigned cx = 0; cx < 5; ++cx) {
      o.ins("ld t0, " + A(lane(cx, y)));
      o.ins("ld t1, " + D(cx));
      o.ins("xor t0, t0, t1");
      o.ins("sd t0, " + A(lane(cx, y)));
    }
  o.comment("rho and pi: B[y][2x+3y] = rotl(A[x][y])");
  for (unsigned y = 0; y < 5; ++y)
    for (unsigned cx = 0; cx < 5; ++cx) {
      const unsigned r = rho.offset[cx][y];
      o.ins("ld t0, " + A(lane(cx, y)));
      if (r != 0) {
        o.ins("slli t1, t0, " + num(r));
        o.ins("srli t0, t0, " + num(64 - r));
        o.ins("or t0, t0, t1");
      }
      o.ins("sd t0, " + B(lane(y, (2 * cx + 3 * y) % 5)));
    }
  o.comment("chi");
  for (unsigned y = 0; y < 5; ++y)
    for (unsigned cx = 0; cx < 5; ++cx) {
      o.ins("ld t0, " + B(lane(cx, y)));
      o.ins("ld t1, " + B(lane((cx + 1) % 5, y)));
      o.ins("ld t2, " + B(lane((cx + 2) % 5, y)));
      o.ins("xori t1, t1, -1");
      o.ins("and t1, t1, t2");
      o.ins("xor t0, t0, t1");
      o.ins("sd t0, " + A(lane(cx, y)));
    }
  o.comment("iota");
  o.ins("ld t0, " + A(0));
  o.ins("ld t1, 0(s2)");
  o.ins("xor t0, t0, t1");
  o.ins("sd t0, " + A(0));
  o.ins("addi s2, s2, 8");
  o.ins("addi s3, s3, -1");
  o.ins("bne s3, x0, keccak_round");
  return u;
}

/// Lanes into the unit, 24 rounds, lanes back out.
inline SourceUnit gen_permutation_shatr(const GuestLayout& L) {
  using detail::mem;
  using detail::num;
  SourceUnit u;
  detail::Out o{u};
  for (std::size_t i = 0; i < keccak::kLaneCount; ++i) {
    o.ins("ld t0, " + mem(L.state + 8 * i));
    o.ins("csrrw x0, " + asmr::detail::hex(shatr::lane_csr(i)) + ", t0");
  }
  for (unsigned r = 0; r < keccak::kRounds; ++r) {
    o.ins("addi t1, x0, " + num(r));
    o.ins("shatr t1");
  }
  for (std::size_t i = 0; i < keccak::kLaneCount; ++i) {
    o.ins("csrrs t0, " + asmr::detail::hex(shatr::lane_csr(i)) + ", x0");
    o.ins("sd t0, " + mem(L.state + 8 * i));
  }
  return u;
}

namespace detail {

inline SourceUnit compose(const DriverFragment& d, const SourceUnit& permutation) {
  SourceUnit u = d.prologue;
  u.append(permutation);
  u.append(d.epilogue);
  return u;
}

inline void require(const KernelSpec& spec, Strategy s) {
  if (spec.strategy != s)
    throw std::invalid_argument("kernel spec strategy is " + std::string(strategy_name(spec.strategy)) +
                                ", expected " + std::string(strategy_name(s)));
}

}  // namespace detail

inline SourceUnit gen_sw_regopt(const KernelSpec& spec) {
  detail::require(spec, Strategy::SwRegopt);
  return detail::compose(gen_driver(spec, spec.layout), gen_permutation_regopt(spec.layout));
}

inline SourceUnit gen_sw_mem(const KernelSpec& spec) {
  detail::require(spec, Strategy::SwMem);
  return detail::compose(gen_driver(spec, spec.layout), gen_permutation_mem(spec.layout));
}

inline SourceUnit gen_shatr_kernel(const KernelSpec& spec) {
  detail::require(spec, Strategy::Shatr);
  return detail::compose(gen_driver(spec, spec.layout), gen_permutation_shatr(spec.layout));
}

inline SourceUnit generate_kernel(const KernelSpec& spec) {
  switch (spec.strategy) {
    case Strategy::SwRegopt: return gen_sw_regopt(spec);
    case Strategy::SwMem: return gen_sw_mem(spec);
    case Strategy::Shatr: return gen_shatr_kernel(spec);
  }
  throw std::invalid_argument("unknown strategy");
}

}  // namespace shatrsim::kernels
