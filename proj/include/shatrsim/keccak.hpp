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

// Host-side Keccak-f[1600] and the four fixed-length SHA-3 digests.
//
// The state is 25 64-bit lanes. Lane (x, y) lives at linear index 5*y + x and
// serializes least-significant byte first, so byte 8*i + k of the 200-byte
// state string is byte k of lane i.

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace shatrsim::keccak {

inline constexpr std::size_t kLaneCount = 25;
inline constexpr std::size_t kStateBytes = 200;
inline constexpr unsigned kRounds = 24;

struct KeccakState {
  std::array<std::uint64_t, kLaneCount> lanes{};

  static constexpr std::size_t index(unsigned x, unsigned y) noexcept {
    return 5 * (y % 5) + (x % 5);
  }

  constexpr std::uint64_t& at(unsigned x, unsigned y) noexcept { return lanes[index(x, y)]; }
  constexpr std::uint64_t at(unsigned x, unsigned y) const noexcept { return lanes[index(x, y)]; }

  std::array<std::uint8_t, kStateBytes> to_bytes() const noexcept {
    std::array<std::uint8_t, kStateBytes> out{};
    for (std::size_t i = 0; i < kLaneCount; ++i)
      for (unsigned k = 0; k < 8; ++k)
        out[8 * i + k] = static_cast<std::uint8_t>(lanes[i] >> (8 * k));
    return out;
  }

  static KeccakState from_bytes(std::span<const std::uint8_t, kStateBytes> bytes) noexcept {
    KeccakState s;
    for (std::size_t i = 0; i < kLaneCount; ++i)
      for (unsigned k = 0; k < 8; ++k)
        s.lanes[i] |= static_cast<std::uint64_t>(bytes[8 * i + k]) << (8 * k);
    return s;
  }

  friend constexpr KeccakState operator^(const KeccakState& a, const KeccakState& b) noexcept {
    KeccakState r;
    for (std::size_t i = 0; i < kLaneCount; ++i) r.lanes[i] = a.lanes[i] ^ b.lanes[i];
    return r;
  }

  friend constexpr bool operator==(const KeccakState&, const KeccakState&) = default;
};

static_assert(sizeof(KeccakState) == kStateBytes);

struct RoundConstants {
  std::array<std::uint64_t, kRounds> rc{};
};

/// Rotation amount for lane (x, y) is offset[x][y].
struct RhoOffsets {
  std::array<std::array<unsigned, 5>, 5> offset{};
};

namespace detail {

// x^8 + x^6 + x^5 + x^4 + 1 over GF(2); returns the output bit and advances.
constexpr bool lfsr_step(std::uint8_t& reg) noexcept {
  const bool out = (reg & 0x01) != 0;
  reg = (reg & 0x80) ? static_cast<std::uint8_t>((reg << 1) ^ 0x71)
                     : static_cast<std::uint8_t>(reg << 1);
  return out;
}

}  // namespace detail

/// Derives the 24 iota constants from the degree-8 LFSR. Bit 2^j - 1 of
/// round i is output bit j + 7*i of the generator.
constexpr RoundConstants generate_round_constants() noexcept {
  RoundConstants table;
  std::uint8_t reg = 0x01;
  for (unsigned round = 0; round < kRounds; ++round) {
    std::uint64_t rc = 0;
    for (unsigned j = 0; j < 7; ++j) {
      if (detail::lfsr_step(reg)) rc |= std::uint64_t{1} << ((1u << j) - 1);
    }
    table.rc[round] = rc;
  }
  return table;
}

constexpr RhoOffsets generate_rho_offsets() noexcept {
  RhoOffsets table;
  unsigned x = 1, y = 0;
  for (unsigned t = 0; t < 24; ++t) {
    table.offset[x][y] = ((t + 1) * (t + 2) / 2) % 64;
    const unsigned nx = y;
    const unsigned ny = (2 * x + 3 * y) % 5;
    x = nx;
    y = ny;
  }
  return table;
}

inline const RoundConstants& round_constants() noexcept {
  static const RoundConstants table = generate_round_constants();
  return table;
}

inline const RhoOffsets& rho_offsets() noexcept {
  static const RhoOffsets table = generate_rho_offsets();
  return table;
}

inline void check_round(unsigned round) {
  if (round >= kRounds)
    throw std::domain_error("keccak round index " + std::to_string(round) + " outside 0..23");
}

inline KeccakState theta(const KeccakState& a) noexcept {
  std::array<std::uint64_t, 5> column{};
  for (unsigned x = 0; x < 5; ++x)
    column[x] = a.at(x, 0) ^ a.at(x, 1) ^ a.at(x, 2) ^ a.at(x, 3) ^ a.at(x, 4);
  KeccakState out;
  for (unsigned x = 0; x < 5; ++x) {
    const std::uint64_t d = column[(x + 4) % 5] ^ std::rotl(column[(x + 1) % 5], 1);
    for (unsigned y = 0; y < 5; ++y) out.at(x, y) = a.at(x, y) ^ d;
  }
  return out;
}

inline KeccakState rho(const KeccakState& a) noexcept {
  const auto& r = rho_offsets();
  KeccakState out;
  for (unsigned x = 0; x < 5; ++x)
    for (unsigned y = 0; y < 5; ++y)
      out.at(x, y) = std::rotl(a.at(x, y), static_cast<int>(r.offset[x][y]));
  return out;
}

inline KeccakState pi(const KeccakState& a) noexcept {
  KeccakState out;
  for (unsigned x = 0; x < 5; ++x)
    for (unsigned y = 0; y < 5; ++y) out.at(x, y) = a.at((x + 3 * y) % 5, x);
  return out;
}

inline KeccakState chi(const KeccakState& a) noexcept {
  KeccakState out;
  for (unsigned y = 0; y < 5; ++y)
    for (unsigned x = 0; x < 5; ++x)
      out.at(x, y) = a.at(x, y) ^ (~a.at((x + 1) % 5, y) & a.at((x + 2) % 5, y));
  return out;
}

inline KeccakState iota(const KeccakState& a, unsigned round) {
  check_round(round);
  KeccakState out = a;
  out.lanes[0] ^= round_constants().rc[round];
  return out;
}

inline KeccakState keccak_round(const KeccakState& a, unsigned round) {
  check_round(round);
  return iota(chi(pi(rho(theta(a)))), round);
}

inline KeccakState keccak_f(const KeccakState& a) {
  KeccakState s = a;
  for (unsigned round = 0; round < kRounds; ++round) s = keccak_round(s, round);
  return s;
}

// ---------------------------------------------------------------------------
// Sponge

enum class Variant : std::uint8_t { Sha3_224, Sha3_256, Sha3_384, Sha3_512 };

inline constexpr std::array<Variant, 4> kAllVariants = {Variant::Sha3_224, Variant::Sha3_256,
                                                       Variant::Sha3_384, Variant::Sha3_512};

struct SpongeParams {
  std::size_t rate_bytes = 0;
  std::size_t capacity_bytes = 0;
  std::size_t digest_bytes = 0;

  friend constexpr bool operator==(const SpongeParams&, const SpongeParams&) = default;
};

constexpr SpongeParams params(Variant v) noexcept {
  switch (v) {
    case Variant::Sha3_224: return {144, 56, 28};
    case Variant::Sha3_256: return {136, 64, 32};
    case Variant::Sha3_384: return {104, 96, 48};
    case Variant::Sha3_512: return {72, 128, 64};
  }
  return {};
}

constexpr std::string_view variant_name(Variant v) noexcept {
  switch (v) {
    case Variant::Sha3_224: return "sha3-224";
    case Variant::Sha3_256: return "sha3-256";
    case Variant::Sha3_384: return "sha3-384";
    case Variant::Sha3_512: return "sha3-512";
  }
  return "?";
}

inline Variant parse_variant(std::string_view name) {
  for (Variant v : kAllVariants)
    if (variant_name(v) == name) return v;
  throw std::invalid_argument("unknown SHA-3 variant '" + std::string(name) + "'");
}

constexpr bool is_standard_rate(std::size_t rate_bytes) noexcept {
  return rate_bytes == 144 || rate_bytes == 136 || rate_bytes == 104 || rate_bytes == 72;
}

constexpr bool is_standard(const SpongeParams& p) noexcept {
  for (Variant v : kAllVariants)
    if (params(v) == p) return true;
  return false;
}

inline constexpr std::uint8_t kDomainPadByte = 0x06;
inline constexpr std::uint8_t kFinalPadBit = 0x80;

/// SHA-3 pad10*1 at byte granularity: appends 0x06 ... 0x80, with the two
/// merged into 0x86 when only one pad byte fits.
inline std::vector<std::uint8_t> pad_message(std::span<const std::uint8_t> message,
                                             std::size_t rate_bytes) {
  if (!is_standard_rate(rate_bytes))
    throw std::invalid_argument("not a SHA-3 rate: " + std::to_string(rate_bytes));
  const std::size_t padded = (message.size() / rate_bytes + 1) * rate_bytes;
  std::vector<std::uint8_t> out(padded, 0);
  std::copy(message.begin(), message.end(), out.begin());
  out[message.size()] ^= kDomainPadByte;
  out[padded - 1] ^= kFinalPadBit;
  return out;
}

/// Inverse of pad_message. Throws if the tail is not a well-formed pad.
inline std::vector<std::uint8_t> unpad_message(std::span<const std::uint8_t> padded,
                                               std::size_t rate_bytes) {
  if (!is_standard_rate(rate_bytes) || padded.empty() || padded.size() % rate_bytes != 0)
    throw std::invalid_argument("padded length is not a positive multiple of the rate");
  std::vector<std::uint8_t> tail(padded.end() - static_cast<std::ptrdiff_t>(rate_bytes),
                                 padded.end());
  tail.back() ^= kFinalPadBit;
  std::size_t pos = tail.size();
  while (pos > 0 && tail[pos - 1] == 0) --pos;
  if (pos == 0 || tail[pos - 1] != kDomainPadByte)
    throw std::invalid_argument("malformed SHA-3 padding");
  const std::size_t length = padded.size() - rate_bytes + (pos - 1);
  return {padded.begin(), padded.begin() + static_cast<std::ptrdiff_t>(length)};
}

inline void absorb_block(KeccakState& state, std::span<const std::uint8_t> block) noexcept {
  for (std::size_t i = 0; i < block.size(); ++i)
    state.lanes[i / 8] ^= static_cast<std::uint64_t>(block[i]) << (8 * (i % 8));
}

inline std::vector<std::uint8_t> sha3_digest(std::span<const std::uint8_t> message,
                                             const SpongeParams& p) {
  if (!is_standard(p)) throw std::invalid_argument("not a SHA-3 parameter set");
  const auto padded = pad_message(message, p.rate_bytes);
  KeccakState state;
  for (std::size_t off = 0; off < padded.size(); off += p.rate_bytes) {
    absorb_block(state, std::span(padded).subspan(off, p.rate_bytes));
    state = keccak_f(state);
  }
  const auto bytes = state.to_bytes();
  return {bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(p.digest_bytes)};
}

inline std::vector<std::uint8_t> sha3_digest(std::span<const std::uint8_t> message, Variant v) {
  return sha3_digest(message, params(v));
}

}  // namespace shatrsim::keccak
