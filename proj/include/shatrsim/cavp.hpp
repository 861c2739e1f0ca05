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

// Reader for NIST CAVP SHA-3 known-answer files (.rsp).
//
//   #  comment
//   [L = 256]
//
//   Len = 8
//   Msg = e9
//   MD = f0d0...
//
// Len is in bits. Len = 0 records carry a placeholder "Msg = 00".

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shatrsim/hex.hpp"
#include "shatrsim/keccak.hpp"

namespace shatrsim::cavp {

using keccak::Variant;

enum class VectorClass : std::uint8_t { Short, Long };

inline constexpr std::array<VectorClass, 2> kAllClasses = {VectorClass::Short, VectorClass::Long};

/// Messages up to this many bits count as short when the file name does not say.
inline constexpr std::uint64_t kShortThresholdBits = 1024;

constexpr std::string_view class_name(VectorClass c) noexcept {
  return c == VectorClass::Short ? "short" : "long";
}

inline VectorClass parse_class(std::string_view name) {
  if (name == "short") return VectorClass::Short;
  if (name == "long") return VectorClass::Long;
  throw std::invalid_argument("unknown vector class '" + std::string(name) + "'");
}

enum class BitLengthPolicy : std::uint8_t { Skip, Error };

struct CavpVector {
  std::size_t index = 0;  // position among accepted records of the source
  std::uint64_t length_bits = 0;
  std::vector<std::uint8_t> message;
  std::vector<std::uint8_t> digest;
  VectorClass vector_class = VectorClass::Short;

  friend bool operator==(const CavpVector&, const CavpVector&) = default;
};

struct CavpVectorSet {
  std::string source;
  Variant variant = Variant::Sha3_256;
  std::vector<CavpVector> vectors;
  std::vector<std::string> warnings;

  bool empty() const noexcept { return vectors.empty(); }
  std::size_t size() const noexcept { return vectors.size(); }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Class implied by a CAVP file name, if any.
inline std::optional<VectorClass> class_from_source(std::string_view source) {
  if (source.find("ShortMsg") != std::string_view::npos) return VectorClass::Short;
  if (source.find("LongMsg") != std::string_view::npos) return VectorClass::Long;
  return std::nullopt;
}

inline VectorClass classify(std::uint64_t length_bits, std::optional<VectorClass> from_source) {
  if (from_source) return *from_source;
  return length_bits <= kShortThresholdBits ? VectorClass::Short : VectorClass::Long;
}

namespace detail {

inline std::optional<Variant> variant_from_bits(unsigned long bits) {
  for (Variant v : keccak::kAllVariants)
    if (keccak::params(v).digest_bytes * 8 == bits) return v;
  return std::nullopt;
}

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::optional<unsigned long> parse_uint(std::string_view s) {
  if (s.empty() || s.size() > 18) return std::nullopt;
  unsigned long v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + static_cast<unsigned long>(c - '0');
  }
  return v;
}

/// "[L = 256]" -> 256.
inline std::optional<unsigned long> header_bits(std::string_view line) {
  if (line.size() < 2 || line.front() != '[' || line.back() != ']') return std::nullopt;
  const auto inner = trim(line.substr(1, line.size() - 2));
  const auto eq = inner.find('=');
  if (eq == std::string_view::npos || trim(inner.substr(0, eq)) != "L") return std::nullopt;
  return parse_uint(trim(inner.substr(eq + 1)));
}

}  // namespace detail

/// Variant named by a file name such as "SHA3_256ShortMsg.rsp" or "sha3-256.rsp".
inline std::optional<Variant> variant_from_source(std::string_view source) {
  std::string lowered(source);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const std::string name = std::filesystem::path(lowered).filename().string();
  for (Variant v : keccak::kAllVariants) {
    const std::string bits = std::to_string(keccak::params(v).digest_bytes * 8);
    if (name.find("sha3_" + bits) != std::string::npos || name.find("sha3-" + bits) != std::string::npos)
      return v;
  }
  return std::nullopt;
}

/// Variant named by the first "[L = N]" line, if any.
inline std::optional<Variant> variant_from_header(std::string_view contents) {
  std::istringstream in{std::string(contents)};
  for (std::string line; std::getline(in, line);)
    if (auto bits = detail::header_bits(detail::trim(line))) return detail::variant_from_bits(*bits);
  return std::nullopt;
}

inline CavpVectorSet parse_rsp(std::string_view contents, Variant variant, std::string source = {},
                               BitLengthPolicy policy = BitLengthPolicy::Skip) {
  CavpVectorSet set;
  set.source = std::move(source);
  set.variant = variant;
  const auto file_class = class_from_source(set.source);
  const std::size_t digest_bytes = keccak::params(variant).digest_bytes;

  struct Pending {
    std::size_t line = 0;
    std::uint64_t bits = 0;
    std::optional<std::vector<std::uint8_t>> msg;
  };
  std::optional<Pending> rec;

  std::istringstream in{std::string(contents)};
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      const auto bits = detail::header_bits(line);
      if (!bits) throw ParseError(lineno, "malformed section header");
      if (*bits != digest_bytes * 8)
        throw ParseError(lineno, "header L = " + std::to_string(*bits) + " does not match " +
                                     std::string(keccak::variant_name(variant)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(lineno, "expected 'key = value'");
    const auto key = detail::trim(line.substr(0, eq));
    const auto value = detail::trim(line.substr(eq + 1));

    if (key == "Len") {
      if (rec) throw ParseError(rec->line, "record is missing " + std::string(rec->msg ? "MD" : "Msg"));
      const auto bits = detail::parse_uint(value);
      if (!bits) throw ParseError(lineno, "malformed Len");
      rec = Pending{lineno, *bits, std::nullopt};
    } else if (key == "Msg") {
      if (!rec || rec->msg) throw ParseError(lineno, "Msg without a preceding Len");
      auto bytes = from_hex(value);
      if (!bytes) throw ParseError(lineno, "malformed hex in Msg");
      if (rec->bits == 0) {
        bytes->clear();
      } else if (rec->bits % 8 == 0 && bytes->size() != rec->bits / 8) {
        throw ParseError(lineno, "Msg has " + std::to_string(bytes->size()) + " bytes, Len says " +
                                     std::to_string(rec->bits / 8));
      }
      rec->msg = std::move(*bytes);
    } else if (key == "MD") {
      if (!rec || !rec->msg) throw ParseError(lineno, rec ? "MD without a preceding Msg" : "MD without a preceding Len");
      auto md = from_hex(value);
      if (!md) throw ParseError(lineno, "malformed hex in MD");
      if (md->size() != digest_bytes)
        throw ParseError(lineno, "MD has " + std::to_string(md->size()) + " bytes, expected " +
                                     std::to_string(digest_bytes));
      if (rec->bits % 8 != 0) {
        if (policy == BitLengthPolicy::Error)
          throw ParseError(rec->line, "Len = " + std::to_string(rec->bits) + " is not a whole number of bytes");
        set.warnings.push_back("line " + std::to_string(rec->line) + ": skipped Len = " +
                               std::to_string(rec->bits) + " (not a whole number of bytes)");
      } else {
        CavpVector v;
        v.index = set.vectors.size();
        v.length_bits = rec->bits;
        v.message = std::move(*rec->msg);
        v.digest = std::move(*md);
        v.vector_class = classify(v.length_bits, file_class);
        set.vectors.push_back(std::move(v));
      }
      rec.reset();
    } else {
      throw ParseError(lineno, "unexpected key '" + std::string(key) + "'");
    }
  }
  if (rec) throw ParseError(rec->line, "record is missing " + std::string(rec->msg ? "MD" : "Msg"));
  return set;
}

/// Variant from the header, then the file name, then `fallback`.
inline CavpVectorSet parse_rsp(std::string_view contents, std::string source,
                               std::optional<Variant> fallback = std::nullopt,
                               BitLengthPolicy policy = BitLengthPolicy::Skip) {
  auto v = variant_from_header(contents);
  if (!v) v = variant_from_source(source);
  if (!v) v = fallback;
  if (!v) throw ParseError(1, "cannot tell the SHA-3 variant of '" + source + "'");
  return parse_rsp(contents, *v, std::move(source), policy);
}

inline CavpVectorSet load_rsp_file(const std::filesystem::path& path,
                                   std::optional<Variant> fallback = std::nullopt,
                                   BitLengthPolicy policy = BitLengthPolicy::Skip) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_rsp(buf.str(), path.filename().string(), fallback, policy);
}

/// All .rsp files directly inside `dir`, sorted by name.
inline std::vector<std::filesystem::path> rsp_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".rsp") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

#ifdef SHATRSIM_DATA_DIR
inline std::filesystem::path bundled_data_dir() { return SHATRSIM_DATA_DIR; }

inline std::vector<CavpVectorSet> load_bundled() {
  std::vector<CavpVectorSet> sets;
  for (const auto& p : rsp_files(bundled_data_dir())) sets.push_back(load_rsp_file(p));
  return sets;
}
#endif

}  // namespace shatrsim::cavp
