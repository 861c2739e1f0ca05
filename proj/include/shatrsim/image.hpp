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

// Line-oriented text form of an AssembledProgram:
//
//   shatrsim-image 1
//   entry 0x0
//   code 00a00513
//   data 0x200 0102a0ff...
//
// Symbols are not stored.

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "shatrsim/hex.hpp"
#include "shatrsim/program.hpp"

namespace shatrsim {

inline constexpr std::string_view kImageMagic = "shatrsim-image 1";

class ImageFormatError : public std::runtime_error {
 public:
  ImageFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what) {}
};

inline std::string write_image(const AssembledProgram& image) {
  std::ostringstream o;
  char buf[32];
  o << kImageMagic << "\n";
  std::snprintf(buf, sizeof buf, "entry 0x%llx\n", static_cast<unsigned long long>(image.entry_offset));
  o << buf;
  for (std::uint32_t w : image.words()) {
    std::snprintf(buf, sizeof buf, "code %08x\n", w);
    o << buf;
  }
  for (const auto& seg : image.data) {
    if (seg.bytes.empty()) continue;
    std::snprintf(buf, sizeof buf, "data 0x%llx ", static_cast<unsigned long long>(seg.address));
    o << buf << to_hex(seg.bytes) << "\n";
  }
  return o.str();
}

inline AssembledProgram read_image(std::string_view text) {
  AssembledProgram image;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto number = [&](const std::string& s, int base) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used, base);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw ImageFormatError(lineno, "malformed number '" + s + "'");
    return static_cast<std::uint64_t>(v);
  };
  bool seen_magic = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!seen_magic) {
      if (line != kImageMagic) throw ImageFormatError(lineno, "not a shatrsim image");
      seen_magic = true;
      continue;
    }
    std::istringstream fields(line);
    std::string kind, a, b, extra;
    fields >> kind >> a >> b >> extra;
    if (!extra.empty()) throw ImageFormatError(lineno, "trailing fields");
    if (kind == "entry" && b.empty()) {
      image.entry_offset = number(a, 0);
    } else if (kind == "code" && b.empty()) {
      const std::uint64_t w = number(a, 16);
      if (a.size() != 8) throw ImageFormatError(lineno, "code words have 8 hex digits");
      image.push_word(static_cast<std::uint32_t>(w));
    } else if (kind == "data" && !b.empty()) {
      auto bytes = from_hex(b);
      if (!bytes) throw ImageFormatError(lineno, "malformed data bytes");
      image.data.push_back({number(a, 0), std::move(*bytes)});
    } else {
      throw ImageFormatError(lineno, "unrecognized line");
    }
  }
  if (!seen_magic) throw ImageFormatError(lineno, "empty image");
  return image;
}

}  // namespace shatrsim
