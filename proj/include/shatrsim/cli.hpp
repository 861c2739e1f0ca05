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

// The `shatrsim` command line.
//
//   shatrsim validate    [--variant V] [--strategy S] [--vectors PATH]...
//   shatrsim bench       [same] [--format json|csv|text] [--out FILE]
//   shatrsim gen-kernels [--variant V] [--strategy S] [--out DIR]
//   shatrsim asm  FILE.s [--out IMAGE]
//   shatrsim disasm IMAGE [--out FILE.s]
//
// Exit status: 0 everything passed, 1 a digest mismatch or guest fault,
// 2 a usage, input or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shatrsim/assembler.hpp"
#include "shatrsim/bench.hpp"
#include "shatrsim/cavp.hpp"
#include "shatrsim/image.hpp"
#include "shatrsim/kernels.hpp"

namespace shatrsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Raised for bad inputs; maps to exit status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<std::string> variants;
  std::vector<std::string> strategies;
  std::vector<std::string> vectors;
  std::uint64_t mem_size = emu::kDefaultMemorySize;
  std::uint64_t mem_latency = 0;
  std::uint64_t shatr_cycles = 1;
  std::uint64_t budget = bench::kDefaultBudget;
  std::string format = "text";
  std::string out;
  std::string input;
  bool strict = false;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

inline std::vector<keccak::Variant> selected_variants(const Options& o) {
  std::vector<keccak::Variant> v;
  for (const auto& name : o.variants) v.push_back(keccak::parse_variant(name));
  if (v.empty()) v.assign(keccak::kAllVariants.begin(), keccak::kAllVariants.end());
  return v;
}

inline std::vector<kernels::Strategy> selected_strategies(const Options& o) {
  std::vector<kernels::Strategy> s;
  for (const auto& name : o.strategies) s.push_back(kernels::parse_strategy(name));
  if (s.empty()) s.assign(kernels::kAllStrategies.begin(), kernels::kAllStrategies.end());
  return s;
}

inline std::vector<cavp::CavpVectorSet> load_vectors(const Options& o, std::ostream& err) {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> roots = o.vectors;
#ifdef SHATRSIM_DATA_DIR
  if (roots.empty()) roots.push_back(cavp::bundled_data_dir().string());
#endif
  if (roots.empty()) throw InputError("no --vectors given");
  for (const auto& r : roots) {
    std::error_code ec;
    if (std::filesystem::is_directory(r, ec)) {
      for (auto& p : cavp::rsp_files(r)) files.push_back(p);
    } else {
      files.emplace_back(r);
    }
  }

  const auto variants = selected_variants(o);
  std::optional<keccak::Variant> fallback;
  if (o.variants.size() == 1) fallback = variants.front();
  const auto policy = o.strict ? cavp::BitLengthPolicy::Error : cavp::BitLengthPolicy::Skip;

  std::vector<cavp::CavpVectorSet> sets;
  for (const auto& f : files) {
    const std::string text = read_file(f.string());
    cavp::CavpVectorSet set;
    try {
      set = cavp::parse_rsp(text, f.filename().string(), fallback, policy);
    } catch (const cavp::ParseError& e) {
      throw InputError(f.string() + ": " + e.what());
    }
    for (const auto& w : set.warnings) err << f.string() << ": warning: " << w << "\n";
    if (std::find(variants.begin(), variants.end(), set.variant) != variants.end()) sets.push_back(std::move(set));
  }
  std::size_t total = 0;
  for (const auto& s : sets) total += s.size();
  if (total == 0) throw InputError("no test vectors selected");
  return sets;
}

inline bench::BenchConfig config(const Options& o) {
  bench::BenchConfig c;
  c.memory_size = o.mem_size;
  c.cost.extra_mem_access_cycles = o.mem_latency;
  c.cost.shatr_cycles = o.shatr_cycles;
  c.budget = o.budget;
  if (c.memory_size < c.layout.message + 0x1000)
    throw InputError("--mem-size is too small for the guest layout");
  return c;
}

inline void add_run_options(CLI::App* sub, Options& o) {
  sub->add_option("--variant", o.variants, "SHA-3 variant(s): sha3-224, sha3-256, sha3-384, sha3-512")
      ->delimiter(',')
      ->check(CLI::IsMember({"sha3-224", "sha3-256", "sha3-384", "sha3-512"}));
  sub->add_option("--strategy", o.strategies, "Kernel strategy(ies): sw-regopt, sw-mem, shatr")
      ->delimiter(',')
      ->check(CLI::IsMember({"sw-regopt", "sw-mem", "shatr"}));
}

inline void add_machine_options(CLI::App* sub, Options& o) {
  sub->add_option("--vectors", o.vectors, "CAVP .rsp file or directory (repeatable)");
  sub->add_option("--mem-size", o.mem_size, "Guest memory size in bytes (K/M suffixes allowed)")
      ->transform(CLI::AsSizeValue(false));
  sub->add_option("--mem-latency", o.mem_latency, "Extra cycles per load or store");
  sub->add_option("--shatr-cycles", o.shatr_cycles, "Cycles charged per shatr instruction");
  sub->add_option("--budget", o.budget, "Instruction budget per kernel run");
  sub->add_flag("--strict", o.strict, "Reject CAVP records whose Len is not a whole number of bytes");
}

inline int run_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto sets = load_vectors(o, err);
  const auto report = bench::run_benchmark(sets, selected_strategies(o), config(o));
  std::size_t failures = 0;
  for (const auto& h : report.host)
    if (!h.passed) {
      ++failures;
      out << "FAIL host " << keccak::variant_name(h.variant) << " " << h.source << " #" << h.index << "\n";
    }
  for (const auto& v : report.vectors)
    if (!v.passed) {
      ++failures;
      out << "FAIL " << kernels::strategy_name(v.strategy) << " " << keccak::variant_name(v.variant) << " "
          << v.source << " #" << v.index << ": " << v.error << "\n";
    }
  for (const auto& g : report.groups)
    out << keccak::variant_name(g.variant) << " " << kernels::strategy_name(g.strategy) << " "
        << cavp::class_name(g.vector_class) << ": " << g.passed << "/" << g.vectors << " passed\n";
  std::size_t host_ok = 0;
  for (const auto& h : report.host) host_ok += h.passed;
  out << "host: " << host_ok << "/" << report.host.size() << " passed\n";
  out << (failures == 0 ? "all vectors passed\n" : std::to_string(failures) + " failure(s)\n");
  return failures == 0 ? kExitOk : kExitFailed;
}

inline int run_bench(const Options& o, std::ostream& out, std::ostream& err) {
  const auto format = bench::parse_format(o.format);
  const auto sets = load_vectors(o, err);
  const auto report = bench::run_benchmark(sets, selected_strategies(o), config(o));
  write_output(o.out, bench::emit_report(report, format), out);
  return report.all_passed() ? kExitOk : kExitFailed;
}

inline int run_gen_kernels(const Options& o, std::ostream& out) {
  const std::filesystem::path dir = o.out.empty() ? "." : o.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create " + dir.string());
  for (auto v : selected_variants(o))
    for (auto s : selected_strategies(o)) {
      const kernels::KernelSpec spec{v, s, {}};
      const auto path = dir / kernels::kernel_file_name(spec);
      std::ofstream f(path, std::ios::binary);
      if (!f) throw InputError("cannot write " + path.string());
      f << kernels::generate_kernel(spec).text();
      out << path.string() << "\n";
    }
  return kExitOk;
}

inline std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  return read_file(path);
}

inline int run_asm(const Options& o, std::ostream& out) {
  AssembledProgram image;
  try {
    image = asmr::assemble(read_input(o.input));
  } catch (const asmr::AssemblyError& e) {
    throw InputError(o.input + ": " + e.what());
  }
  write_output(o.out, write_image(image), out);
  return kExitOk;
}

inline int run_disasm(const Options& o, std::ostream& out) {
  std::string text;
  try {
    text = asmr::disassemble(read_image(read_input(o.input))).text();
  } catch (const std::exception& e) {
    throw InputError(o.input + ": " + e.what());
  }
  write_output(o.out, text, out);
  return kExitOk;
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"RV64 emulator with a Keccak-f round instruction, SHA-3 kernels and benchmarks", "shatrsim"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "Check every kernel against known-answer vectors");
  detail::add_run_options(validate, o);
  detail::add_machine_options(validate, o);

  auto* benchc = app.add_subcommand("bench", "Run the benchmark and print a report");
  detail::add_run_options(benchc, o);
  detail::add_machine_options(benchc, o);
  benchc->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
  benchc->add_option("--out", o.out, "Write the report to this file");

  auto* gen = app.add_subcommand("gen-kernels", "Write the generated kernel sources");
  detail::add_run_options(gen, o);
  gen->add_option("--out", o.out, "Output directory");

  auto* as = app.add_subcommand("asm", "Assemble a source file into a text image");
  as->add_option("input", o.input, "Assembly source, or - for stdin")->required();
  as->add_option("--out", o.out, "Output image file");

  auto* dis = app.add_subcommand("disasm", "Disassemble a text image");
  dis->add_option("input", o.input, "Image file, or - for stdin")->required();
  dis->add_option("--out", o.out, "Output source file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) return detail::run_validate(o, out, err);
    if (benchc->parsed()) return detail::run_bench(o, out, err);
    if (gen->parsed()) return detail::run_gen_kernels(o, out);
    if (as->parsed()) return detail::run_asm(o, out);
    if (dis->parsed()) return detail::run_disasm(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

inline int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("shatrsim");
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace shatrsim::cli
