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

// Standalone acceptance run: one PASS/FAIL line per criterion, nonzero exit
// if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "acceptance_paths.hpp"
#include "oracle/keccak_bits.hpp"
#include "oracle/rv_encode.hpp"
#include "shatrsim/assembler.hpp"
#include "shatrsim/bench.hpp"
#include "shatrsim/cavp.hpp"
#include "shatrsim/kernels.hpp"
#include "shatrsim/shatr_unit.hpp"

using namespace shatrsim;
using isa::Category;
using kernels::Strategy;
using keccak::KeccakState;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& why) {
    if (!cond && ok) {
      ok = false;
      detail = why;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int places = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

KeccakState random_state(std::mt19937_64& g) {
  KeccakState s;
  for (auto& l : s.lanes) l = g();
  return s;
}

const std::vector<Strategy> kStrategies(kernels::kAllStrategies.begin(), kernels::kAllStrategies.end());

std::string group_name(keccak::Variant v, cavp::VectorClass c) {
  return std::string(keccak::variant_name(v)) + "/" + std::string(cavp::class_name(c));
}

// ---------------------------------------------------------------------------

Verdict known_answers(const std::vector<cavp::CavpVectorSet>& sets, const bench::BenchReport& report,
                      double elapsed) {
  Verdict v;
  std::map<std::pair<keccak::Variant, cavp::VectorClass>, std::size_t> per;
  for (const auto& set : sets)
    for (const auto& vec : set.vectors) ++per[{set.variant, vec.vector_class}];
  for (auto var : keccak::kAllVariants)
    for (auto c : cavp::kAllClasses)
      v.require(per[{var, c}] >= 5, group_name(var, c) + " has fewer than 5 vectors");
  for (const auto& h : report.host) v.require(h.passed, "host mismatch in " + h.source);
  for (const auto& r : report.vectors)
    v.require(r.passed, std::string(kernels::strategy_name(r.strategy)) + " " + r.source + " #" +
                            std::to_string(r.index) + ": " + r.error);
  for (auto var : keccak::kAllVariants)
    for (auto s : kStrategies)
      for (auto c : cavp::kAllClasses) {
        const auto* g = report.group(var, s, c);
        v.require(g && g->passed >= 5, group_name(var, c) + " " + std::string(kernels::strategy_name(s)) +
                                           " has fewer than 5 passing vectors");
      }
  v.require(elapsed < 120.0, "took " + fmt(elapsed) + " s");
  if (v.ok)
    v.detail = std::to_string(report.host.size()) + " host + " + std::to_string(report.vectors.size()) +
               " guest runs in " + fmt(elapsed) + " s";
  return v;
}

Verdict oracle_equivalence() {
  Verdict v;
  auto g = std::mt19937_64{0xACCE55};
  emu::MachineState st;
  constexpr int kPairs = 2000, kStates = 200;
  for (int i = 0; i < kPairs && v.ok; ++i) {
    const auto s = random_state(g);
    const unsigned r = static_cast<unsigned>(g() % 24);
    shatr::LaneRegisterFile file = s;
    st.gpr[9] = r;
    shatr::execute_shatr(st, file, 9);
    v.require(file == keccak::keccak_round(s, r), "execute_shatr != keccak_round at round " + std::to_string(r));
    v.require(file.lanes == oracle::round(s.lanes, static_cast<int>(r)), "round disagrees with bit oracle");
  }
  for (int i = 0; i < kStates && v.ok; ++i) {
    const auto s = random_state(g);
    shatr::ShatrUnit unit;
    unit.load(s);
    for (unsigned r = 0; r < 24; ++r) {
      st.gpr[9] = r;
      unit.execute(shatr::decode_shatr(shatr::encode_shatr(9)), st);
    }
    v.require(unit.lanes() == keccak::keccak_f(s), "24 chained shatr != keccak_f");
    v.require(unit.lanes().lanes == oracle::permute(s.lanes), "permutation disagrees with bit oracle");
  }
  if (v.ok) v.detail = std::to_string(kPairs) + " round pairs, " + std::to_string(kStates) + " chained states";
  return v;
}

Verdict trends(const bench::BenchReport& report) {
  Verdict v;
  auto mem_share = [](const bench::GroupStats& g) {
    return g.mix_percent[static_cast<std::size_t>(Category::MemRead)] +
           g.mix_percent[static_cast<std::size_t>(Category::MemWrite)];
  };
  double alu_lo = 100, alu_hi = 0, sp_lo = 1e9, sp_hi = 0;
  for (auto var : keccak::kAllVariants)
    for (auto c : cavp::kAllClasses) {
      const std::string n = group_name(var, c);
      const auto* reg = report.group(var, Strategy::SwRegopt, c);
      const auto* mem = report.group(var, Strategy::SwMem, c);
      const auto* sh = report.group(var, Strategy::Shatr, c);
      if (!reg || !mem || !sh) {
        v.require(false, n + " missing a strategy");
        continue;
      }
      v.require(sh->per_round_total < reg->per_round_total && reg->per_round_total < mem->per_round_total,
                n + " per-round ordering");
      v.require(4 * sh->per_round_total <= reg->per_round_total, n + " shatr above a quarter of sw-regopt");
      const double s_reg = static_cast<double>(reg->cycles) / static_cast<double>(sh->cycles);
      const double s_mem = static_cast<double>(mem->cycles) / static_cast<double>(sh->cycles);
      v.require(s_mem > s_reg && s_reg > 1.0, n + " speedup ordering");
      const double alu = sh->mix_percent[static_cast<std::size_t>(Category::IntAlu)];
      v.require(alu >= 40.0 && alu <= 75.0, n + " shatr ALU share " + fmt(alu) + "%");
      v.require(mem_share(*mem) > mem_share(*reg), n + " memory share ordering");
      alu_lo = std::min(alu_lo, alu), alu_hi = std::max(alu_hi, alu);
      sp_lo = std::min(sp_lo, s_reg), sp_hi = std::max(sp_hi, s_reg);
    }
  if (v.ok) {
    const auto* reg = report.group(keccak::Variant::Sha3_256, Strategy::SwRegopt, cavp::VectorClass::Long);
    const auto* mem = report.group(keccak::Variant::Sha3_256, Strategy::SwMem, cavp::VectorClass::Long);
    const auto* sh = report.group(keccak::Variant::Sha3_256, Strategy::Shatr, cavp::VectorClass::Long);
    v.detail = "per round (sha3-256/long) shatr " + fmt(sh->per_round_total) + " < sw-regopt " +
               fmt(reg->per_round_total) + " < sw-mem " + fmt(mem->per_round_total) + "; speedup vs sw-regopt " +
               fmt(sp_lo) + "-" + fmt(sp_hi) + "x; shatr ALU " + fmt(alu_lo, 1) + "-" + fmt(alu_hi, 1) + "%";
  }
  return v;
}

Verdict region_access_counts(const std::vector<cavp::CavpVectorSet>& sets) {
  Verdict v;
  bench::BenchConfig cfg;
  bench::KernelCache cache;
  std::size_t regions = 0;
  for (auto var : keccak::kAllVariants) {
    const auto& img = cache.get(var, Strategy::Shatr);
    for (std::size_t i = 0; i < img.word_count(); ++i) {
      const auto d = asmr::decode_any(img.word(i));
      if (d.category == Category::Csr)
        v.require(shatr::is_lane_csr(d.fields.csr), "non-lane CSR access in the shatr kernel");
    }
    const auto one = bench::run_kernel(img, Strategy::Shatr, {}, cfg);
    const auto* r1 = one.stats.region(emu::kPermutationRegion);
    v.require(r1 && r1->entry_count == 1 && r1->count(Category::Custom) == 24 && r1->count(Category::Csr) == 50,
              std::string(keccak::variant_name(var)) + " single-region counts");
    regions += r1 ? r1->entry_count : 0;
  }
  for (const auto& set : sets)
    for (const auto& vec : set.vectors) {
      const auto o = bench::run_kernel(cache.get(set.variant, Strategy::Shatr), Strategy::Shatr, vec.message, cfg);
      const auto* r = o.stats.region(emu::kPermutationRegion);
      if (!r) {
        v.require(false, set.source + " has no region");
        continue;
      }
      v.require(r->count(Category::Custom) == 24 * r->entry_count, set.source + " Custom count");
      v.require(r->count(Category::Csr) == 50 * r->entry_count, set.source + " CSR count");
      v.require(o.stats.count(Category::Custom) == r->count(Category::Custom), set.source + " Custom outside region");
      regions += r->entry_count;
    }
  if (v.ok) v.detail = std::to_string(regions) + " regions, each 24 Custom + 50 lane CSR";
  return v;
}

Verdict step_properties() {
  Verdict v;
  auto g = std::mt19937_64{0x57E95};
  constexpr int kCases = 2000;
  for (int i = 0; i < kCases && v.ok; ++i) {
    const auto a = random_state(g), b = random_state(g);
    KeccakState ab;
    for (unsigned k = 0; k < 25; ++k) ab.lanes[k] = a.lanes[k] ^ b.lanes[k];
    const unsigned r = static_cast<unsigned>(g() % 24);

    // theta: linear, adds the same column parity pair to every row.
    const auto ta = keccak::theta(a), tb = keccak::theta(b), tab = keccak::theta(ab);
    for (unsigned k = 0; k < 25; ++k) v.require(tab.lanes[k] == (ta.lanes[k] ^ tb.lanes[k]), "theta linearity");
    for (unsigned x = 0; x < 5; ++x)
      for (unsigned y = 1; y < 5; ++y)
        v.require((ta.lanes[KeccakState::index(x, y)] ^ a.lanes[KeccakState::index(x, y)]) ==
                      (ta.lanes[KeccakState::index(x, 0)] ^ a.lanes[KeccakState::index(x, 0)]),
                  "theta column effect");
    v.require(ta.lanes == oracle::theta(a.lanes), "theta vs oracle");

    // rho: per-lane rotation, popcount preserved.
    const auto ra = keccak::rho(a);
    for (unsigned k = 0; k < 25; ++k) v.require(std::popcount(ra.lanes[k]) == std::popcount(a.lanes[k]), "rho popcount");
    v.require(ra.lanes == oracle::rho(a.lanes), "rho vs oracle");

    // pi: lane permutation with period 24 on the non-origin lanes.
    const auto pa = keccak::pi(a);
    auto sa = a.lanes, sp = pa.lanes;
    std::sort(sa.begin(), sa.end());
    std::sort(sp.begin(), sp.end());
    v.require(sa == sp && pa.lanes[0] == a.lanes[0], "pi permutes lanes");
    v.require(pa.lanes == oracle::pi(a.lanes), "pi vs oracle");

    // chi: row-wise bijection, the only nonlinear step.
    const auto ca = keccak::chi(a);
    v.require(ca.lanes == oracle::chi(a.lanes), "chi vs oracle");
    const unsigned y = static_cast<unsigned>(g() % 5), z = static_cast<unsigned>(g() % 64);
    std::array<bool, 32> seen{};
    for (unsigned row = 0; row < 32; ++row) {
      KeccakState s = a;
      for (unsigned x = 0; x < 5; ++x) {
        auto& lane = s.lanes[KeccakState::index(x, y)];
        lane = (lane & ~(std::uint64_t{1} << z)) | (std::uint64_t{(row >> x) & 1u} << z);
      }
      const auto c = keccak::chi(s);
      unsigned out = 0;
      for (unsigned x = 0; x < 5; ++x) out |= static_cast<unsigned>((c.lanes[KeccakState::index(x, y)] >> z) & 1) << x;
      seen[out] = true;
    }
    v.require(std::all_of(seen.begin(), seen.end(), [](bool s) { return s; }), "chi row bijection");

    // iota: touches lane 0 only, involutive.
    const auto ia = keccak::iota(a, r);
    v.require(keccak::iota(ia, r) == a, "iota involution");
    for (unsigned k = 1; k < 25; ++k) v.require(ia.lanes[k] == a.lanes[k], "iota touches lane 0 only");
    v.require((ia.lanes[0] ^ a.lanes[0]) == oracle::round_constant_from_lfsr(static_cast<int>(r)), "iota constant");
  }
  if (v.ok) v.detail = std::to_string(kCases) + " cases per step";
  return v;
}

Verdict encoding_fixpoint() {
  Verdict v;
  auto g = std::mt19937_64{0xF1C5};
  constexpr int kWords = 20000;
  for (int i = 0; i < kWords && v.ok; ++i) {
    const auto s = oracle::rv::random_instruction(g);
    const auto d = isa::decode(s.word);
    v.require(isa::encode(d.op, d.fields) == s.word, "encode(decode(w)) != w for " + std::string(s.op->name));
    const auto text = asmr::format_instruction(d);
    v.require(asmr::assemble(".text\n    " + text + "\n").words() == std::vector<std::uint32_t>{s.word},
              "assemble(format) mismatch: " + text);
  }
  std::size_t kernels_checked = 0;
  for (auto var : keccak::kAllVariants)
    for (auto s : kStrategies) {
      const auto img = asmr::assemble(kernels::generate_kernel({var, s, {}}));
      const auto again = asmr::assemble(asmr::disassemble(img));
      v.require(again.code == img.code && again.data == img.data && again.entry_offset == img.entry_offset,
                kernels::kernel_file_name({var, s, {}}) + " disassembly round trip");
      ++kernels_checked;
    }
  if (v.ok) v.detail = std::to_string(kWords) + " random words, " + std::to_string(kernels_checked) + " kernels";
  return v;
}

Verdict deterministic_json(const std::vector<cavp::CavpVectorSet>& sets, const bench::BenchReport& first) {
  Verdict v;
  const std::string a = bench::emit_report(first, bench::Format::Json);
  const std::string b = bench::emit_report(bench::run_benchmark(sets, kStrategies), bench::Format::Json);
  v.require(a == b, "reports differ");
  if (v.ok) v.detail = std::to_string(a.size()) + " identical bytes";
  return v;
}

Verdict suite_runtime(Clock::time_point start) {
  Verdict v;
  const auto t0 = Clock::now();
  for (const char* path : acceptance_paths::kUnitTestBinaries) {
    const std::string cmd = std::string("\"") + path + "\" >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    const bool passed = raw != -1 && WIFEXITED(raw) && WEXITSTATUS(raw) == 0;
    v.require(passed, std::string(path) + " failed");
  }
  const double units = seconds_since(t0), own = seconds_since(start);
  v.require(own < 300.0, "took " + fmt(own) + " s");
  if (v.ok)
    v.detail = "unit suites " + fmt(units) + " s, acceptance total " + fmt(own) + " s";
  return v;
}

}  // namespace

int main() {
  const auto start = Clock::now();
  int failures = 0;
  auto report_line = [&](const char* id, const char* name, const std::function<Verdict()>& fn) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.ok;
    std::printf("%s %s %s: %s [%.2fs]\n", v.ok ? "PASS" : "FAIL", id, name, v.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  };

  std::vector<cavp::CavpVectorSet> sets;
  bench::BenchReport report;
  report_line("C1", "known-answer vectors", [&] {
    const auto t0 = Clock::now();
    sets = cavp::load_bundled();
    report = bench::run_benchmark(sets, kStrategies);
    return known_answers(sets, report, seconds_since(t0));
  });
  report_line("C2", "oracle equivalence", oracle_equivalence);
  report_line("C3", "performance trends", [&] { return trends(report); });
  report_line("C4", "shatr region access counts", [&] { return region_access_counts(sets); });
  report_line("C5", "step properties", step_properties);
  report_line("C6", "encode/decode and assembly round trip", encoding_fixpoint);
  report_line("C7", "deterministic JSON report", [&] { return deterministic_json(sets, report); });
  report_line("C8", "suite runtime", [&] { return suite_runtime(start); });
  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
