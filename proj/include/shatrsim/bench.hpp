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

// Runs guest kernels over known-answer vectors and aggregates the counters
// into a report (JSON, CSV or a plain-text table). Every vector runs on its
// own machine; failures are recorded per vector and never stop the batch.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "shatrsim/assembler.hpp"
#include "shatrsim/cavp.hpp"
#include "shatrsim/hex.hpp"
#include "shatrsim/kernels.hpp"
#include "shatrsim/machine.hpp"
#include "shatrsim/shatr_unit.hpp"

namespace shatrsim::bench {

using cavp::VectorClass;
using emu::CategoryCounters;
using isa::Category;
using kernels::Strategy;
using keccak::Variant;

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000;
inline constexpr std::string_view kSchema = "shatrsim-bench/1";

struct BenchConfig {
  std::size_t memory_size = emu::kDefaultMemorySize;
  emu::CostModel cost{};
  std::uint64_t budget = kDefaultBudget;  // instructions per vector run
  kernels::GuestLayout layout{};
};

struct RunOutcome {
  std::optional<std::vector<std::uint8_t>> digest;
  std::string error;  // empty on a clean exit(0) with one emitted digest
  emu::ExecutionStats stats;
};

/// Places `message` at the layout's message address and runs one kernel.
inline RunOutcome run_kernel(const AssembledProgram& program, Strategy strategy,
                             std::span<const std::uint8_t> message, const BenchConfig& config) {
  RunOutcome out;
  try {
    emu::Machine m(config.memory_size, config.cost);
    if (strategy == Strategy::Shatr) shatr::attach(m);
    m.load_program(program);
    const std::uint64_t at = config.layout.message;
    if (at < program.end_address() && kCodeBase < at + message.size())
      throw emu::LoadError("message buffer overlaps the kernel image");
    if (!m.state().in_bounds(at, message.size()) || at + message.size() > m.stack_top())
      throw emu::LoadError("message does not fit in guest memory");
    std::copy(message.begin(), message.end(), m.state().memory.begin() + static_cast<std::ptrdiff_t>(at));
    m.state().set_x(emu::reg::kA0, at);
    m.state().set_x(emu::reg::kA1, message.size());
    try {
      const std::uint64_t status = m.run(config.budget);
      if (status != 0) out.error = "guest exited with status " + std::to_string(status);
    } catch (const std::exception& e) {
      out.error = e.what();
    }
    if (m.emitted().size() == 1)
      out.digest = m.emitted().front().bytes;
    else if (out.error.empty())
      out.error = "guest emitted " + std::to_string(m.emitted().size()) + " digests";
    out.stats = m.stats();
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

struct VectorResult {
  Variant variant = Variant::Sha3_256;
  Strategy strategy = Strategy::Shatr;
  VectorClass vector_class = VectorClass::Short;
  std::string source;
  std::size_t index = 0;
  std::uint64_t length_bits = 0;
  bool passed = false;
  std::string error;
  std::string digest;  // lowercase hex of what the guest emitted
  std::uint64_t instructions = 0;
  std::uint64_t cycles = 0;
  std::uint64_t region_entries = 0;

  friend bool operator==(const VectorResult&, const VectorResult&) = default;
};

struct HostCheck {
  Variant variant = Variant::Sha3_256;
  VectorClass vector_class = VectorClass::Short;
  std::string source;
  std::size_t index = 0;
  bool passed = false;

  friend bool operator==(const HostCheck&, const HostCheck&) = default;
};

struct GroupStats {
  Variant variant = Variant::Sha3_256;
  Strategy strategy = Strategy::Shatr;
  VectorClass vector_class = VectorClass::Short;
  std::uint64_t vectors = 0;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::uint64_t instructions = 0;
  std::uint64_t cycles = 0;
  std::uint64_t region_entries = 0;
  std::uint64_t rounds = 0;  // 24 per region entry
  CategoryCounters counts{};
  CategoryCounters region_counts{};
  double per_round_total = 0;
  std::array<double, isa::kCategoryCount> per_round{};
  std::array<double, isa::kCategoryCount> mix_percent{};

  friend bool operator==(const GroupStats&, const GroupStats&) = default;
};

struct SpeedupRow {
  Variant variant = Variant::Sha3_256;
  VectorClass vector_class = VectorClass::Short;
  Strategy baseline = Strategy::SwRegopt;
  std::uint64_t baseline_cycles = 0;
  std::uint64_t shatr_cycles = 0;
  double speedup = 0;

  friend bool operator==(const SpeedupRow&, const SpeedupRow&) = default;
};

struct BenchReport {
  emu::CostModel cost{};
  std::vector<GroupStats> groups;
  std::vector<SpeedupRow> speedups;
  std::vector<HostCheck> host;
  std::vector<VectorResult> vectors;

  bool all_passed() const {
    return std::all_of(vectors.begin(), vectors.end(), [](const auto& v) { return v.passed; }) &&
           std::all_of(host.begin(), host.end(), [](const auto& h) { return h.passed; });
  }

  const GroupStats* group(Variant v, Strategy s, VectorClass c) const {
    for (const auto& g : groups)
      if (g.variant == v && g.strategy == s && g.vector_class == c) return &g;
    return nullptr;
  }

  const SpeedupRow* speedup(Variant v, VectorClass c, Strategy baseline) const {
    for (const auto& r : speedups)
      if (r.variant == v && r.vector_class == c && r.baseline == baseline) return &r;
    return nullptr;
  }

  friend bool operator==(const BenchReport& a, const BenchReport& b) {
    const auto ca = std::tie(a.cost.base_cycles_per_instruction, a.cost.extra_mem_access_cycles, a.cost.shatr_cycles);
    const auto cb = std::tie(b.cost.base_cycles_per_instruction, b.cost.extra_mem_access_cycles, b.cost.shatr_cycles);
    return ca == cb && a.groups == b.groups && a.speedups == b.speedups && a.host == b.host &&
           a.vectors == b.vectors;
  }
};

namespace detail {

inline void finish_group(GroupStats& g) {
  g.rounds = std::uint64_t{keccak::kRounds} * g.region_entries;
  const std::uint64_t all = emu::total(g.counts);
  std::uint64_t region_all = 0;
  for (std::size_t c = 0; c < isa::kCategoryCount; ++c) {
    region_all += g.region_counts[c];
    g.per_round[c] = g.rounds ? static_cast<double>(g.region_counts[c]) / static_cast<double>(g.rounds) : 0.0;
    g.mix_percent[c] = all ? 100.0 * static_cast<double>(g.counts[c]) / static_cast<double>(all) : 0.0;
  }
  g.per_round_total = g.rounds ? static_cast<double>(region_all) / static_cast<double>(g.rounds) : 0.0;
}

}  // namespace detail

/// Recomputes groups and speedups from per-vector counters.
inline void aggregate(BenchReport& report, const std::vector<std::pair<VectorResult, emu::ExecutionStats>>& runs) {
  std::map<std::tuple<Variant, Strategy, VectorClass>, GroupStats> groups;
  for (const auto& [r, stats] : runs) {
    GroupStats& g = groups[{r.variant, r.strategy, r.vector_class}];
    g.variant = r.variant;
    g.strategy = r.strategy;
    g.vector_class = r.vector_class;
    ++g.vectors;
    ++(r.passed ? g.passed : g.failed);
    g.instructions += stats.retired();
    g.cycles += stats.total_cycles;
    for (std::size_t c = 0; c < isa::kCategoryCount; ++c) g.counts[c] += stats.global[c];
    if (const auto* reg = stats.region(emu::kPermutationRegion)) {
      g.region_entries += reg->entry_count;
      for (std::size_t c = 0; c < isa::kCategoryCount; ++c) g.region_counts[c] += reg->counters[c];
    }
  }
  report.groups.clear();
  for (auto& [key, g] : groups) {
    detail::finish_group(g);
    report.groups.push_back(g);
  }
  report.speedups.clear();
  for (Variant v : keccak::kAllVariants)
    for (VectorClass c : cavp::kAllClasses) {
      const GroupStats* acc = report.group(v, Strategy::Shatr, c);
      if (!acc || acc->cycles == 0) continue;
      for (Strategy s : {Strategy::SwRegopt, Strategy::SwMem})
        if (const GroupStats* base = report.group(v, s, c))
          report.speedups.push_back({v, c, s, base->cycles, acc->cycles,
                                     static_cast<double>(base->cycles) / static_cast<double>(acc->cycles)});
    }
}

/// Kernel images assembled once per (variant, strategy).
class KernelCache {
 public:
  explicit KernelCache(kernels::GuestLayout layout = {}) : layout_(layout) {}

  const AssembledProgram& get(Variant v, Strategy s) {
    auto it = images_.find({v, s});
    if (it == images_.end())
      it = images_.emplace(std::pair{v, s}, asmr::assemble(kernels::generate_kernel({v, s, layout_}))).first;
    return it->second;
  }

 private:
  kernels::GuestLayout layout_;
  std::map<std::pair<Variant, Strategy>, AssembledProgram> images_;
};

inline BenchReport run_benchmark(const std::vector<cavp::CavpVectorSet>& sets, const std::vector<Strategy>& strategies,
                                 const BenchConfig& config = {}) {
  BenchReport report;
  report.cost = config.cost;
  KernelCache cache(config.layout);
  std::vector<std::pair<VectorResult, emu::ExecutionStats>> runs;

  for (const auto& set : sets)
    for (const auto& vec : set.vectors) {
      const bool host_ok = keccak::sha3_digest(vec.message, set.variant) == vec.digest;
      report.host.push_back({set.variant, vec.vector_class, set.source, vec.index, host_ok});
      for (Strategy s : strategies) {
        VectorResult r;
        r.variant = set.variant;
        r.strategy = s;
        r.vector_class = vec.vector_class;
        r.source = set.source;
        r.index = vec.index;
        r.length_bits = vec.length_bits;
        RunOutcome o = run_kernel(cache.get(set.variant, s), s, vec.message, config);
        if (o.digest) r.digest = to_hex(*o.digest);
        r.error = o.error;
        if (r.error.empty() && o.digest != vec.digest) r.error = "digest mismatch";
        r.passed = r.error.empty();
        r.instructions = o.stats.retired();
        r.cycles = o.stats.total_cycles;
        if (const auto* reg = o.stats.region(emu::kPermutationRegion)) r.region_entries = reg->entry_count;
        runs.emplace_back(std::move(r), std::move(o.stats));
      }
    }

  auto key = [](const VectorResult& r) {
    return std::tie(r.variant, r.strategy, r.vector_class, r.source, r.index);
  };
  std::stable_sort(runs.begin(), runs.end(), [&](const auto& a, const auto& b) { return key(a.first) < key(b.first); });
  std::stable_sort(report.host.begin(), report.host.end(), [](const HostCheck& a, const HostCheck& b) {
    return std::tie(a.variant, a.vector_class, a.source, a.index) < std::tie(b.variant, b.vector_class, b.source, b.index);
  });
  aggregate(report, runs);
  for (auto& [r, stats] : runs) report.vectors.push_back(std::move(r));
  return report;
}

// ---------------------------------------------------------------------------
// Serialization

enum class Format : std::uint8_t { Json, Csv, Text };

inline Format parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "text" || name == "text-table") return Format::Text;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "'");
}

using Json = nlohmann::ordered_json;

namespace detail {

template <class T>
Json category_object(const std::array<T, isa::kCategoryCount>& values) {
  Json j = Json::object();
  for (Category c : isa::kAllCategories) j[std::string(isa::category_name(c))] = values[static_cast<std::size_t>(c)];
  return j;
}

template <class T>
std::array<T, isa::kCategoryCount> category_array(const Json& j) {
  std::array<T, isa::kCategoryCount> out{};
  for (Category c : isa::kAllCategories) out[static_cast<std::size_t>(c)] = j.at(std::string(isa::category_name(c))).get<T>();
  return out;
}

inline Category category_by_name(std::string_view name) {
  for (Category c : isa::kAllCategories)
    if (isa::category_name(c) == name) return c;
  throw std::invalid_argument("unknown category");
}

inline std::string fixed(double v, int places = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

inline std::string names(Variant v) { return std::string(keccak::variant_name(v)); }
inline std::string names(Strategy s) { return std::string(kernels::strategy_name(s)); }
inline std::string names(VectorClass c) { return std::string(cavp::class_name(c)); }

}  // namespace detail

inline Json to_json(const BenchReport& r) {
  using detail::names;
  Json j;
  j["schema"] = kSchema;
  j["cost_model"] = {{"base_cycles_per_instruction", r.cost.base_cycles_per_instruction},
                     {"extra_mem_access_cycles", r.cost.extra_mem_access_cycles},
                     {"shatr_cycles", r.cost.shatr_cycles}};
  j["groups"] = Json::array();
  for (const auto& g : r.groups) {
    Json per_round = detail::category_object(g.per_round);
    Json pr = {{"total", g.per_round_total}};
    pr.update(per_round);
    j["groups"].push_back({{"variant", names(g.variant)},
                           {"strategy", names(g.strategy)},
                           {"class", names(g.vector_class)},
                           {"vectors", g.vectors},
                           {"passed", g.passed},
                           {"failed", g.failed},
                           {"instructions", g.instructions},
                           {"cycles", g.cycles},
                           {"region_entries", g.region_entries},
                           {"rounds", g.rounds},
                           {"counts", detail::category_object(g.counts)},
                           {"region_counts", detail::category_object(g.region_counts)},
                           {"per_round", pr},
                           {"mix_percent", detail::category_object(g.mix_percent)}});
  }
  j["speedups"] = Json::array();
  for (const auto& s : r.speedups)
    j["speedups"].push_back({{"variant", names(s.variant)},
                             {"class", names(s.vector_class)},
                             {"baseline", names(s.baseline)},
                             {"baseline_cycles", s.baseline_cycles},
                             {"shatr_cycles", s.shatr_cycles},
                             {"speedup", s.speedup}});
  j["host"] = Json::array();
  for (const auto& h : r.host)
    j["host"].push_back({{"variant", names(h.variant)},
                         {"class", names(h.vector_class)},
                         {"source", h.source},
                         {"index", h.index},
                         {"passed", h.passed}});
  j["vectors"] = Json::array();
  for (const auto& v : r.vectors)
    j["vectors"].push_back({{"variant", names(v.variant)},
                            {"strategy", names(v.strategy)},
                            {"class", names(v.vector_class)},
                            {"source", v.source},
                            {"index", v.index},
                            {"length_bits", v.length_bits},
                            {"passed", v.passed},
                            {"error", v.error},
                            {"digest", v.digest},
                            {"instructions", v.instructions},
                            {"cycles", v.cycles},
                            {"region_entries", v.region_entries}});
  return j;
}

inline BenchReport from_json(const Json& j) {
  if (j.at("schema").get<std::string>() != kSchema) throw std::invalid_argument("unsupported report schema");
  BenchReport r;
  const Json& cm = j.at("cost_model");
  r.cost.base_cycles_per_instruction = cm.at("base_cycles_per_instruction").get<std::uint64_t>();
  r.cost.extra_mem_access_cycles = cm.at("extra_mem_access_cycles").get<std::uint64_t>();
  r.cost.shatr_cycles = cm.at("shatr_cycles").get<std::uint64_t>();
  auto variant = [](const Json& x) { return keccak::parse_variant(x.get<std::string>()); };
  auto strategy = [](const Json& x) { return kernels::parse_strategy(x.get<std::string>()); };
  auto klass = [](const Json& x) { return cavp::parse_class(x.get<std::string>()); };
  for (const Json& g : j.at("groups")) {
    GroupStats s;
    s.variant = variant(g.at("variant"));
    s.strategy = strategy(g.at("strategy"));
    s.vector_class = klass(g.at("class"));
    s.vectors = g.at("vectors").get<std::uint64_t>();
    s.passed = g.at("passed").get<std::uint64_t>();
    s.failed = g.at("failed").get<std::uint64_t>();
    s.instructions = g.at("instructions").get<std::uint64_t>();
    s.cycles = g.at("cycles").get<std::uint64_t>();
    s.region_entries = g.at("region_entries").get<std::uint64_t>();
    s.rounds = g.at("rounds").get<std::uint64_t>();
    s.counts = detail::category_array<std::uint64_t>(g.at("counts"));
    s.region_counts = detail::category_array<std::uint64_t>(g.at("region_counts"));
    s.per_round_total = g.at("per_round").at("total").get<double>();
    s.per_round = detail::category_array<double>(g.at("per_round"));
    s.mix_percent = detail::category_array<double>(g.at("mix_percent"));
    r.groups.push_back(s);
  }
  for (const Json& x : j.at("speedups"))
    r.speedups.push_back({variant(x.at("variant")), klass(x.at("class")), strategy(x.at("baseline")),
                          x.at("baseline_cycles").get<std::uint64_t>(), x.at("shatr_cycles").get<std::uint64_t>(),
                          x.at("speedup").get<double>()});
  for (const Json& x : j.at("host"))
    r.host.push_back({variant(x.at("variant")), klass(x.at("class")), x.at("source").get<std::string>(),
                      x.at("index").get<std::size_t>(), x.at("passed").get<bool>()});
  for (const Json& x : j.at("vectors")) {
    VectorResult v;
    v.variant = variant(x.at("variant"));
    v.strategy = strategy(x.at("strategy"));
    v.vector_class = klass(x.at("class"));
    v.source = x.at("source").get<std::string>();
    v.index = x.at("index").get<std::size_t>();
    v.length_bits = x.at("length_bits").get<std::uint64_t>();
    v.passed = x.at("passed").get<bool>();
    v.error = x.at("error").get<std::string>();
    v.digest = x.at("digest").get<std::string>();
    v.instructions = x.at("instructions").get<std::uint64_t>();
    v.cycles = x.at("cycles").get<std::uint64_t>();
    v.region_entries = x.at("region_entries").get<std::uint64_t>();
    r.vectors.push_back(std::move(v));
  }
  return r;
}

inline BenchReport parse_report(std::string_view text) { return from_json(Json::parse(text)); }

inline std::string csv_header() {
  std::string h = "variant,strategy,class,vectors,passed,failed,instructions,cycles,region_entries,rounds";
  for (Category c : isa::kAllCategories) h += ",count_" + std::string(isa::category_name(c));
  h += ",per_round_total";
  for (Category c : isa::kAllCategories) h += ",per_round_" + std::string(isa::category_name(c));
  for (Category c : isa::kAllCategories) h += ",mix_" + std::string(isa::category_name(c));
  return h;
}

inline std::string to_csv(const BenchReport& r) {
  using detail::names;
  std::string out = csv_header() + "\n";
  for (const auto& g : r.groups) {
    out += names(g.variant) + "," + names(g.strategy) + "," + names(g.vector_class);
    for (std::uint64_t v : {g.vectors, g.passed, g.failed, g.instructions, g.cycles, g.region_entries, g.rounds})
      out += "," + std::to_string(v);
    for (std::uint64_t v : g.counts) out += "," + std::to_string(v);
    out += "," + detail::fixed(g.per_round_total, 4);
    for (double v : g.per_round) out += "," + detail::fixed(v, 4);
    for (double v : g.mix_percent) out += "," + detail::fixed(v, 4);
    out += "\n";
  }
  return out;
}

/// Strategies down the side, variant/class across the top.
inline std::string to_text(const BenchReport& r) {
  using detail::names;
  std::ostringstream o;
  if (r.groups.empty()) {
    o << "no results\n";
    return o.str();
  }
  std::vector<std::pair<Variant, VectorClass>> columns;
  for (const auto& g : r.groups)
    if (std::find(columns.begin(), columns.end(), std::pair{g.variant, g.vector_class}) == columns.end())
      columns.emplace_back(g.variant, g.vector_class);
  std::sort(columns.begin(), columns.end());

  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.insert(0, w - s.size(), ' ');
    return s;
  };
  constexpr std::size_t kLabel = 28, kCol = 16;
  auto header = [&] {
    o << std::string(kLabel, ' ');
    for (const auto& [v, c] : columns) o << pad(names(v) + "/" + names(c), kCol);
    o << "\n";
  };
  using Metric = std::pair<std::string, std::function<std::string(const GroupStats&)>>;
  std::vector<Metric> metrics = {
      {"vectors (passed)", [](const GroupStats& g) { return std::to_string(g.passed) + "/" + std::to_string(g.vectors); }},
      {"instructions", [](const GroupStats& g) { return std::to_string(g.instructions); }},
      {"cycles", [](const GroupStats& g) { return std::to_string(g.cycles); }},
      {"sha-3 rounds", [](const GroupStats& g) { return std::to_string(g.rounds); }},
      {"instructions per round", [](const GroupStats& g) { return detail::fixed(g.per_round_total); }},
  };
  for (Category c : isa::kAllCategories)
    metrics.push_back({"  " + std::string(isa::category_name(c)) + " per round", [c](const GroupStats& g) {
                         return detail::fixed(g.per_round[static_cast<std::size_t>(c)]);
                       }});
  for (Category c : isa::kAllCategories)
    metrics.push_back({"  " + std::string(isa::category_name(c)) + " share %", [c](const GroupStats& g) {
                         return detail::fixed(g.mix_percent[static_cast<std::size_t>(c)]);
                       }});

  for (Strategy s : kernels::kAllStrategies) {
    if (std::none_of(r.groups.begin(), r.groups.end(), [s](const auto& g) { return g.strategy == s; })) continue;
    o << "[" << names(s) << "]\n";
    header();
    for (const auto& [label, fn] : metrics) {
      std::string l = label;
      l.resize(kLabel, ' ');
      o << l;
      for (const auto& [v, c] : columns) {
        const GroupStats* g = r.group(v, s, c);
        o << pad(g ? fn(*g) : "-", kCol);
      }
      o << "\n";
    }
    o << "\n";
  }
  if (!r.speedups.empty()) {
    o << "[speedup of shatr, cycles(baseline) / cycles(shatr)]\n";
    header();
    for (Strategy s : {Strategy::SwRegopt, Strategy::SwMem}) {
      std::string l = "vs " + names(s);
      l.resize(kLabel, ' ');
      o << l;
      for (const auto& [v, c] : columns) {
        const SpeedupRow* row = r.speedup(v, c, s);
        o << pad(row ? detail::fixed(row->speedup) + "x" : "-", kCol);
      }
      o << "\n";
    }
  }
  return o.str();
}

inline std::string emit_report(const BenchReport& r, Format f) {
  switch (f) {
    case Format::Json: return to_json(r).dump(2) + "\n";
    case Format::Csv: return to_csv(r);
    case Format::Text: return to_text(r);
  }
  return {};
}

}  // namespace shatrsim::bench
