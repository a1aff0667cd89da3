#pragma once

// Benchmark harness: seeded instance grids, solve timing, optional stability
// verification, CSV rows in deterministic order.

#include <chrono>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "dasm/blocking.hpp"
#include "dasm/core.hpp"
#include "dasm/generator.hpp"
#include "dasm/solver.hpp"

namespace dasm {

inline constexpr const char* kBenchCsvHeader =
    "m,n,ratio,q,t,trial,seed,algorithm,runtime_ns,stable,matching_size";

struct BenchRow {
  int m = 0;
  int n = 0;
  int ratio = 0;
  int q = 0;
  double t = 0.5;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string algorithm = "smart";
  std::int64_t runtime_ns = 0;
  std::string stable = "skipped";  // "true" | "false" | "skipped"
  std::int64_t matching_size = 0;
};

struct BenchConfig {
  std::vector<int> m_list;
  int ratio = 2;
  int q = 3;
  double t = 0.5;
  int trials = 50;
  std::uint64_t seed = 0;
  // Verify stability at weight 1 when n*m is at most this many pairs.
  std::int64_t verify_upto = 0;
};

inline std::string format_threshold(double t) {
  std::ostringstream ss;
  ss << t;
  return ss.str();
}

inline std::string bench_row_csv(const BenchRow& row) {
  std::ostringstream ss;
  ss << row.m << ',' << row.n << ',' << row.ratio << ',' << row.q << ','
     << format_threshold(row.t) << ',' << row.trial << ',' << row.seed << ','
     << row.algorithm << ',' << row.runtime_ns << ',' << row.stable << ','
     << row.matching_size;
  return ss.str();
}

// One row per (setting, trial), settings in list order, trials ascending.
// Runtime covers the solve call only.
inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  std::vector<BenchRow> rows;
  for (int m : cfg.m_list) {
    if (m < 0) throw ParamOutOfRange("negative employer count in grid");
    for (int trial = 0; trial < cfg.trials; ++trial) {
      GenParams params;
      params.m = m;
      params.ratio = cfg.ratio;
      params.q = cfg.q;
      params.t = cfg.t;
      params.seed = cfg.seed + static_cast<std::uint64_t>(trial);
      Instance inst = generate(params);

      auto begin = std::chrono::steady_clock::now();
      Matching mu = smart_priority_match(inst);
      auto end = std::chrono::steady_clock::now();

      BenchRow row;
      row.m = m;
      row.n = inst.n;
      row.ratio = cfg.ratio;
      row.q = cfg.q;
      row.t = cfg.t;
      row.trial = trial;
      row.seed = params.seed;
      row.algorithm = "smart";
      row.runtime_ns =
          std::chrono::duration_cast<std::chrono::nanoseconds>(end - begin)
              .count();
      if (row.runtime_ns <= 0) row.runtime_ns = 1;
      row.matching_size = static_cast<std::int64_t>(mu.size());
      if (static_cast<std::int64_t>(inst.n) * inst.m <= cfg.verify_upto)
        row.stable = is_stable(inst, mu, Lambda::one()) ? "true" : "false";
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << kBenchCsvHeader << "\n";
  for (const auto& row : rows) out << bench_row_csv(row) << "\n";
  return out.str();
}

}  // namespace dasm
