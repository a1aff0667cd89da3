// Command-line front end: instance generation, solving, stability
// verification, LP export, benchmarking, and brute-force cross-checks.
//
// Exit codes: 0 success (verify: stable), 1 verify found the matching
// unstable or a cross-check failed, 2 bad flags, 3 I/O or parse failure,
// 4 invalid instance, 5 instance too large for enumeration.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dasm/bench.hpp"
#include "dasm/blocking.hpp"
#include "dasm/core.hpp"
#include "dasm/generator.hpp"
#include "dasm/ilp.hpp"
#include "dasm/io.hpp"
#include "dasm/oracle.hpp"
#include "dasm/solver.hpp"

namespace {

constexpr int kExitUnstable = 1;
constexpr int kExitBadFlags = 2;
constexpr int kExitIo = 3;
constexpr int kExitInvalidInstance = 4;
constexpr int kExitTooLarge = 5;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("DASM_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      return 0;
    }
  }
  return 0;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    dasm::write_file(out_path, content);
}

dasm::Instance load_instance(const std::string& path) {
  return dasm::parse_instance(dasm::read_file(path));
}

struct GenerateArgs {
  int employers = 0;
  int ratio = 2;
  int quota = 3;
  double threshold = 0.5;
  std::uint64_t seed = default_seed();
  std::string out;
};

int run_generate(const GenerateArgs& args) {
  dasm::GenParams params;
  params.m = args.employers;
  params.ratio = args.ratio;
  params.q = args.quota;
  params.t = args.threshold;
  params.seed = args.seed;
  dasm::Instance inst = dasm::generate(params);
  emit(dasm::serialize_instance(inst, dasm::gen_meta(params)), args.out);
  return 0;
}

struct SolveArgs {
  std::string in;
  std::string algorithm = "smart";
  std::string out;
  std::string trace_path;
  bool trace = false;
};

int run_solve(const SolveArgs& args) {
  dasm::Instance inst = load_instance(args.in);
  dasm::Algorithm algo = args.algorithm == "naive" ? dasm::Algorithm::Naive
                                                   : dasm::Algorithm::Smart;
  dasm::SolveResult result = dasm::solve(inst, algo);
  dasm::json doc = dasm::matching_to_json(inst, result.matching);
  if (args.trace || !args.trace_path.empty()) {
    dasm::json trace = dasm::trace_to_json(inst, result);
    if (args.trace_path.empty())
      doc["trace"] = trace["phases"];
    else
      dasm::write_file(args.trace_path, trace.dump(2) + "\n");
  }
  emit(doc.dump(2) + "\n", args.out);
  return 0;
}

struct VerifyArgs {
  std::string in;
  std::string matching;
  std::string lambda = "1";
};

int run_verify(const VerifyArgs& args) {
  dasm::Instance inst = load_instance(args.in);
  dasm::Lambda lambda = dasm::Lambda::parse(args.lambda);
  dasm::json mu_doc;
  try {
    mu_doc = dasm::json::parse(dasm::read_file(args.matching));
  } catch (const dasm::json::exception& ex) {
    throw dasm::IoFailure(std::string("matching is not valid JSON: ") +
                          ex.what());
  }
  dasm::Matching mu = dasm::matching_from_json(inst, mu_doc);
  if (!dasm::is_valid_matching(inst, mu))
    throw dasm::IoFailure("matching violates quotas or consistency");
  dasm::json verdict = dasm::verdict_report(inst, mu, lambda);
  std::cout << verdict.dump(2) << "\n";
  return verdict["stable"].get<bool>() ? 0 : kExitUnstable;
}

struct IlpArgs {
  std::string in;
  std::string out;
};

int run_ilp_export(const IlpArgs& args) {
  dasm::Instance inst = load_instance(args.in);
  dasm::IlpModel model = dasm::build_model(inst);
  emit(dasm::export_lp(model), args.out);
  return 0;
}

struct BenchArgs {
  std::string m_list = "10";
  int ratio = 2;
  int quota = 3;
  double threshold = 0.5;
  int trials = 50;
  std::uint64_t seed = default_seed();
  std::int64_t verify_upto = 0;
  std::string csv;
};

int run_bench(const BenchArgs& args) {
  dasm::BenchConfig cfg;
  std::stringstream list(args.m_list);
  std::string item;
  while (std::getline(list, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int m = std::stoi(item, &used);
    if (used != item.size() || m < 0)
      throw dasm::ParamOutOfRange("bad --m-list entry: " + item);
    cfg.m_list.push_back(m);
  }
  if (cfg.m_list.empty()) throw dasm::ParamOutOfRange("empty --m-list");
  cfg.ratio = args.ratio;
  cfg.q = args.quota;
  cfg.t = args.threshold;
  cfg.trials = args.trials;
  cfg.seed = args.seed;
  cfg.verify_upto = args.verify_upto;
  auto rows = dasm::run_bench(cfg);
  emit(dasm::bench_csv(rows), args.csv);
  return 0;
}

struct OracleArgs {
  std::string in;
  std::string lambda = "1";
  std::string report;
  int cap = dasm::kDefaultPairCap;
};

int run_oracle(const OracleArgs& args) {
  dasm::Instance inst = load_instance(args.in);
  dasm::Lambda lambda = dasm::Lambda::parse(args.lambda);
  dasm::StabilityReport report = dasm::cross_check(inst, lambda, args.cap);
  emit(dasm::report_to_json(inst, report).dump(2) + "\n", args.report);
  return (report.solver_output_stable && report.ilp_agreement) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver toolkit for many-to-many affiliate matching markets "
               "with dichotomous preferences"};
  app.require_subcommand(1);

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "Generate a random instance");
  gen->add_option("--employers", gen_args.employers, "Employer count")
      ->required();
  gen->add_option("--ratio", gen_args.ratio, "Affiliates per employer");
  gen->add_option("--quota", gen_args.quota, "Applicant capacity");
  gen->add_option("--threshold", gen_args.threshold,
                  "Approval threshold in (0,1)");
  gen->add_option("--seed", gen_args.seed, "PRNG seed");
  gen->add_option("--out", gen_args.out, "Output path (default stdout)");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Compute a matching");
  solve->add_option("--in", solve_args.in, "Instance file")->required();
  solve->add_option("--algorithm", solve_args.algorithm, "smart|naive")
      ->check(CLI::IsMember({"smart", "naive"}));
  solve->add_flag("--trace", solve_args.trace, "Include the phase trace");
  solve->add_option("--trace-out", solve_args.trace_path,
                    "Write the phase trace to a file");
  solve->add_option("--out", solve_args.out, "Output path (default stdout)");

  VerifyArgs verify_args;
  auto* verify =
      app.add_subcommand("verify", "Check a matching for stability");
  verify->add_option("--in", verify_args.in, "Instance file")->required();
  verify->add_option("--matching", verify_args.matching, "Matching file")
      ->required();
  verify->add_option("--lambda", verify_args.lambda, "0 | 1 | p/q | eps");

  IlpArgs ilp_args;
  auto* ilp = app.add_subcommand("ilp-export",
                                 "Write the stability model in LP format");
  ilp->add_option("--in", ilp_args.in, "Instance file")->required();
  ilp->add_option("--out", ilp_args.out, "Output path (default stdout)");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run the scaling benchmark");
  bench->add_option("--m-list", bench_args.m_list,
                    "Comma-separated employer counts");
  bench->add_option("--ratio", bench_args.ratio, "Affiliates per employer");
  bench->add_option("--quota", bench_args.quota, "Applicant capacity");
  bench->add_option("--threshold", bench_args.threshold,
                    "Approval threshold in (0,1)");
  bench->add_option("--trials", bench_args.trials, "Trials per setting");
  bench->add_option("--seed", bench_args.seed, "Base seed");
  bench->add_option("--verify-upto", bench_args.verify_upto,
                    "Verify stability when n*m is at most this");
  bench->add_option("--csv", bench_args.csv, "Output path (default stdout)");

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand(
      "oracle", "Exhaustive cross-check on a tiny instance");
  oracle->add_option("--in", oracle_args.in, "Instance file")->required();
  oracle->add_option("--lambda", oracle_args.lambda, "0 | 1 | p/q | eps");
  oracle->add_option("--report", oracle_args.report,
                     "Report path (default stdout)");
  oracle->add_option("--cap", oracle_args.cap,
                     "Enumeration cap in potential pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitBadFlags;
  }

  try {
    if (gen->parsed()) return run_generate(gen_args);
    if (solve->parsed()) return run_solve(solve_args);
    if (verify->parsed()) return run_verify(verify_args);
    if (ilp->parsed()) return run_ilp_export(ilp_args);
    if (bench->parsed()) return run_bench(bench_args);
    if (oracle->parsed()) return run_oracle(oracle_args);
  } catch (const dasm::ParamOutOfRange& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitBadFlags;
  } catch (const dasm::InstanceTooLarge& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitTooLarge;
  } catch (const dasm::IoFailure& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitIo;
  } catch (const dasm::DasmError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitInvalidInstance;
  }
  return kExitBadFlags;
}
