// carpool: run, generate, verify and benchmark update streams.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "carpool/adversary.hpp"
#include "carpool/engine.hpp"
#include "carpool/fault.hpp"
#include "carpool/oracle.hpp"
#include "carpool/stream_io.hpp"

using namespace carpool;

namespace {

constexpr std::size_t kFastReplayEvery = 1000;

struct RunOptions {
  std::string stream_path;
  std::string trace_path;
  bool check = false;
  std::string inject;
  std::uint64_t inject_at = 0;
};

nlohmann::json metrics_json(const Engine& engine) {
  const auto& m = engine.metrics();
  nlohmann::json j;
  j["n"] = engine.vertex_count();
  j["log_n"] = engine.threshold().log_n;
  j["updates"] = m.updates_applied;
  j["max_discrepancy"] = m.max_discrepancy_ever;
  j["max_recourse"] = m.max_recourse_single_update;
  j["total_recourse"] = m.total_recourse;
  j["amortized_recourse"] = m.amortized_recourse();
  j["longest_flip_path"] = m.longest_flip_path;
  j["recourse_ceiling"] = recourse_ceiling(engine.threshold());
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [route, buckets] : m.recourse_histogram) {
    nlohmann::json b = nlohmann::json::object();
    for (const auto& [recourse, count] : buckets) b[std::to_string(recourse)] = count;
    hist[std::string(to_string(route))] = b;
  }
  j["recourse_histogram"] = hist;
  return j;
}

int report_violations(const oracle::ViolationList& violations, std::uint64_t seq) {
  for (const auto& v : violations) {
    std::cerr << "violation after update " << seq << ": " << v.invariant << " at " << v.subject
              << " (" << v.observed << ")\n";
  }
  return violations.empty() ? 0 : 1;
}

int cmd_run(const RunOptions& opt) {
  const auto stream = io::read_stream_file(opt.stream_path);
  std::optional<fault::Fault> injected;
  if (!opt.inject.empty()) {
    injected = fault::parse_fault(opt.inject);
    if (!injected) {
      std::cerr << "unknown fault '" << opt.inject << "'\n";
      return 2;
    }
  }

  std::unique_ptr<std::ofstream> trace;
  if (!opt.trace_path.empty()) {
    trace = std::make_unique<std::ofstream>(opt.trace_path, std::ios::binary);
    if (!*trace) throw Error(ErrorCode::Io, "cannot write " + opt.trace_path);
  }

  Engine engine(stream.n);
  io::TraceReplayer replay(stream.n);
  for (std::uint64_t seq = 0; seq < stream.events.size(); ++seq) {
    const auto& event = stream.events[seq];
    const auto result = engine.apply(event);
    const auto line = io::trace_line(seq, event, result);
    if (trace) *trace << line << '\n';
    replay.apply_line(line);

    if (injected && seq == opt.inject_at && !fault::inject(engine, *injected)) {
      std::cerr << "fault '" << opt.inject << "' has no target after update " << seq << "\n";
      return 2;
    }
    if (opt.check || (seq + 1) % kFastReplayEvery == 0) {
      if (!(replay.orientation() == engine.orientation_snapshot())) {
        std::cerr << "trace replay diverged from the engine after update " << seq << "\n";
        return 1;
      }
    }
    if (opt.check) {
      if (report_violations(oracle::check_all_invariants(engine), seq) != 0) return 1;
    }
    if (injected && seq == opt.inject_at) break;  // the corrupted engine cannot continue
  }
  std::cout << metrics_json(engine).dump() << "\n";
  return engine.metrics().max_discrepancy_ever <= 3 ? 0 : 1;
}

UpdateStream generate(const std::string& name, std::size_t n, std::size_t steps,
                      std::uint64_t seed, double p_delete) {
  if (name == "random") return adversary::gen_random(n, steps, p_delete, seed);
  if (name == "high_girth") return adversary::gen_high_girth(n, steps, seed, p_delete);
  if (name == "forest") return adversary::gen_high_girth(n, steps, seed, p_delete, true);
  if (name == "cycle_churn") return adversary::gen_cycle_churn(n, steps, seed);
  if (name == "adaptive") {
    Engine engine(n);
    return adversary::gen_adaptive_greedy(engine, steps, seed).stream;
  }
  throw Error(ErrorCode::Malformed, "unknown generator '" + name + "'");
}

struct BenchRow {
  std::size_t n = 0;
  std::size_t log_n = 0;
  std::size_t runs = 0;
  std::uint64_t updates = 0;
  std::int64_t max_discrepancy = 0;
  std::size_t max_recourse = 0;
  std::uint64_t total_recourse = 0;
  std::size_t ceiling = 0;

  double ratio() const { return static_cast<double>(max_recourse) / double(log_n * log_n); }
  double amortized() const {
    return updates == 0 ? 0.0 : static_cast<double>(total_recourse) / double(updates);
  }
};

void absorb(BenchRow& row, const Engine& engine) {
  const auto& m = engine.metrics();
  ++row.runs;
  row.updates += m.updates_applied;
  row.max_discrepancy = std::max(row.max_discrepancy, m.max_discrepancy_ever);
  row.max_recourse = std::max(row.max_recourse, m.max_recourse_single_update);
  row.total_recourse += m.total_recourse;
}

int cmd_bench(const std::vector<std::size_t>& n_list, std::size_t steps, std::size_t seeds,
              const std::string& generator, double p_delete, const std::string& stream_path,
              const std::string& csv_path) {
  std::vector<BenchRow> rows;
  if (!stream_path.empty()) {
    const auto stream = io::read_stream_file(stream_path);
    BenchRow row;
    row.n = stream.n;
    row.log_n = girth_threshold(stream.n).log_n;
    row.ceiling = recourse_ceiling(girth_threshold(stream.n));
    for (std::size_t rep = 0; rep < std::max<std::size_t>(seeds, 1); ++rep) {
      Engine engine(stream.n);
      for (const auto& event : stream.events) engine.apply(event);
      absorb(row, engine);
    }
    rows.push_back(row);
  } else {
    for (std::size_t n : n_list) {
      BenchRow row;
      row.n = n;
      row.log_n = girth_threshold(n).log_n;
      row.ceiling = recourse_ceiling(girth_threshold(n));
      for (std::size_t seed = 1; seed <= seeds; ++seed) {
        Engine engine(n);
        if (generator == "adaptive") {
          adversary::gen_adaptive_greedy(engine, steps, seed);
        } else {
          const auto stream = generate(generator, n, steps, seed, p_delete);
          for (const auto& event : stream.events) engine.apply(event);
        }
        absorb(row, engine);
      }
      rows.push_back(row);
    }
  }

  rows.erase(std::remove_if(rows.begin(), rows.end(), [](const BenchRow& r) { return r.updates == 0; }),
             rows.end());

  std::ostringstream csv;
  csv << "n,log_n,runs,updates,max_discrepancy,max_recourse,recourse_per_log2,"
         "amortized_recourse,recourse_ceiling\n";
  for (const auto& r : rows) {
    csv << r.n << ',' << r.log_n << ',' << r.runs << ',' << r.updates << ',' << r.max_discrepancy
        << ',' << r.max_recourse << ',' << std::setprecision(6) << r.ratio() << ','
        << r.amortized() << ',' << r.ceiling << '\n';
    nlohmann::json j{{"n", r.n},
                     {"log_n", r.log_n},
                     {"runs", r.runs},
                     {"updates", r.updates},
                     {"max_discrepancy", r.max_discrepancy},
                     {"max_recourse", r.max_recourse},
                     {"recourse_per_log2", r.ratio()},
                     {"amortized_recourse", r.amortized()},
                     {"recourse_ceiling", r.ceiling}};
    std::cout << j.dump() << '\n';
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + csv_path);
    out << csv.str();
  }
  const bool ok = std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) {
    return r.max_discrepancy <= 3 && r.max_recourse <= r.ceiling;
  });
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fully-dynamic edge orientation with discrepancy at most 3"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Apply a stream file and optionally write a trace");
  run->add_option("stream", run_opt.stream_path, "Stream file")->required();
  run->add_option("--trace", run_opt.trace_path, "Write JSON-lines trace here");
  run->add_flag("--check", run_opt.check, "Run the full oracle sweep after every update");
  run->add_option("--inject", run_opt.inject, "Corrupt the state (testing the oracle)");
  run->add_option("--inject-at", run_opt.inject_at, "Update index after which to corrupt");

  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "Same as run --check without a trace");
  verify->add_option("stream", verify_path, "Stream file")->required();

  std::string gen_name;
  std::size_t gen_n = 0;
  std::size_t gen_steps = 0;
  std::uint64_t gen_seed = 1;
  double gen_p = 0.3;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a stream file");
  gen->add_option("name", gen_name, "random | high_girth | forest | cycle_churn | adaptive")
      ->required();
  gen->add_option("--n", gen_n, "Number of vertices")->required();
  gen->add_option("--steps", gen_steps, "Number of events")->required();
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--p-delete", gen_p, "Deletion probability (random, high_girth)");
  gen->add_option("-o,--output", gen_out, "Output path (default stdout)");

  std::vector<std::size_t> bench_n{8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
  std::size_t bench_steps = 10000;
  std::size_t bench_seeds = 3;
  std::string bench_gen = "random";
  double bench_p = 0.3;
  std::string bench_stream;
  std::string bench_csv;
  auto* bench = app.add_subcommand("bench", "Tabulate discrepancy and recourse per n");
  bench->add_option("--n-list", bench_n, "Instance sizes")->delimiter(',');
  bench->add_option("--steps", bench_steps, "Events per run");
  bench->add_option("--seeds", bench_seeds, "Seeds per n (repetitions with --stream)");
  bench->add_option("--gen", bench_gen, "Generator for synthetic runs");
  bench->add_option("--p-delete", bench_p, "Deletion probability");
  bench->add_option("--stream", bench_stream, "Benchmark a stream file instead");
  bench->add_option("--csv", bench_csv, "Also write the table as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_opt);
    if (*verify) {
      RunOptions opt;
      opt.stream_path = verify_path;
      opt.check = true;
      return cmd_run(opt);
    }
    if (*gen) {
      const auto stream = generate(gen_name, gen_n, gen_steps, gen_seed, gen_p);
      if (gen_out.empty()) {
        std::cout << io::serialize_stream(stream);
      } else {
        io::write_stream_file(gen_out, stream);
      }
      return 0;
    }
    if (*bench) {
      return cmd_bench(bench_n, bench_steps, bench_seeds, bench_gen, bench_p, bench_stream,
                       bench_csv);
    }
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
