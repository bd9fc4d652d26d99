#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "ceg/bench.hpp"
#include "ceg/compaction.hpp"
#include "ceg/generator.hpp"
#include "ceg/ingest.hpp"
#include "ceg/io.hpp"
#include "ceg/roundtrip.hpp"
#include "ceg/staging.hpp"

namespace ceg::cli {
namespace {

namespace fs = std::filesystem;

double tolerance_from_env() {
  const char* raw = std::getenv("CEG_TOLERANCE");
  if (raw == nullptr || *raw == '\0') return kDefaultTolerance;
  char* end = nullptr;
  double value = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(value >= 0.0))
    throw Error(ErrorCode::kParseError, std::string("CEG_TOLERANCE is not a tolerance: ") + raw);
  return value;
}

// Writes to `path`, or to `out` when the path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    io::write_text_file(path, text);
}

std::string dump(const io::Json& json) { return json.dump(2) + "\n"; }

struct BuildArgs {
  std::string csv;
  std::vector<std::string> order;
  std::string sentinel = IngestOptions{}.sentinel;
  std::string out;
};

int cmd_build(const BuildArgs& a, std::ostream& out) {
  std::ifstream in(a.csv);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read " + a.csv);
  RecordTable table = read_csv(in);
  std::vector<std::string> order = a.order;
  if (order.empty()) order = table.columns;
  EventTree tree = ingest_records(table, order, IngestOptions{a.sentinel});
  emit(a.out, dump(io::tree_to_json(tree)), out);
  if (!a.out.empty())
    out << "situations " << tree.situations().size() << "\ndepth " << depth(tree) << "\nleaves "
        << tree.leaves().size() << '\n';
  return kOk;
}

struct StageArgs {
  std::string tree;
  std::string out;
};

int cmd_stage(const StageArgs& a, double tolerance, std::ostream& out) {
  EventTree tree = io::tree_from_json(io::read_json_file(a.tree), tolerance);
  StagePartition partition = naive_exact_stager(tree, tolerance);
  emit(a.out, dump(io::staging_to_json(tree, partition)), out);
  if (!a.out.empty()) {
    std::size_t nontrivial = 0;
    for (const Stage& s : partition.stages) nontrivial += s.members.size() > 1;
    out << "stages " << partition.stages.size() << "\nnon_singleton " << nontrivial << '\n';
  }
  return kOk;
}

struct CompactArgs {
  std::string tree;
  std::string staging;
  std::string mode = "optimal";
  std::string out;
  std::string dot;
  std::string trace;
};

int cmd_compact(const CompactArgs& a, double tolerance, std::ostream& out) {
  EventTree tree = io::tree_from_json(io::read_json_file(a.tree), tolerance);
  StagePartition partition = io::staging_from_json(io::read_json_file(a.staging), tree);
  StagedTree st = apply_staging(tree, partition, tolerance);
  CompactionMode mode = a.mode == "baseline" ? CompactionMode::kBaseline : CompactionMode::kOptimal;
  CompactionResult result = compact(st, mode);

  emit(a.out, dump(io::ceg_to_json(result.ceg)), out);
  if (!a.dot.empty()) io::write_text_file(a.dot, io::to_dot(result.ceg));
  if (!a.trace.empty()) io::write_text_file(a.trace, dump(io::trace_to_json(result.trace, st.tree())));
  if (!a.out.empty())
    out << "vertices " << result.ceg.vertex_count() << "\nedges " << result.ceg.edge_count()
        << "\niterations " << result.trace.iterations.size() << "\nstop_reason "
        << to_string(result.trace.stop_reason) << '\n';
  return kOk;
}

int cmd_roundtrip(const std::string& path, std::ostream& out) {
  Ceg input = io::ceg_from_json(io::read_json_file(path));
  StagedTree st = reconstruct(input);
  CompactionResult again = compact(st, CompactionMode::kOptimal);
  bool same = isomorphic(input, again.ceg);
  out << "situations " << st.tree().situations().size() << "\nvertices "
      << input.vertex_count() << " -> " << again.ceg.vertex_count() << "\nisomorphic "
      << (same ? "yes" : "no") << '\n';
  return same ? kOk : kCheckFailed;
}

struct BenchArgs {
  std::string corpus;
  std::size_t random = 0;
  std::size_t depth = 6;
  std::size_t branching = 3;
  double stage_density = 0.5;
  std::uint64_t seed = 1;
  std::size_t repeats = 3;
  std::string out;
};

int cmd_bench(const BenchArgs& a, double tolerance, std::ostream& out, std::ostream& err) {
  std::vector<BenchRow> rows;
  std::vector<std::string> failures;

  if (!a.corpus.empty()) {
    if (!fs::is_directory(a.corpus))
      throw Error(ErrorCode::kParseError, "not a directory: " + a.corpus);
    const std::string suffix = ".tree.json";
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(a.corpus)) {
      std::string file = entry.path().filename().string();
      if (entry.is_regular_file() && file.size() > suffix.size() &&
          file.compare(file.size() - suffix.size(), suffix.size(), suffix) == 0)
        names.push_back(file.substr(0, file.size() - suffix.size()));
    }
    std::sort(names.begin(), names.end());
    for (const std::string& name : names) {
      try {
        fs::path base = fs::path(a.corpus) / name;
        EventTree tree = io::tree_from_json(io::read_json_file(base.string() + ".tree.json"), tolerance);
        StagePartition partition =
            io::staging_from_json(io::read_json_file(base.string() + ".staging.json"), tree);
        rows.push_back(bench_instance(name, apply_staging(tree, partition, tolerance), a.repeats));
      } catch (const std::exception& e) {
        failures.push_back(name + ": " + e.what());
      }
    }
  } else {
    RandomTreeParams params;
    params.min_depth = params.max_depth = std::max<std::size_t>(1, a.depth);
    params.max_branching = a.branching;
    params.stage_density = a.stage_density;
    std::mt19937_64 rng(a.seed);
    for (std::size_t i = 0; i < a.random; ++i) {
      std::ostringstream name;
      name << "random-" << std::setw(4) << std::setfill('0') << i;
      try {
        rows.push_back(bench_instance(name.str(), random_staged_tree(params, rng), a.repeats));
      } catch (const std::exception& e) {
        failures.push_back(name.str() + ": " + e.what());
      }
    }
  }

  emit(a.out, bench_csv(rows), out);
  bool all_equal = true;
  for (const BenchRow& r : rows)
    if (!r.equal) {
      all_equal = false;
      failures.push_back(r.name + ": baseline and optimal disagree");
    }
  for (const std::string& f : failures) err << "failed " << f << '\n';
  return all_equal ? kOk : kCheckFailed;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kInvalidPartition:
    case ErrorCode::kLeafInStage:
    case ErrorCode::kUnknownVertex:
      return kInvalidPartition;
    case ErrorCode::kPrefixMissing:
    case ErrorCode::kColourConflict:
      return kBrokenCeg;
    default:
      return kBadInput;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chain event graphs from staged trees", "ceg"};
  app.require_subcommand(1);

  BuildArgs build;
  CLI::App* build_cmd = app.add_subcommand("build", "Event tree with counts from a CSV table");
  build_cmd->add_option("--csv", build.csv, "Input table")->required();
  build_cmd->add_option("--order", build.order, "Column order (default: header order)")
      ->delimiter(',');
  build_cmd->add_option("--sentinel", build.sentinel, "Value that ends a path early");
  build_cmd->add_option("--out", build.out, "Tree JSON output (default: stdout)");

  StageArgs stage;
  CLI::App* stage_cmd = app.add_subcommand("stage", "Staging that groups equal probabilities");
  stage_cmd->add_option("--tree", stage.tree, "Tree JSON")->required();
  stage_cmd->add_option("--out", stage.out, "Staging JSON output (default: stdout)");

  CompactArgs comp;
  CLI::App* compact_cmd = app.add_subcommand("compact", "Chain event graph from a staged tree");
  compact_cmd->add_option("--tree", comp.tree, "Tree JSON")->required();
  compact_cmd->add_option("--staging", comp.staging, "Staging JSON")->required();
  compact_cmd->add_option("--mode", comp.mode, "optimal or baseline")
      ->check(CLI::IsMember({"optimal", "baseline"}));
  compact_cmd->add_option("--out", comp.out, "CEG JSON output (default: stdout)");
  compact_cmd->add_option("--dot", comp.dot, "Graphviz output");
  compact_cmd->add_option("--trace", comp.trace, "Merge trace JSON output");

  std::string ceg_path;
  CLI::App* roundtrip_cmd =
      app.add_subcommand("roundtrip", "Rebuild the staged tree from a CEG and compact it again");
  roundtrip_cmd->add_option("--ceg", ceg_path, "CEG JSON")->required();

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Baseline versus optimal compaction table");
  auto* corpus = bench_cmd->add_option("--corpus", bench.corpus,
                                       "Directory of NAME.tree.json / NAME.staging.json pairs");
  auto* random = bench_cmd->add_option("--random", bench.random, "Number of generated instances");
  corpus->excludes(random);
  bench_cmd->add_option("--depth", bench.depth, "Depth of generated trees");
  bench_cmd->add_option("--branching", bench.branching, "Maximum branching");
  bench_cmd->add_option("--stage-density", bench.stage_density, "Stage density in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--seed", bench.seed, "Generator seed");
  bench_cmd->add_option("--repeats", bench.repeats, "Timing repeats per instance");
  bench_cmd->add_option("--out", bench.out, "CSV output (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    double tolerance = tolerance_from_env();
    if (*build_cmd) return cmd_build(build, out);
    if (*stage_cmd) return cmd_stage(stage, tolerance, out);
    if (*compact_cmd) return cmd_compact(comp, tolerance, out);
    if (*roundtrip_cmd) return cmd_roundtrip(ceg_path, out);
    if (*bench_cmd) {
      if (corpus->count() == 0 && random->count() == 0) {
        err << "bench needs --corpus or --random\n";
        return kBadInput;
      }
      return cmd_bench(bench, tolerance, out, err);
    }
  } catch (const InvalidPartitionError& e) {
    err << e.what() << '\n';
    for (const Violation& v : e.violations()) {
      err << "  " << to_string(v.kind);
      if (v.stage) err << " stage " << *v.stage;
      if (!v.detail.empty()) err << ": " << v.detail;
      err << '\n';
    }
    return kInvalidPartition;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace ceg::cli
