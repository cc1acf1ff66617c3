// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rtrmq/bench.hpp"
#include "rtrmq/core.hpp"
#include "rtrmq/engine.hpp"
#include "rtrmq/transform.hpp"
#include "rtrmq/verify.hpp"

namespace rtrmq::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// Usage errors detected after flag parsing (exit 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t n = 1u << 20;
  std::size_t q = 1u << 16;
  std::string dist = "large";
  std::string algo = "raycast";
  std::optional<std::uint64_t> block_size;
  std::optional<std::uint64_t> nb;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  unsigned reps = 1;
  unsigned realizations = 1;
  std::string input;
  std::string queries;
  std::string output;
  std::string dump_scene;
  std::string layout = "block";
  std::string blockmin = "geometry";
  bool fp64 = false;
  bool strict_layout = false;
  bool inject_fault = false;
  std::vector<std::string> algos{"raycast", "sparse", "exhaustive"};
  int nmin = 10;
  int nmax = 20;
  int ymin = -10;
  int ymax = -1;
  std::vector<std::uint64_t> block_sizes;
};

struct ParsedInput {
  std::optional<InputArray> array;
  std::vector<Query> queries;
  bool integers = false;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

template <typename T>
bool parse_number(const std::string& token, T& out) {
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

/// Array lines (one token) followed by query lines (`l r`). An optional first
/// line `int` or `real` selects the value type; blank lines are skipped.
void parse_file(const std::string& path, ParsedInput& parsed, bool values_allowed, bool queries_allowed) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::vector<std::int64_t> ints;
  std::vector<float> reals;
  bool seen_query = false;
  bool first = true;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const std::string text = trim(line);
    if (text.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no) + ": ";
    if (first && values_allowed && (text == "int" || text == "real")) {
      parsed.integers = text == "int";
      first = false;
      continue;
    }
    first = false;
    std::istringstream tokens(text);
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(t);
    if (parts.size() == 1 && values_allowed && !seen_query) {
      if (parsed.integers) {
        std::int64_t v = 0;
        if (!parse_number(parts[0], v)) throw UsageError(where + "malformed integer '" + parts[0] + "'");
        ints.push_back(v);
      } else {
        float v = 0;
        if (!parse_number(parts[0], v)) throw UsageError(where + "malformed value '" + parts[0] + "'");
        reals.push_back(v);
      }
    } else if (parts.size() == 2 && queries_allowed) {
      std::uint64_t l = 0;
      std::uint64_t r = 0;
      if (!parse_number(parts[0], l) || !parse_number(parts[1], r)) throw UsageError(where + "malformed query");
      if (l > r || r > std::numeric_limits<Index>::max()) throw UsageError(where + "invalid query " + text);
      parsed.queries.push_back({static_cast<Index>(l), static_cast<Index>(r)});
      seen_query = true;
    } else {
      throw UsageError(where + "malformed line '" + text + "'");
    }
  }
  if (!values_allowed) return;
  try {
    parsed.array = parsed.integers ? InputArray::from_integers(std::move(ints)) : InputArray::from_values(std::move(reals));
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Layout parse_layout(const std::string& s) {
  if (s == "single") return Layout::kSingle;
  if (s == "block") return Layout::kBlockMatrix;
  throw UsageError("unknown layout '" + s + "'");
}

BlockMinStrategy parse_blockmin(const std::string& s) {
  if (s == "geometry") return BlockMinStrategy::kGeometry;
  if (s == "table") return BlockMinStrategy::kLookupTable;
  throw UsageError("unknown block-minimum strategy '" + s + "'");
}

Algorithm algorithm_of(const std::string& s) {
  try {
    return parse_algorithm(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void require_raycast_for_blocks(const RunConfig& c, Algorithm algo) {
  if (algo != Algorithm::kRaycast && (c.block_size || c.nb)) {
    throw UsageError("--block-size and --nb apply only to --algo raycast");
  }
}

SolverOptions solver_options(const RunConfig& c, std::size_t n) {
  SolverOptions o;
  o.layout = parse_layout(c.layout);
  o.blockmin = parse_blockmin(c.blockmin);
  o.grid = c.strict_layout ? GridMode::kLinear : GridMode::kSquare;
  if (o.layout == Layout::kSingle && (c.block_size || c.nb)) throw UsageError("block sizes need --layout block");
  if (c.nb) o.blocks = make_block_config(n, *c.nb);
  o.block_size_hint = c.block_size;
  return o;
}

std::string format_value(const InputArray& arr, Index i, bool integers) {
  if (integers) return std::to_string((*arr.raw())[i]);
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, arr[i]);
  return std::string(buf, res.ptr);
}

template <typename Real>
std::vector<RmqAnswer> raycast_answers(const RunConfig& c, const InputArray& arr, const QueryBatch& batch,
                                       std::ostream& err) {
  const Solver<Real> solver = Solver<Real>::build(arr, solver_options(c, arr.size()));
  if (!c.dump_scene.empty()) {
    std::ofstream dump(c.dump_scene);
    if (!dump) throw UsageError("cannot write " + c.dump_scene);
    solver.scene().dump(dump);
  }
  if (const auto cfg = solver.block_config()) {
    err << "block size " << cfg->block_size << ", " << cfg->num_blocks << " blocks\n";
  }
  return solve_batch(solver, batch, c.threads).answers;
}

int cmd_query(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.input.empty()) throw UsageError("query needs --input");
  ParsedInput parsed;
  parse_file(c.input, parsed, true, c.queries.empty());
  if (!c.queries.empty()) parse_file(c.queries, parsed, false, true);
  const InputArray& arr = *parsed.array;
  QueryBatch batch;
  batch.distribution = Distribution::kExplicit;
  batch.queries = parsed.queries;
  for (std::size_t k = 0; k < batch.size(); ++k) {
    const Query& q = batch.queries[k];
    if (q.r >= arr.size()) {
      throw UsageError("query " + std::to_string(k + 1) + " (" + std::to_string(q.l) + "," + std::to_string(q.r) +
                       ") outside the array of " + std::to_string(arr.size()));
    }
  }

  const Algorithm algo = algorithm_of(c.algo);
  require_raycast_for_blocks(c, algo);
  std::vector<RmqAnswer> answers;
  switch (algo) {
    case Algorithm::kRaycast:
      answers = c.fp64 ? raycast_answers<double>(c, arr, batch, err) : raycast_answers<float>(c, arr, batch, err);
      break;
    case Algorithm::kSparse: {
      const SparseTable table(arr);
      for (const Query& q : batch.queries) answers.push_back(table.query(q));
      break;
    }
    case Algorithm::kExhaustive:
      for (const Query& q : batch.queries) answers.push_back(rmq_exhaustive(arr, q));
      break;
  }

  std::ofstream file;
  if (!c.output.empty()) {
    file.open(c.output);
    if (!file) throw UsageError("cannot write " + c.output);
  }
  std::ostream& sink = c.output.empty() ? out : file;
  for (const RmqAnswer& a : answers) sink << a.index << ' ' << format_value(arr, a.index, parsed.integers) << '\n';
  return kExitOk;
}

void emit_csv(const RunConfig& c, const std::vector<BenchRecord>& rows, std::ostream& out) {
  if (c.output.empty()) {
    write_csv(out, rows);
    return;
  }
  std::ofstream file(c.output);
  if (!file) throw UsageError("cannot write " + c.output);
  write_csv(file, rows);
}

int cmd_bench(const RunConfig& c, std::ostream& out, std::ostream& err) {
  BenchConfig b;
  b.algo = algorithm_of(c.algo);
  require_raycast_for_blocks(c, b.algo);
  b.n = c.n;
  b.batch = c.q;
  try {
    b.spec = DistributionSpec::make(parse_distribution(c.dist), c.n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  b.reps = c.reps;
  b.realizations = c.realizations;
  b.seed = c.seed;
  b.threads = c.threads;
  b.layout = parse_layout(c.layout);
  b.blockmin = parse_blockmin(c.blockmin);
  b.block_size_hint = c.block_size;
  b.forced_block_size = c.nb;
  const BenchRecord record = run_bench(b);
  err << "build " << std::setprecision(6) << record.build_ms << " ms, stddev " << record.ns_stddev
      << " ns/rmq, audited " << record.audited << "\n";
  emit_csv(c, {record}, out);
  return record.status == "ok" ? kExitOk : kExitFailure;
}

int cmd_heatmap(const RunConfig& c, std::ostream& out) {
  if (c.nmin < 0 || c.nmin > c.nmax || c.nmax > 22) throw UsageError("need 0 <= --nmin <= --nmax <= 22");
  if (c.ymin > c.ymax || c.ymax > 0) throw UsageError("need --ymin <= --ymax <= 0");
  HeatmapConfig h;
  for (int e = c.nmin; e <= c.nmax; ++e) h.n_values.push_back(std::uint64_t{1} << e);
  h.y_min = c.ymin;
  h.y_max = c.ymax;
  for (const std::string& a : c.algos) h.algos.push_back(algorithm_of(a));
  h.batch = c.q;
  h.reps = c.reps;
  h.realizations = c.realizations;
  h.seed = c.seed;
  h.threads = c.threads;
  h.block_sizes = c.block_sizes;
  emit_csv(c, heatmap_sweep(h), out);
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  verify::VerifyOptions v;
  v.seed = c.seed;
  v.fp64 = c.fp64;
  v.threads = c.threads;
  v.fault_right_begin_offset = c.inject_fault ? 1 : 0;
  bool ok = true;
  for (const verify::SuiteResult& s : verify::run_all(v)) {
    out << (s.passed() ? "PASS " : "FAIL ") << s.name << ": " << s.checks << " checks, " << s.failures
        << " failures";
    if (!s.first_failure.empty()) out << " (first: " << s.first_failure << ")";
    out << "\n";
    ok = ok && s.passed();
  }
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  if (const char* env = std::getenv("RMQ_THREADS"); env != nullptr && *env != '\0') {
    if (!parse_number(std::string(env), c.threads) || c.threads < 1 || c.threads > 1024) {
      err << "error: RMQ_THREADS must be an integer in [1, 1024], got '" << env << "'\n";
      return kExitUsage;
    }
  }
  CLI::App app{"Range minimum queries answered by ray casting against a triangle scene"};
  app.require_subcommand(1);

  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", c.threads, "worker threads (default: RMQ_THREADS, else 1)")
        ->check(CLI::Range(1u, 1024u));
    sub->add_option("--seed", c.seed, "random seed");
  };
  auto add_scene = [&](CLI::App* sub) {
    sub->add_option("--algo", c.algo, "raycast, sparse or exhaustive");
    sub->add_option("--block-size", c.block_size, "preferred block size; replaced by a passing size if it fails the gate");
    sub->add_option("--nb", c.nb, "forced block size; a failing gate is an error");
    sub->add_option("--layout", c.layout, "block or single");
    sub->add_option("--blockmin", c.blockmin, "geometry or table");
  };

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suites");
  add_threads(verify);
  verify->add_flag("--fp64", c.fp64, "also compare 32-bit and 64-bit scenes");
  verify->add_flag("--inject-fault", c.inject_fault, "shift the right partial block by one element");

  CLI::App* query = app.add_subcommand("query", "answer queries from a file");
  add_threads(query);
  add_scene(query);
  query->add_option("--input", c.input, "array file, optionally followed by queries")->required();
  query->add_option("--queries", c.queries, "separate query file");
  query->add_option("--output", c.output, "answers file (default stdout)");
  query->add_option("--dump-scene", c.dump_scene, "write the scene triangles to this path");
  query->add_flag("--fp64", c.fp64, "64-bit geometry");
  query->add_flag("--strict-layout", c.strict_layout, "place blocks on a linear grid of side B");

  CLI::App* bench = app.add_subcommand("bench", "time one configuration");
  add_threads(bench);
  add_scene(bench);
  bench->add_option("--n", c.n, "array size")->check(CLI::PositiveNumber);
  bench->add_option("--q", c.q, "batch size")->check(CLI::PositiveNumber);
  bench->add_option("--dist", c.dist, "large, medium or small");
  bench->add_option("--reps", c.reps, "repeats per realization")->check(CLI::PositiveNumber);
  bench->add_option("--realizations", c.realizations, "independent arrays")->check(CLI::PositiveNumber);
  bench->add_option("--output", c.output, "CSV file (default stdout)");

  CLI::App* heatmap = app.add_subcommand("heatmap", "sweep n and range length");
  add_threads(heatmap);
  heatmap->add_option("--algos", c.algos, "comma-separated algorithms")->delimiter(',');
  heatmap->add_option("--nmin", c.nmin, "smallest log2 n");
  heatmap->add_option("--nmax", c.nmax, "largest log2 n");
  heatmap->add_option("--ymin", c.ymin, "smallest length exponent");
  heatmap->add_option("--ymax", c.ymax, "largest length exponent");
  heatmap->add_option("--q", c.q, "batch size per cell")->check(CLI::PositiveNumber);
  heatmap->add_option("--reps", c.reps, "repeats per realization")->check(CLI::PositiveNumber);
  heatmap->add_option("--realizations", c.realizations, "independent arrays")->check(CLI::PositiveNumber);
  heatmap->add_option("--block-sizes", c.block_sizes, "raycast block sizes to sweep")->delimiter(',');
  heatmap->add_option("--output", c.output, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(c, out);
    if (query->parsed()) return cmd_query(c, out, err);
    if (bench->parsed()) return cmd_bench(c, out, err);
    return cmd_heatmap(c, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace rtrmq::cli
