// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#include "rtrmq/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "rtrmq/engine.hpp"

namespace rtrmq {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
  for (auto& s : s_) s = splitmix64(seed);
}

std::uint64_t Rng::next() {
  const auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  __uint128_t m = static_cast<__uint128_t>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<__uint128_t>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

DistributionSpec DistributionSpec::large(std::uint64_t n) { return {Distribution::kLarge, n, 0.0, 0.0, 0}; }

DistributionSpec DistributionSpec::medium(std::uint64_t n) {
  return {Distribution::kMedium, n, 0.6 * std::log(static_cast<double>(n)), 0.3, 0};
}

DistributionSpec DistributionSpec::small(std::uint64_t n) {
  return {Distribution::kSmall, n, 0.3 * std::log(static_cast<double>(n)), 0.3, 0};
}

DistributionSpec DistributionSpec::fixed(std::uint64_t n, int exponent) {
  return {Distribution::kFixed, n, 0.0, 0.0, exponent};
}

DistributionSpec DistributionSpec::make(Distribution kind, std::uint64_t n) {
  switch (kind) {
    case Distribution::kLarge: return large(n);
    case Distribution::kMedium: return medium(n);
    case Distribution::kSmall: return small(n);
    default: break;
  }
  throw std::invalid_argument("distribution '" + to_string(kind) + "' has no generator");
}

static std::uint64_t fixed_length(std::uint64_t n, int exponent) {
  const auto len = static_cast<std::uint64_t>(std::floor(std::ldexp(static_cast<double>(n), exponent)));
  return std::clamp<std::uint64_t>(len, 1, n);
}

double DistributionSpec::analytic_mean_length() const {
  switch (kind) {
    case Distribution::kLarge: return (static_cast<double>(n) + 1.0) / 2.0;
    case Distribution::kMedium:
    case Distribution::kSmall: return std::exp(mu + sigma * sigma / 2.0);
    case Distribution::kFixed: return static_cast<double>(fixed_length(n, exponent));
    case Distribution::kExplicit: break;
  }
  return 0.0;
}

std::string DistributionSpec::label() const {
  if (kind == Distribution::kFixed) return "y=" + std::to_string(exponent);
  return to_string(kind);
}

std::uint64_t draw_length(const DistributionSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case Distribution::kLarge: return 1 + rng.below(spec.n);
    case Distribution::kMedium:
    case Distribution::kSmall: {
      const double sample = std::ceil(std::exp(spec.mu + spec.sigma * rng.normal()));
      if (!(sample >= 1.0)) return 1;
      if (sample >= static_cast<double>(spec.n)) return spec.n;
      return static_cast<std::uint64_t>(sample);
    }
    case Distribution::kFixed: return fixed_length(spec.n, spec.exponent);
    case Distribution::kExplicit: break;
  }
  throw std::invalid_argument("explicit batches are not generated");
}

QueryBatch gen_queries(const DistributionSpec& spec, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("gen_queries: count must be >= 1");
  if (spec.n == 0 || spec.n > std::uint64_t{std::numeric_limits<Index>::max()} + 1) {
    throw std::invalid_argument("gen_queries: n outside the 32-bit index range");
  }
  Rng rng(seed);
  QueryBatch batch;
  batch.distribution = spec.kind;
  batch.seed = seed;
  batch.queries.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t s = draw_length(spec, rng);
    const std::uint64_t l = rng.below(spec.n - s + 1);
    batch.queries.push_back({static_cast<Index>(l), static_cast<Index>(l + s - 1)});
  }
  return batch;
}

std::vector<float> gen_uniform_values(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<float> values(n);
  for (float& v : values) v = static_cast<float>(rng.next() >> 40) * 0x1.0p-24f;
  return values;
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kRaycast: return "raycast";
    case Algorithm::kExhaustive: return "exhaustive";
    case Algorithm::kSparse: return "sparse";
  }
  return "raycast";
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "raycast") return Algorithm::kRaycast;
  if (s == "exhaustive") return Algorithm::kExhaustive;
  if (s == "sparse") return Algorithm::kSparse;
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

template <typename Fn>
double timed_parallel(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::min<std::size_t>(count, 1024)));
  const std::size_t chunk = (count + threads - 1) / threads;
  const auto start = Clock::now();
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t begin = std::min(count, w * chunk);
        const std::size_t end = std::min(count, begin + chunk);
        for (std::size_t i = begin; i < end; ++i) fn(i);
      });
    }
  }
  return std::chrono::duration<double, std::nano>(Clock::now() - start).count();
}

std::uint64_t digest(const std::vector<RmqAnswer>& answers, std::uint64_t h) {
  for (const RmqAnswer& a : answers) {
    h = (h ^ a.index) * 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

BenchRecord run_bench(const BenchConfig& config) {
  if (config.n == 0 || config.batch == 0 || config.reps == 0 || config.realizations == 0) {
    throw ConfigError("bench needs n, batch, reps and realizations >= 1");
  }
  if (config.spec.n != config.n) throw ConfigError("distribution built for a different n");
  if (config.n > std::numeric_limits<Index>::max()) throw ConfigError("n exceeds the 32-bit index range");

  BenchRecord record;
  record.n = config.n;
  record.q = config.batch;
  record.dist = config.spec.label();
  record.algo = to_string(config.algo);
  record.reps = config.reps;
  record.realizations = config.realizations;
  record.seed = config.seed;

  SolverOptions solver_options;
  solver_options.layout = config.layout;
  solver_options.blockmin = config.blockmin;
  if (config.algo == Algorithm::kRaycast) {
    if (config.layout == Layout::kBlockMatrix) {
      solver_options.blocks = config.forced_block_size ? make_block_config(config.n, *config.forced_block_size)
                                                       : choose_block_size(config.n, config.block_size_hint);
      record.block_size = solver_options.blocks->block_size;
    } else if (config.n > kMaxSingleLayout) {
      throw ConfigError("single layout supports at most 2^24 elements");
    }
  }

  double total_ns = 0.0;
  std::vector<double> per_realization;
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  std::uint64_t seed_state = config.seed;
  for (unsigned r = 0; r < config.realizations; ++r) {
    const std::uint64_t value_seed = splitmix64(seed_state);
    const std::uint64_t query_seed = splitmix64(seed_state);
    InputArray arr = InputArray::from_values(gen_uniform_values(config.n, value_seed));
    const QueryBatch batch = gen_queries(config.spec, config.batch, query_seed);
    std::vector<RmqAnswer> answers(batch.size());

    double realization_ns = 0.0;
    switch (config.algo) {
      case Algorithm::kRaycast: {
        const Solver<float> solver = Solver<float>::build(arr, solver_options);
        record.build_ms += solver.build_ms();
        for (unsigned rep = 0; rep < config.reps; ++rep) {
          BatchResult result = solve_batch(solver, batch, config.threads);
          realization_ns += result.elapsed_ns;
          answers = std::move(result.answers);
        }
        break;
      }
      case Algorithm::kSparse: {
        const auto start = Clock::now();
        const SparseTable table(arr);
        record.build_ms += std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        for (unsigned rep = 0; rep < config.reps; ++rep) {
          realization_ns += timed_parallel(batch.size(), config.threads,
                                           [&](std::size_t i) { answers[i] = table.query(batch.queries[i]); });
        }
        break;
      }
      case Algorithm::kExhaustive: {
        for (unsigned rep = 0; rep < config.reps; ++rep) {
          realization_ns += timed_parallel(batch.size(), config.threads,
                                           [&](std::size_t i) { answers[i] = rmq_exhaustive(arr, batch.queries[i]); });
        }
        break;
      }
    }

    // 1% audit against the left-to-right scan.
    for (std::size_t i = 0; i < batch.size(); i += 100) {
      ++record.audited;
      if (!(answers[i] == rmq_exhaustive(arr, batch.queries[i]))) record.status = "audit_fail";
    }
    hash = digest(answers, hash);
    total_ns += realization_ns;
    per_realization.push_back(realization_ns / (static_cast<double>(config.batch) * config.reps));
  }

  record.total_ms = total_ns / 1e6;
  record.ns_per_rmq = total_ns / (static_cast<double>(config.batch) * config.reps * config.realizations);
  double var = 0.0;
  for (const double v : per_realization) var += (v - record.ns_per_rmq) * (v - record.ns_per_rmq);
  record.ns_stddev = per_realization.size() > 1 ? std::sqrt(var / static_cast<double>(per_realization.size() - 1)) : 0.0;
  record.answer_digest = hash;
  return record;
}

std::vector<std::uint64_t> block_size_candidates(std::uint64_t n, const std::vector<std::uint64_t>& explicit_sizes) {
  std::vector<std::uint64_t> out;
  if (!explicit_sizes.empty()) {
    for (const std::uint64_t bs : explicit_sizes) {
      if (bs > 0 && precision_gate(n, bs)) out.push_back(bs);
    }
    return out;
  }
  for (std::uint64_t bs = 4; bs <= std::min(n, kMaxBlockSize); bs *= 4) {
    if (precision_gate(n, bs)) out.push_back(bs);
  }
  if (out.empty()) out.push_back(choose_block_size(n).block_size);
  return out;
}

std::vector<BenchRecord> heatmap_sweep(const HeatmapConfig& config) {
  std::vector<BenchRecord> rows;
  auto error_row = [&](std::uint64_t n, const DistributionSpec& spec, const std::string& algo,
                       std::optional<std::uint64_t> bs, const std::string& what) {
    BenchRecord row;
    row.n = n;
    row.q = config.batch;
    row.dist = spec.label();
    row.algo = algo;
    row.block_size = bs;
    row.reps = config.reps;
    row.realizations = config.realizations;
    row.seed = config.seed;
    row.status = "error:" + what;
    return row;
  };

  for (const std::uint64_t n : config.n_values) {
    for (int y = config.y_max; y >= config.y_min; --y) {
      const DistributionSpec spec = DistributionSpec::fixed(n, y);
      for (const Algorithm algo : config.algos) {
        BenchConfig bench;
        bench.algo = algo;
        bench.n = n;
        bench.batch = config.batch;
        bench.spec = spec;
        bench.reps = config.reps;
        bench.realizations = config.realizations;
        bench.seed = config.seed;
        bench.threads = config.threads;
        if (algo != Algorithm::kRaycast) {
          try {
            rows.push_back(run_bench(bench));
          } catch (const std::exception& e) {
            rows.push_back(error_row(n, spec, to_string(algo), std::nullopt, e.what()));
          }
          continue;
        }
        std::vector<std::uint64_t> candidates;
        try {
          // Explicit sizes run as given so failing ones leave an error row.
          candidates = config.block_sizes.empty() ? block_size_candidates(n, {}) : config.block_sizes;
        } catch (const std::exception& e) {
          rows.push_back(error_row(n, spec, to_string(algo), std::nullopt, e.what()));
          continue;
        }
        std::optional<BenchRecord> best;
        for (const std::uint64_t bs : candidates) {
          bench.forced_block_size = bs;
          try {
            BenchRecord row = run_bench(bench);
            if (row.status == "ok" && (!best || row.ns_per_rmq < best->ns_per_rmq)) best = row;
            rows.push_back(std::move(row));
          } catch (const std::exception& e) {
            rows.push_back(error_row(n, spec, to_string(algo), bs, e.what()));
          }
        }
        if (best) {
          best->algo = "raycast-best";
          rows.push_back(*best);
        }
      }
    }
  }
  return rows;
}

std::string format_csv_row(const BenchRecord& r) {
  std::string status = r.status;
  std::replace(status.begin(), status.end(), ',', ';');
  std::replace(status.begin(), status.end(), '\n', ' ');
  char ns[32];
  char ms[32];
  std::snprintf(ns, sizeof(ns), "%.6g", r.ns_per_rmq);
  std::snprintf(ms, sizeof(ms), "%.6g", r.total_ms);
  std::ostringstream os;
  os << r.n << ',' << r.q << ',' << r.dist << ',' << r.algo << ','
     << (r.block_size ? std::to_string(*r.block_size) : std::string()) << ',' << ns << ',' << ms << ',' << r.reps
     << ',' << r.realizations << ',' << r.seed << ',' << status;
  return os.str();
}

void write_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  os << kCsvHeader << '\n';
  for (const BenchRecord& r : records) os << format_csv_row(r) << '\n';
}

std::vector<BenchRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw std::runtime_error("CSV header mismatch");
  std::vector<BenchRecord> records;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 11) throw std::runtime_error("CSV line " + std::to_string(line_no) + ": expected 11 fields");
    BenchRecord r;
    try {
      r.n = std::stoull(f[0]);
      r.q = std::stoull(f[1]);
      r.dist = f[2];
      r.algo = f[3];
      if (!f[4].empty()) r.block_size = std::stoull(f[4]);
      r.ns_per_rmq = std::stod(f[5]);
      r.total_ms = std::stod(f[6]);
      r.reps = static_cast<unsigned>(std::stoul(f[7]));
      r.realizations = static_cast<unsigned>(std::stoul(f[8]));
      r.seed = std::stoull(f[9]);
      r.status = f[10];
    } catch (const std::logic_error&) {
      throw std::runtime_error("CSV line " + std::to_string(line_no) + ": malformed number");
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace rtrmq
