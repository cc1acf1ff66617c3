// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#include "rtrmq/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "rtrmq/bench.hpp"
#include "rtrmq/bvh.hpp"
#include "rtrmq/engine.hpp"
#include "rtrmq/transform.hpp"

namespace rtrmq::verify {

namespace {

std::string describe(const Query& q) {
  return "(" + std::to_string(q.l) + "," + std::to_string(q.r) + ")";
}

std::string describe(const RmqAnswer& a) {
  std::ostringstream os;
  os << a.index << "@" << a.value;
  return os.str();
}

std::vector<Query> all_pairs(std::size_t n) {
  std::vector<Query> out;
  out.reserve(n * (n + 1) / 2);
  for (Index l = 0; l < n; ++l) {
    for (Index r = l; r < n; ++r) out.push_back({l, r});
  }
  return out;
}

/// Mix of the three length distributions plus single-element queries.
std::vector<Query> sampled_queries(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<Query> out;
  out.reserve(count);
  const DistributionSpec specs[] = {DistributionSpec::large(n), DistributionSpec::medium(n),
                                    DistributionSpec::small(n)};
  for (int k = 0; k < 3; ++k) {
    const std::size_t part = count / 3 + (k < static_cast<int>(count % 3) ? 1 : 0);
    if (part == 0) continue;
    const QueryBatch b = gen_queries(specs[k], part, seed + static_cast<std::uint64_t>(k) * 7919);
    out.insert(out.end(), b.queries.begin(), b.queries.end());
  }
  out.push_back({0, static_cast<Index>(n - 1)});
  out.push_back({static_cast<Index>(n - 1), static_cast<Index>(n - 1)});
  return out;
}

std::vector<Query> queries_for(const EngineSweep& sweep, std::size_t n, std::uint64_t seed) {
  return n <= sweep.all_pairs_limit ? all_pairs(n) : sampled_queries(n, sweep.sampled_queries, seed);
}

template <typename Fn>
void guarded(SuiteResult& result, const std::string& context, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    result.fail(context + ": " + e.what());
  }
}

}  // namespace

bool exact_covers(std::int64_t local, std::int64_t d, std::int64_t cell_x, std::int64_t cell_y, std::int64_t l,
                  std::int64_t r, std::int64_t qx, std::int64_t qy) {
  // Triangle scaled by d: A = right angle, B = top of the L leg, C = left end of the R leg.
  const std::int64_t ax = 2 * d * cell_x + local + 1;
  const std::int64_t ay = 2 * d * cell_y + local - 1;
  const std::int64_t by = 2 * d * cell_y + 2 * d;
  const std::int64_t cx = 2 * d * cell_x - d;
  // Point scaled by d as well: callers pass l, r in units of 1/d.
  const std::int64_t px = 2 * d * qx + l;
  const std::int64_t py = 2 * d * qy + r;
  if (!(px < ax) || !(py > ay)) return false;
  // A lies on the negative side of C->B; the hypotenuse itself is included.
  const std::int64_t side = (ax - cx) * (py - ay) - (by - ay) * (px - cx);
  return side <= 0;
}

InputArray random_array(std::size_t n, double duplicate_rate, std::uint64_t seed) {
  std::vector<float> values = gen_uniform_values(n, seed);
  Rng rng(seed ^ 0x5bd1e995ULL);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.uniform() < duplicate_rate) values[i] = values[rng.below(n)];
  }
  return InputArray::from_values(std::move(values));
}

static InputArray random_int_array(std::size_t n, double duplicate_rate, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::int64_t> raw(n);
  for (auto& x : raw) x = static_cast<std::int64_t>(rng.below(std::uint64_t{1} << 24));
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.uniform() < duplicate_rate) raw[i] = raw[rng.below(n)];
  }
  return InputArray::from_integers(std::move(raw));
}

std::vector<std::uint64_t> sweep_block_sizes(std::size_t n) {
  const std::uint64_t sqrt_size = std::uint64_t{1} << (std::bit_width(n) - 1) / 2;
  std::vector<std::uint64_t> out;
  for (const std::uint64_t bs : {std::uint64_t{13}, sqrt_size, std::uint64_t{n / 3 + 1}}) {
    if (bs >= 1 && precision_gate(n, bs) && std::find(out.begin(), out.end(), bs) == out.end()) out.push_back(bs);
  }
  return out;
}

std::vector<SolverVariant> solver_variants(std::size_t n, std::size_t max_lookup_entries) {
  std::vector<SolverVariant> out;
  if (n <= kMaxSingleLayout) {
    SolverOptions o;
    o.layout = Layout::kSingle;
    out.push_back({"single", o});
  }
  for (const std::uint64_t bs : sweep_block_sizes(n)) {
    SolverOptions o;
    o.layout = Layout::kBlockMatrix;
    o.blocks = make_block_config(n, bs);
    o.blockmin = BlockMinStrategy::kGeometry;
    out.push_back({"block" + std::to_string(bs) + "/geometry", o});
    const std::uint64_t blocks = o.blocks->num_blocks;
    if (blocks * (blocks + 1) / 2 <= max_lookup_entries) {
      o.blockmin = BlockMinStrategy::kLookupTable;
      out.push_back({"block" + std::to_string(bs) + "/lookup", o});
    }
  }
  return out;
}

SuiteResult check_oracles(int arrays, std::size_t max_n, std::uint64_t seed) {
  SuiteResult result{"core oracles"};
  Rng rng(seed);
  for (int a = 0; a < arrays; ++a) {
    const std::size_t n = 1 + rng.below(max_n);
    const InputArray arr = random_array(n, 0.3, seed + 1 + static_cast<std::uint64_t>(a));
    const SparseTable table(arr);
    std::vector<float> prev_row(n);
    for (Index l = static_cast<Index>(n); l-- > 0;) {
      std::vector<float> row(n);
      for (Index r = l; r < n; ++r) {
        const Query q{l, r};
        const RmqAnswer want = rmq_exhaustive(arr, q);
        const RmqAnswer got = rmq_sparse(table, q);
        ++result.checks;
        if (!(got == want)) result.fail("sparse " + describe(q) + " = " + describe(got) + ", scan " + describe(want));
        if (want.index < l || want.index > r) result.fail("answer outside range " + describe(q));
        row[r] = want.value;
        // Widening by one on either side never raises the minimum.
        if (r > l && row[r] > row[r - 1]) result.fail("right widening raised min at " + describe(q));
        if (l + 1 < n && r > l && row[r] > prev_row[r]) result.fail("left widening raised min at " + describe(q));
      }
      prev_row = std::move(row);
    }
  }
  return result;
}

SuiteResult check_transform(std::int64_t exhaustive_limit, std::uint64_t random_pairs, std::int64_t random_max,
                            std::uint64_t seed) {
  SuiteResult result{"transform monotonicity"};
  float prev = int_to_float(0);
  for (std::int64_t x = 1; x <= exhaustive_limit; ++x) {
    const float cur = int_to_float(x);
    ++result.checks;
    if (!(prev < cur)) result.fail("not increasing at " + std::to_string(x));
    prev = cur;
  }
  Rng rng(seed);
  for (std::uint64_t k = 0; k < random_pairs; ++k) {
    auto x = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(random_max)));
    auto y = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(random_max)));
    if (x == y) continue;
    if (x > y) std::swap(x, y);
    const float fx = int_to_float(x);
    const float fy = int_to_float(y);
    ++result.checks;
    if (!(fx < fy)) result.fail("order violated for " + std::to_string(x) + " < " + std::to_string(y));
    if (fx == fy) result.fail("collision for " + std::to_string(x) + ", " + std::to_string(y));
  }
  return result;
}

SuiteResult check_gate_examples() {
  SuiteResult result{"precision gate"};
  struct Example {
    std::uint64_t n, bs;
    bool expected;
  };
  const Example examples[] = {{std::uint64_t{1} << 26, std::uint64_t{1} << 12, true},
                              {std::uint64_t{1} << 26, std::uint64_t{1} << 18, true},
                              {std::uint64_t{1} << 34, std::uint64_t{1} << 18, false}};
  for (const Example& e : examples) {
    ++result.checks;
    const GateReport g = evaluate_gate(e.n, e.bs);
    if (g.ok() != e.expected) result.fail("gate " + g.describe());
  }
  // Equality case: both sides are exactly 2^-18.
  ++result.checks;
  const GateReport eq = evaluate_gate(std::uint64_t{1} << 26, std::uint64_t{1} << 18);
  if (eq.obtained != eq.needed) result.fail("expected equality: " + eq.describe());

  // Coordinate-level restatement: ulp(2 * grid_side) <= 1 / BS for passing configs.
  for (int log_n = 0; log_n <= 36; log_n += 2) {
    for (const std::uint64_t n : {std::uint64_t{1} << log_n, (std::uint64_t{3} << log_n) / 2 + 1}) {
      for (std::uint64_t bs = 1; bs <= kMaxBlockSize; bs = bs * 2 + (bs % 3 == 0 ? 1 : 0)) {
        if (!precision_gate(n, bs)) continue;
        const BlockConfig cfg = make_block_config(n, bs);
        const float far = static_cast<float>(2 * cfg.grid_side);
        const double ulp = static_cast<double>(std::nextafter(far, std::numeric_limits<float>::infinity()) - far);
        ++result.checks;
        if (ulp > 1.0 / static_cast<double>(bs)) {
          result.fail("ulp(2G) > 1/BS for n=" + std::to_string(n) + " bs=" + std::to_string(bs));
        }
      }
    }
  }
  return result;
}

namespace {

/// Every in-cell query of every block against every triangle of a block scene.
void check_block_coverage(SuiteResult& result, std::size_t n, std::uint64_t nb, GridMode mode) {
  std::vector<float> values(n, 1.0f);
  const InputArray arr = InputArray::from_values(values);
  const BlockConfig cfg = make_block_config(n, nb);
  const CellLayout layout(cfg, mode);
  const std::uint64_t unit = layout.local_unit();
  const std::uint64_t blocks = cfg.num_blocks;

  struct Placed {
    Triangle<float> tri;
    bool is_block_min;
    std::int64_t local, d, cx, cy, block;
  };
  std::vector<Placed> tris;
  for (Index i = 0; i < n; ++i) {
    const std::uint64_t b = i / nb;
    const Cell c = layout.cell_of_block(b);
    tris.push_back({gen_triangle_block<float>(arr, i, layout), false, static_cast<std::int64_t>(i % nb),
                    static_cast<std::int64_t>(unit), static_cast<std::int64_t>(c.x), static_cast<std::int64_t>(c.y),
                    static_cast<std::int64_t>(b)});
  }
  for (Index j = 0; j < blocks; ++j) {
    tris.push_back({corner_triangle<float>(1.0f, j, blocks, Cell{0, 0}, j), true, j,
                    static_cast<std::int64_t>(blocks), 0, 0, j});
  }

  const std::string ctx = "n=" + std::to_string(n) + " nb=" + std::to_string(nb) +
                          (mode == GridMode::kLinear ? " linear" : "");
  auto probe = [&](std::int64_t l, std::int64_t r, std::int64_t qd, Cell cell, bool block_level, std::int64_t base,
                   std::int64_t query_block) {
    Ray<float> ray;
    ray.origin = {-1.0f, static_cast<float>(grid_coord(l, qd, cell.x)),
                  static_cast<float>(grid_coord(r, qd, cell.y))};
    for (const Placed& p : tris) {
      bool expected;
      if (block_level) {
        expected = p.is_block_min && p.block >= l && p.block <= r;
      } else {
        const std::int64_t gi = base + p.local;
        expected = !p.is_block_min && p.block == query_block && gi >= base + l && gi <= base + r;
      }
      const bool hit = intersect_ray_triangle(ray, p.tri).has_value();
      // Exact test on a common denominator p.d * qd.
      const bool exact = exact_covers(p.local * qd, p.d * qd, p.cx, p.cy, l * p.d, r * p.d,
                                      static_cast<std::int64_t>(cell.x), static_cast<std::int64_t>(cell.y));
      result.checks += 2;
      if (hit != expected) {
        result.fail(ctx + ": ray " + std::to_string(l) + "," + std::to_string(r) + " vs triangle " +
                    std::to_string(p.tri.primitive_id) + (p.is_block_min ? "(block)" : "") + " hit=" +
                    std::to_string(hit));
      }
      if (exact != expected) {
        result.fail(ctx + ": exact region test disagrees for " + std::to_string(l) + "," + std::to_string(r));
      }
    }
  };

  for (std::uint64_t b = 0; b < blocks; ++b) {
    const auto base = static_cast<std::int64_t>(b * nb);
    const auto size = static_cast<std::int64_t>(std::min<std::uint64_t>(nb, n - b * nb));
    for (std::int64_t l = 0; l < size; ++l) {
      for (std::int64_t r = l; r < size; ++r) {
        probe(l, r, static_cast<std::int64_t>(unit), layout.cell_of_block(b), false, base,
              static_cast<std::int64_t>(b));
      }
    }
  }
  for (std::int64_t a = 0; a < static_cast<std::int64_t>(blocks); ++a) {
    for (std::int64_t b = a; b < static_cast<std::int64_t>(blocks); ++b) {
      probe(a, b, static_cast<std::int64_t>(blocks), Cell{0, 0}, true, 0, -1);
    }
  }
}

}  // namespace

SuiteResult check_coverage(std::size_t max_n) {
  SuiteResult result{"geometry coverage"};
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::vector<float> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = static_cast<float>((i * 7) % 5);
    const InputArray arr = InputArray::from_values(values);
    for (Index i = 0; i < n; ++i) {
      const Triangle<float> tri = gen_triangle<float>(arr, i);
      ++result.checks;
      if (!(tri.v0.x == tri.v1.x && tri.v1.x == tri.v2.x && tri.v1.y == tri.v0.y && tri.v2.z == tri.v0.z)) {
        result.fail("triangle shape invariant broken at i=" + std::to_string(i));
      }
      for (Index l = 0; l < n; ++l) {
        for (Index r = l; r < n; ++r) {
          const bool expected = l <= i && i <= r;
          Ray<float> ray;
          ray.origin = {arr.theta(), static_cast<float>(grid_coord(l, n, 0)), static_cast<float>(grid_coord(r, n, 0))};
          const bool hit = intersect_ray_triangle(ray, tri).has_value();
          const bool exact = exact_covers(i, static_cast<std::int64_t>(n), 0, 0, l, r, 0, 0);
          result.checks += 2;
          if (hit != expected) {
            result.fail("single n=" + std::to_string(n) + " i=" + std::to_string(i) + " query " + describe(Query{l, r}));
          }
          if (exact != expected) result.fail("exact region test disagrees, single n=" + std::to_string(n));
        }
      }
    }
    for (std::uint64_t nb = 1; nb <= n; ++nb) {
      guarded(result, "block n=" + std::to_string(n), [&] { check_block_coverage(result, n, nb, GridMode::kSquare); });
      const std::uint64_t blocks = (n + nb - 1) / nb;
      if (nb <= blocks) {
        guarded(result, "linear n=" + std::to_string(n),
                [&] { check_block_coverage(result, n, nb, GridMode::kLinear); });
      }
    }
  }
  return result;
}

SuiteResult check_bvh(int scenes, int rays_per_scene, std::size_t max_triangles, std::uint64_t seed) {
  SuiteResult result{"bvh soundness"};
  Rng rng(seed);
  // Coordinates on a 1/16 grid so rays regularly land on edges and vertices.
  auto grid = [&](int lo, int hi) {
    return static_cast<float>(lo) + static_cast<float>(rng.below(static_cast<std::uint64_t>((hi - lo) * 16 + 1))) / 16.0f;
  };
  for (int s = 0; s < scenes; ++s) {
    const std::size_t n = 1 + rng.below(max_triangles);
    const int palette = 1 + static_cast<int>(rng.below(8));  // few distinct planes -> many t ties
    std::vector<Triangle<float>> tris;
    tris.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const float x = rng.below(2) == 0 ? static_cast<float>(rng.below(static_cast<std::uint64_t>(palette)))
                                        : static_cast<float>(rng.uniform() * palette);
      const float l = grid(-1, 3);
      const float r = grid(-1, 3);
      const float h = grid(0, 3) + 1.0f / 16.0f;
      const float w = grid(0, 3) + 1.0f / 16.0f;
      tris.push_back({{x, l, r}, {x, l, r + h}, {x, l - w, r}, static_cast<Index>(i)});
    }
    // Shuffle ids so id order differs from build order.
    for (std::size_t i = n; i > 1; --i) std::swap(tris[i - 1].primitive_id, tris[rng.below(i)].primitive_id);

    const Bvh<float> bvh(tris);
    // Structure: containment, leaf partition, depth bound.
    const auto nodes = bvh.nodes();
    std::vector<int> seen(n, 0);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const BvhNode<float>& node = nodes[k];
      ++result.checks;
      if (node.is_leaf()) {
        if (node.count > Bvh<float>::kMaxLeafSize) result.fail("oversized leaf");
        for (std::uint32_t t = node.offset; t < node.offset + node.count; ++t) {
          const Triangle<float>& tri = bvh.triangles()[t];
          ++seen[tri.primitive_id];
          if (!node.box.contains(bounds_of(tri))) result.fail("leaf box misses its triangle");
        }
      } else {
        if (!node.box.contains(nodes[k + 1].box) || !node.box.contains(nodes[node.offset].box)) {
          result.fail("child box escapes parent in scene " + std::to_string(s));
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[i] != 1) result.fail("leaves do not partition the triangle set");
    }
    const std::size_t depth_bound = 2 * static_cast<std::size_t>(std::bit_width(n)) + 2;
    ++result.checks;
    if (bvh.depth() > depth_bound) result.fail("depth " + std::to_string(bvh.depth()) + " for n=" + std::to_string(n));

    for (int k = 0; k < rays_per_scene; ++k) {
      Ray<float> ray;
      ray.origin = {-1.5f - static_cast<float>(rng.below(4)), grid(-2, 4), grid(-2, 4)};
      if (rng.below(4) == 0) ray.t_max = static_cast<float>(rng.uniform() * (palette + 3));
      if (rng.below(8) == 0) ray.t_min = static_cast<float>(rng.uniform() * 3);
      if (ray.t_min > ray.t_max) std::swap(ray.t_min, ray.t_max);
      const HitRecord<float> got = bvh.closest_hit(ray);
      const HitRecord<float> want = closest_hit_brute_force<float>(tris, ray);
      ++result.checks;
      const bool same = got.hit == want.hit &&
                        (!got.hit || (std::bit_cast<std::uint32_t>(got.t) == std::bit_cast<std::uint32_t>(want.t) &&
                                      got.primitive_id == want.primitive_id));
      if (!same) {
        result.fail("scene " + std::to_string(s) + " ray " + std::to_string(k) + ": bvh id " +
                    std::to_string(got.primitive_id) + ", brute force id " + std::to_string(want.primitive_id));
      }
    }
  }
  return result;
}

SuiteResult check_engine(const EngineSweep& sweep) {
  SuiteResult result{"engine oracle equivalence"};
  std::uint64_t salt = 0;
  for (const std::size_t n : sweep.sizes) {
    for (int a = 0; a < sweep.arrays_per_size; ++a) {
      const std::uint64_t seed = sweep.seed * 1000003 + (++salt);
      const InputArray arr = (a % 4 == 3) ? random_int_array(n, sweep.duplicate_rate, seed)
                                          : random_array(n, sweep.duplicate_rate, seed);
      const SparseTable table(arr);
      QueryBatch batch;
      batch.queries = queries_for(sweep, n, seed);
      std::vector<RmqAnswer> expected(batch.size());
      for (std::size_t i = 0; i < batch.size(); ++i) expected[i] = table.query(batch.queries[i]);

      for (SolverVariant& variant : solver_variants(n)) {
        variant.options.check_payload = true;
        const std::string ctx = "n=" + std::to_string(n) + " " + variant.name;
        guarded(result, ctx, [&] {
          const Solver<float> solver = Solver<float>::build(arr, variant.options);
          const BatchResult got = solve_batch(solver, batch, sweep.threads);
          for (std::size_t i = 0; i < batch.size(); ++i) {
            ++result.checks;
            if (!(got.answers[i] == expected[i])) {
              result.fail(ctx + " query " + describe(batch.queries[i]) + " = " + describe(got.answers[i]) +
                          ", oracle " + describe(expected[i]));
            }
          }
        });
      }
    }
  }
  return result;
}

SuiteResult check_decomposition(const EngineSweep& sweep, std::int64_t fault_right_begin_offset) {
  SuiteResult result{"block decomposition"};
  std::uint64_t salt = 0;
  for (const std::size_t n : sweep.sizes) {
    for (int a = 0; a < sweep.arrays_per_size; ++a) {
      const std::uint64_t seed = sweep.seed * 7919 + (++salt);
      const InputArray arr = random_array(n, sweep.duplicate_rate, seed);
      const SparseTable table(arr);
      const std::vector<Query> queries = queries_for(sweep, n, seed);
      for (SolverVariant& variant : solver_variants(n)) {
        if (variant.options.layout != Layout::kBlockMatrix) continue;
        variant.options.fault_right_begin_offset = fault_right_begin_offset;
        const std::string ctx = "n=" + std::to_string(n) + " " + variant.name;
        guarded(result, ctx, [&] {
          const Solver<float> solver = Solver<float>::build(arr, variant.options);
          const auto nb = static_cast<Index>(variant.options.blocks->block_size);
          const auto last = static_cast<Index>(n - 1);
          for (const Query& q : queries) {
            ++result.checks;
            BlockDecomposition d;
            try {
              d = solver.decompose(q);
            } catch (const std::exception& e) {
              result.fail(ctx + " query " + describe(q) + ": " + e.what());
              continue;
            }
            const Index bl = q.l / nb;
            const Index br = q.r / nb;
            const RmqAnswer whole = table.query(q);
            if (d.left_block != bl || d.right_block != br || d.single_block != (bl == br)) {
              result.fail(ctx + " wrong block indices for " + describe(q));
              continue;
            }
            if (bl == br) {
              if (!d.left || !(*d.left == whole)) result.fail(ctx + " single-block answer for " + describe(q));
            } else {
              const Query left{q.l, std::min<Index>((bl + 1) * nb - 1, last)};
              const Query right{br * nb, q.r};
              if (!(d.left_part == left) || !d.left || !(*d.left == table.query(left))) {
                result.fail(ctx + " left partial block for " + describe(q));
              }
              if (!(d.right_part == right) || !d.right || !(*d.right == table.query(right))) {
                result.fail(ctx + " right partial block for " + describe(q) + " (expected " + describe(right) + ")");
              }
              const bool has_middle = br - bl > 1;
              if (d.middle.has_value() != has_middle) {
                result.fail(ctx + " middle presence for " + describe(q));
              } else if (has_middle && !(*d.middle == table.query(Query{(bl + 1) * nb, br * nb - 1}))) {
                result.fail(ctx + " covered blocks for " + describe(q));
              }
              // min over [l, r] = min(left part, covered blocks, right part)
              RmqAnswer combined = *d.left;
              if (d.middle && better(*d.middle, combined)) combined = *d.middle;
              if (d.right && better(*d.right, combined)) combined = *d.right;
              if (!(combined == d.combined)) result.fail(ctx + " combination for " + describe(q));
            }
            if (!(d.combined == whole)) result.fail(ctx + " decomposed answer for " + describe(q));
          }
        });
      }
    }
  }
  return result;
}

SuiteResult check_strategy_agreement(const EngineSweep& sweep) {
  SuiteResult result{"strategy agreement"};
  std::uint64_t salt = 0;
  for (const std::size_t n : sweep.sizes) {
    for (int a = 0; a < sweep.arrays_per_size; ++a) {
      const std::uint64_t seed = sweep.seed * 31337 + (++salt);
      const InputArray arr = random_array(n, sweep.duplicate_rate, seed);
      QueryBatch batch;
      batch.queries = queries_for(sweep, n, seed);
      std::optional<std::vector<RmqAnswer>> reference;
      std::string reference_name;
      for (const SolverVariant& variant : solver_variants(n)) {
        guarded(result, variant.name, [&] {
          const Solver<float> solver = Solver<float>::build(arr, variant.options);
          std::vector<RmqAnswer> answers = solve_batch(solver, batch, sweep.threads).answers;
          ++result.checks;
          if (!reference) {
            reference = std::move(answers);
            reference_name = variant.name;
          } else if (answers != *reference) {
            result.fail("n=" + std::to_string(n) + ": " + variant.name + " disagrees with " + reference_name);
          }
        });
      }
    }
  }
  return result;
}

SuiteResult check_fp64_agreement(std::size_t n, std::size_t queries, std::uint64_t seed) {
  SuiteResult result{"fp32/fp64 agreement"};
  const InputArray arr = random_array(n, 0.1, seed);
  const SparseTable table(arr);
  QueryBatch batch;
  batch.queries = sampled_queries(n, queries, seed);
  std::vector<SolverOptions> configs;
  if (n <= kMaxSingleLayout) {
    SolverOptions o;
    o.layout = Layout::kSingle;
    configs.push_back(o);
  }
  const std::uint64_t sqrt_size = std::uint64_t{1} << (std::bit_width(n) - 1) / 2;
  for (const std::uint64_t bs : {choose_block_size(n).block_size, sqrt_size, std::uint64_t{64}}) {
    if (!precision_gate(n, bs)) continue;
    SolverOptions o;
    o.blocks = make_block_config(n, bs);
    configs.push_back(o);
  }
  for (const SolverOptions& options : configs) {
    const std::string ctx =
        "n=" + std::to_string(n) + (options.blocks ? " bs=" + std::to_string(options.blocks->block_size) : " single");
    guarded(result, ctx, [&] {
      const auto f32 = solve_batch(Solver<float>::build(arr, options), batch).answers;
      const auto f64 = solve_batch(Solver<double>::build(arr, options), batch).answers;
      for (std::size_t i = 0; i < batch.size(); ++i) {
        result.checks += 2;
        if (f32[i].index != f64[i].index) result.fail(ctx + " fp32/fp64 index differ for " + describe(batch.queries[i]));
        if (!(f32[i] == table.query(batch.queries[i]))) result.fail(ctx + " fp32 vs oracle for " + describe(batch.queries[i]));
      }
    });
  }
  return result;
}

SuiteResult check_distributions(std::uint64_t n, std::size_t samples, std::uint64_t seed) {
  SuiteResult result{"query distributions"};
  struct Case {
    DistributionSpec spec;
    double tolerance;
  };
  const Case cases[] = {{DistributionSpec::large(n), 0.05},
                        {DistributionSpec::medium(n), 0.15},
                        {DistributionSpec::small(n), 0.15}};
  for (const Case& c : cases) {
    const QueryBatch batch = gen_queries(c.spec, samples, seed);
    double sum = 0.0;
    for (const Query& q : batch.queries) {
      ++result.checks;
      if (q.l > q.r || q.r >= n) result.fail("invalid generated query " + describe(q));
      sum += static_cast<double>(q.length());
    }
    const double mean = sum / static_cast<double>(samples);
    const double target = c.spec.analytic_mean_length();
    ++result.checks;
    if (std::abs(mean - target) > c.tolerance * target) {
      result.fail(c.spec.label() + " mean length " + std::to_string(mean) + " vs target " + std::to_string(target));
    }
    const QueryBatch again = gen_queries(c.spec, samples, seed);
    ++result.checks;
    if (again.queries != batch.queries) result.fail(c.spec.label() + " generator not deterministic");
  }
  return result;
}

SuiteResult check_determinism(std::size_t n, std::size_t queries, std::uint64_t seed) {
  SuiteResult result{"determinism"};
  guarded(result, "solve_batch", [&] {
    const InputArray arr = random_array(n, 0.1, seed);
    const Solver<float> solver = Solver<float>::build(arr, {});
    const QueryBatch batch = gen_queries(DistributionSpec::medium(n), queries, seed);
    const auto one = solve_batch(solver, batch, 1).answers;
    const auto many = solve_batch(solver, batch, 16).answers;
    ++result.checks;
    if (one != many) result.fail("answers differ between 1 and 16 threads");
  });
  guarded(result, "run_bench", [&] {
    BenchConfig config;
    config.n = n;
    config.batch = queries;
    config.spec = DistributionSpec::small(n);
    config.seed = seed;
    std::string csv[2];
    std::uint64_t digests[2];
    const unsigned threads[2] = {1, 16};
    for (int k = 0; k < 2; ++k) {
      config.threads = threads[k];
      BenchRecord r = run_bench(config);
      digests[k] = r.answer_digest;
      r.ns_per_rmq = 0;
      r.total_ms = 0;
      csv[k] = format_csv_row(r);
    }
    result.checks += 2;
    if (csv[0] != csv[1]) result.fail("CSV rows differ between thread counts");
    if (digests[0] != digests[1]) result.fail("bench answers differ between thread counts");
  });
  return result;
}

std::vector<SuiteResult> run_all(const VerifyOptions& options) {
  std::vector<SuiteResult> out;
  out.push_back(check_oracles(40, 96, options.seed));
  out.push_back(check_transform(std::int64_t{1} << 20, 100000, std::int64_t{1} << 30, options.seed));
  out.push_back(check_gate_examples());
  out.push_back(check_coverage(24));
  out.push_back(check_bvh(60, 2000, 256, options.seed));

  EngineSweep sweep;
  sweep.sizes = {6, 64, 256, 4096};
  sweep.arrays_per_size = 4;
  sweep.all_pairs_limit = 256;
  sweep.sampled_queries = 3000;
  sweep.seed = options.seed;
  sweep.threads = options.threads;

  EngineSweep faulted = sweep;
  SuiteResult engine = check_engine(sweep);
  out.push_back(std::move(engine));
  out.push_back(check_decomposition(faulted, options.fault_right_begin_offset));
  out.push_back(check_strategy_agreement(sweep));
  out.push_back(check_distributions(std::uint64_t{1} << 26, 100000, options.seed));
  out.push_back(check_determinism(std::size_t{1} << 14, 4096, options.seed));
  if (options.fp64) out.push_back(check_fp64_agreement(std::size_t{1} << 18, 20000, options.seed));
  return out;
}

}  // namespace rtrmq::verify
