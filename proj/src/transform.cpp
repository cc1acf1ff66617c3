// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#include "rtrmq/transform.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rtrmq/core.hpp"

namespace rtrmq {

float int_to_float(std::int64_t x) {
  if (x < 0 || x >= kIntToFloatLimit) {
    throw std::domain_error("int_to_float: " + std::to_string(x) + " outside [0, 129*2^23)");
  }
  constexpr std::int64_t kMantissa = std::int64_t{1} << 23;
  const int exponent = static_cast<int>(x / kMantissa);
  const std::int64_t mantissa = x % kMantissa;
  // (M + 2^23) / 2^24 has 24 significant bits: exact in binary32.
  const float q = static_cast<float>(mantissa + kMantissa) / 16777216.0f;
  return std::ldexp(q, exponent);
}

std::uint64_t ceil_sqrt(std::uint64_t v) {
  auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
  while (s > 0 && s * s >= v) --s;
  while (s * s < v) ++s;
  return s;
}

std::string GateReport::describe() const {
  std::ostringstream os;
  os << "n=" << n << " block_size=" << block_size << " num_blocks=" << num_blocks
     << ": 2^floor(log2(2*ceil(sqrt(n/BS)))) * 2^-23 = 2^" << exponent << " * 2^-23 = " << obtained
     << (inequality ? " <= " : " > ") << "1/BS = " << needed;
  if (!within_limits) {
    os << "; limits violated (block_size <= 2^18 and num_blocks <= 2^24 required)";
  }
  return os.str();
}

GateReport evaluate_gate(std::uint64_t n, std::uint64_t block_size) {
  GateReport g;
  g.n = n;
  g.block_size = block_size;
  if (n == 0 || block_size == 0) return g;
  g.num_blocks = (n + block_size - 1) / block_size;
  // ceil(sqrt(n / BS)) with n / BS real: smallest s with s^2 * BS >= n.
  std::uint64_t s = ceil_sqrt(g.num_blocks);
  while (s > 1 && (s - 1) * (s - 1) * block_size >= n) --s;
  while (s * s * block_size < n) ++s;
  g.side = s;
  g.exponent = std::bit_width(2 * s) - 1;
  g.obtained = std::ldexp(1.0, g.exponent - 23);
  g.needed = 1.0 / static_cast<double>(block_size);
  // 2^e * 2^-23 <= 1/BS  <=>  2^e * BS <= 2^23
  g.inequality = g.exponent <= 23 && block_size <= (std::uint64_t{1} << 23) &&
                 (block_size << g.exponent) <= (std::uint64_t{1} << 23);
  g.within_limits = block_size <= kMaxBlockSize && g.num_blocks <= kMaxBlocks;
  return g;
}

BlockConfig make_block_config(std::uint64_t n, std::uint64_t block_size) {
  if (n == 0 || block_size == 0) throw ConfigError("block config needs n >= 1 and block_size >= 1");
  const GateReport gate = evaluate_gate(n, block_size);
  if (!gate.ok()) throw ConfigError("precision gate failed: " + gate.describe());
  BlockConfig cfg;
  cfg.n = n;
  cfg.block_size = block_size;
  cfg.num_blocks = gate.num_blocks;
  cfg.grid_side = ceil_sqrt(cfg.num_blocks + 1);
  return cfg;
}

BlockConfig choose_block_size(std::uint64_t n, std::optional<std::uint64_t> hint) {
  if (n == 0) throw ConfigError("choose_block_size needs n >= 1");
  if (hint && *hint > 0 && precision_gate(n, *hint)) return make_block_config(n, *hint);
  for (std::uint64_t bs = kMaxBlockSize; bs >= 1; bs >>= 1) {
    if (precision_gate(n, bs)) return make_block_config(n, bs);
  }
  throw ConfigError("no block size satisfies the precision gate: " + evaluate_gate(n, 1).describe());
}

}  // namespace rtrmq
