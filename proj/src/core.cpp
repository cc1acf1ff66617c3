// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#include "rtrmq/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "rtrmq/transform.hpp"

namespace rtrmq {

InputArray InputArray::from_values(std::vector<float> values) {
  InputArray arr;
  arr.values_ = std::move(values);
  arr.finish();
  return arr;
}

InputArray InputArray::from_integers(std::vector<std::int64_t> raw) {
  InputArray arr;
  arr.values_.reserve(raw.size());
  for (const std::int64_t x : raw) arr.values_.push_back(int_to_float(x));
  arr.raw_ = std::move(raw);
  arr.finish();
  return arr;
}

void InputArray::finish() {
  if (values_.empty()) throw std::invalid_argument("input array must hold at least one element");
  if (values_.size() > std::numeric_limits<Index>::max()) {
    throw std::length_error("input array exceeds the 32-bit index range");
  }
  for (const float v : values_) {
    if (!std::isfinite(v)) throw std::domain_error("input values must be finite");
  }
  const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  min_value_ = *lo;
  max_value_ = *hi;
  theta_ = min_value_ - 1.0f;
  if (!(theta_ < min_value_)) {
    // min - 1 is absorbed once |min| >= 2^24; step down by one ulp of min instead.
    theta_ = std::nextafter(min_value_, -std::numeric_limits<float>::infinity());
  }
}

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::kLarge: return "large";
    case Distribution::kMedium: return "medium";
    case Distribution::kSmall: return "small";
    case Distribution::kFixed: return "fixed";
    case Distribution::kExplicit: return "explicit";
  }
  return "explicit";
}

Distribution parse_distribution(const std::string& s) {
  if (s == "large") return Distribution::kLarge;
  if (s == "medium") return Distribution::kMedium;
  if (s == "small") return Distribution::kSmall;
  if (s == "fixed") return Distribution::kFixed;
  if (s == "explicit") return Distribution::kExplicit;
  throw std::invalid_argument("unknown distribution '" + s + "'");
}

void validate_query(std::size_t n, const Query& q) {
  if (q.l > q.r || q.r >= n) {
    throw std::out_of_range("query (" + std::to_string(q.l) + "," + std::to_string(q.r) +
                            ") outside [0," + std::to_string(n) + ")");
  }
}

void validate_batch(std::size_t n, const QueryBatch& batch) {
  if (batch.queries.empty()) throw std::invalid_argument("query batch is empty");
  for (const Query& q : batch.queries) validate_query(n, q);
}

RmqAnswer rmq_exhaustive(const InputArray& arr, const Query& q) {
  validate_query(arr.size(), q);
  const auto values = arr.values();
  Index best = q.l;
  float best_value = values[q.l];
  for (Index i = q.l + 1; i <= q.r; ++i) {
    if (values[i] < best_value) {
      best_value = values[i];
      best = i;
    }
  }
  return {best, best_value};
}

SparseTable::SparseTable(const InputArray& arr) : values_(arr.values().begin(), arr.values().end()) {
  const std::size_t n = values_.size();
  const int levels = std::bit_width(n);
  levels_.resize(levels);
  levels_[0].resize(n);
  for (std::size_t i = 0; i < n; ++i) levels_[0][i] = static_cast<Index>(i);
  for (int k = 1; k < levels; ++k) {
    const std::size_t half = std::size_t{1} << (k - 1);
    const std::size_t count = n - (std::size_t{1} << k) + 1;
    auto& cur = levels_[k];
    const auto& prev = levels_[k - 1];
    cur.resize(count);
    for (std::size_t i = 0; i < count; ++i) cur[i] = pick(prev[i], prev[i + half]);
  }
}

RmqAnswer SparseTable::query(const Query& q) const {
  validate_query(values_.size(), q);
  const int k = std::bit_width(std::size_t{q.length()}) - 1;
  const Index a = levels_[k][q.l];
  const Index b = levels_[k][q.r + 1 - (Index{1} << k)];
  const Index best = pick(a, b);
  return {best, values_[best]};
}

}  // namespace rtrmq
