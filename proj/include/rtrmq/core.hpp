// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtrmq {

using Index = std::uint32_t;

/// Raised when a block configuration or scene layout cannot be honoured.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a ray answer contradicts the geometry (a valid query that
/// misses every triangle, a payload that does not reconstruct the value).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The element sequence after the value transform, plus the abscissa
/// rays start from. Immutable once built.
class InputArray {
 public:
  /// Real-valued input, used as-is. Theta = min - 1.
  static InputArray from_values(std::vector<float> values);
  /// Non-negative integer input, mapped through int_to_float.
  static InputArray from_integers(std::vector<std::int64_t> raw);

  std::size_t size() const { return values_.size(); }
  std::span<const float> values() const { return values_; }
  float operator[](std::size_t i) const { return values_[i]; }
  const std::optional<std::vector<std::int64_t>>& raw() const { return raw_; }
  float theta() const { return theta_; }
  float min_value() const { return min_value_; }
  float max_value() const { return max_value_; }

 private:
  InputArray() = default;
  void finish();

  std::vector<float> values_;
  std::optional<std::vector<std::int64_t>> raw_;
  float theta_ = 0.0f;
  float min_value_ = 0.0f;
  float max_value_ = 0.0f;
};

struct Query {
  Index l = 0;
  Index r = 0;

  Index length() const { return r - l + 1; }
  friend bool operator==(const Query&, const Query&) = default;
};

enum class Distribution { kLarge, kMedium, kSmall, kFixed, kExplicit };

std::string to_string(Distribution d);
Distribution parse_distribution(const std::string& s);

struct QueryBatch {
  std::vector<Query> queries;
  Distribution distribution = Distribution::kExplicit;
  std::uint64_t seed = 0;

  std::size_t size() const { return queries.size(); }
};

struct RmqAnswer {
  Index index = 0;
  float value = 0.0f;

  friend bool operator==(const RmqAnswer&, const RmqAnswer&) = default;
};

/// Leftmost-minimum order: smaller value wins, equal values go to the
/// smaller index.
inline bool better(const RmqAnswer& a, const RmqAnswer& b) {
  return a.value < b.value || (a.value == b.value && a.index < b.index);
}

/// Throws std::out_of_range unless 0 <= l <= r < n.
void validate_query(std::size_t n, const Query& q);
void validate_batch(std::size_t n, const QueryBatch& batch);

/// Linear left-to-right scan.
RmqAnswer rmq_exhaustive(const InputArray& arr, const Query& q);

/// O(n log n) space, O(1) query leftmost-argmin table.
class SparseTable {
 public:
  explicit SparseTable(const InputArray& arr);

  RmqAnswer query(const Query& q) const;
  std::size_t size() const { return values_.size(); }

 private:
  Index pick(Index a, Index b) const {
    const float va = values_[a];
    const float vb = values_[b];
    if (va < vb) return a;
    if (vb < va) return b;
    return a < b ? a : b;
  }

  std::vector<float> values_;
  // levels_[k][i] = argmin over [i, i + 2^k)
  std::vector<std::vector<Index>> levels_;
};

inline SparseTable build_sparse_table(const InputArray& arr) { return SparseTable(arr); }
inline RmqAnswer rmq_sparse(const SparseTable& table, const Query& q) { return table.query(q); }

}  // namespace rtrmq
