#pragma once

// Sparse rows, finite matrices, and exact evaluation of images A·x.
// Column indices are 0-based. Infinite matrices never appear here; generator
// modules hand out finite truncations.

#include "ripr/rat.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ripr {

/// A row with finitely many nonzero entries. Stored sorted by column; no
/// stored entry is ever zero.
class SparseRow {
 public:
  using Entry = std::pair<std::size_t, Rat>;

  SparseRow() = default;
  SparseRow(std::initializer_list<Entry> entries) {
    for (const auto& [col, v] : entries) set(col, v);
  }

  /// Dense constructor; zeros are dropped.
  static SparseRow dense(const std::vector<Rat>& values) {
    SparseRow r;
    for (std::size_t j = 0; j < values.size(); ++j)
      if (!values[j].is_zero()) r.entries_.emplace_back(j, values[j]);
    return r;
  }
  static SparseRow dense(std::initializer_list<std::int64_t> values) {
    SparseRow r;
    std::size_t j = 0;
    for (auto v : values) {
      if (v != 0) r.entries_.emplace_back(j, Rat(v));
      ++j;
    }
    return r;
  }

  void set(std::size_t col, const Rat& v) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), col,
                               [](const Entry& e, std::size_t c) { return e.first < c; });
    if (it != entries_.end() && it->first == col) {
      if (v.is_zero())
        entries_.erase(it);
      else
        it->second = v;
    } else if (!v.is_zero()) {
      entries_.insert(it, Entry{col, v});
    }
  }

  Rat get(std::size_t col) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), col,
                               [](const Entry& e, std::size_t c) { return e.first < c; });
    return (it != entries_.end() && it->first == col) ? it->second : Rat(0);
  }

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    s.reserve(entries_.size());
    for (const auto& e : entries_) s.push_back(e.first);
    return s;
  }
  /// One past the last nonzero column (0 for the zero row).
  std::size_t extent() const { return entries_.empty() ? 0 : entries_.back().first + 1; }
  std::optional<std::size_t> first_column() const {
    if (entries_.empty()) return std::nullopt;
    return entries_.front().first;
  }

  /// Row shifted right by `offset` columns.
  SparseRow shifted(std::size_t offset) const {
    SparseRow r;
    r.entries_.reserve(entries_.size());
    for (const auto& [c, v] : entries_) r.entries_.emplace_back(c + offset, v);
    return r;
  }

  std::vector<Rat> to_dense(std::size_t width) const {
    std::vector<Rat> d(width, Rat(0));
    for (const auto& [c, v] : entries_)
      if (c < width) d[c] = v;
    return d;
  }

  friend bool operator==(const SparseRow&, const SparseRow&) = default;
  friend bool operator<(const SparseRow& a, const SparseRow& b) { return a.entries_ < b.entries_; }

 private:
  std::vector<Entry> entries_;
};

enum class Duplicates { reject, allow };

/// A finite matrix: an ordered list of sparse rows with every support inside
/// [0, width).
class FiniteMatrix {
 public:
  FiniteMatrix() = default;
  FiniteMatrix(std::vector<SparseRow> rows, std::size_t width,
               Duplicates policy = Duplicates::reject)
      : rows_(std::move(rows)), width_(width), allow_duplicates_(policy == Duplicates::allow) {
    for (const auto& r : rows_)
      if (r.extent() > width_)
        throw std::invalid_argument("FiniteMatrix: row support exceeds width");
    if (!allow_duplicates_ && has_duplicate_rows())
      throw std::invalid_argument("FiniteMatrix: duplicate rows without allow flag");
  }

  /// Dense integer literal, mostly for tests and displays.
  static FiniteMatrix from_dense(std::initializer_list<std::initializer_list<std::int64_t>> rows,
                                 Duplicates policy = Duplicates::reject) {
    std::vector<SparseRow> out;
    std::size_t width = 0;
    for (const auto& r : rows) {
      out.push_back(SparseRow::dense(r));
      width = std::max(width, r.size());
    }
    return FiniteMatrix(std::move(out), width, policy);
  }

  static FiniteMatrix identity(std::size_t n) {
    std::vector<SparseRow> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(SparseRow{{i, Rat(1)}});
    return FiniteMatrix(std::move(rows), n);
  }

  const std::vector<SparseRow>& rows() const { return rows_; }
  const SparseRow& row(std::size_t i) const { return rows_.at(i); }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t width() const { return width_; }
  bool allows_duplicates() const { return allow_duplicates_; }

  bool has_duplicate_rows() const {
    std::vector<SparseRow> sorted = rows_;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
  }

  bool all_integer() const {
    for (const auto& r : rows_)
      for (const auto& [c, v] : r.entries())
        if (!v.is_integer()) return false;
    return true;
  }

  friend bool operator==(const FiniteMatrix& a, const FiniteMatrix& b) {
    return a.width_ == b.width_ && a.rows_ == b.rows_;
  }

 private:
  std::vector<SparseRow> rows_;
  std::size_t width_ = 0;
  bool allow_duplicates_ = false;
};

/// Distinct values of A·x, sorted ascending. `provenance[i]`, when present,
/// is the first row index producing `values[i]`.
struct ImageSet {
  std::vector<Rat> values;
  std::optional<std::vector<std::size_t>> provenance;

  static ImageSet from_values(std::vector<Rat> vals) {
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return ImageSet{std::move(vals), std::nullopt};
  }

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  bool contains(const Rat& v) const { return std::binary_search(values.begin(), values.end(), v); }
  bool subset_of(const ImageSet& other) const {
    return std::includes(other.values.begin(), other.values.end(), values.begin(), values.end());
  }
  bool all_natural() const {
    return std::all_of(values.begin(), values.end(), [](const Rat& v) { return v.is_natural(); });
  }
};

inline Rat dot(const SparseRow& row, const std::vector<Rat>& x) {
  Rat acc(0);
  for (const auto& [c, v] : row.entries()) {
    if (c >= x.size()) throw std::invalid_argument("dot: vector shorter than row support");
    acc += v * x[c];
  }
  return acc;
}

/// A·x, computed exactly.
inline std::vector<Rat> apply(const FiniteMatrix& a, const std::vector<Rat>& x) {
  if (x.size() != a.width())
    throw std::invalid_argument("apply: vector length " + std::to_string(x.size()) +
                                " does not match matrix width " + std::to_string(a.width()));
  std::vector<Rat> out;
  out.reserve(a.row_count());
  for (const auto& r : a.rows()) out.push_back(dot(r, x));
  return out;
}

inline ImageSet image(const FiniteMatrix& a, const std::vector<Rat>& x) {
  auto vals = apply(a, x);
  std::map<Rat, std::size_t> first;
  for (std::size_t i = 0; i < vals.size(); ++i) first.emplace(vals[i], i);
  ImageSet out;
  out.provenance.emplace();
  for (const auto& [v, i] : first) {
    out.values.push_back(v);
    out.provenance->push_back(i);
  }
  return out;
}

/// True iff every entry of A·x is a positive integer.
inline bool is_natural_image(const FiniteMatrix& a, const std::vector<Rat>& x) {
  auto vals = apply(a, x);
  return std::all_of(vals.begin(), vals.end(), [](const Rat& v) { return v.is_natural(); });
}

inline std::vector<Rat> to_rats(const std::vector<std::int64_t>& xs) {
  return {xs.begin(), xs.end()};
}

}  // namespace ripr
