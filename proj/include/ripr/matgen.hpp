#pragma once

// Generators for the concrete matrix families: the Finite Sums matrix and its
// truncations, Milliken-Taylor matrices, band matrices, (m,p,c) and Deuber
// matrices, DH block truncations, and the special families used for image
// domination. Every family is materialized only up to an explicit column
// bound and row budget.
//
// Row order: F-like families (F, F', DH) follow the f_row index order.
// Elsewhere rows are ordered by their support read as a binary number, ties
// broken by entry vector, so mt_rows(<1>, v) reproduces F_v row for row.

#include "ripr/matrix.hpp"
#include "ripr/seqs.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ripr {

constexpr std::size_t kUnlimitedRows = std::numeric_limits<std::size_t>::max();

namespace detail {

inline std::vector<std::size_t> mask_support(std::uint64_t mask) {
  std::vector<std::size_t> s;
  for (std::size_t j = 0; mask != 0; ++j, mask >>= 1)
    if (mask & 1U) s.push_back(j);
  return s;
}

inline void check_column_bound(std::size_t column_bound) {
  if (column_bound > 62) throw std::invalid_argument("column bound too large for exhaustive generation");
}

inline SparseRow row_from(const std::vector<std::size_t>& support, const std::vector<std::int64_t>& vals) {
  SparseRow r;
  for (std::size_t i = 0; i < support.size(); ++i) r.set(support[i], Rat(vals[i]));
  return r;
}

}  // namespace detail

/// Row i of F: the 0/1 row whose support is the binary support of i+1.
inline SparseRow f_row(std::uint64_t i) {
  if (i == std::numeric_limits<std::uint64_t>::max()) throw std::invalid_argument("f_row: index too large");
  SparseRow r;
  for (auto c : detail::mask_support(i + 1)) r.set(c, Rat(1));
  return r;
}

/// F_v: the first 2^v - 1 rows and first v columns of F.
inline FiniteMatrix f_truncation(std::size_t v) {
  if (v == 0) throw std::invalid_argument("f_truncation: v must be positive");
  detail::check_column_bound(v);
  std::vector<SparseRow> rows;
  for (std::uint64_t i = 0; i + 1 < (std::uint64_t{1} << v); ++i) rows.push_back(f_row(i));
  return FiniteMatrix(std::move(rows), v);
}

/// Rows of F with support < column_bound, in f_row order, up to row_budget.
inline FiniteMatrix f_rows(std::size_t column_bound, std::size_t row_budget = kUnlimitedRows) {
  detail::check_column_bound(column_bound);
  std::vector<SparseRow> rows;
  for (std::uint64_t i = 0; i + 1 < (std::uint64_t{1} << column_bound) && rows.size() < row_budget; ++i)
    rows.push_back(f_row(i));
  return FiniteMatrix(std::move(rows), column_bound);
}

/// F': the rows of F with one or two ones.
inline FiniteMatrix f_prime_rows(std::size_t column_bound, std::size_t row_budget = kUnlimitedRows) {
  detail::check_column_bound(column_bound);
  std::vector<SparseRow> rows;
  for (std::uint64_t i = 0; i + 1 < (std::uint64_t{1} << column_bound) && rows.size() < row_budget; ++i)
    if (std::popcount(i + 1) <= 2) rows.push_back(f_row(i));
  return FiniteMatrix(std::move(rows), column_bound);
}

/// All rows r with support < column_bound and compress(r) = a.
inline FiniteMatrix mt_rows(const CompressedSeq& a, std::size_t column_bound,
                            std::size_t row_budget = kUnlimitedRows) {
  detail::check_column_bound(column_bound);
  const std::size_t k = a.size();
  std::vector<SparseRow> rows;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << column_bound); ++mask) {
    auto support = detail::mask_support(mask);
    const std::size_t n = support.size();
    if (n < k) continue;
    // Split the n support positions into k consecutive nonempty runs; run i
    // carries a_i.
    std::vector<std::vector<std::int64_t>> candidates;
    std::vector<std::size_t> lengths(k, 1);
    auto emit = [&] {
      std::vector<std::int64_t> vals;
      for (std::size_t i = 0; i < k; ++i) vals.insert(vals.end(), lengths[i], a[i]);
      candidates.push_back(std::move(vals));
    };
    // compositions of n into k positive parts
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t remaining) {
      if (i + 1 == k) {
        lengths[i] = remaining;
        emit();
        return;
      }
      for (std::size_t len = 1; len + (k - i - 1) <= remaining; ++len) {
        lengths[i] = len;
        rec(i + 1, remaining - len);
      }
    };
    rec(0, n);
    std::sort(candidates.begin(), candidates.end());
    for (const auto& vals : candidates) {
      if (rows.size() >= row_budget) return FiniteMatrix(std::move(rows), column_bound);
      rows.push_back(detail::row_from(support, vals));
    }
  }
  return FiniteMatrix(std::move(rows), column_bound);
}

/// Row n carries coeffs at columns n..n+k-1.
inline FiniteMatrix band_matrix(const std::vector<std::int64_t>& coeffs, std::size_t row_count,
                                std::size_t width) {
  if (coeffs.empty()) throw std::invalid_argument("band_matrix: empty coefficient list");
  if (coeffs.front() == 0 || coeffs.back() == 0)
    throw std::invalid_argument("band_matrix: first and last coefficients must be nonzero");
  if (row_count + coeffs.size() > width + 1)
    throw std::invalid_argument("band_matrix: width too small for requested rows");
  std::vector<SparseRow> rows;
  for (std::size_t n = 0; n < row_count; ++n) {
    SparseRow r;
    for (std::size_t j = 0; j < coeffs.size(); ++j) r.set(n + j, Rat(coeffs[j]));
    rows.push_back(std::move(r));
  }
  return FiniteMatrix(std::move(rows), width);
}

namespace detail {

// First-entries rows with `m` columns, first entry c, later entries drawn from
// [lo, hi]; ordered by first column, then lexicographically.
inline FiniteMatrix first_entries_family(std::int64_t m, std::int64_t c, std::int64_t lo, std::int64_t hi) {
  if (m < 1 || c < 1 || hi < 1) throw std::invalid_argument("(m,p,c) parameters must be positive");
  const auto width = static_cast<std::size_t>(m);
  std::vector<SparseRow> rows;
  std::vector<std::int64_t> tail;
  for (std::size_t first = 0; first < width; ++first) {
    const std::size_t free = width - first - 1;
    tail.assign(free, lo);
    while (true) {
      SparseRow r;
      r.set(first, Rat(c));
      for (std::size_t j = 0; j < free; ++j) r.set(first + 1 + j, Rat(tail[j]));
      rows.push_back(std::move(r));
      // odometer, last position fastest
      std::size_t pos = free;
      while (pos > 0 && tail[pos - 1] == hi) {
        tail[pos - 1] = lo;
        --pos;
      }
      if (pos == 0) break;
      ++tail[pos - 1];
    }
  }
  return FiniteMatrix(std::move(rows), width);
}

}  // namespace detail

/// (m,p,c)-matrix: first entries matrix, m columns, first entry c, other
/// entries in {0,...,p}, all such rows. ((p+1)^m - 1)/p rows.
inline FiniteMatrix mpc_matrix(std::int64_t m, std::int64_t p, std::int64_t c) {
  return detail::first_entries_family(m, c, 0, p);
}

/// Deuber's matrix: as mpc_matrix but later entries range over {-p,...,p}.
inline FiniteMatrix deuber_matrix(std::int64_t m, std::int64_t p, std::int64_t c) {
  return detail::first_entries_family(m, c, -p, p);
}

/// 2 at column i, 1 on columns 2^i .. 2^{i+1}-1, truncated at width.
inline SparseRow anodom_row(std::size_t i, std::size_t width) {
  if (i >= 62) throw std::invalid_argument("anodom_row: index too large");
  SparseRow r;
  if (i < width) r.set(i, Rat(2));
  const std::size_t lo = std::size_t{1} << i;
  const std::size_t hi = std::size_t{1} << (i + 1);
  for (std::size_t j = lo; j < hi && j < width; ++j) r.set(j, Rat(1));
  return r;
}

inline FiniteMatrix anodom_matrix(std::size_t row_count, std::size_t width) {
  std::vector<SparseRow> rows;
  for (std::size_t i = 0; i < row_count; ++i) {
    auto r = anodom_row(i, width);
    if (r.empty()) break;
    rows.push_back(std::move(r));
  }
  return FiniteMatrix(std::move(rows), width);
}

/// The block matrix I: a unit row on column 0, then for n = 1, 2, ... a block
/// of n fresh columns carrying unit rows followed by the row with c_n in
/// column 0 and ones across the block. Blocks that do not fit in `width` are
/// dropped.
inline FiniteMatrix script_i_matrix(const std::vector<std::int64_t>& c, std::size_t width) {
  if (c.empty()) throw std::invalid_argument("script_i_matrix: empty coefficient list");
  std::vector<SparseRow> rows;
  if (width == 0) return FiniteMatrix({}, 0);
  rows.push_back(SparseRow{{0, Rat(1)}});
  std::size_t start = 1;
  for (std::size_t n = 1; n <= c.size(); ++n) {
    if (c[n - 1] <= 0) throw std::invalid_argument("script_i_matrix: coefficients must be positive");
    if (start + n > width) break;
    for (std::size_t j = 0; j < n; ++j) rows.push_back(SparseRow{{start + j, Rat(1)}});
    SparseRow combined{{0, Rat(c[n - 1])}};
    for (std::size_t j = 0; j < n; ++j) combined.set(start + j, Rat(1));
    rows.push_back(std::move(combined));
    start += n;
  }
  return FiniteMatrix(std::move(rows), width);
}

/// Nonzero integer rows of the given width, entries in [-entry_bound,
/// entry_bound], summing to c. A non-integral c yields the empty family;
/// rational rows of sum c are the integer rows of sum c·d scaled by 1/d.
inline FiniteMatrix constant_rowsum_rows(const Rat& c, std::size_t width, std::size_t row_budget,
                                         std::int64_t entry_bound) {
  if (entry_bound < 0) throw std::invalid_argument("constant_rowsum_rows: negative entry bound");
  detail::check_column_bound(width);
  std::vector<SparseRow> rows;
  auto target = c.to_int64();
  if (!target || width == 0) return FiniteMatrix(std::move(rows), width);
  const std::int64_t b = entry_bound;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << width) && rows.size() < row_budget; ++mask) {
    auto support = detail::mask_support(mask);
    const std::size_t n = support.size();
    std::vector<std::int64_t> vals(n, 0);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t sum) {
      if (rows.size() >= row_budget) return;
      const auto left = static_cast<std::int64_t>(n - i);
      if (sum - left * b > *target || sum + left * b < *target) return;
      if (i == n) {
        if (sum == *target) rows.push_back(detail::row_from(support, vals));
        return;
      }
      for (std::int64_t v = -b; v <= b; ++v) {
        if (v == 0) continue;
        vals[i] = v;
        rec(i + 1, sum + v);
      }
    };
    rec(0, 0);
  }
  return FiniteMatrix(std::move(rows), width);
}

/// Truncation of the DH matrix over an explicit block list: every row is a
/// concatenation where block i contributes zeros or one of its rows, not all
/// zero. Rows follow the mixed-radix counter with block 0 least significant,
/// so unit blocks reproduce F.
inline FiniteMatrix dh_truncation(const std::vector<FiniteMatrix>& blocks,
                                  std::size_t row_budget = kUnlimitedRows) {
  if (blocks.empty()) throw std::invalid_argument("dh_truncation: no blocks");
  std::vector<std::size_t> offsets;
  std::size_t width = 0;
  for (const auto& b : blocks) {
    offsets.push_back(width);
    width += b.width();
  }
  std::vector<SparseRow> rows;
  std::vector<std::size_t> digit(blocks.size(), 0);
  while (rows.size() < row_budget) {
    std::size_t pos = 0;
    while (pos < blocks.size() && digit[pos] == blocks[pos].row_count()) {
      digit[pos] = 0;
      ++pos;
    }
    if (pos == blocks.size()) break;
    ++digit[pos];
    SparseRow r;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (digit[i] == 0) continue;
      for (const auto& [c, v] : blocks[i].row(digit[i] - 1).entries()) r.set(offsets[i] + c, v);
    }
    rows.push_back(std::move(r));
  }
  return FiniteMatrix(std::move(rows), width, Duplicates::allow);
}

/// Column offsets k(n) of the blocks inside a DH truncation.
inline std::vector<std::size_t> dh_offsets(const std::vector<FiniteMatrix>& blocks) {
  std::vector<std::size_t> k{0};
  for (const auto& b : blocks) k.push_back(k.back() + b.width());
  k.pop_back();
  return k;
}

/// Rows of A followed by rows of B; the narrower matrix is padded with zero
/// columns.
inline FiniteMatrix stack(const FiniteMatrix& a, const FiniteMatrix& b) {
  std::vector<SparseRow> rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return FiniteMatrix(std::move(rows), std::max(a.width(), b.width()), Duplicates::allow);
}

/// Prepend k zero columns.
inline FiniteMatrix shift_columns(const FiniteMatrix& m, std::size_t k) {
  std::vector<SparseRow> rows;
  for (const auto& r : m.rows()) rows.push_back(r.shifted(k));
  return FiniteMatrix(std::move(rows), m.width() + k, Duplicates::allow);
}

/// [1̄ M]: a new column 0 of ones in front of M.
inline FiniteMatrix augment_translate(const FiniteMatrix& m) {
  std::vector<SparseRow> rows;
  for (const auto& r : m.rows()) {
    auto s = r.shifted(1);
    s.set(0, Rat(1));
    rows.push_back(std::move(s));
  }
  return FiniteMatrix(std::move(rows), m.width() + 1, Duplicates::allow);
}

/// The stacked translation system
///   [1̄ 0̄ ... 0̄ M_0]
///   [0̄ 1̄ ... 0̄ M_1]
///   ...
///   [0̄ 0̄ ... 0̄ base]
/// with one translation column per M_i. The M_i and base share the trailing
/// variables.
inline FiniteMatrix translation_system(const std::vector<FiniteMatrix>& ms, const FiniteMatrix& base) {
  const std::size_t t = ms.size();
  std::size_t tail = base.width();
  for (const auto& m : ms) tail = std::max(tail, m.width());
  std::vector<SparseRow> rows;
  for (std::size_t i = 0; i < t; ++i) {
    for (const auto& r : ms[i].rows()) {
      auto s = r.shifted(t);
      s.set(i, Rat(1));
      rows.push_back(std::move(s));
    }
  }
  for (const auto& r : base.rows()) rows.push_back(r.shifted(t));
  return FiniteMatrix(std::move(rows), t + tail, Duplicates::allow);
}

}  // namespace ripr
