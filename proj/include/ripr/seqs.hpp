#pragma once

// Compressed sequences and the image sets built from them: finite sums,
// Milliken-Taylor sums, their translates, and the set-valued variants where
// each index contributes a choice from a finite set.
//
// Finite prefixes stand in for infinite sequences; the depth of every
// construction is the length of the input list.

#include "ripr/detail/checked.hpp"
#include "ripr/matrix.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace ripr {

/// Nonempty integer sequence with no zero term and no two equal adjacent terms.
class CompressedSeq {
 public:
  explicit CompressedSeq(std::vector<std::int64_t> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("CompressedSeq: empty sequence");
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i] == 0) throw std::invalid_argument("CompressedSeq: zero term");
      if (i + 1 < terms_.size() && terms_[i] == terms_[i + 1])
        throw std::invalid_argument("CompressedSeq: equal adjacent terms");
    }
  }

  const std::vector<std::int64_t>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  std::int64_t operator[](std::size_t i) const { return terms_[i]; }
  std::int64_t last() const { return terms_.back(); }

  friend bool operator==(const CompressedSeq&, const CompressedSeq&) = default;

 private:
  std::vector<std::int64_t> terms_;
};

/// Milliken-Taylor parameters. `require_positive_last` records the a_k > 0
/// hypothesis under which MT systems are partition regular; the matrix form
/// does not need it.
struct MTParams {
  CompressedSeq a;
  bool require_positive_last = true;

  MTParams(CompressedSeq seq, bool positive_last)
      : a(std::move(seq)), require_positive_last(positive_last) {
    if (require_positive_last && a.last() <= 0)
      throw std::invalid_argument("MTParams: last term must be positive");
  }
};

/// Delete zeros, then collapse runs of equal adjacent terms.
inline CompressedSeq compress(const std::vector<std::int64_t>& a) {
  std::vector<std::int64_t> out;
  for (auto v : a) {
    if (v == 0) continue;
    if (out.empty() || out.back() != v) out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("compress: sequence has no nonzero term");
  return CompressedSeq(std::move(out));
}

namespace detail {

// Set-valued dynamic program over the index sequence. State i means blocks
// F_0..F_i are nonempty and F_i is still open. Element t may be skipped,
// joined to the open block, or open the next block. `choices[t]` holds the
// admissible values at index t (a singleton for plain sequences).
inline std::set<std::int64_t> mt_sums(const std::vector<std::int64_t>& a,
                                      const std::vector<std::vector<std::int64_t>>& choices) {
  const std::size_t k = a.size();
  std::vector<std::set<std::int64_t>> state(k);
  for (const auto& ys : choices) {
    std::vector<std::set<std::int64_t>> next = state;
    for (std::size_t i = 0; i < k; ++i) {
      for (auto y : ys) {
        std::int64_t term = checked_mul(a[i], y);
        // extend the open block i
        for (auto s : state[i]) next[i].insert(checked_add(s, term));
        // open block i from block i-1 (or from scratch when i == 0)
        if (i == 0) {
          next[0].insert(term);
        } else {
          for (auto s : state[i - 1]) next[i].insert(checked_add(s, term));
        }
      }
    }
    state = std::move(next);
  }
  return state.back();
}

inline ImageSet to_image(const std::set<std::int64_t>& vals) {
  ImageSet out;
  out.values.reserve(vals.size());
  for (auto v : vals) out.values.emplace_back(v);
  return out;
}

inline std::vector<std::vector<std::int64_t>> singletons(const std::vector<std::int64_t>& x) {
  std::vector<std::vector<std::int64_t>> out;
  out.reserve(x.size());
  for (auto v : x) out.push_back({v});
  return out;
}

inline std::vector<std::vector<std::int64_t>> set_choices(
    const std::vector<std::set<std::int64_t>>& ys) {
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& y : ys) {
    if (y.empty()) throw std::invalid_argument("set-valued image: empty choice set");
    out.emplace_back(y.begin(), y.end());
  }
  return out;
}

}  // namespace detail

/// All sums over nonempty index subsets.
inline ImageSet fs_image(const std::vector<std::int64_t>& x) {
  if (x.empty()) throw std::invalid_argument("fs_image: empty sequence");
  return detail::to_image(detail::mt_sums({1}, detail::singletons(x)));
}

/// MT(a, x) over the prefix x: sums of a_i times block sums with
/// F_0 < F_1 < ... < F_k. Empty when x is shorter than a. Negative values are
/// kept.
inline ImageSet mt_image(const CompressedSeq& a, const std::vector<std::int64_t>& x) {
  return detail::to_image(detail::mt_sums(a.terms(), detail::singletons(x)));
}

/// b + MT(a, x), b a positive integer.
inline ImageSet translated_mt_image(std::int64_t b, const CompressedSeq& a,
                                    const std::vector<std::int64_t>& x) {
  if (b <= 0) throw std::invalid_argument("translated_mt_image: translation must be positive");
  std::set<std::int64_t> shifted;
  for (auto v : detail::mt_sums(a.terms(), detail::singletons(x)))
    shifted.insert(detail::checked_add(v, b));
  return detail::to_image(shifted);
}

/// Finite sums taking at most one term from each Y_n.
inline ImageSet fs_over_sets(const std::vector<std::set<std::int64_t>>& ys) {
  if (ys.empty()) throw std::invalid_argument("fs_over_sets: empty family");
  return detail::to_image(detail::mt_sums({1}, detail::set_choices(ys)));
}

/// MT(a, <Y_n>): block sums where every used index t picks its own x_t in Y_t.
inline ImageSet mt_over_sets(const CompressedSeq& a, const std::vector<std::set<std::int64_t>>& ys) {
  return detail::to_image(detail::mt_sums(a.terms(), detail::set_choices(ys)));
}

/// The positive rational r with a = r·b termwise, if one exists.
inline std::optional<Rat> rationally_proportional(const CompressedSeq& a, const CompressedSeq& b) {
  if (a.size() != b.size()) return std::nullopt;
  Rat r{BigInt(a[0]), BigInt(b[0])};
  if (!r.is_positive()) return std::nullopt;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (Rat(a[i]) != r * Rat(b[i])) return std::nullopt;
  return r;
}

}  // namespace ripr
