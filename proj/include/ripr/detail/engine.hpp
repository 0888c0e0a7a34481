#pragma once

// Backtracking core shared by every witness search.
//
// Variables are assigned in column order, each from an ascending candidate
// list, so the first complete assignment found is the lexicographically least
// one. A row is checked as soon as its last support column is assigned: its
// value must be a positive integer whose colour matches the common target.
// Once the target colour is known, candidates for the next variable are read
// off the target's colour class instead of scanning the whole range.
//
// Parallel runs split on the first variable. Every subtree is explored exactly
// as the sequential run would explore it and the merge walks subtrees in
// order, so witness, outcome, and node count do not depend on worker count.

#include "ripr/colourings.hpp"
#include "ripr/detail/checked.hpp"
#include "ripr/matrix.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

namespace ripr::detail {

struct CompiledRow {
  std::vector<std::pair<std::size_t, std::int64_t>> terms;  // column, scaled coefficient
  std::int64_t scale = 1;                                   // value = dot / scale
  std::size_t last = 0;
  std::size_t klass = 0;  // identical rows share a class
};

struct CompiledMatrix {
  std::size_t width = 0;
  std::vector<CompiledRow> rows;
  std::vector<std::vector<std::size_t>> rows_at;  // rows indexed by last column
  bool has_zero_row = false;

  /// Largest |value| any row can take with variables in [lo_j, hi_j].
  std::int64_t max_abs_value(const std::vector<std::int64_t>& hi) const {
    std::int64_t best = 0;
    for (const auto& r : rows) {
      std::int64_t acc = 0;
      for (const auto& [c, k] : r.terms) acc = checked_add(acc, checked_mul(std::abs(k), hi[c]));
      best = std::max(best, acc / r.scale);
    }
    return best;
  }
};

inline CompiledMatrix compile(const FiniteMatrix& m) {
  CompiledMatrix out;
  out.width = m.width();
  out.rows_at.resize(m.width());
  std::map<SparseRow, std::size_t> classes;
  for (const auto& row : m.rows()) {
    if (row.empty()) {
      out.has_zero_row = true;
      continue;
    }
    BigInt lcm = 1;
    for (const auto& [c, v] : row.entries()) lcm = boost::multiprecision::lcm(lcm, v.den());
    CompiledRow cr;
    if (lcm > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("row denominators too large");
    cr.scale = static_cast<std::int64_t>(lcm);
    for (const auto& [c, v] : row.entries()) {
      auto scaled = (v * Rat(lcm)).to_int64();
      if (!scaled) throw std::overflow_error("row entries too large for int64 search");
      cr.terms.emplace_back(c, *scaled);
    }
    cr.last = row.entries().back().first;
    cr.klass = classes.emplace(row, classes.size()).first->second;
    out.rows_at[cr.last].push_back(out.rows.size());
    out.rows.push_back(std::move(cr));
  }
  return out;
}

/// Colour ids for positive integers. Values in [1, limit] are tabulated with
/// their classes; larger values are evaluated and interned on demand.
class ColourTable {
 public:
  static constexpr std::int64_t kDenseLimit = std::int64_t{1} << 22;

  ColourTable(const Colouring& col, std::int64_t limit) : col_(col), limit_(std::min(limit, kDenseLimit)) {
    ids_.assign(static_cast<std::size_t>(limit_ + 1), -1);
    for (std::int64_t v = 1; v <= limit_; ++v) {
      int id = intern(col.evaluate(v));
      ids_[static_cast<std::size_t>(v)] = id;
      if (static_cast<std::size_t>(id) >= classes_.size()) classes_.resize(static_cast<std::size_t>(id) + 1);
      classes_[static_cast<std::size_t>(id)].push_back(v);
    }
  }

  /// Membership table: id 1 for members, 0 for everything else.
  explicit ColourTable(const std::vector<std::int64_t>& members) {
    limit_ = members.empty() ? 0 : *std::max_element(members.begin(), members.end());
    ids_.assign(static_cast<std::size_t>(limit_ + 1), 0);
    colours_ = {Colour{{0}}, Colour{{1}}};
    intern_ = {{colours_[0], 0}, {colours_[1], 1}};
    classes_.resize(2);
    std::set<std::int64_t> uniq(members.begin(), members.end());
    for (std::int64_t v = 1; v <= limit_; ++v) {
      if (uniq.count(v)) {
        ids_[static_cast<std::size_t>(v)] = 1;
        classes_[1].push_back(v);
      } else {
        classes_[0].push_back(v);
      }
    }
  }

  int id(std::int64_t v) const {
    if (v <= limit_) return ids_[static_cast<std::size_t>(v)];
    if (!col_) return 0;
    return intern(col_->evaluate(v));
  }

  std::int64_t limit() const { return limit_; }

  /// Members of class `id` within the dense range, ascending.
  const std::vector<std::int64_t>& members(int id) const {
    static const std::vector<std::int64_t> kEmpty;
    if (id < 0 || static_cast<std::size_t>(id) >= classes_.size()) return kEmpty;
    return classes_[static_cast<std::size_t>(id)];
  }

  Colour colour(int id) const {
    std::lock_guard<std::mutex> lock(mu_);
    return colours_.at(static_cast<std::size_t>(id));
  }

  /// Id of a colour, interning it if unseen.
  int id_of(const Colour& c) const { return intern(c); }

 private:
  int intern(const Colour& c) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = intern_.emplace(c, static_cast<int>(colours_.size()));
    if (inserted) colours_.push_back(c);
    return it->second;
  }

  std::optional<Colouring> col_;
  std::int64_t limit_ = 0;
  std::vector<int> ids_;
  std::vector<std::vector<std::int64_t>> classes_;
  mutable std::mutex mu_;
  mutable std::map<Colour, int> intern_;
  mutable std::vector<Colour> colours_;
};

enum class Status { found, exhausted, budget };

struct EngineOptions {
  std::vector<std::int64_t> lo, hi;  // per-variable ranges
  std::vector<bool> distinct;        // variables whose values must be pairwise distinct
  bool distinct_image = false;       // distinct rows must take distinct values
  std::optional<int> fixed_target;   // colour id every row must take
  std::set<int> forbidden;           // ids no witness may use
  std::optional<std::set<int>> allowed;
  std::uint64_t budget = 10'000'000;
  unsigned threads = 1;
  bool classes_cover = false;  // every reachable row value lies in the table's dense range
};

struct EngineResult {
  Status status = Status::exhausted;
  std::uint64_t nodes = 0;
  std::vector<std::int64_t> assignment;
  int target = -1;
  std::map<int, std::vector<std::int64_t>> collected;  // collect mode: colour id -> least assignment
};

class Backtracker {
 public:
  Backtracker(const CompiledMatrix& m, const ColourTable& table, const EngineOptions& opt, bool collect)
      : m_(m), table_(table), opt_(opt), collect_(collect), x_(m.width, 0) {
    if (opt.lo.size() != m.width || opt.hi.size() != m.width || opt.distinct.size() != m.width)
      throw std::invalid_argument("engine: per-variable options do not match width");
    target_ = opt.fixed_target.value_or(-1);
  }

  /// Candidates for variable j given the current prefix, ascending.
  std::vector<std::int64_t> candidates(std::size_t j) const {
    std::vector<std::int64_t> out;
    const std::int64_t lo = opt_.lo[j], hi = opt_.hi[j];
    if (lo > hi) return out;
    std::vector<int> targets;
    if (target_ >= 0) {
      targets.push_back(target_);
    } else if (opt_.allowed) {
      for (int t : *opt_.allowed)
        if (!opt_.forbidden.count(t) && !done_.count(t)) targets.push_back(t);
    }
    const bool use_classes = !m_.rows_at[j].empty() && (target_ >= 0 || opt_.allowed.has_value()) &&
                             opt_.classes_cover;
    if (!use_classes) {
      out.reserve(static_cast<std::size_t>(std::min<std::int64_t>(hi - lo + 1, 1 << 20)));
      for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
      return out;
    }
    // Invert one row: value w = (C + k·x) / L, so x = (w·L - C) / k.
    const auto& row = m_.rows[m_.rows_at[j].front()];
    std::int64_t k = 0, partial = 0;
    for (const auto& [c, coef] : row.terms) {
      if (c == j)
        k = coef;
      else
        partial = checked_add(partial, checked_mul(coef, x_[c]));
    }
    const std::int64_t a = checked_add(partial, checked_mul(k, lo));
    const std::int64_t b = checked_add(partial, checked_mul(k, hi));
    const std::int64_t wlo = ceil_div(std::min(a, b), row.scale);
    const std::int64_t whi = floor_div(std::max(a, b), row.scale);
    for (int t : targets) {
      const auto& cls = table_.members(t);
      auto first = std::lower_bound(cls.begin(), cls.end(), std::max<std::int64_t>(wlo, 1));
      for (auto it = first; it != cls.end() && *it <= whi; ++it) {
        const std::int64_t num = checked_mul(*it, row.scale) - partial;
        if (num % k != 0) continue;
        const std::int64_t v = num / k;
        if (v >= lo && v <= hi) out.push_back(v);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// Assign x_j = v and check rows ending at j. Returns false on violation.
  bool assign(std::size_t j, std::int64_t v) {
    if (opt_.distinct[j]) {
      for (std::size_t i = 0; i < j; ++i)
        if (opt_.distinct[i] && x_[i] == v) return false;
    }
    x_[j] = v;
    const int saved_target = target_;
    const std::size_t saved_values = values_.size();
    for (std::size_t ri : m_.rows_at[j]) {
      const auto& row = m_.rows[ri];
      std::int64_t dotv = 0;
      for (const auto& [c, coef] : row.terms) dotv = checked_add(dotv, checked_mul(coef, x_[c]));
      if (dotv <= 0 || dotv % row.scale != 0) return undo(saved_target, saved_values);
      const std::int64_t value = dotv / row.scale;
      const int id = table_.id(value);
      if (target_ < 0) {
        if (opt_.forbidden.count(id) || done_.count(id)) return undo(saved_target, saved_values);
        if (opt_.allowed && !opt_.allowed->count(id)) return undo(saved_target, saved_values);
        target_ = id;
      } else if (id != target_) {
        return undo(saved_target, saved_values);
      }
      if (opt_.distinct_image) {
        for (const auto& [val, klass] : values_)
          if (val == value && klass != row.klass) return undo(saved_target, saved_values);
        values_.emplace_back(value, row.klass);
      }
    }
    frames_.push_back({saved_target, saved_values});
    return true;
  }

  void unassign() {
    auto f = frames_.back();
    frames_.pop_back();
    undo(f.target, f.values);
  }

  /// Depth-first search over variables j.. with the current prefix fixed.
  Status dfs(std::size_t j, std::uint64_t cap) {
    if (j == m_.width) {
      if (!collect_) return Status::found;
      if (target_ >= 0 && !done_.count(target_)) {
        done_.insert(target_);
        collected_.emplace(target_, x_);
      }
      return Status::exhausted;
    }
    for (std::int64_t v : candidates(j)) {
      if (++nodes_ > cap) return Status::budget;
      if (!assign(j, v)) continue;
      Status s = dfs(j + 1, cap);
      if (s == Status::found) return s;  // leave the witness assigned
      const int t = target_;
      unassign();
      if (s != Status::exhausted) return s;
      // the whole remaining loop shares this target; nothing new to collect
      if (collect_ && t >= 0 && t == target_ && done_.count(t)) break;
    }
    return Status::exhausted;
  }

  std::uint64_t nodes() const { return nodes_; }
  void reset_nodes() { nodes_ = 0; }
  const std::vector<std::int64_t>& x() const { return x_; }
  int target() const { return target_; }
  std::map<int, std::vector<std::int64_t>>& collected() { return collected_; }

  static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
  static std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

 private:
  struct Frame {
    int target;
    std::size_t values;
  };

  bool undo(int saved_target, std::size_t saved_values) {
    target_ = saved_target;
    values_.resize(saved_values);
    return false;
  }

  const CompiledMatrix& m_;
  const ColourTable& table_;
  const EngineOptions& opt_;
  bool collect_;
  std::vector<std::int64_t> x_;
  int target_ = -1;
  std::vector<std::pair<std::int64_t, std::size_t>> values_;
  std::vector<Frame> frames_;
  std::set<int> done_;
  std::map<int, std::vector<std::int64_t>> collected_;
  std::uint64_t nodes_ = 0;
};

/// Lexicographically least assignment satisfying every row, or exhaustion.
inline EngineResult engine_find(const CompiledMatrix& m, const ColourTable& table, const EngineOptions& opt) {
  EngineResult result;
  if (m.has_zero_row || m.width == 0) return result;

  Backtracker root(m, table, opt, false);
  const std::vector<std::int64_t> top = root.candidates(0);

  struct Slot {
    bool done = false;
    Status status = Status::exhausted;
    std::uint64_t nodes = 0;
    std::vector<std::int64_t> x;
    int target = -1;
  };
  std::vector<Slot> slots(top.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{top.size()};  // least index with a witness (or budget stop)
  std::mutex mu;
  std::size_t prefix_done = 0;    // slots [0, prefix_done) complete
  std::uint64_t prefix_nodes = 0;  // their node total

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= top.size() || i > best.load()) return;
      std::uint64_t cap;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (prefix_nodes >= opt.budget) return;
        cap = opt.budget - prefix_nodes;
      }
      Backtracker bt(m, table, opt, false);
      Slot s;
      if (bt.assign(0, top[i])) {
        s.status = (cap <= 1) ? Status::budget : bt.dfs(1, cap - 1);
        if (s.status == Status::found) {
          s.x = bt.x();
          s.target = bt.target();
        }
      }
      s.nodes = bt.nodes() + 1;
      s.done = true;
      {
        std::lock_guard<std::mutex> lock(mu);
        slots[i] = std::move(s);
        while (prefix_done < slots.size() && slots[prefix_done].done) {
          prefix_nodes += slots[prefix_done].nodes;
          ++prefix_done;
        }
        if (slots[i].status != Status::exhausted) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      }
    }
  };

  const unsigned n = std::max(1U, opt.threads);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::uint64_t total = 0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].done) {
      // skipped because an earlier prefix exhausted the budget
      result.status = Status::budget;
      result.nodes = opt.budget;
      return result;
    }
    total += slots[i].nodes;
    if (total > opt.budget || slots[i].status == Status::budget) {
      result.status = Status::budget;
      result.nodes = opt.budget;
      return result;
    }
    if (slots[i].status == Status::found) {
      result.status = Status::found;
      result.nodes = total;
      result.assignment = slots[i].x;
      result.target = slots[i].target;
      return result;
    }
  }
  result.status = Status::exhausted;
  result.nodes = total;
  return result;
}

/// Least assignment per reachable colour, sequentially.
inline EngineResult engine_collect(const CompiledMatrix& m, const ColourTable& table, const EngineOptions& opt) {
  EngineResult result;
  if (m.has_zero_row || m.width == 0) return result;
  Backtracker bt(m, table, opt, true);
  result.status = bt.dfs(0, opt.budget);
  result.nodes = std::min(bt.nodes(), opt.budget);
  result.collected = std::move(bt.collected());
  return result;
}

}  // namespace ripr::detail
