#pragma once

// Witness searches over finite matrices: monochromatic images, forcing
// bounds, separation and domination checks, plus the certificate checks that
// need no search at all (first entries, linear IPR witnesses, rapid growth,
// the constant-row-sum refutation).
//
// A search that runs out of nodes reports Outcome::budget; it never claims
// absence.

#include "ripr/colourings.hpp"
#include "ripr/detail/engine.hpp"
#include "ripr/matgen.hpp"
#include "ripr/matrix.hpp"
#include "ripr/seqs.hpp"

#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ripr {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

/// The default node budget, or RIPR_BUDGET when set.
inline std::uint64_t default_node_budget() {
  const char* env = std::getenv("RIPR_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultNodeBudget;
  std::string s(env);
  if (s.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("RIPR_BUDGET must be a positive integer, got '" + s + "'");
  try {
    const auto b = std::stoull(s);
    if (b == 0) throw std::invalid_argument("RIPR_BUDGET must be positive");
    return b;
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("RIPR_BUDGET out of range: '" + s + "'");
  }
}

struct SearchConfig {
  std::int64_t variable_bound = 20;
  bool distinct_entries = false;
  bool distinct_image = false;
  std::int64_t min_entry = 1;
  std::uint64_t node_budget = default_node_budget();
  unsigned threads = 1;

  void validate() const {
    if (min_entry < 1) throw std::invalid_argument("SearchConfig: minEntry must be at least 1");
    if (variable_bound < min_entry) throw std::invalid_argument("SearchConfig: variableBound below minEntry");
    if (threads == 0) throw std::invalid_argument("SearchConfig: threads must be positive");
    if (node_budget == 0) throw std::invalid_argument("SearchConfig: node budget must be positive");
  }
};

enum class Outcome { found, exhausted, budget };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::found: return "found";
    case Outcome::exhausted: return "exhausted";
    case Outcome::budget: return "budget";
  }
  return "?";
}

struct SearchWitness {
  std::vector<std::int64_t> assignment;
  ImageSet image;
  Colour colour;
};

struct SearchResult {
  std::optional<SearchWitness> witness;
  Outcome outcome = Outcome::exhausted;
  std::uint64_t nodes_explored = 0;
  /// True when the whole bounded space was covered without a witness.
  bool exhausted() const { return outcome == Outcome::exhausted; }
};

namespace detail {

inline Outcome to_outcome(Status s) {
  switch (s) {
    case Status::found: return Outcome::found;
    case Status::exhausted: return Outcome::exhausted;
    case Status::budget: return Outcome::budget;
  }
  return Outcome::exhausted;
}

/// A colour table covering every value the compiled rows can reach, when
/// that range is small enough to tabulate.
inline std::int64_t table_limit(std::int64_t max_value) {
  return max_value <= ColourTable::kDenseLimit ? max_value : 0;
}

inline std::vector<std::int64_t> as_int64(const ImageSet& img) {
  std::vector<std::int64_t> out;
  for (const auto& v : img.values) {
    auto x = v.to_int64();
    if (!v.is_natural() || !x) throw std::invalid_argument("image value " + v.str() + " is not a positive integer");
    out.push_back(*x);
  }
  return out;
}

inline SearchWitness make_witness(const FiniteMatrix& a, const std::vector<std::int64_t>& x, Colour c) {
  return SearchWitness{x, image(a, to_rats(x)), std::move(c)};
}

}  // namespace detail

/// Lexicographically least x in [minEntry, variableBound]^width with A·x a
/// monochromatic set of positive integers.
inline SearchResult find_monochromatic(const FiniteMatrix& a, const Colouring& col, const SearchConfig& cfg) {
  cfg.validate();
  if (a.row_count() == 0) throw std::invalid_argument("find_monochromatic: matrix has no rows");
  SearchResult out;
  auto m = detail::compile(a);
  if (m.has_zero_row) return out;  // a zero row is never positive
  const std::vector<std::int64_t> hi(a.width(), cfg.variable_bound);
  const std::int64_t max_value = m.max_abs_value(hi);
  detail::ColourTable table(col, detail::table_limit(max_value));

  detail::EngineOptions opt;
  opt.lo.assign(a.width(), cfg.min_entry);
  opt.hi = hi;
  opt.distinct.assign(a.width(), cfg.distinct_entries);
  opt.distinct_image = cfg.distinct_image;
  opt.budget = cfg.node_budget;
  opt.threads = cfg.threads;
  opt.classes_cover = table.limit() > 0 && table.limit() >= max_value;

  auto r = detail::engine_find(m, table, opt);
  out.outcome = detail::to_outcome(r.status);
  out.nodes_explored = r.nodes;
  if (r.status == detail::Status::found)
    out.witness = detail::make_witness(a, r.assignment, table.colour(r.target));
  return out;
}

// ---------------------------------------------------------------------------

struct ForcingResult {
  std::optional<std::int64_t> bound;
  /// A colouring of [1, bound-1] (entry i colours i+1) with no monochromatic
  /// image; for inconclusive runs, the last avoiding colouring seen.
  std::vector<int> certificate;
  Outcome outcome = Outcome::exhausted;
  std::uint64_t nodes_explored = 0;
  std::int64_t checked_up_to = 0;  // every N <= this was decided
};

namespace detail {

/// Distinct value sets of A·x over x in [1, n]^width, restricted to sets
/// inside [1, n].
inline std::vector<std::vector<std::int64_t>> bounded_images(const CompiledMatrix& m, std::int64_t n) {
  std::set<std::vector<std::int64_t>> sets;
  std::vector<std::int64_t> x(m.width, 1);
  if (m.width == 0) return {};
  while (true) {
    std::vector<std::int64_t> vals;
    bool ok = true;
    for (const auto& row : m.rows) {
      std::int64_t d = 0;
      for (const auto& [c, k] : row.terms) d = checked_add(d, checked_mul(k, x[c]));
      if (d <= 0 || d % row.scale != 0 || d / row.scale > n) {
        ok = false;
        break;
      }
      vals.push_back(d / row.scale);
    }
    if (ok) {
      std::sort(vals.begin(), vals.end());
      vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
      sets.insert(std::move(vals));
    }
    std::size_t j = m.width;
    while (j > 0 && x[j - 1] == n) x[--j] = 1;
    if (j == 0) break;
    ++x[j - 1];
  }
  return {sets.begin(), sets.end()};
}

}  // namespace detail

/// Least N <= nMax such that every c-colouring of [1, N] admits x in [1, N]^width
/// with A·x monochromatic inside [1, N].
inline ForcingResult forcing_bound(const FiniteMatrix& a, int colours, std::int64_t n_max,
                                   std::uint64_t budget = default_node_budget()) {
  if (colours < 2) throw std::invalid_argument("forcing_bound: need at least 2 colours");
  if (n_max < 1) throw std::invalid_argument("forcing_bound: nMax must be positive");
  if (budget == 0) throw std::invalid_argument("forcing_bound: budget must be positive");
  if (a.row_count() == 0) throw std::invalid_argument("forcing_bound: matrix has no rows");
  ForcingResult out;
  auto m = detail::compile(a);
  if (m.has_zero_row) {
    out.checked_up_to = n_max;
    return out;
  }
  std::vector<int> last_avoiding;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    auto sets = detail::bounded_images(m, n);
    // images indexed by their largest value, checked once it is coloured
    std::vector<std::vector<std::size_t>> by_max(static_cast<std::size_t>(n + 1));
    for (std::size_t i = 0; i < sets.size(); ++i) by_max[static_cast<std::size_t>(sets[i].back())].push_back(i);

    std::vector<int> colour(static_cast<std::size_t>(n + 1), -1);
    bool avoided = false, out_of_budget = false;
    std::function<void(std::int64_t)> rec = [&](std::int64_t v) {
      if (avoided || out_of_budget) return;
      if (v > n) {
        avoided = true;
        return;
      }
      const int top = (v == 1) ? 1 : colours;  // colour(1) = 0 by symmetry
      for (int c = 0; c < top && !avoided && !out_of_budget; ++c) {
        if (++out.nodes_explored > budget) {
          out_of_budget = true;
          return;
        }
        colour[static_cast<std::size_t>(v)] = c;
        bool mono = false;
        for (std::size_t i : by_max[static_cast<std::size_t>(v)]) {
          mono = std::all_of(sets[i].begin(), sets[i].end(),
                             [&](std::int64_t w) { return colour[static_cast<std::size_t>(w)] == c; });
          if (mono) break;
        }
        if (!mono) rec(v + 1);
      }
      if (!avoided) colour[static_cast<std::size_t>(v)] = -1;
    };
    rec(1);
    if (out_of_budget) {
      out.outcome = Outcome::budget;
      out.nodes_explored = budget;
      out.certificate = last_avoiding;
      return out;
    }
    out.checked_up_to = n;
    if (!avoided) {
      out.bound = n;
      out.outcome = Outcome::found;
      out.certificate = last_avoiding;
      return out;
    }
    last_avoiding.assign(colour.begin() + 1, colour.end());
  }
  out.certificate = last_avoiding;
  return out;
}

// ---------------------------------------------------------------------------

struct SeparationResult {
  /// Set when a and b are rationally proportional; no search is run then.
  std::optional<Rat> proportional;
  Outcome outcome = Outcome::exhausted;
  std::vector<std::int64_t> x, y;
  std::optional<Colour> colour;
  std::uint64_t nodes_explored = 0;
};

/// Searches for prefixes x, y of length prefixLen with entries in
/// [minEntry, valueBound] such that MT(a, x) ∪ MT(b, y) is monochromatic.
/// A colouring's reserved class is excluded: it holds only small values and
/// cannot host an infinite configuration.
inline SeparationResult check_separation(const Colouring& col, const CompressedSeq& a, const CompressedSeq& b,
                                         std::size_t prefix_len, std::int64_t value_bound,
                                         SearchConfig cfg = {}) {
  SeparationResult out;
  out.proportional = rationally_proportional(a, b);
  if (out.proportional) return out;
  if (prefix_len < std::max(a.size(), b.size()))
    throw std::invalid_argument("check_separation: prefix shorter than a coefficient sequence");
  cfg.variable_bound = value_bound;
  cfg.validate();

  const FiniteMatrix ma = mt_rows(a, prefix_len), mb = mt_rows(b, prefix_len);
  auto ca = detail::compile(ma), cb = detail::compile(mb);
  const std::vector<std::int64_t> hi(prefix_len, value_bound);
  const std::int64_t max_value = std::max(ca.max_abs_value(hi), cb.max_abs_value(hi));
  detail::ColourTable table(col, detail::table_limit(max_value));

  detail::EngineOptions opt;
  opt.lo.assign(prefix_len, cfg.min_entry);
  opt.hi = hi;
  opt.distinct.assign(prefix_len, cfg.distinct_entries);
  opt.distinct_image = cfg.distinct_image;
  opt.budget = cfg.node_budget;
  opt.classes_cover = table.limit() > 0 && table.limit() >= max_value;
  if (auto r = col.reserved_colour()) opt.forbidden.insert(table.id_of(*r));

  auto ra = detail::engine_collect(ca, table, opt);
  out.nodes_explored = ra.nodes;
  if (ra.status == detail::Status::budget) {
    out.outcome = Outcome::budget;
    return out;
  }
  if (ra.collected.empty()) return out;

  std::set<int> seen;
  for (const auto& [id, x] : ra.collected) seen.insert(id);
  opt.allowed = seen;
  opt.budget = cfg.node_budget - ra.nodes;
  auto rb = detail::engine_collect(cb, table, opt);
  out.nodes_explored += rb.nodes;
  if (rb.status == detail::Status::budget) {
    out.outcome = Outcome::budget;
    out.nodes_explored = cfg.node_budget;
    return out;
  }
  // among shared colours, take the one whose x is least, then its least y
  std::optional<int> best;
  for (const auto& [id, y] : rb.collected) {
    if (!best || ra.collected.at(id) < ra.collected.at(*best)) best = id;
  }
  if (best) {
    out.outcome = Outcome::found;
    out.x = ra.collected.at(*best);
    out.y = rb.collected.at(*best);
    out.colour = table.colour(*best);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct DominationResult {
  std::optional<std::vector<std::int64_t>> y;
  Outcome outcome = Outcome::exhausted;
  std::uint64_t nodes_explored = 0;
};

/// Least y in [1, yBound]^width(B) with image(B, y) ⊆ image(A, x).
inline DominationResult dominates_on(const FiniteMatrix& a, const FiniteMatrix& b, const std::vector<std::int64_t>& x,
                                     std::int64_t y_bound, std::uint64_t budget = default_node_budget(),
                                     unsigned threads = 1) {
  if (y_bound < 1) throw std::invalid_argument("dominates_on: yBound must be positive");
  if (budget == 0) throw std::invalid_argument("dominates_on: budget must be positive");
  if (b.row_count() == 0) throw std::invalid_argument("dominates_on: B has no rows");
  const auto members = detail::as_int64(image(a, to_rats(x)));
  DominationResult out;
  auto m = detail::compile(b);
  if (m.has_zero_row) return out;
  detail::ColourTable table(members);
  detail::EngineOptions opt;
  opt.lo.assign(b.width(), 1);
  opt.hi.assign(b.width(), y_bound);
  opt.distinct.assign(b.width(), false);
  opt.fixed_target = 1;
  opt.budget = budget;
  opt.threads = threads;
  opt.classes_cover = true;  // non-members all share id 0
  auto r = detail::engine_find(m, table, opt);
  out.outcome = detail::to_outcome(r.status);
  out.nodes_explored = r.nodes;
  if (r.status == detail::Status::found) out.y = r.assignment;
  return out;
}

// ---------------------------------------------------------------------------

/// The first nonzero entry of every nonzero row.
inline std::set<Rat> first_entries(const FiniteMatrix& a) {
  std::set<Rat> out;
  for (const auto& r : a.rows())
    if (!r.empty()) out.insert(r.entries().front().second);
  return out;
}

/// No zero row, and rows whose first nonzero entry sits in the same column
/// share that entry, which is positive.
inline bool is_first_entries(const FiniteMatrix& a) {
  std::map<std::size_t, Rat> lead;
  for (const auto& r : a.rows()) {
    if (r.empty()) return false;
    const auto& [c, v] = r.entries().front();
    if (!v.is_positive()) return false;
    auto [it, inserted] = lead.emplace(c, v);
    if (!inserted && it->second != v) return false;
  }
  return true;
}

struct IprVerdict {
  bool certified = false;
  std::string reason;  // empty when certified
};

/// Checks the linear witness x = C·y for "A·x = B·y with B first entries":
/// A·C = B exactly, C a non-negative integer matrix without zero rows.
inline IprVerdict certify_ipr(const FiniteMatrix& a, const FiniteMatrix& b, const FiniteMatrix& c) {
  if (a.row_count() != b.row_count())
    throw std::invalid_argument("certify_ipr: A and B have different row counts");
  if (c.row_count() != a.width()) throw std::invalid_argument("certify_ipr: C must have one row per column of A");
  if (c.width() != b.width()) throw std::invalid_argument("certify_ipr: C and B have different widths");
  if (!is_first_entries(b)) return {false, "B is not a first entries matrix"};
  for (std::size_t i = 0; i < c.row_count(); ++i) {
    const auto& r = c.row(i);
    if (r.empty()) return {false, "row " + std::to_string(i) + " of C is zero"};
    for (const auto& [col, v] : r.entries())
      if (!v.is_integer() || v.sign() < 0)
        return {false, "C has entry " + v.str() + " at (" + std::to_string(i) + "," + std::to_string(col) + ")"};
  }
  for (std::size_t i = 0; i < a.row_count(); ++i) {
    SparseRow prod;
    for (const auto& [j, aij] : a.row(i).entries())
      for (const auto& [k, cjk] : c.row(j).entries()) prod.set(k, prod.get(k) + aij * cjk);
    if (!(prod == b.row(i))) return {false, "row " + std::to_string(i) + " of A·C differs from B"};
  }
  return {true, {}};
}

// ---------------------------------------------------------------------------

namespace detail {

/// Greatest s with p^s <= x, for x >= 1.
inline std::int64_t floor_log(const BigInt& x, std::int64_t p) {
  std::int64_t s = 0;
  BigInt pw = p;
  while (pw <= x) {
    pw *= p;
    ++s;
  }
  return s;
}

}  // namespace detail

/// Whenever p^s <= x_i, p^{s+8} divides x_{i+1}.
inline bool check_rapid(const std::vector<BigInt>& x, std::int64_t p) {
  if (x.empty()) throw std::invalid_argument("check_rapid: empty sequence");
  if (p < 2) throw std::invalid_argument("check_rapid: p must be at least 2");
  for (const auto& v : x)
    if (v < 1) throw std::invalid_argument("check_rapid: entries must be positive");
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const std::int64_t s = detail::floor_log(x[i], p);
    const BigInt need = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(s + 8));
    if (x[i + 1] % need != 0) return false;
  }
  return true;
}

/// Replaces each seed by its least multiple making the sequence rapid.
inline std::vector<BigInt> make_rapid(std::int64_t p, const std::vector<BigInt>& seeds) {
  if (seeds.empty()) throw std::invalid_argument("make_rapid: no seeds");
  if (p < 2) throw std::invalid_argument("make_rapid: p must be at least 2");
  std::vector<BigInt> out;
  for (const auto& seed : seeds) {
    if (seed < 1) throw std::invalid_argument("make_rapid: seeds must be positive");
    if (out.empty()) {
      out.push_back(seed);
      continue;
    }
    const std::int64_t s = detail::floor_log(out.back(), p);
    const BigInt need = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(s + 8));
    out.push_back(boost::multiprecision::lcm(seed, need));
  }
  return out;
}

// ---------------------------------------------------------------------------

/// A row with row sum c whose value at x is negative: c+r at a minimal entry
/// m, -r at a strictly larger entry n.
inline SparseRow refute_nonconstant(const Rat& c, const std::vector<Rat>& x) {
  if (x.empty()) throw std::invalid_argument("refute_nonconstant: empty vector");
  std::size_t m = 0;
  for (std::size_t i = 1; i < x.size(); ++i)
    if (x[i] < x[m]) m = i;
  std::optional<std::size_t> n;
  for (std::size_t i = 0; i < x.size() && !n; ++i)
    if (x[i] > x[m]) n = i;
  if (!n) throw std::invalid_argument("refute_nonconstant: x is constant");
  auto floor_of = [](const Rat& q) {
    BigInt f = q.num() / q.den();
    if (q.sign() < 0 && f * q.den() != q.num()) f -= 1;
    return f;
  };
  const Rat cm = c * x[m];
  // value = c·x_m - r·(x_n - x_m) < 0 needs r > c·x_m / (x_n - x_m)
  BigInt r = std::max(floor_of(cm), floor_of(cm / (x[*n] - x[m]))) + 1;
  if (r < 1) r = 1;
  SparseRow row;
  row.set(m, c + Rat(r));
  row.set(*n, -Rat(r));
  return row;
}

// ---------------------------------------------------------------------------

struct TranslateResult {
  std::optional<std::int64_t> b;
  std::vector<std::int64_t> x;
  std::optional<Colour> colour;
  bool last_term_is_one = false;
  Outcome outcome = Outcome::exhausted;
  std::uint64_t nodes_explored = 0;
};

/// Least (b, x) with FS(x) ∪ (b + MT(a, x)) monochromatic, b in [1, bBound]
/// and x entries in [minEntry, xBound]. Distinctness applies to x only.
inline TranslateResult translate_witness(const Colouring& col, const CompressedSeq& a, std::size_t prefix_len,
                                         std::int64_t b_bound, std::int64_t x_bound, SearchConfig cfg = {}) {
  if (prefix_len < a.size()) throw std::invalid_argument("translate_witness: prefix shorter than a");
  if (b_bound < 1) throw std::invalid_argument("translate_witness: bBound must be positive");
  cfg.variable_bound = x_bound;
  cfg.validate();
  TranslateResult out;
  out.last_term_is_one = a.last() == 1;

  const FiniteMatrix sys = translation_system({mt_rows(a, prefix_len)}, f_rows(prefix_len));
  auto m = detail::compile(sys);
  std::vector<std::int64_t> hi(sys.width(), x_bound);
  hi[0] = b_bound;
  const std::int64_t max_value = m.max_abs_value(hi);
  detail::ColourTable table(col, detail::table_limit(max_value));

  detail::EngineOptions opt;
  opt.lo.assign(sys.width(), cfg.min_entry);
  opt.lo[0] = 1;
  opt.hi = hi;
  opt.distinct.assign(sys.width(), cfg.distinct_entries);
  opt.distinct[0] = false;
  opt.distinct_image = cfg.distinct_image;
  opt.budget = cfg.node_budget;
  opt.threads = cfg.threads;
  opt.classes_cover = table.limit() > 0 && table.limit() >= max_value;
  if (auto r = col.reserved_colour()) opt.forbidden.insert(table.id_of(*r));

  auto r = detail::engine_find(m, table, opt);
  out.outcome = detail::to_outcome(r.status);
  out.nodes_explored = r.nodes;
  if (r.status == detail::Status::found) {
    out.b = r.assignment[0];
    out.x.assign(r.assignment.begin() + 1, r.assignment.end());
    out.colour = table.colour(r.target);
  }
  return out;
}

}  // namespace ripr
