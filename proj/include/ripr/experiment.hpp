#pragma once

// Experiment specs and reports. A spec is {"command": ..., "params": {...}};
// run() executes it and returns the report body. Reports carry no timing, so
// replaying a spec gives byte-identical output. Keys are sorted (nlohmann
// objects are ordered maps), rationals are [num, den] in lowest terms, and
// integers that overflow int64 are written as decimal strings.

#include "ripr/colourings.hpp"
#include "ripr/digits.hpp"
#include "ripr/matgen.hpp"
#include "ripr/matrix.hpp"
#include "ripr/search.hpp"
#include "ripr/seqs.hpp"

#include "json.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ripr {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// JSON encodings

inline json bigint_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

inline BigInt bigint_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    auto r = Rat::parse(j.get<std::string>());
    if (!r.is_integer()) throw std::invalid_argument("expected an integer, got " + j.dump());
    return r.num();
  }
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

inline json rat_json(const Rat& r) { return json::array({bigint_json(r.num()), bigint_json(r.den())}); }

inline Rat rat_from_json(const json& j) {
  if (j.is_array() && j.size() == 2) return Rat(bigint_from_json(j[0]), bigint_from_json(j[1]));
  return Rat(bigint_from_json(j));
}

inline json values_json(const std::vector<Rat>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(rat_json(v));
  return out;
}

/// {"width": w, "rows": [[[col, num, den], ...], ...]}
inline json matrix_json(const FiniteMatrix& m) {
  json rows = json::array();
  for (const auto& r : m.rows()) {
    json row = json::array();
    for (const auto& [c, v] : r.entries()) row.push_back({c, bigint_json(v.num()), bigint_json(v.den())});
    rows.push_back(std::move(row));
  }
  return {{"width", m.width()}, {"rows", std::move(rows)}};
}

inline FiniteMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("width") || !j.contains("rows"))
    throw std::invalid_argument("matrix JSON needs 'width' and 'rows'");
  std::vector<SparseRow> rows;
  for (const auto& row : j.at("rows")) {
    SparseRow r;
    for (const auto& e : row) {
      if (!e.is_array() || e.size() != 3) throw std::invalid_argument("matrix entry must be [col, num, den]");
      r.set(e[0].get<std::size_t>(), Rat(bigint_from_json(e[1]), bigint_from_json(e[2])));
    }
    rows.push_back(std::move(r));
  }
  return FiniteMatrix(std::move(rows), j.at("width").get<std::size_t>(), Duplicates::allow);
}

/// Dense CSV, one row per line.
inline std::string matrix_csv(const FiniteMatrix& m) {
  std::ostringstream out;
  for (const auto& r : m.rows()) {
    auto d = r.to_dense(m.width());
    for (std::size_t j = 0; j < d.size(); ++j) out << (j ? "," : "") << d[j];
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Matrix families

namespace detail {

inline std::vector<std::int64_t> list_after(const std::string& spec, std::size_t pos) {
  if (pos >= spec.size()) throw std::invalid_argument("family '" + spec + "' needs arguments");
  return parse_int_list(spec.substr(pos));
}

inline std::size_t need_width(std::optional<std::size_t> width, const std::string& spec) {
  if (!width) throw std::invalid_argument("family '" + spec + "' needs a width");
  return *width;
}

}  // namespace detail

/// Builds a matrix from a family string:
///   schur  ap:K  identity  f  fprime  mt:A1,A2,..  band:C1,C2,..  mpc:M,P,C
///   deuber:M,P,C  anodom  script-i:C1,C2,..  rowsum:C:BOUND
///   dense:R1;R2;..  (rows as comma lists)  file:PATH  (matrix JSON)
inline FiniteMatrix family_matrix(const std::string& spec, std::optional<std::size_t> width,
                                  std::size_t rows = kUnlimitedRows) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::size_t arg = colon == std::string::npos ? spec.size() : colon + 1;
  if (name == "schur") return FiniteMatrix::from_dense({{1, 0}, {0, 1}, {1, 1}});
  if (name == "ap") {
    const auto k = detail::parse_int(spec.substr(arg));
    if (k < 2) throw std::invalid_argument("ap:K needs K >= 2");
    std::vector<SparseRow> out;
    for (std::int64_t i = 0; i < k; ++i) {
      SparseRow r{{0, Rat(1)}};
      r.set(1, Rat(i));
      out.push_back(std::move(r));
    }
    return FiniteMatrix(std::move(out), 2);
  }
  if (name == "identity") return FiniteMatrix::identity(detail::need_width(width, spec));
  if (name == "f") return f_rows(detail::need_width(width, spec), rows);
  if (name == "fprime") return f_prime_rows(detail::need_width(width, spec), rows);
  if (name == "mt") return mt_rows(CompressedSeq(detail::list_after(spec, arg)), detail::need_width(width, spec), rows);
  if (name == "band") {
    auto coeffs = detail::list_after(spec, arg);
    const std::size_t w = detail::need_width(width, spec);
    if (coeffs.size() > w) throw std::invalid_argument("band: more coefficients than columns");
    const std::size_t fit = w - coeffs.size() + 1;
    return band_matrix(coeffs, rows == kUnlimitedRows ? fit : rows, w);
  }
  if (name == "mpc" || name == "deuber") {
    auto v = detail::list_after(spec, arg);
    if (v.size() != 3) throw std::invalid_argument(name + " needs M,P,C");
    return name == "mpc" ? mpc_matrix(v[0], v[1], v[2]) : deuber_matrix(v[0], v[1], v[2]);
  }
  if (name == "anodom") {
    const std::size_t w = detail::need_width(width, spec);
    return anodom_matrix(rows == kUnlimitedRows ? w : rows, w);
  }
  if (name == "script-i") return script_i_matrix(detail::list_after(spec, arg), detail::need_width(width, spec));
  if (name == "rowsum") {
    auto parts = detail::split(spec, ':');
    if (parts.size() != 3) throw std::invalid_argument("rowsum needs C:BOUND");
    return constant_rowsum_rows(Rat::parse(parts[1]), detail::need_width(width, spec), rows,
                                detail::parse_int(parts[2]));
  }
  if (name == "dense") {
    std::vector<SparseRow> out;
    std::size_t w = 0;
    for (const auto& r : detail::split(spec.substr(arg), ';')) {
      auto vals = detail::parse_int_list(r);
      std::vector<Rat> d(vals.begin(), vals.end());
      w = std::max(w, d.size());
      out.push_back(SparseRow::dense(d));
    }
    return FiniteMatrix(std::move(out), width.value_or(w), Duplicates::allow);
  }
  if (name == "file") {
    std::ifstream in(spec.substr(arg));
    if (!in) throw std::invalid_argument("cannot open matrix file '" + spec.substr(arg) + "'");
    return matrix_from_json(json::parse(in));
  }
  throw std::invalid_argument("unknown matrix family '" + name + "'");
}

/// Stacks the listed families; all share one width and row budget.
inline FiniteMatrix stacked_family(const std::vector<std::string>& specs, std::optional<std::size_t> width,
                                   std::size_t rows = kUnlimitedRows) {
  if (specs.empty()) throw std::invalid_argument("no matrix family given");
  FiniteMatrix m = family_matrix(specs[0], width, rows);
  for (std::size_t i = 1; i < specs.size(); ++i) m = stack(m, family_matrix(specs[i], width, rows));
  return m;
}

// ---------------------------------------------------------------------------
// Spec parameters

namespace detail {

class Params {
 public:
  Params(const json& p, std::set<std::string> allowed) : p_(p) {
    if (!p.is_object()) throw std::invalid_argument("params must be an object");
    for (const auto& [k, v] : p.items())
      if (!allowed.count(k)) throw std::invalid_argument("unknown parameter '" + k + "'");
  }

  bool has(const std::string& k) const { return p_.contains(k) && !p_.at(k).is_null(); }

  const json& at(const std::string& k) const {
    if (!has(k)) throw std::invalid_argument("missing parameter '" + k + "'");
    return p_.at(k);
  }

  template <typename T>
  T get(const std::string& k) const {
    try {
      return at(k).get<T>();
    } catch (const json::exception&) {
      throw std::invalid_argument("parameter '" + k + "' has the wrong type");
    }
  }

  template <typename T>
  T get(const std::string& k, T fallback) const {
    return has(k) ? get<T>(k) : fallback;
  }

  std::optional<std::size_t> width(const std::string& k = "width") const {
    if (!has(k)) return std::nullopt;
    return get<std::size_t>(k);
  }

  std::size_t rows(const std::string& k = "rows") const { return has(k) ? get<std::size_t>(k) : kUnlimitedRows; }

  std::vector<std::string> families(const std::string& k) const {
    const auto& v = at(k);
    if (v.is_string()) return {v.get<std::string>()};
    return get<std::vector<std::string>>(k);
  }

  std::uint64_t budget() const {
    if (!has("budget")) return default_node_budget();
    const auto& b = at("budget");
    if (!b.is_number_integer() || b.get<std::int64_t>() < 1)
      throw std::invalid_argument("budget must be a positive integer");
    return b.get<std::uint64_t>();
  }

 private:
  const json& p_;
};

inline json report_head(const std::string& command, const json& params) {
  return {{"schemaVersion", kSchemaVersion}, {"command", command}, {"params", params}};
}

inline void put_search_status(json& r, Outcome o, std::uint64_t nodes) {
  static const char* names[] = {"found", "none-within-bounds", "budget-hit"};
  r["outcome"] = names[static_cast<int>(o)];
  r["nodesExplored"] = nodes;
  r["exhausted"] = o == Outcome::exhausted;
}

inline json colour_of(const Colouring& col, const Colour& c) { return col.colour_json(c); }

inline std::vector<std::int64_t> int_list(const Params& p, const std::string& k) {
  const auto& v = p.at(k);
  if (v.is_string()) return parse_int_list(v.get<std::string>());
  return p.get<std::vector<std::int64_t>>(k);
}

// Each command fills in params it defaulted, so reports show what actually ran.

inline json run_gen(const json& params) {
  Params p(params, {"family", "width", "rows"});
  auto m = stacked_family(p.families("family"), p.width(), p.rows());
  json r = report_head("gen", params);
  r["outcome"] = "ok";
  r["matrix"] = matrix_json(m);
  r["rowCount"] = m.row_count();
  return r;
}

inline json run_image(const json& params) {
  Params p(params, {"mode", "family", "width", "rows", "x", "a", "b"});
  const auto mode = p.get<std::string>("mode", "matrix");
  const auto x = int_list(p, "x");
  ImageSet img;
  if (mode == "matrix") {
    img = image(stacked_family(p.families("family"), p.width(), p.rows()), to_rats(x));
  } else if (mode == "fs") {
    img = fs_image(x);
  } else if (mode == "mt") {
    img = mt_image(CompressedSeq(int_list(p, "a")), x);
  } else if (mode == "translated-mt") {
    img = translated_mt_image(p.get<std::int64_t>("b"), CompressedSeq(int_list(p, "a")), x);
  } else {
    throw std::invalid_argument("image mode must be matrix, fs, mt, or translated-mt");
  }
  json r = report_head("image", params);
  r["outcome"] = "ok";
  r["values"] = values_json(img.values);
  r["allNatural"] = img.all_natural();
  return r;
}

inline json run_digits(const json& params) {
  Params p(params, {"x", "p", "base", "gap"});
  const BigInt x = bigint_from_json(p.at("x"));
  // base is "neg", "pos", or a signed radix such as -7
  std::string base = p.get<std::string>("base", "neg");
  std::optional<std::int64_t> radix;
  if (p.has("p")) radix = p.get<std::int64_t>("p");
  if (base != "neg" && base != "pos") {
    const auto b = parse_int(base);
    if (radix && *radix != (b < 0 ? -b : b)) throw std::invalid_argument("base and p disagree");
    radix = b < 0 ? -b : b;
    base = b < 0 ? "neg" : "pos";
  }
  if (!radix) throw std::invalid_argument("missing parameter 'p'");
  json r = report_head("digits", params);
  r["outcome"] = "ok";
  const DigitExpansion e = base == "pos" ? base_digits(x, *radix) : neg_digits(x, *radix);
  r["digits"] = e.digits;
  r["support"] = e.support();
  if (!e.is_zero()) {
    r["minSupport"] = e.min_support();
    r["maxSupport"] = e.max_support();
    r["leastDigit"] = e.at(e.min_support());
  }
  if (base == "neg") {
    if (auto f = try_phi(e)) r["phi"] = *f;
    json gp = json::array();
    for (const auto& [g, n] : gap_profile(e)) gp.push_back({{"shape", g.as_array()}, {"count", n}});
    r["gapProfile"] = gp;
    if (p.has("gap")) {
      auto g = int_list(p, "gap");
      if (g.size() != 5) throw std::invalid_argument("gap needs v,u0,u1,u2,u3");
      GapDescriptor d(g[0], g[1], g[2], g[3], g[4]);
      auto found = gaps(x, *radix, d);
      json pairs = json::array();
      for (const auto& [s, t] : found) pairs.push_back({s, t});
      r["gaps"] = pairs;
      r["psi"] = psi(x, *radix, d);
    }
  } else if (p.has("gap")) {
    throw std::invalid_argument("gap shapes apply to base -p only");
  }
  return r;
}

inline json run_colour(const json& params) {
  Params p(params, {"colouring", "x"});
  auto col = colouring_from_spec(p.get<std::string>("colouring"));
  json r = report_head("colour", params);
  r["outcome"] = "ok";
  r["colouring"] = col.descriptor();
  json cs = json::array();
  for (auto v : int_list(p, "x")) cs.push_back({{"x", v}, {"colour", col.colour_json(col(v))}});
  r["colours"] = cs;
  return r;
}

inline SearchConfig config_from(const Params& p, json& params) {
  SearchConfig cfg;
  cfg.variable_bound = p.get<std::int64_t>("bound");
  cfg.distinct_entries = p.get<bool>("distinctEntries", false);
  cfg.distinct_image = p.get<bool>("distinctImage", false);
  cfg.min_entry = p.get<std::int64_t>("minEntry", 1);
  cfg.node_budget = p.budget();
  cfg.threads = p.get<unsigned>("threads", 1);
  params["budget"] = cfg.node_budget;
  params.erase("threads");  // execution knob; results do not depend on it
  return cfg;
}

inline json run_search(json params) {
  Params p(params, {"family", "width", "rows", "colouring", "bound", "distinctEntries", "distinctImage", "minEntry",
                    "budget", "threads"});
  auto m = stacked_family(p.families("family"), p.width(), p.rows());
  auto col = colouring_from_spec(p.get<std::string>("colouring"));
  auto cfg = config_from(p, params);
  auto res = find_monochromatic(m, col, cfg);
  json r = report_head("search", params);
  put_search_status(r, res.outcome, res.nodes_explored);
  if (res.witness)
    r["witness"] = {{"assignment", res.witness->assignment},
                    {"image", values_json(res.witness->image.values)},
                    {"colour", col.colour_json(res.witness->colour)}};
  return r;
}

inline json run_force(json params) {
  Params p(params, {"family", "width", "rows", "colours", "nmax", "budget"});
  auto m = stacked_family(p.families("family"), p.width(), p.rows());
  const auto budget = p.budget();
  params["budget"] = budget;
  auto res = forcing_bound(m, p.get<int>("colours"), p.get<std::int64_t>("nmax"), budget);
  json r = report_head("force", params);
  put_search_status(r, res.outcome, res.nodes_explored);
  if (res.bound) r["bound"] = *res.bound;
  r["certificate"] = res.certificate;
  r["checkedUpTo"] = res.checked_up_to;
  return r;
}

inline json run_separate(json params) {
  Params p(params, {"a", "b", "colouring", "prefix", "bound", "distinctEntries", "distinctImage", "minEntry",
                    "budget"});
  auto col = colouring_from_spec(p.get<std::string>("colouring"));
  CompressedSeq a(int_list(p, "a")), b(int_list(p, "b"));
  auto cfg = config_from(p, params);
  auto res = check_separation(col, a, b, p.get<std::size_t>("prefix"), cfg.variable_bound, cfg);
  json r = report_head("separate", params);
  if (res.proportional) {
    r["outcome"] = "precondition-failed";
    r["proportional"] = rat_json(*res.proportional);
    r["nodesExplored"] = 0;
    r["exhausted"] = false;
    return r;
  }
  put_search_status(r, res.outcome, res.nodes_explored);
  if (res.colour) r["witness"] = {{"x", res.x}, {"y", res.y}, {"colour", col.colour_json(*res.colour)}};
  return r;
}

inline json run_dominate(json params) {
  Params p(params, {"aFamily", "aWidth", "aRows", "bFamily", "bWidth", "bRows", "x", "ybound", "budget", "threads"});
  auto a = stacked_family(p.families("aFamily"), p.width("aWidth"), p.rows("aRows"));
  auto b = stacked_family(p.families("bFamily"), p.width("bWidth"), p.rows("bRows"));
  const auto budget = p.budget();
  const auto threads = p.get<unsigned>("threads", 1);
  params["budget"] = budget;
  params.erase("threads");
  auto res = dominates_on(a, b, int_list(p, "x"), p.get<std::int64_t>("ybound"), budget, threads);
  json r = report_head("dominate", params);
  put_search_status(r, res.outcome, res.nodes_explored);
  if (res.y) r["witness"] = {{"y", *res.y}, {"image", values_json(image(b, to_rats(*res.y)).values)}};
  return r;
}

inline json run_certify(const json& params) {
  Params p(params, {"aFamily", "aWidth", "bFamily", "bWidth", "cFamily", "cWidth"});
  auto a = stacked_family(p.families("aFamily"), p.width("aWidth"));
  auto b = stacked_family(p.families("bFamily"), p.width("bWidth"));
  auto c = stacked_family(p.families("cFamily"), p.width("cWidth"));
  auto v = certify_ipr(a, b, c);
  json r = report_head("certify", params);
  r["outcome"] = v.certified ? "certified" : "witness-invalid";
  if (!v.certified) r["reason"] = v.reason;
  return r;
}

inline json run_rapid(const json& params) {
  Params p(params, {"p", "x", "make"});
  std::vector<BigInt> x;
  const auto& xs = p.at("x");
  if (xs.is_string()) {
    for (const auto& s : split(xs.get<std::string>(), ',')) x.push_back(bigint_from_json(json(s)));
  } else {
    for (const auto& v : xs) x.push_back(bigint_from_json(v));
  }
  const auto radix = p.get<std::int64_t>("p");
  json r = report_head("rapid", params);
  if (p.get<bool>("make", false)) x = make_rapid(radix, x);
  json seq = json::array();
  for (const auto& v : x) seq.push_back(bigint_json(v));
  r["sequence"] = seq;
  r["outcome"] = check_rapid(x, radix) ? "rapid" : "not-rapid";
  return r;
}

inline json run_translate(json params) {
  Params p(params, {"colouring", "a", "prefix", "bbound", "xbound", "distinctEntries", "distinctImage", "minEntry",
                    "budget", "threads"});
  auto col = colouring_from_spec(p.get<std::string>("colouring"));
  CompressedSeq a(int_list(p, "a"));
  SearchConfig cfg;
  cfg.distinct_entries = p.get<bool>("distinctEntries", false);
  cfg.distinct_image = p.get<bool>("distinctImage", false);
  cfg.min_entry = p.get<std::int64_t>("minEntry", 1);
  cfg.node_budget = p.budget();
  cfg.threads = p.get<unsigned>("threads", 1);
  params["budget"] = cfg.node_budget;
  params.erase("threads");
  auto res = translate_witness(col, a, p.get<std::size_t>("prefix"), p.get<std::int64_t>("bbound"),
                               p.get<std::int64_t>("xbound"), cfg);
  json r = report_head("translate-search", params);
  put_search_status(r, res.outcome, res.nodes_explored);
  r["lastTermIsOne"] = res.last_term_is_one;
  if (res.b) r["witness"] = {{"b", *res.b}, {"x", res.x}, {"colour", col.colour_json(*res.colour)}};
  return r;
}

}  // namespace detail

/// Executes a spec and returns its report. Throws std::invalid_argument on
/// schema violations.
inline json run(const json& spec) {
  if (!spec.is_object() || !spec.contains("command") || !spec.at("command").is_string())
    throw std::invalid_argument("spec needs a string 'command'");
  for (const auto& [k, v] : spec.items())
    if (k != "command" && k != "params") throw std::invalid_argument("unknown spec field '" + k + "'");
  const auto cmd = spec.at("command").get<std::string>();
  const json params = spec.value("params", json::object());
  if (cmd == "gen") return detail::run_gen(params);
  if (cmd == "image") return detail::run_image(params);
  if (cmd == "digits") return detail::run_digits(params);
  if (cmd == "colour") return detail::run_colour(params);
  if (cmd == "search") return detail::run_search(params);
  if (cmd == "force") return detail::run_force(params);
  if (cmd == "separate") return detail::run_separate(params);
  if (cmd == "dominate") return detail::run_dominate(params);
  if (cmd == "certify") return detail::run_certify(params);
  if (cmd == "rapid") return detail::run_rapid(params);
  if (cmd == "translate-search") return detail::run_translate(params);
  throw std::invalid_argument("unknown command '" + cmd + "'");
}

/// Canonical text of a report.
inline std::string canonical(const json& report) { return report.dump(2) + "\n"; }

namespace detail {

inline void diff_into(const json& a, const json& b, const std::string& path, json& out) {
  if (a.is_object() && b.is_object()) {
    std::set<std::string> keys;
    for (const auto& [k, v] : a.items()) keys.insert(k);
    for (const auto& [k, v] : b.items()) keys.insert(k);
    for (const auto& k : keys) {
      const std::string sub = path + "/" + k;
      if (!a.contains(k))
        out.push_back({{"path", sub}, {"left", nullptr}, {"right", b.at(k)}});
      else if (!b.contains(k))
        out.push_back({{"path", sub}, {"left", a.at(k)}, {"right", nullptr}});
      else
        diff_into(a.at(k), b.at(k), sub, out);
    }
    return;
  }
  if (a != b) out.push_back({{"path", path.empty() ? "/" : path}, {"left", a}, {"right", b}});
}

}  // namespace detail

/// Field-level differences between two reports; arrays compare as a whole.
inline json report_diff(const json& left, const json& right) {
  auto version = [](const json& r) -> std::optional<int> {
    if (!r.is_object() || !r.contains("schemaVersion") || !r.at("schemaVersion").is_number_integer())
      return std::nullopt;
    return r.at("schemaVersion").get<int>();
  };
  const auto vl = version(left), vr = version(right);
  if (!vl || !vr) throw std::invalid_argument("report_diff: report without schemaVersion");
  if (*vl != *vr)
    throw std::invalid_argument("report_diff: schema versions differ (" + std::to_string(*vl) + " vs " +
                                std::to_string(*vr) + ")");
  json out = json::array();
  detail::diff_into(left, right, "", out);
  return out;
}

}  // namespace ripr
