#pragma once

// Colourings of the positive integers. A colour is a structured value (a
// short integer tuple); two numbers get the same colour iff their tuples are
// equal. Palettes are never enumerated: the separating colourings have
// enormous palettes of which only a handful of colours are ever observed.

#include "ripr/detail/checked.hpp"
#include "ripr/digits.hpp"
#include "ripr/matrix.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ripr {

struct Colour {
  std::vector<std::int64_t> parts;
  friend auto operator<=>(const Colour&, const Colour&) = default;
  friend bool operator==(const Colour&, const Colour&) = default;
};

class Colouring {
 public:
  struct Impl {
    virtual ~Impl() = default;
    virtual Colour evaluate(std::int64_t x) const = 0;
    virtual nlohmann::json colour_json(const Colour& c) const = 0;
    virtual nlohmann::json descriptor() const = 0;
    virtual std::optional<std::int64_t> palette_size() const = 0;
    /// When set, [1, bound] is exactly one colour class that no infinite
    /// monochromatic configuration can use.
    virtual std::optional<std::int64_t> reserved_bound() const { return std::nullopt; }
  };

  explicit Colouring(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  Colour operator()(std::int64_t x) const { return evaluate(x); }
  Colour evaluate(std::int64_t x) const {
    if (x < 1) throw std::invalid_argument("colouring: argument must be a positive integer");
    return impl_->evaluate(x);
  }
  nlohmann::json colour_json(const Colour& c) const { return impl_->colour_json(c); }
  /// Canonical JSON text of a colour; equal colours give equal bytes.
  std::string colour_text(const Colour& c) const { return colour_json(c).dump(); }
  nlohmann::json descriptor() const { return impl_->descriptor(); }
  std::optional<std::int64_t> palette_size() const { return impl_->palette_size(); }
  std::optional<std::int64_t> reserved_bound() const { return impl_->reserved_bound(); }
  std::optional<Colour> reserved_colour() const {
    if (auto b = reserved_bound()) return evaluate(1);
    return std::nullopt;
  }

 private:
  std::shared_ptr<const Impl> impl_;
};

namespace detail {

// p-adic valuation of a nonzero BigInt.
inline std::int64_t valuation(BigInt n, const BigInt& p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  if (n < 0) n = -n;
  std::int64_t k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

inline std::int64_t valuation(const Rat& r, const BigInt& p) {
  return valuation(r.num(), p) - valuation(r.den(), p);
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void prime_factors(BigInt n, std::vector<BigInt>& out) {
  if (n < 0) n = -n;
  for (BigInt d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
}

struct ModImpl final : Colouring::Impl {
  std::int64_t m;
  explicit ModImpl(std::int64_t m_) : m(m_) {}
  Colour evaluate(std::int64_t x) const override { return {{x % m}}; }
  nlohmann::json colour_json(const Colour& c) const override { return c.parts.at(0); }
  nlohmann::json descriptor() const override { return {{"kind", "mod"}, {"m", m}}; }
  std::optional<std::int64_t> palette_size() const override { return m; }
};

struct ConstantImpl final : Colouring::Impl {
  Colour evaluate(std::int64_t) const override { return {{0}}; }
  nlohmann::json colour_json(const Colour& c) const override { return c.parts.at(0); }
  nlohmann::json descriptor() const override { return {{"kind", "const"}}; }
  std::optional<std::int64_t> palette_size() const override { return 1; }
};

struct TableImpl final : Colouring::Impl {
  std::vector<std::int64_t> table;
  explicit TableImpl(std::vector<std::int64_t> t) : table(std::move(t)) {}
  Colour evaluate(std::int64_t x) const override {
    return {{table[static_cast<std::size_t>((x - 1) % static_cast<std::int64_t>(table.size()))]}};
  }
  nlohmann::json colour_json(const Colour& c) const override { return c.parts.at(0); }
  nlohmann::json descriptor() const override { return {{"kind", "table"}, {"table", table}}; }
  std::optional<std::int64_t> palette_size() const override {
    std::vector<std::int64_t> s = table;
    std::sort(s.begin(), s.end());
    return static_cast<std::int64_t>(std::unique(s.begin(), s.end()) - s.begin());
  }
};

struct PrimeExponentImpl final : Colouring::Impl {
  Rat b, c;
  std::int64_t p = 0, q = 0;
  PrimeExponentImpl(Rat b_, Rat c_, std::int64_t p_, std::int64_t q_)
      : b(std::move(b_)), c(std::move(c_)), p(p_), q(q_) {}
  Colour of(const Rat& s) const { return {{floor_mod(valuation(s, BigInt(p)), q)}}; }
  Colour evaluate(std::int64_t x) const override { return of(Rat(x)); }
  nlohmann::json colour_json(const Colour& col) const override { return col.parts.at(0); }
  nlohmann::json descriptor() const override {
    return {{"kind", "prime-exp"}, {"b", b.str()}, {"c", c.str()}, {"p", p}, {"q", q}};
  }
  std::optional<std::int64_t> palette_size() const override { return q; }
};

struct AlphaImpl final : Colouring::Impl {
  Rat alpha;
  std::int64_t base = 0;  // u when u > 1, otherwise v
  AlphaImpl(Rat a, std::int64_t b) : alpha(std::move(a)), base(b) {}
  Colour evaluate(std::int64_t x) const override {
    std::int64_t k = 0;
    while (x % base == 0) {
      x /= base;
      ++k;
    }
    return {{k % 2}};
  }
  nlohmann::json colour_json(const Colour& c) const override { return c.parts.at(0); }
  nlohmann::json descriptor() const override {
    return {{"kind", "alpha"}, {"alpha", alpha.str()}, {"base", base}};
  }
  std::optional<std::int64_t> palette_size() const override { return 2; }
};

struct ExtendingFImpl final : Colouring::Impl {
  std::int64_t p;
  explicit ExtendingFImpl(std::int64_t p_) : p(p_) {}
  Colour evaluate(std::int64_t x) const override {
    auto e = base_digits(x, p);
    const std::int64_t m = e.min_support();
    const std::int64_t M = e.max_support();
    return {{e.at(m), e.at(M), e.at(M - 1), M % 3}};  // e.at(-1) is 0
  }
  nlohmann::json colour_json(const Colour& c) const override { return c.parts; }
  nlohmann::json descriptor() const override { return {{"kind", "extendingF"}, {"p", p}}; }
  std::optional<std::int64_t> palette_size() const override { return (p - 1) * (p - 1) * p * 3; }
};

struct NotRapidImpl final : Colouring::Impl {
  std::int64_t p;
  std::vector<std::int64_t> coeffs;
  std::int64_t threshold;  // p^4

  NotRapidImpl(std::int64_t p_, std::vector<std::int64_t> a)
      : p(p_), coeffs(std::move(a)), threshold(p_ * p_ * p_ * p_) {}

  Colour evaluate(std::int64_t x) const override {
    if (x <= threshold) return {{-1}};
    auto e = neg_digits(x, p);
    auto ph = *try_phi(e);  // x > p^4 forces max supp >= 4
    Colour c{{ph[0], ph[1], ph[2], ph[3], e.at(e.min_support())}};
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      auto ax = neg_digits(checked_mul(coeffs[i], x), p);
      for (const auto& [g, count] : gap_profile(ax)) {
        const std::int64_t r = count % p;
        if (r == 0) continue;
        c.parts.insert(c.parts.end(),
                       {static_cast<std::int64_t>(i), g.v, g.u0, g.u1, g.u2, g.u3, r});
      }
    }
    return c;
  }

  nlohmann::json colour_json(const Colour& c) const override {
    if (c.parts.size() == 1) return {{"class", "reserved"}};
    nlohmann::json psi = nlohmann::json::array();
    for (std::size_t j = 5; j + 7 <= c.parts.size(); j += 7)
      psi.push_back(std::vector<std::int64_t>(c.parts.begin() + static_cast<std::ptrdiff_t>(j),
                                              c.parts.begin() + static_cast<std::ptrdiff_t>(j + 7)));
    return {{"phi", {c.parts[0], c.parts[1], c.parts[2], c.parts[3]}}, {"f", c.parts[4]}, {"psi", psi}};
  }
  nlohmann::json descriptor() const override {
    return {{"kind", "notrapid"}, {"p", p}, {"coeffs", coeffs}};
  }
  std::optional<std::int64_t> palette_size() const override { return std::nullopt; }
  std::optional<std::int64_t> reserved_bound() const override { return threshold; }
};

}  // namespace detail

/// x -> x mod m.
inline Colouring mod_colouring(std::int64_t m) {
  if (m < 2) throw std::invalid_argument("mod_colouring: modulus must be at least 2");
  return Colouring(std::make_shared<detail::ModImpl>(m));
}

/// The one-colour palette.
inline Colouring constant_colouring() { return Colouring(std::make_shared<detail::ConstantImpl>()); }

/// Colour x by table[(x-1) mod n]; total on all positive integers.
inline Colouring table_colouring(std::vector<std::int64_t> table) {
  if (table.empty()) throw std::invalid_argument("table_colouring: empty table");
  return Colouring(std::make_shared<detail::TableImpl>(std::move(table)));
}

/// Separates b·s from c·s for every positive rational s: colour by the
/// exponent of a prime p (where b and c differ) modulo a prime q. q exceeds
/// both exponents and their difference, so the two colours never coincide.
inline Colouring prime_exponent_colouring(const Rat& b, const Rat& c) {
  if (!b.is_positive() || !c.is_positive())
    throw std::invalid_argument("prime_exponent_colouring: b and c must be positive");
  if (b == c) throw std::invalid_argument("prime_exponent_colouring: b and c must differ");
  std::vector<BigInt> primes;
  for (const auto& n : {b.num(), b.den(), c.num(), c.den()}) detail::prime_factors(n, primes);
  std::sort(primes.begin(), primes.end());
  for (const auto& p : primes) {
    const std::int64_t i = detail::valuation(b, p);
    const std::int64_t j = detail::valuation(c, p);
    if (i == j) continue;
    std::int64_t q = std::max({std::abs(i), std::abs(j), std::abs(i - j)}) + 1;
    while (!detail::is_prime(q)) ++q;
    if (p > std::numeric_limits<std::int64_t>::max())
      throw std::overflow_error("prime_exponent_colouring: separating prime too large");
    return Colouring(std::make_shared<detail::PrimeExponentImpl>(b, c, static_cast<std::int64_t>(p), q));
  }
  throw std::logic_error("prime_exponent_colouring: no separating prime");
}

/// Colour of a positive rational under a prime-exponent colouring.
inline Colour prime_exponent_colour(const Colouring& col, const Rat& s) {
  auto d = col.descriptor();
  if (d.at("kind") != "prime-exp") throw std::invalid_argument("not a prime-exponent colouring");
  if (!s.is_positive()) throw std::invalid_argument("prime_exponent_colour: s must be positive");
  const auto p = d.at("p").get<std::int64_t>();
  const auto q = d.at("q").get<std::int64_t>();
  return {{detail::floor_mod(detail::valuation(s, BigInt(p)), q)}};
}

/// Two colours with colour(alpha·x) != colour(x) whenever alpha·x is a
/// positive integer. alpha = u/v in lowest terms; colour by the parity of the
/// largest k with u^k | x (or v^k | x when u = 1).
inline Colouring alpha_colouring(const Rat& alpha) {
  if (!alpha.is_positive()) throw std::invalid_argument("alpha_colouring: alpha must be positive");
  if (alpha == Rat(1)) throw std::invalid_argument("alpha_colouring: alpha must differ from 1");
  BigInt un = alpha.num(), vd = alpha.den();
  BigInt base = (un > 1) ? un : vd;
  if (base > std::numeric_limits<std::int64_t>::max())
    throw std::overflow_error("alpha_colouring: alpha too large");
  return Colouring(std::make_shared<detail::AlphaImpl>(alpha, static_cast<std::int64_t>(base)));
}

/// The four-condition colouring over base-p digits: (e_m, e_M, e_{M-1},
/// M mod 3) with m, M the least and greatest support positions. For a single
/// digit number e_{M-1} reads as 0.
inline Colouring extendingF_colouring(std::int64_t p) {
  detail::check_radix(p);
  return Colouring(std::make_shared<detail::ExtendingFImpl>(p));
}

/// The colouring that blocks rapid images of F plus a non-0/1 row with
/// coefficients a. [1, p^4] is one class; above it the colour is
/// (phi(x), lsd(x), nonzero psi residues of a_i·x over all gap shapes), all in
/// base -p. Absent shapes have residue 0.
inline Colouring notrapid_colouring(std::int64_t p, const std::vector<std::int64_t>& a) {
  if (!detail::is_prime(p)) throw std::invalid_argument("notrapid_colouring: p must be prime");
  if (a.empty()) throw std::invalid_argument("notrapid_colouring: no coefficients");
  if (static_cast<std::int64_t>(a.size()) >= p)
    throw std::invalid_argument("notrapid_colouring: need p > number of coefficients");
  for (auto ai : a) {
    if (ai == 0) throw std::invalid_argument("notrapid_colouring: zero coefficient");
    if (2 * std::abs(ai) >= p) throw std::invalid_argument("notrapid_colouring: need p > 2|a_i|");
  }
  if (p > 55108) throw std::invalid_argument("notrapid_colouring: p^4 must fit in int64");
  return Colouring(std::make_shared<detail::NotRapidImpl>(p, a));
}

/// The common colour of an image set, or nullopt if it is not monochromatic.
inline std::optional<Colour> colour_image(const Colouring& col, const ImageSet& values) {
  std::optional<Colour> common;
  for (const auto& v : values.values) {
    auto x = v.to_int64();
    if (!v.is_natural() || !x) throw std::invalid_argument("colour_image: value " + v.str() + " is not a positive integer");
    Colour c = col(*x);
    if (!common)
      common = std::move(c);
    else if (c != *common)
      return std::nullopt;
  }
  return common;
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& part : split(s, ',')) {
    if (part.empty()) throw std::invalid_argument("empty entry in integer list '" + s + "'");
    std::size_t used = 0;
    long long v = std::stoll(part, &used);
    if (used != part.size()) throw std::invalid_argument("bad integer '" + part + "'");
    out.push_back(v);
  }
  return out;
}

inline std::int64_t parse_int(const std::string& s) {
  auto v = parse_int_list(s);
  if (v.size() != 1) throw std::invalid_argument("expected one integer, got '" + s + "'");
  return v[0];
}

}  // namespace detail

/// Builds a colouring from a compact spec:
///   mod:M  const  table:C1,C2,...  prime-exp:B:C  alpha:U/V  extendingF:P
///   notrapid:P:A1,A2,...
inline Colouring colouring_from_spec(const std::string& spec) {
  auto parts = detail::split(spec, ':');
  if (parts.empty()) throw std::invalid_argument("empty colouring spec");
  const auto& kind = parts[0];
  auto need = [&](std::size_t n) {
    if (parts.size() != n) throw std::invalid_argument("colouring spec '" + spec + "' has wrong arity");
  };
  if (kind == "mod") { need(2); return mod_colouring(detail::parse_int(parts[1])); }
  if (kind == "const") { need(1); return constant_colouring(); }
  if (kind == "table") { need(2); return table_colouring(detail::parse_int_list(parts[1])); }
  if (kind == "prime-exp") { need(3); return prime_exponent_colouring(Rat::parse(parts[1]), Rat::parse(parts[2])); }
  if (kind == "alpha") { need(2); return alpha_colouring(Rat::parse(parts[1])); }
  if (kind == "extendingF") { need(2); return extendingF_colouring(detail::parse_int(parts[1])); }
  if (kind == "notrapid") {
    need(3);
    return notrapid_colouring(detail::parse_int(parts[1]), detail::parse_int_list(parts[2]));
  }
  throw std::invalid_argument("unknown colouring kind '" + kind + "'");
}

}  // namespace ripr
