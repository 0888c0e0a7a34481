#pragma once

// Base p and base -p digit expansions and the digit statistics used by the
// separating colourings: least significant digit, the four leading digits,
// and gap counts.
//
// All functions are templates over the integer type so that the same code
// runs on int64 in search loops and on BigInt for wide constructed values.

#include "ripr/rat.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ripr {

template <typename Int>
concept DigitInteger = requires(Int a, Int b) {
  { a % b };
  { a / b };
  { a * b };
  { a - b };
  { a < b };
};

/// Digit vector, least significant first. The value 0 has no digits.
struct DigitExpansion {
  std::int64_t base = 0;  // p or -p
  std::vector<std::int64_t> digits;

  bool is_zero() const { return digits.empty(); }

  /// d_i, zero beyond the stored digits.
  std::int64_t at(std::int64_t i) const {
    if (i < 0 || static_cast<std::size_t>(i) >= digits.size()) return 0;
    return digits[static_cast<std::size_t>(i)];
  }

  std::vector<std::int64_t> support() const {
    std::vector<std::int64_t> s;
    for (std::size_t i = 0; i < digits.size(); ++i)
      if (digits[i] != 0) s.push_back(static_cast<std::int64_t>(i));
    return s;
  }

  std::int64_t min_support() const {
    if (is_zero()) throw std::domain_error("min_support: zero has empty support");
    for (std::size_t i = 0; i < digits.size(); ++i)
      if (digits[i] != 0) return static_cast<std::int64_t>(i);
    throw std::logic_error("DigitExpansion: no nonzero digit");
  }

  std::int64_t max_support() const {
    if (is_zero()) throw std::domain_error("max_support: zero has empty support");
    return static_cast<std::int64_t>(digits.size()) - 1;
  }

  /// Re-sums the digits in BigInt.
  BigInt value() const {
    BigInt acc = 0;
    for (std::size_t i = digits.size(); i-- > 0;) acc = acc * base + digits[i];
    return acc;
  }
};

namespace detail {

inline void check_radix(std::int64_t p) {
  if (p < 2) throw std::invalid_argument("digit radix must be at least 2, got " + std::to_string(p));
}

template <DigitInteger Int>
Int floor_mod(const Int& a, std::int64_t m) {
  Int r = a % Int(m);
  if (r < Int(0)) r += Int(m);
  return r;
}

template <DigitInteger Int>
std::int64_t to_digit(const Int& v) {
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

/// Standard base-p digits of a positive integer.
template <DigitInteger Int>
DigitExpansion base_digits(Int x, std::int64_t p) {
  detail::check_radix(p);
  if (!(Int(0) < x)) throw std::invalid_argument("base_digits: x must be positive");
  DigitExpansion e{p, {}};
  while (Int(0) < x) {
    e.digits.push_back(detail::to_digit(Int(x % Int(p))));
    x /= Int(p);
  }
  return e;
}

/// The unique digits in {0,...,p-1} with x = sum d_i (-p)^i. Zero yields the
/// empty expansion.
template <DigitInteger Int>
DigitExpansion neg_digits(Int x, std::int64_t p) {
  detail::check_radix(p);
  DigitExpansion e{-p, {}};
  while (x != Int(0)) {
    Int r = detail::floor_mod(x, p);
    e.digits.push_back(detail::to_digit(r));
    x = (x - r) / Int(-p);
  }
  return e;
}

/// The range test characterizing max supp(x) = s in base -p.
template <DigitInteger Int>
bool negbase_range_check(const Int& x, std::int64_t p, std::int64_t s) {
  detail::check_radix(p);
  if (s < 0) throw std::invalid_argument("negbase_range_check: s must be non-negative");
  if (x == Int(0)) return false;
  BigInt bx(x);
  BigInt pp(p);
  BigInt ps = boost::multiprecision::pow(pp, static_cast<unsigned>(s));
  BigInt ps2 = ps * pp * pp;
  BigInt scaled = bx * (pp + 1);
  if (s % 2 == 0) return ps + pp <= scaled && scaled <= ps2 - 1;
  return -ps2 + pp <= scaled && scaled <= -ps - 1;
}

/// Least significant nonzero digit of x in base -p.
template <DigitInteger Int>
std::int64_t lsd(const Int& x, std::int64_t p) {
  auto e = neg_digits(x, p);
  if (e.is_zero()) throw std::domain_error("lsd: x must be nonzero");
  return e.at(e.min_support());
}

using Phi = std::array<std::int64_t, 4>;

/// The four most significant base -p digits (d_s, d_{s-1}, d_{s-2}, d_{s-3}),
/// s = max supp, when s >= 3.
inline std::optional<Phi> try_phi(const DigitExpansion& e) {
  if (e.is_zero()) return std::nullopt;
  const std::int64_t s = e.max_support();
  if (s < 3) return std::nullopt;
  return Phi{e.at(s), e.at(s - 1), e.at(s - 2), e.at(s - 3)};
}

template <DigitInteger Int>
Phi phi(const Int& x, std::int64_t p) {
  auto r = try_phi(neg_digits(x, p));
  if (!r) throw std::domain_error("phi: needs x != 0 with max supp(x) >= 3");
  return *r;
}

/// A gap shape v 0...0 u0 u1 u2 u3 (most significant digit on the left).
struct GapDescriptor {
  std::int64_t v = 1;
  std::int64_t u0 = 1;
  std::int64_t u1 = 0;
  std::int64_t u2 = 0;
  std::int64_t u3 = 0;

  GapDescriptor() = default;
  GapDescriptor(std::int64_t v_, std::int64_t u0_, std::int64_t u1_, std::int64_t u2_, std::int64_t u3_)
      : v(v_), u0(u0_), u1(u1_), u2(u2_), u3(u3_) {}

  /// Throws unless v, u0 in {1..p-1} and u1..u3 in {0..p-1}.
  void validate(std::int64_t p) const {
    auto in = [](std::int64_t d, std::int64_t lo, std::int64_t hi) { return lo <= d && d <= hi; };
    if (!in(v, 1, p - 1) || !in(u0, 1, p - 1) || !in(u1, 0, p - 1) || !in(u2, 0, p - 1) ||
        !in(u3, 0, p - 1))
      throw std::invalid_argument("GapDescriptor: digit out of range for p=" + std::to_string(p));
  }

  std::array<std::int64_t, 5> as_array() const { return {v, u0, u1, u2, u3}; }
  friend auto operator<=>(const GapDescriptor&, const GapDescriptor&) = default;
};

/// Pairs (s, t): s even with s >= 4 (so d_{s-3} is a real digit), t > s+3,
/// d_t = v, d_{s-i} = u_i, zeros strictly between s and t.
inline std::vector<std::pair<std::int64_t, std::int64_t>> gaps(const DigitExpansion& e,
                                                                const GapDescriptor& g) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  const auto n = static_cast<std::int64_t>(e.digits.size());
  for (std::int64_t s = 4; s < n; s += 2) {
    if (e.at(s) != g.u0 || e.at(s - 1) != g.u1 || e.at(s - 2) != g.u2 || e.at(s - 3) != g.u3) continue;
    std::int64_t t = s + 1;
    while (t < n && e.at(t) == 0) ++t;
    if (t < n && t > s + 3 && e.at(t) == g.v) out.emplace_back(s, t);
  }
  return out;
}

template <DigitInteger Int>
std::vector<std::pair<std::int64_t, std::int64_t>> gaps(const Int& x, std::int64_t p, const GapDescriptor& g) {
  g.validate(p);
  if (x == Int(0)) throw std::domain_error("gaps: x must be nonzero");
  return gaps(neg_digits(x, p), g);
}

/// |G(x)| mod p, as a residue in {0..p-1}.
template <DigitInteger Int>
std::int64_t psi(const Int& x, std::int64_t p, const GapDescriptor& g) {
  return static_cast<std::int64_t>(gaps(x, p, g).size()) % p;
}

/// Gap counts for every descriptor that occurs in e. Each even s >= 4 with a
/// nonzero digit belongs to at most one gap (t is the next nonzero digit), so
/// one pass finds them all.
inline std::map<GapDescriptor, std::int64_t> gap_profile(const DigitExpansion& e) {
  std::map<GapDescriptor, std::int64_t> counts;
  const auto n = static_cast<std::int64_t>(e.digits.size());
  for (std::int64_t s = 4; s < n; s += 2) {
    if (e.at(s) == 0) continue;
    std::int64_t t = s + 1;
    while (t < n && e.at(t) == 0) ++t;
    if (t < n && t > s + 3) ++counts[GapDescriptor(e.at(t), e.at(s), e.at(s - 1), e.at(s - 2), e.at(s - 3))];
  }
  return counts;
}

}  // namespace ripr
