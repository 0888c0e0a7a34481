#pragma once

// Exact rational scalars. Every matrix entry and image value in the library is
// a Rat; there is no floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ripr {

using BigInt = boost::multiprecision::cpp_int;

class Rat {
 public:
  Rat() = default;
  Rat(std::int64_t n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  Rat(const BigInt& n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  Rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    // Boost 1.74 rejects a negative denominator outright.
    value_ = den < 0 ? Value(-num, -den) : Value(num, den);
  }

  /// Parses "p", "-p", or "p/q".
  static Rat parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
      while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
      return s;
    };
    text = trim(text);
    auto slash = text.find('/');
    auto parse_int = [](std::string_view s) {
      if (s.empty()) throw std::invalid_argument("Rat::parse: empty integer");
      std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
      if (i == s.size()) throw std::invalid_argument("Rat::parse: bad integer");
      for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9')
          throw std::invalid_argument("Rat::parse: bad integer '" + std::string(s) + "'");
      return BigInt(std::string(s));
    };
    if (slash == std::string_view::npos) return Rat(parse_int(text));
    return Rat(parse_int(trim(text.substr(0, slash))), parse_int(trim(text.substr(slash + 1))));
  }

  BigInt num() const { return boost::multiprecision::numerator(value_); }
  BigInt den() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_ == 0; }
  bool is_integer() const { return den() == 1; }
  bool is_positive() const { return value_ > 0; }
  bool is_natural() const { return is_positive() && is_integer(); }
  int sign() const { return value_ > 0 ? 1 : (value_ < 0 ? -1 : 0); }

  /// Value as int64 when it is an integer in range.
  std::optional<std::int64_t> to_int64() const {
    if (!is_integer()) return std::nullopt;
    BigInt n = num();
    if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
      return std::nullopt;
    return static_cast<std::int64_t>(n);
  }

  std::string str() const {
    if (is_integer()) return num().str();
    return num().str() + "/" + den().str();
  }

  Rat operator-() const { return Rat(Value(-value_)); }
  Rat& operator+=(const Rat& o) { value_ += o.value_; return *this; }
  Rat& operator-=(const Rat& o) { value_ -= o.value_; return *this; }
  Rat& operator*=(const Rat& o) { value_ *= o.value_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    value_ /= o.value_;
    return *this;
  }
  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  using Value = boost::multiprecision::cpp_rational;
  explicit Rat(Value v) : value_(std::move(v)) {}
  Value value_{0};
};

}  // namespace ripr
