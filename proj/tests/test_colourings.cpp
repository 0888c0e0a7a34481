#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace ripr;

namespace {

Colour c1(std::int64_t v) { return Colour{{v}}; }

// Dense psi fingerprint: every descriptor, every coefficient, counted by a
// direct scan of the digit string.
std::map<std::tuple<std::size_t, std::int64_t, std::int64_t, std::int64_t, std::int64_t, std::int64_t>, std::int64_t>
dense_fingerprint(std::int64_t x, std::int64_t p, const std::vector<std::int64_t>& a) {
  std::map<std::tuple<std::size_t, std::int64_t, std::int64_t, std::int64_t, std::int64_t, std::int64_t>, std::int64_t>
      out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto d = neg_digits(a[i] * x, p).digits;
    const auto n = static_cast<std::int64_t>(d.size());
    for (std::int64_t v = 1; v < p; ++v)
      for (std::int64_t u0 = 1; u0 < p; ++u0)
        for (std::int64_t u1 = 0; u1 < p; ++u1)
          for (std::int64_t u2 = 0; u2 < p; ++u2)
            for (std::int64_t u3 = 0; u3 < p; ++u3) {
              std::int64_t count = 0;
              for (std::int64_t s = 4; s < n; s += 2) {
                if (d[s] != u0 || d[s - 1] != u1 || d[s - 2] != u2 || d[s - 3] != u3) continue;
                for (std::int64_t t = s + 4; t < n; ++t) {
                  bool zeros = true;
                  for (std::int64_t j = s + 1; j < t; ++j) zeros = zeros && d[j] == 0;
                  if (zeros && d[t] == v) ++count;
                }
              }
              out[{i, v, u0, u1, u2, u3}] = count % p;
            }
  }
  return out;
}

}  // namespace

TEST(ModColouring, Examples) {
  auto col = mod_colouring(2);
  EXPECT_EQ(col(6), c1(0));
  EXPECT_EQ(col(7), c1(1));
  EXPECT_EQ(col.palette_size(), 2);
  EXPECT_THROW(mod_colouring(1), std::invalid_argument);
  EXPECT_THROW(col(0), std::invalid_argument);
  EXPECT_FALSE(col.reserved_colour());
}

TEST(TableColouring, Cycles) {
  auto col = table_colouring({0, 1, 1, 0});
  EXPECT_EQ(col(1), c1(0));
  EXPECT_EQ(col(2), c1(1));
  EXPECT_EQ(col(5), c1(0));
  EXPECT_EQ(col.palette_size(), 2);
  EXPECT_EQ(constant_colouring()(12345), constant_colouring()(1));
}

TEST(PrimeExponent, Examples) {
  auto col = prime_exponent_colouring(Rat(2), Rat(3));
  EXPECT_EQ(col.descriptor().at("p"), 2);
  EXPECT_EQ(col.descriptor().at("q"), 2);
  EXPECT_EQ(col(2), c1(1));
  EXPECT_EQ(col(3), c1(0));
  auto four = prime_exponent_colouring(Rat(4), Rat(1));
  EXPECT_EQ(four.descriptor().at("q"), 3);
  EXPECT_EQ(four(4), c1(2));
  EXPECT_EQ(four(1), c1(0));
  EXPECT_THROW(prime_exponent_colouring(Rat(2), Rat(2)), std::invalid_argument);
  EXPECT_THROW(prime_exponent_colouring(Rat(0), Rat(2)), std::invalid_argument);
}

TEST(PrimeExponent, SeparatesScaledPairs) {
  const std::vector<std::pair<Rat, Rat>> pairs{{Rat(2), Rat(3)},          {Rat(4), Rat(1)},
                                               {Rat::parse("3/2"), Rat(6)}, {Rat::parse("1/8"), Rat(2)},
                                               {Rat(12), Rat(18)},          {Rat::parse("5/9"), Rat::parse("5/3")}};
  for (const auto& [b, c] : pairs) {
    auto col = prime_exponent_colouring(b, c);
    for (std::int64_t s = 1; s <= 10000; ++s) {
      const Rat bs = b * Rat(s), cs = c * Rat(s);
      EXPECT_NE(prime_exponent_colour(col, bs), prime_exponent_colour(col, cs));
      if (bs.is_natural() && cs.is_natural()) {
        EXPECT_NE(col(*bs.to_int64()), col(*cs.to_int64()));
      }
    }
    // rational s as well
    for (std::int64_t n = 1; n <= 30; ++n)
      for (std::int64_t d = 1; d <= 30; ++d) {
        const Rat s{BigInt(n), BigInt(d)};
        EXPECT_NE(prime_exponent_colour(col, b * s), prime_exponent_colour(col, c * s));
      }
  }
}

TEST(Alpha, Examples) {
  auto two = alpha_colouring(Rat(2));
  EXPECT_EQ(two(4), c1(0));
  EXPECT_EQ(two(8), c1(1));
  auto three_halves = alpha_colouring(Rat::parse("3/2"));
  EXPECT_NE(three_halves(4), three_halves(6));
  EXPECT_EQ(three_halves(4), c1(0));
  EXPECT_EQ(three_halves(6), c1(1));
  auto half = alpha_colouring(Rat::parse("1/2"));
  EXPECT_EQ(half(2), c1(1));
  EXPECT_EQ(half(1), c1(0));
  EXPECT_THROW(alpha_colouring(Rat(1)), std::invalid_argument);
  EXPECT_THROW(alpha_colouring(Rat(-2)), std::invalid_argument);
}

TEST(Alpha, SeparatesXFromAlphaX) {
  for (const char* a : {"2", "3/2", "1/2", "2/3", "5", "4/9", "1/6", "7/4"}) {
    const Rat alpha = Rat::parse(a);
    auto col = alpha_colouring(alpha);
    for (std::int64_t x = 1; x <= 10000; ++x) {
      const Rat ax = alpha * Rat(x);
      if (ax.is_natural()) {
        EXPECT_NE(col(*ax.to_int64()), col(x)) << a << " x=" << x;
      }
    }
  }
}

TEST(ExtendingF, Examples) {
  auto col = extendingF_colouring(5);
  EXPECT_EQ(col(7), (Colour{{2, 1, 2, 1}}));
  EXPECT_EQ(col(32), (Colour{{2, 1, 1, 2}}));
  EXPECT_EQ(col(1), (Colour{{1, 1, 0, 0}}));
  EXPECT_LE(*col.palette_size(), 3 * 5 * 5 * 5);
}

TEST(ExtendingF, PaletteBound) {
  for (std::int64_t p : {2, 3, 5}) {
    auto col = extendingF_colouring(p);
    std::set<Colour> seen;
    for (std::int64_t x = 1; x <= 100000; ++x) seen.insert(col(x));
    EXPECT_LE(static_cast<std::int64_t>(seen.size()), *col.palette_size());
    EXPECT_LE(*col.palette_size(), 3 * p * p * p);
  }
}

TEST(NotRapid, ReservedBoundary) {
  for (std::int64_t p : {5, 7}) {
    auto col = notrapid_colouring(p, {1, 2});
    const std::int64_t p4 = p * p * p * p;
    EXPECT_EQ(col.reserved_bound(), p4);
    const Colour r = *col.reserved_colour();
    for (std::int64_t x = 1; x <= p4; ++x) ASSERT_EQ(col(x), r);
    for (std::int64_t x = p4 + 1; x <= p4 + 3000; ++x) ASSERT_NE(col(x), r);
  }
  auto col = notrapid_colouring(7, {1, 2});
  EXPECT_EQ(col(10), *col.reserved_colour());
  EXPECT_EQ(col.colour_json(col(10)), nlohmann::json({{"class", "reserved"}}));
}

TEST(NotRapid, Preconditions) {
  EXPECT_THROW(notrapid_colouring(6, {1}), std::invalid_argument);
  EXPECT_THROW(notrapid_colouring(7, {1, 4}), std::invalid_argument);
  EXPECT_THROW(notrapid_colouring(3, {1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(notrapid_colouring(7, {0}), std::invalid_argument);
  EXPECT_NO_THROW(notrapid_colouring(7, {1, -3}));
}

TEST(NotRapid, AgreesWithDenseDefinition) {
  const std::int64_t p = 7;
  const std::vector<std::int64_t> a{1, 2};
  auto col = notrapid_colouring(p, a);
  const std::int64_t x = 282475249 + 2401;    // (-7)^10 + (-7)^4
  const std::int64_t y = 13841287201 + 2401;  // (-7)^12 + (-7)^4
  auto fx = dense_fingerprint(x, p, a), fy = dense_fingerprint(y, p, a);
  const bool same = phi(x, p) == phi(y, p) && lsd(x, p) == lsd(y, p) && fx == fy;
  EXPECT_EQ(col(x) == col(y), same);
  EXPECT_TRUE(same);
  // sampled values near the threshold
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> v(2402, 400000);
  std::vector<std::int64_t> xs;
  for (int i = 0; i < 40; ++i) xs.push_back(v(rng));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const bool want = phi(xs[i], p) == phi(xs[j], p) && lsd(xs[i], p) == lsd(xs[j], p) &&
                        dense_fingerprint(xs[i], p, a) == dense_fingerprint(xs[j], p, a);
      EXPECT_EQ(col(xs[i]) == col(xs[j]), want) << xs[i] << " " << xs[j];
    }
}

TEST(NotRapid, SmallMultipleChangesColour) {
  auto col = notrapid_colouring(7, {1});
  for (std::int64_t x = 2402; x <= 2401 + 5000; ++x)
    if (phi(x, 7) != phi(2 * x, 7) || lsd(x, 7) != lsd(2 * x, 7)) {
      EXPECT_NE(col(x), col(2 * x));
    }
}

TEST(Colourings, TotalAndDeterministic) {
  const std::vector<Colouring> cols{mod_colouring(3),
                                    prime_exponent_colouring(Rat(2), Rat(3)),
                                    alpha_colouring(Rat::parse("3/2")),
                                    extendingF_colouring(5),
                                    notrapid_colouring(5, {1, 2}),
                                    table_colouring({2, 0, 1})};
  for (const auto& col : cols)
    for (std::int64_t x = 1; x <= 100000; x += 7) ASSERT_EQ(col(x), col(x));
  // a shared colouring used from several threads gives the same answers
  auto col = notrapid_colouring(7, {1, 2});
  std::vector<Colour> want;
  for (std::int64_t x = 2402; x < 4402; ++x) want.push_back(col(x));
  std::vector<std::thread> ts;
  std::atomic<int> bad{0};
  for (int t = 0; t < 4; ++t)
    ts.emplace_back([&] {
      for (std::int64_t x = 2402; x < 4402; ++x)
        if (col(x) != want[static_cast<std::size_t>(x - 2402)]) ++bad;
    });
  for (auto& t : ts) t.join();
  EXPECT_EQ(bad.load(), 0);
}

TEST(ColourImage, Examples) {
  auto m2 = mod_colouring(2);
  EXPECT_EQ(colour_image(m2, ImageSet::from_values(to_rats({2, 4, 6}))), c1(0));
  EXPECT_FALSE(colour_image(m2, ImageSet::from_values(to_rats({2, 3}))));
  auto pe = prime_exponent_colouring(Rat(2), Rat(3));
  EXPECT_FALSE(colour_image(pe, ImageSet::from_values(to_rats({10, 15}))));
  EXPECT_THROW(colour_image(m2, ImageSet::from_values({Rat(0)})), std::invalid_argument);
  EXPECT_THROW(colour_image(m2, ImageSet::from_values({Rat::parse("1/2")})), std::invalid_argument);
}

TEST(ColouringSpec, Parses) {
  EXPECT_EQ(colouring_from_spec("mod:3")(5), c1(2));
  EXPECT_EQ(colouring_from_spec("const")(5), c1(0));
  EXPECT_EQ(colouring_from_spec("table:0,1")(2), c1(1));
  EXPECT_EQ(colouring_from_spec("prime-exp:2:3")(2), c1(1));
  EXPECT_EQ(colouring_from_spec("alpha:3/2")(6), c1(1));
  EXPECT_EQ(colouring_from_spec("extendingF:5")(7), (Colour{{2, 1, 2, 1}}));
  EXPECT_EQ(colouring_from_spec("notrapid:7:1,2").reserved_bound(), 2401);
  EXPECT_THROW(colouring_from_spec("mod"), std::invalid_argument);
  EXPECT_THROW(colouring_from_spec("rainbow:3"), std::invalid_argument);
  EXPECT_THROW(colouring_from_spec("mod:x"), std::invalid_argument);
}
