#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

using namespace ripr;
using nlohmann::json;

namespace {

json spec(const std::string& command, json params) { return {{"command", command}, {"params", std::move(params)}}; }

}  // namespace

TEST(Json, BigIntAndRat) {
  EXPECT_EQ(bigint_json(BigInt(42)), json(42));
  const BigInt big = BigInt(1) << 70;
  EXPECT_TRUE(bigint_json(big).is_string());
  EXPECT_EQ(bigint_from_json(bigint_json(big)), big);
  EXPECT_EQ(bigint_from_json(json("-17")), BigInt(-17));
  EXPECT_THROW(bigint_from_json(json("12a")), std::invalid_argument);
  EXPECT_EQ(rat_json(Rat::parse("-6/4")), json::array({-3, 2}));
  EXPECT_EQ(rat_from_json(json::array({4, 6})), Rat::parse("2/3"));
  EXPECT_THROW(rat_from_json(json::array({1, 0})), std::domain_error);
}

TEST(Json, MatrixRoundTrip) {
  for (const auto& m : {f_truncation(3), deuber_matrix(2, 2, 1), mt_rows(CompressedSeq({3, -2}), 4),
                        FiniteMatrix::from_dense({{1, 0}, {1, 0}}, Duplicates::allow)}) {
    auto j = matrix_json(m);
    EXPECT_EQ(matrix_from_json(j).rows(), m.rows());
    EXPECT_EQ(matrix_from_json(j).width(), m.width());
  }
  EXPECT_EQ(matrix_json(FiniteMatrix::from_dense({{2, 0}, {0, 1}})),
            json::parse(R"({"width":2,"rows":[[[0,2,1]],[[1,1,1]]]})"));
  EXPECT_EQ(matrix_csv(FiniteMatrix::from_dense({{1, 0}, {0, 1}, {1, 1}})), "1,0\n0,1\n1,1\n");
  EXPECT_THROW(matrix_from_json(json::object()), std::invalid_argument);
}

TEST(Families, Names) {
  EXPECT_EQ(family_matrix("schur", std::nullopt), FiniteMatrix::from_dense({{1, 0}, {0, 1}, {1, 1}}));
  EXPECT_EQ(family_matrix("ap:3", std::nullopt), FiniteMatrix::from_dense({{1, 0}, {1, 1}, {1, 2}}));
  EXPECT_EQ(family_matrix("identity", 3), FiniteMatrix::identity(3));
  EXPECT_EQ(family_matrix("f", 3), f_truncation(3));
  EXPECT_EQ(family_matrix("f", 3, 4).row_count(), 4U);
  EXPECT_EQ(family_matrix("fprime", 4), f_prime_rows(4));
  EXPECT_EQ(family_matrix("mt:2,1", 3), mt_rows(CompressedSeq({2, 1}), 3));
  EXPECT_EQ(family_matrix("band:1,2,1", 5), band_matrix({1, 2, 1}, 3, 5));
  EXPECT_EQ(family_matrix("mpc:2,2,1", std::nullopt), mpc_matrix(2, 2, 1));
  EXPECT_EQ(family_matrix("deuber:2,2,1", std::nullopt), deuber_matrix(2, 2, 1));
  EXPECT_EQ(family_matrix("anodom", 8, 3), anodom_matrix(3, 8));
  EXPECT_EQ(family_matrix("script-i:2,3", 4), script_i_matrix({2, 3}, 4));
  EXPECT_EQ(family_matrix("rowsum:1:2", 2), constant_rowsum_rows(Rat(1), 2, kUnlimitedRows, 2));
  EXPECT_EQ(family_matrix("dense:1,2;0,1", std::nullopt), FiniteMatrix::from_dense({{1, 2}, {0, 1}}));
  EXPECT_THROW(family_matrix("f", std::nullopt), std::invalid_argument);
  EXPECT_THROW(family_matrix("nosuch", 3), std::invalid_argument);
  auto st = stacked_family({"band:1,2,1", "fprime"}, 4, kUnlimitedRows);
  EXPECT_EQ(st, stack(band_matrix({1, 2, 1}, 2, 4), f_prime_rows(4)));
}

TEST(Families, FromFile) {
  const std::string path = ::testing::TempDir() + "ripr_family.json";
  {
    std::ofstream out(path);
    out << matrix_json(deuber_matrix(2, 1, 2)).dump();
  }
  EXPECT_EQ(family_matrix("file:" + path, std::nullopt).rows(), deuber_matrix(2, 1, 2).rows());
  std::remove(path.c_str());
  EXPECT_THROW(family_matrix("file:" + path, std::nullopt), std::invalid_argument);
}

TEST(Run, ForceSchur) {
  auto r = run(spec("force", {{"family", "schur"}, {"colours", 2}, {"nmax", 8}}));
  EXPECT_EQ(r.at("bound"), 5);
  EXPECT_EQ(r.at("outcome"), "found");
  EXPECT_EQ(r.at("schemaVersion"), 1);
  EXPECT_EQ(r.at("certificate"), json::array({0, 1, 1, 0}));
  EXPECT_TRUE(r.at("params").contains("budget"));
}

TEST(Run, GenF3) {
  auto r = run(spec("gen", {{"family", "f"}, {"width", 3}, {"rows", 7}}));
  EXPECT_EQ(matrix_from_json(r.at("matrix")), f_truncation(3));
  EXPECT_EQ(r.at("rowCount"), 7);
}

TEST(Run, SeparateNotRapid) {
  auto r = run(spec("separate", {{"a", "1"}, {"b", "2,1"}, {"colouring", "notrapid:7:1,2"}, {"prefix", 3}, {"bound", 200}}));
  EXPECT_EQ(r.at("outcome"), "none-within-bounds");
  EXPECT_EQ(r.at("exhausted"), true);
  EXPECT_FALSE(r.contains("witness"));
  auto prop = run(spec("separate", {{"a", "1,2"}, {"b", "2,4"}, {"colouring", "mod:2"}, {"prefix", 2}, {"bound", 5}}));
  EXPECT_EQ(prop.at("outcome"), "precondition-failed");
  EXPECT_EQ(prop.at("proportional"), json::array({1, 2}));
}

TEST(Run, SearchReport) {
  auto r = run(spec("search", {{"family", "schur"},
                               {"colouring", "mod:2"},
                               {"bound", 10},
                               {"distinctEntries", true},
                               {"threads", 4}}));
  EXPECT_EQ(r.at("outcome"), "found");
  EXPECT_EQ(r.at("witness").at("assignment"), json::array({2, 4}));
  EXPECT_EQ(r.at("witness").at("image"), json::parse("[[2,1],[4,1],[6,1]]"));
  EXPECT_EQ(r.at("witness").at("colour"), 0);
  EXPECT_FALSE(r.at("params").contains("threads"));
  EXPECT_EQ(r.at("exhausted"), false);
  // budget-hit is reported, not raised
  auto b = run(spec("search", {{"family", "f"}, {"width", 4}, {"colouring", "extendingF:7"}, {"bound", 1000},
                               {"distinctEntries", true}, {"budget", 20}}));
  EXPECT_EQ(b.at("outcome"), "budget-hit");
  EXPECT_EQ(b.at("exhausted"), false);
}

TEST(Run, DigitsColourImageAndRapid) {
  auto d = run(spec("digits", {{"x", 2401}, {"base", "-7"}}));
  EXPECT_EQ(d.at("digits"), json::array({0, 0, 0, 0, 1}));
  EXPECT_EQ(d.at("phi"), json::array({1, 0, 0, 0}));
  EXPECT_EQ(d.at("leastDigit"), 1);
  auto g = run(spec("digits", {{"x", "282477650"}, {"p", 7}, {"gap", "1,1,0,0,0"}}));
  EXPECT_EQ(g.at("gaps"), json::parse("[[4,10]]"));
  EXPECT_EQ(g.at("psi"), 1);
  auto pos = run(spec("digits", {{"x", 7}, {"base", "5"}}));
  EXPECT_EQ(pos.at("digits"), json::array({2, 1}));

  auto c = run(spec("colour", {{"colouring", "notrapid:7:1,2"}, {"x", "10,2402"}}));
  EXPECT_EQ(c.at("colours").at(0).at("colour"), json({{"class", "reserved"}}));
  EXPECT_TRUE(c.at("colours").at(1).at("colour").contains("phi"));

  auto im = run(spec("image", {{"mode", "mt"}, {"a", "2,1"}, {"x", "1,2,4"}}));
  EXPECT_EQ(im.at("values"), json::parse("[[4,1],[6,1],[8,1],[10,1]]"));
  auto tr = run(spec("image", {{"mode", "translated-mt"}, {"a", "2,1"}, {"b", 2}, {"x", "2,4"}}));
  EXPECT_EQ(tr.at("values"), json::parse("[[10,1]]"));

  EXPECT_EQ(run(spec("rapid", {{"p", 2}, {"x", "3,512"}})).at("outcome"), "rapid");
  EXPECT_EQ(run(spec("rapid", {{"p", 2}, {"x", "3,256"}})).at("outcome"), "not-rapid");
  auto made = run(spec("rapid", {{"p", 2}, {"x", "3,1"}, {"make", true}}));
  EXPECT_EQ(made.at("outcome"), "rapid");
  EXPECT_EQ(made.at("sequence"), json::array({3, 512}));
}

TEST(Run, DominateCertifyTranslate) {
  auto d = run(spec("dominate", {{"aFamily", "f"}, {"aWidth", 5}, {"bFamily", json::array({"dense:1,2", "f"})},
                                 {"bWidth", 2}, {"x", "1,4,16,64,256"}, {"ybound", 341}}));
  EXPECT_EQ(d.at("outcome"), "none-within-bounds");
  auto c = run(spec("certify", {{"aFamily", "schur"}, {"bFamily", "schur"}, {"cFamily", "identity"}, {"cWidth", 2}}));
  EXPECT_EQ(c.at("outcome"), "certified");
  auto bad = run(spec("certify", {{"aFamily", "schur"}, {"bFamily", "dense:1,0;0,1;1,2"}, {"cFamily", "identity"},
                                  {"cWidth", 2}}));
  EXPECT_EQ(bad.at("outcome"), "witness-invalid");
  auto t = run(spec("translate-search", {{"colouring", "mod:2"}, {"a", "2,1"}, {"prefix", 2}, {"bbound", 10},
                                         {"xbound", 10}, {"distinctEntries", true}}));
  EXPECT_EQ(t.at("witness").at("b"), 2);
  EXPECT_EQ(t.at("witness").at("x"), json::array({2, 4}));
  EXPECT_EQ(t.at("lastTermIsOne"), true);
}

TEST(Run, ReplayIsByteIdentical) {
  const std::vector<json> specs{
      spec("force", {{"family", "ap:3"}, {"colours", 2}, {"nmax", 10}}),
      spec("search", {{"family", json::array({"band:1,2,1", "fprime"})}, {"width", 4}, {"colouring", "extendingF:5"},
                      {"bound", 60}}),
      spec("separate", {{"a", "1"}, {"b", "2,1"}, {"colouring", "mod:3"}, {"prefix", 2}, {"bound", 8}}),
      spec("digits", {{"x", "-123456789"}, {"p", 3}}),
      spec("translate-search", {{"colouring", "alpha:2"}, {"a", "2,1"}, {"prefix", 2}, {"bbound", 12}, {"xbound", 12}}),
  };
  for (const auto& s : specs) {
    const auto first = canonical(run(s)), second = canonical(run(s));
    EXPECT_EQ(first, second);
    EXPECT_EQ(first.back(), '\n');
  }
  // thread count is invisible in the report
  auto with = spec("search", {{"family", "f"}, {"width", 3}, {"colouring", "alpha:2"}, {"bound", 30}, {"threads", 8}});
  auto without = spec("search", {{"family", "f"}, {"width", 3}, {"colouring", "alpha:2"}, {"bound", 30}});
  EXPECT_EQ(canonical(run(with)), canonical(run(without)));
}

TEST(Run, SchemaViolations) {
  EXPECT_THROW(run(spec("bogus", json::object())), std::invalid_argument);
  EXPECT_THROW(run(json::object()), std::invalid_argument);
  EXPECT_THROW(run({{"command", "gen"}, {"params", {{"family", "schur"}}}, {"extra", 1}}), std::invalid_argument);
  EXPECT_THROW(run(spec("gen", {{"family", "schur"}, {"colour", 2}})), std::invalid_argument);
  EXPECT_THROW(run(spec("force", {{"family", "schur"}, {"colours", 2}, {"nmax", 8}, {"budget", 0}})),
               std::invalid_argument);
  EXPECT_THROW(run(spec("force", {{"family", "schur"}, {"colours", 2}, {"nmax", 8}, {"budget", -5}})),
               std::invalid_argument);
  EXPECT_THROW(run(spec("force", {{"family", "schur"}, {"colours", 2}})), std::invalid_argument);
  EXPECT_THROW(run(spec("search", {{"family", "schur"}, {"colouring", "mod:2"}, {"bound", "ten"}})),
               std::invalid_argument);
}

TEST(ReportDiff, Cases) {
  auto a = run(spec("search", {{"family", "schur"}, {"colouring", "mod:2"}, {"bound", 10}}));
  EXPECT_TRUE(report_diff(a, a).empty());
  auto b = a;
  b["witness"]["assignment"] = json::array({2, 4});
  auto d = report_diff(a, b);
  ASSERT_EQ(d.size(), 1U);
  EXPECT_EQ(d[0].at("path"), "/witness/assignment");
  EXPECT_EQ(d[0].at("left"), json::array({2, 2}));
  auto c = a;
  c.erase("witness");
  auto missing = report_diff(a, c);
  ASSERT_EQ(missing.size(), 1U);
  EXPECT_EQ(missing[0].at("path"), "/witness");
  EXPECT_TRUE(missing[0].at("right").is_null());
  auto v2 = a;
  v2["schemaVersion"] = 2;
  EXPECT_THROW(report_diff(a, v2), std::invalid_argument);
  EXPECT_THROW(report_diff(a, json::object()), std::invalid_argument);
}
