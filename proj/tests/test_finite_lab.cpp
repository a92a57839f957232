#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <stop_token>

#include "oracles.hpp"
#include "supertrop/finite_lab.hpp"
#include "table_gen.hpp"

namespace supertrop {
namespace {

FiniteSemiringTable fixture(const std::string& name) {
  std::ifstream in(std::string(SUPERTROP_TEST_DATA) + "/" + name);
  return FiniteSemiringTable::from_json(nlohmann::json::parse(in));
}

std::set<std::size_t> as_set(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

TEST(FiniteLab, ThreeElementIsSupertropical) {
  const auto t = fixture("three_element.json");
  const auto brute = oracle::brute_force_audit(t);
  ASSERT_TRUE(brute.semiring);
  ASSERT_TRUE(brute.supertropical);

  const auto r = audit_supertropical(t);
  EXPECT_TRUE(r.semiring);
  EXPECT_TRUE(r.supertropical);
  EXPECT_TRUE(r.st5);
  EXPECT_FALSE(r.bipotent);
  ASSERT_TRUE(r.e.has_value());
  EXPECT_EQ(t.names[*r.e], "e");
  ASSERT_EQ(r.tangibles.size(), 1u);
  EXPECT_EQ(t.names[r.tangibles[0]], "1");
  ASSERT_EQ(r.ghosts.size(), 1u);
  EXPECT_EQ(t.names[r.ghosts[0]], "e");
}

TEST(FiniteLab, BooleanSemifieldIsBipotentWithoutTangibles) {
  const auto t = fixture("boolean.json");
  const auto r = audit_supertropical(t);
  EXPECT_TRUE(r.semiring);
  EXPECT_TRUE(r.supertropical);
  EXPECT_TRUE(r.bipotent);
  EXPECT_TRUE(r.tangibles.empty());
  EXPECT_EQ(oracle::brute_force_audit(t).supertropical, true);
}

TEST(FiniteLab, BrokenDistributivityHasCheckableWitness) {
  const auto t = fixture("broken_distributive.json");
  const auto r = audit_semiring(t);
  EXPECT_FALSE(r.semiring);
  const auto* law = r.find("distributive");
  ASSERT_NE(law, nullptr);
  ASSERT_EQ(law->status, LawStatus::failed);
  ASSERT_EQ(law->witness.size(), 3u);
  const auto a = law->witness[0], b = law->witness[1], c = law->witness[2];
  const bool left = t.mul[a][t.add[b][c]] == t.add[t.mul[a][b]][t.mul[a][c]];
  const bool right = t.mul[t.add[b][c]][a] == t.add[t.mul[b][a]][t.mul[c][a]];
  EXPECT_FALSE(left && right);
  EXPECT_TRUE(r.passed("add_associative"));
  EXPECT_TRUE(r.passed("mul_associative"));

  const auto full = audit_supertropical(t);
  EXPECT_FALSE(full.supertropical);
  EXPECT_EQ(full.find("st4_equal_ghosts")->status, LawStatus::skipped);
}

TEST(FiniteLab, NontrivialGhostKernelFailsSt4) {
  // F2: e = 1 + 1 = 0 although 1 ≠ 0.
  const auto t = fixture("f2.json");
  const auto r = audit_supertropical(t);
  EXPECT_TRUE(r.semiring);
  EXPECT_FALSE(r.supertropical);
  const auto* st4 = r.find("st4_equal_ghosts");
  ASSERT_EQ(st4->status, LawStatus::failed);
  const auto x = st4->witness[0], y = st4->witness[1];
  const auto e = *r.e;
  EXPECT_EQ(t.mul[e][x], t.mul[e][y]);
  EXPECT_NE(t.add[x][y], t.mul[e][x]);
  const auto* kernel = r.find("ghost_kernel_trivial");
  ASSERT_EQ(kernel->status, LawStatus::failed);
  EXPECT_EQ(t.names[kernel->witness[0]], "1");
}

TEST(FiniteLab, MalformedTablesAreRejected) {
  auto j = nlohmann::json::parse(R"({"names":["0","1"],"zero":"0","one":"1",
    "add":[["0","1"],["1","x"]],"mul":[["0","0"],["0","1"]]})");
  EXPECT_THROW(FiniteSemiringTable::from_json(j), precondition_error);
  j = nlohmann::json::parse(R"({"names":["0","1"],"zero":"0","one":"1",
    "add":[["0","1"]],"mul":[["0","0"],["0","1"]]})");
  EXPECT_THROW(FiniteSemiringTable::from_json(j), precondition_error);
  j = nlohmann::json::parse(R"({"names":["0","0"],"zero":"0","one":"0",
    "add":[["0","0"],["0","0"]],"mul":[["0","0"],["0","0"]]})");
  EXPECT_THROW(FiniteSemiringTable::from_json(j), precondition_error);
  j = nlohmann::json::parse(R"({"names":["0","1"],"zero":"0","one":"0",
    "add":[["0","1"],["1","1"]],"mul":[["0","0"],["0","1"]]})");
  EXPECT_THROW(FiniteSemiringTable::from_json(j), precondition_error);
  EXPECT_THROW(FiniteSemiringTable::from_json(nlohmann::json::parse(R"({"names":[]})")), precondition_error);
}

TEST(FiniteLab, JsonRoundTrip) {
  const auto t = fixture("three_element.json");
  const auto u = FiniteSemiringTable::from_json(t.to_json());
  EXPECT_EQ(u.names, t.names);
  EXPECT_EQ(u.add, t.add);
  EXPECT_EQ(u.mul, t.mul);
}

TEST(FiniteLab, AgreesWithBruteForceOnRandomTables) {
  auto rng = make_rng(101);
  std::size_t supertropical_seen = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto t = testing::random_table(rng);
    const auto brute = oracle::brute_force_audit(t);
    const auto r = audit_supertropical(t);
    ASSERT_EQ(r.semiring, brute.semiring) << t.to_json().dump();
    ASSERT_EQ(r.supertropical, brute.supertropical) << t.to_json().dump();
    if (brute.supertropical) {
      ++supertropical_seen;
      ASSERT_EQ(r.st5, brute.st5);
      ASSERT_EQ(as_set(r.tangibles), brute.tangibles);
      ASSERT_EQ(as_set(r.ghosts), brute.ghosts);
      ASSERT_EQ(r.bipotent, r.tangibles.empty()) << t.to_json().dump();
    }
    for (const auto& law : r.laws) {
      if (law.status == LawStatus::failed) {
        ASSERT_FALSE(law.witness.empty());
      }
    }
  }
  EXPECT_GT(supertropical_seen, 50u);
}

TEST(Homomorphisms, NamedFixtures) {
  const auto three = fixture("three_element.json");
  const auto boolean = fixture("boolean.json");
  const auto self = find_homomorphisms(three, three);
  ASSERT_EQ(self.size(), 1u);
  EXPECT_EQ(self[0], (std::vector<std::size_t>{0, 1, 2}));

  const auto collapse = find_homomorphisms(three, boolean);
  ASSERT_EQ(collapse.size(), 1u);
  EXPECT_EQ(collapse[0], (std::vector<std::size_t>{0, 1, 1}));

  // 1 + 1 = 1 in the boolean semifield but 1 + 1 = e ≠ 1 in the target.
  EXPECT_TRUE(find_homomorphisms(boolean, three).empty());
}

TEST(Homomorphisms, MatchesExhaustiveEnumeration) {
  const std::vector<std::string> names = {"boolean.json", "three_element.json", "f2.json", "broken_distributive.json"};
  for (const auto& a : names) {
    for (const auto& b : names) {
      const auto src = fixture(a), dst = fixture(b);
      EXPECT_EQ(find_homomorphisms(src, dst), oracle::all_homomorphisms(src, dst)) << a << " -> " << b;
    }
  }
  auto rng = make_rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto src = testing::random_table(rng), dst = testing::random_table(rng);
    ASSERT_EQ(find_homomorphisms(src, dst), oracle::all_homomorphisms(src, dst));
  }
}

TEST(Homomorphisms, SizeBoundIsARefusal) {
  const auto t = fixture("three_element.json");
  HomomorphismSearchOptions options;
  options.max_source_size = 2;
  EXPECT_THROW(find_homomorphisms(t, t, options), limit_exceeded);
}

TEST(Homomorphisms, Cancellation) {
  auto t = testing::make_table(9);
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = 0; b < 9; ++b) {
      t.add[a][b] = std::max(a, b);
      t.mul[a][b] = (a == 0 || b == 0) ? 0 : std::max(a, b);
    }
  std::stop_source source;
  source.request_stop();
  HomomorphismSearchOptions options;
  options.stop = source.get_token();
  EXPECT_THROW(find_homomorphisms(t, t, options), cancelled);
}

}  // namespace
}  // namespace supertrop
