#include <gtest/gtest.h>

#include <fstream>
#include <map>

#include "oracles.hpp"
#include "supertrop/sampling.hpp"
#include "supertrop/supervaluation.hpp"

namespace supertrop {
namespace {

SupertropicalElem T(long n) { return SupertropicalElem::tangible(Rational(n)); }
SupertropicalElem G(long n) { return SupertropicalElem::ghost(Rational(n)); }

// φ(a) = Tangible(v(a) + 1) away from 0 and 1: not multiplicative.
Supervaluation corrupted_lift(const Valuation& v) {
  return Supervaluation("corrupted", v, [v](const Rational& a) {
    if (a == 0) return SupertropicalElem::zero();
    if (a == 1) return SupertropicalElem::unit();
    return SupertropicalElem::tangible(v(a).group_value() + 1);
  });
}

TEST(Supervaluation, TangibleLiftValues) {
  const auto phi = tangible_lift(padic_valuation(2));
  EXPECT_EQ(oracle::padic_value(Rational(12), 2), BipotentElem::value(Rational(-2)));
  EXPECT_EQ(phi(Rational(12)), T(-2));
  EXPECT_TRUE(phi(Rational(0)).is_zero());
  EXPECT_EQ(phi(Rational(1)), T(0));
}

TEST(Supervaluation, GhostValues) {
  const auto phi = ghost_supervaluation(padic_valuation(2));
  EXPECT_EQ(phi(Rational(12)), G(-2));
  EXPECT_TRUE(phi(Rational(0)).is_zero());
  EXPECT_EQ(phi(Rational(1)), G(0));
}

TEST(Supervaluation, CoverChecks) {
  const auto pairs = random_pairs(31, 500, SourceRing::rationals);
  const auto v = padic_valuation(2);
  EXPECT_TRUE(check_cover(tangible_lift(v), pairs).holds());
  EXPECT_TRUE(check_cover(ghost_supervaluation(v), pairs).holds());
  EXPECT_TRUE(check_cover(tangible_lift(trivial_valuation()), pairs).holds());
  const auto bad = check_cover(corrupted_lift(v), pairs);
  ASSERT_FALSE(bad.holds());
  bool multiplicative_witness = false;
  for (const auto& w : bad.violations) multiplicative_witness = multiplicative_witness || w.law == "multiplicative";
  EXPECT_TRUE(multiplicative_witness);
}

TEST(Supervaluation, Tangibility) {
  const auto v = padic_valuation(2);
  const std::vector<Rational> samples{Rational(0), Rational(1), Rational(6), Rational(-3, 8)};
  EXPECT_TRUE(is_tangible(tangible_lift(v), samples).holds());
  const auto ghost = is_tangible(ghost_supervaluation(v), samples);
  ASSERT_FALSE(ghost.holds());
  EXPECT_EQ(ghost.witnesses.front(), Rational(1));
  EXPECT_TRUE(is_tangible(tangible_lift(trivial_valuation()), {Rational(0)}).holds());
}

TEST(Supervaluation, Strongness) {
  const auto v = padic_valuation(2);
  const auto pairs = random_pairs(37, 2000, SourceRing::rationals);
  EXPECT_TRUE(is_strong(tangible_lift(v), pairs).holds());
  EXPECT_TRUE(is_strong(ghost_supervaluation(v), pairs).holds());
  EXPECT_FALSE(is_strong(corrupted_lift(v), pairs).holds());
  EXPECT_FALSE(gs_strong_check(corrupted_lift(v), pairs).holds());
}

TEST(Supervaluation, GsStrongAtOneOne) {
  const auto phi = tangible_lift(padic_valuation(2));
  const auto sum = st_add(phi(Rational(1)), phi(Rational(1)));
  EXPECT_EQ(sum, G(0));
  EXPECT_EQ(phi(Rational(2)), T(-1));
  EXPECT_TRUE(oracle::gs_by_search(sum, phi(Rational(2))));
  EXPECT_TRUE(gs_strong_check(phi, {{Rational(1), Rational(1)}}).holds());
}

TEST(Supervaluation, StrongEquivalentToGsFormPerPair) {
  const auto pairs = random_pairs(41, 4000, SourceRing::rationals);
  for (const Valuation& v : {padic_valuation(2), padic_valuation(3), padic_valuation(5), trivial_valuation()}) {
    for (const auto& phi : {tangible_lift(v), ghost_supervaluation(v)}) {
      for (const auto& pair : pairs) {
        const std::vector<SamplePair> one{pair};
        ASSERT_EQ(is_strong(phi, one).holds(), gs_strong_check(phi, one).holds()) << phi.name();
      }
    }
  }
}

std::vector<Rational> small_samples() {
  return {Rational(1), Rational(2), Rational(3), Rational(6), Rational(1, 2), Rational(-4)};
}

TEST(Dominance, TangibleLiftDominatesGhost) {
  const auto v = padic_valuation(2);
  const auto report = verify_dominance({tangible_lift(v), ghost_supervaluation(v), Transmission::ghost(), small_samples()});
  EXPECT_TRUE(report.passed()) << (report.failures.empty() ? "" : report.failures.front().detail);
  EXPECT_GT(report.fragment_size, 5u);
}

TEST(Dominance, Reflexive) {
  const auto v = padic_valuation(3);
  for (const auto& phi : {tangible_lift(v), ghost_supervaluation(v)}) {
    EXPECT_TRUE(verify_dominance({phi, phi, Transmission::identity(), small_samples()}).passed());
  }
}

TEST(Dominance, Transitive) {
  const auto v = padic_valuation(2);
  const auto phi = tangible_lift(v), psi = tangible_lift(v), chi = ghost_supervaluation(v);
  const auto first = Transmission::identity(), second = Transmission::ghost();
  ASSERT_TRUE(verify_dominance({phi, psi, first, small_samples()}).passed());
  ASSERT_TRUE(verify_dominance({psi, chi, second, small_samples()}).passed());
  EXPECT_TRUE(verify_dominance({phi, chi, Transmission::compose(first, second), small_samples()}).passed());
}

// Every map from the ghost fragment into the tangible-lift fragment fails.
TEST(Dominance, GhostDoesNotDominateTangibleLift) {
  const auto v = padic_valuation(2);
  const auto phi = ghost_supervaluation(v), psi = tangible_lift(v);
  for (const std::vector<Rational>& samples : {std::vector<Rational>{Rational(1)}, {Rational(1), Rational(2)}}) {
    const auto domain = generated_fragment(phi, samples);
    std::vector<SupertropicalElem> codomain{SupertropicalElem::zero()};
    for (const auto& a : samples) {
      codomain.push_back(psi(a));
      codomain.push_back(ghost_map(psi(a)).elem());
    }
    std::vector<std::size_t> choice(domain.size(), 0);
    std::size_t tried = 0;
    while (true) {
      std::map<SupertropicalElem, SupertropicalElem> table;
      for (std::size_t i = 0; i < domain.size(); ++i) table[domain[i]] = codomain[choice[i]];
      ++tried;
      ASSERT_FALSE(verify_dominance({phi, psi, Transmission::table(table), samples}).passed());
      std::size_t k = 0;
      while (k < choice.size() && ++choice[k] == codomain.size()) choice[k++] = 0;
      if (k == choice.size()) break;
    }
    EXPECT_GT(tried, 1u);
  }
  const auto report = verify_dominance({phi, psi, Transmission::identity(), small_samples()});
  EXPECT_FALSE(report.passed());
}

TEST(Dominance, FragmentSizeBoundIsARefusal) {
  const auto v = padic_valuation(2);
  FragmentOptions options;
  options.max_size = 16;
  std::vector<Rational> many;
  for (int k = 0; k < 12; ++k) many.push_back(Rational(1 << k, 3));
  EXPECT_THROW(verify_dominance({tangible_lift(v), ghost_supervaluation(v), Transmission::ghost(), many}, options),
               limit_exceeded);
}

TEST(Dominance, WitnessFromJson) {
  std::ifstream in(std::string(SUPERTROP_TEST_DATA) + "/dominance_ghost_map.json");
  const auto w = dominance_witness_from_json(nlohmann::json::parse(in));
  EXPECT_EQ(w.alpha.name(), "ghost_map");
  EXPECT_TRUE(verify_dominance(w).passed());

  std::ifstream bad_in(std::string(SUPERTROP_TEST_DATA) + "/dominance_bad.json");
  const auto bad = dominance_witness_from_json(nlohmann::json::parse(bad_in));
  const auto report = verify_dominance(bad);
  EXPECT_FALSE(report.passed());
  EXPECT_THROW(dominance_witness_from_json(nlohmann::json::parse(R"({"alpha": "nope"})")), precondition_error);
}

}  // namespace
}  // namespace supertrop
