#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "supertrop/rational.hpp"
#include "supertrop/supertropical.hpp"
#include "supertrop/valuation.hpp"

namespace supertrop {

// Deterministic generator seeded from (seed, stream) so independent streams
// (one per instance) do not depend on evaluation order.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline Integer power(std::int64_t base, unsigned exponent) {
  Integer r = 1;
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

/// Random rational with rich 2-, 3- and 5-adic structure: numerator and
/// denominator are small cofactors times small prime powers, zero ~5% of the time.
inline Rational random_rational(std::mt19937_64& rng, SourceRing source) {
  if (uniform_int(rng, 0, 19) == 0) return Rational(0);
  auto part = [&rng](int max_exp, int max_cofactor) {
    Integer x = uniform_int(rng, 1, max_cofactor);
    x *= power(2, static_cast<unsigned>(uniform_int(rng, 0, max_exp)));
    x *= power(3, static_cast<unsigned>(uniform_int(rng, 0, max_exp)));
    x *= power(5, static_cast<unsigned>(uniform_int(rng, 0, max_exp)));
    return x;
  };
  Integer num = part(3, 12);
  const Integer den = part(2, 6);
  if (source == SourceRing::rationals && uniform_int(rng, 0, 1) == 0) num = -num;
  return Rational(num, den);
}

/// Pairs that hit every interesting case: independent values, equal p-adic
/// size (b = a·u with u a small unit-ish factor), and cancellation b = −a.
inline std::vector<SamplePair> random_pairs(std::uint64_t seed, std::size_t count, SourceRing source) {
  auto rng = make_rng(seed, 0x5a5a);
  std::vector<SamplePair> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rational a = random_rational(rng, source);
    Rational b;
    switch (uniform_int(rng, 0, 3)) {
      case 0:
        b = a * Rational(uniform_int(rng, 1, 7), uniform_int(rng, 1, 7));
        if (source == SourceRing::rationals && uniform_int(rng, 0, 1) == 0) b = -b;
        break;
      case 1:
        b = source == SourceRing::rationals ? Rational(-a) : a;
        break;
      default:
        b = random_rational(rng, source);
    }
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

inline std::vector<Rational> random_elements(std::uint64_t seed, std::size_t count, SourceRing source) {
  auto rng = make_rng(seed, 0xe1e);
  std::vector<Rational> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_rational(rng, source));
  return out;
}

/// Random element of U(ℚ) with small values so that e-value collisions are frequent.
inline SupertropicalElem random_supertropical(std::mt19937_64& rng, std::int64_t spread = 4) {
  const auto tag = uniform_int(rng, 0, 6);
  if (tag == 0) return SupertropicalElem::zero();
  Rational g(uniform_int(rng, -spread, spread), uniform_int(rng, 1, 2));
  return tag <= 3 ? SupertropicalElem::tangible(std::move(g)) : SupertropicalElem::ghost(std::move(g));
}

inline BipotentElem random_bipotent(std::mt19937_64& rng, std::int64_t spread = 4) {
  if (uniform_int(rng, 0, 6) == 0) return BipotentElem::zero();
  return BipotentElem::value(Rational(uniform_int(rng, -spread, spread), uniform_int(rng, 1, 2)));
}

}  // namespace supertrop
