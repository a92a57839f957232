#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmp.h>

#include "supertrop/bipotent.hpp"
#include "supertrop/errors.hpp"
#include "supertrop/rational.hpp"

namespace supertrop {

/// The source semiring R: all of ℚ, or ℚ≥0 (sums of squares of rationals).
enum class SourceRing { rationals, nonnegative_rationals };

inline std::string to_string(SourceRing s) { return s == SourceRing::rationals ? "Q" : "Qplus"; }

inline SourceRing parse_source_ring(std::string_view text) {
  if (text == "Q") return SourceRing::rationals;
  if (text == "Qplus") return SourceRing::nonnegative_rationals;
  throw parse_error("unknown source ring '" + std::string(text) + "' (expected Q or Qplus)", 0);
}

inline bool belongs_to(SourceRing s, const Rational& a) { return s == SourceRing::rationals || a >= 0; }

using SamplePair = std::pair<Rational, Rational>;

/// A valuation R → M with M the max-plus bipotent semifield over ℚ.
class Valuation {
 public:
  using Rule = std::function<BipotentElem(const Rational&)>;

  Valuation(std::string name, Rule rule, std::optional<std::int64_t> prime = std::nullopt)
      : name_(std::move(name)), rule_(std::move(rule)), prime_(prime) {}

  BipotentElem operator()(const Rational& a) const { return rule_(a); }

  const std::string& name() const noexcept { return name_; }
  // Set for p-adic valuations.
  const std::optional<std::int64_t>& prime() const noexcept { return prime_; }

 private:
  std::string name_;
  Rule rule_;
  std::optional<std::int64_t> prime_;
};

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Multiplicity of p in a nonzero integer.
inline long multiplicity(const Integer& n, unsigned long p) {
  mpz_t rest;
  mpz_init(rest);
  mpz_t prime;
  mpz_init_set_ui(prime, p);
  const long k = static_cast<long>(mpz_remove(rest, n.backend().data(), prime));
  mpz_clear(prime);
  mpz_clear(rest);
  return k;
}

/// Classical p-adic order ord_p(a) of a nonzero rational.
inline long padic_order(const Rational& a, std::int64_t p) {
  if (a == 0) throw domain_error("p-adic order of zero is undefined");
  const auto up = static_cast<unsigned long>(p);
  return multiplicity(boost::multiprecision::numerator(a), up) -
         multiplicity(boost::multiprecision::denominator(a), up);
}

/// v(a) = Value(−ord_p(a)), v(0) = zero.
///
/// The classical order is subadditive for min; negating it puts the valuation
/// in the max-plus convention, so v(a + b) ≤ max(v(a), v(b)) and v(p) < v(1).
inline Valuation padic_valuation(std::int64_t p) {
  if (!is_prime(p)) throw precondition_error(std::to_string(p) + " is not prime");
  return Valuation(
      "padic:" + std::to_string(p),
      [p](const Rational& a) {
        if (a == 0) return BipotentElem::zero();
        return BipotentElem::value(Rational(-padic_order(a, p)));
      },
      p);
}

inline Valuation trivial_valuation() {
  return Valuation("trivial", [](const Rational& a) {
    return a == 0 ? BipotentElem::zero() : BipotentElem::unit();
  });
}

// `padic:<p>` or `trivial`.
inline Valuation parse_valuation(std::string_view spec) {
  if (spec == "trivial") return trivial_valuation();
  constexpr std::string_view prefix = "padic:";
  if (spec.substr(0, prefix.size()) == prefix) {
    const std::string digits(spec.substr(prefix.size()));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 12) {
      throw parse_error("expected a prime after 'padic:'", prefix.size());
    }
    return padic_valuation(std::stoll(digits));
  }
  throw parse_error("unknown valuation '" + std::string(spec) + "' (expected padic:<p> or trivial)", 0);
}

inline void require_in_source(SourceRing source, const std::vector<SamplePair>& samples) {
  for (const auto& [a, b] : samples) {
    if (!belongs_to(source, a) || !belongs_to(source, b)) {
      throw precondition_error("sample outside the source semiring " + to_string(source));
    }
  }
}

struct PairViolation {
  std::string law;
  Rational a;
  Rational b;
};

struct ValuationAxiomReport {
  std::size_t pairs_checked = 0;
  std::vector<PairViolation> violations;

  bool passed() const { return violations.empty(); }
};

/// v(0) = 0, v(1) = 1, and for each sampled pair v(ab) = v(a)v(b) and
/// v(a + b) ≤ max(v(a), v(b)), all exact.
inline ValuationAxiomReport check_valuation_axioms(const Valuation& v, const std::vector<SamplePair>& samples) {
  ValuationAxiomReport report;
  if (!v(Rational(0)).is_zero()) report.violations.push_back({"zero", Rational(0), Rational(0)});
  if (v(Rational(1)) != BipotentElem::unit()) report.violations.push_back({"unit", Rational(1), Rational(1)});
  for (const auto& [a, b] : samples) {
    ++report.pairs_checked;
    const BipotentElem va = v(a);
    const BipotentElem vb = v(b);
    if (v(a * b) != bp_mul(va, vb)) report.violations.push_back({"multiplicative", a, b});
    if (!bp_leq(v(a + b), bp_add(va, vb))) report.violations.push_back({"subadditive", a, b});
  }
  return report;
}

struct StrictStrongReport {
  std::size_t pairs_checked = 0;
  std::vector<SamplePair> strict_violations;  // v(a+b) ≠ v(a) + v(b)
  std::vector<SamplePair> strong_violations;  // v(a) ≠ v(b) yet v(a+b) ≠ v(a) + v(b)

  bool strict_on_samples() const { return strict_violations.empty(); }
  bool strong_on_samples() const { return strong_violations.empty(); }
};

inline StrictStrongReport classify_strict_strong(const Valuation& v, const std::vector<SamplePair>& samples) {
  StrictStrongReport report;
  for (const auto& sample : samples) {
    ++report.pairs_checked;
    const auto& [a, b] = sample;
    const BipotentElem va = v(a);
    const BipotentElem vb = v(b);
    const bool exact = v(a + b) == bp_add(va, vb);
    if (!exact) {
      report.strict_violations.push_back(sample);
      if (va != vb) report.strong_violations.push_back(sample);
    }
  }
  return report;
}

}  // namespace supertrop
