#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "supertrop/errors.hpp"
#include "supertrop/rational.hpp"

namespace supertrop {

/// Element of the bipotent semifield M = Γ ∪ {0} over the value group Γ = (ℚ, +).
///
/// Additive (max-plus) notation: the semiring sum is `max`, the semiring
/// product adds group values, the semiring unit is Value(0) and the semiring
/// zero is a separate bottom element rendered as "-inf". In the multiplicative
/// notation of an abstract ordered group, Value(g) corresponds to the group
/// element γ and adding values corresponds to multiplying in Γ.
class BipotentElem {
 public:
  BipotentElem() = default;  // zero

  static BipotentElem zero() { return BipotentElem(); }
  static BipotentElem unit() { return BipotentElem(Rational(0)); }
  static BipotentElem value(Rational g) { return BipotentElem(std::move(g)); }

  bool is_zero() const noexcept { return !value_.has_value(); }

  // Precondition: !is_zero().
  const Rational& group_value() const {
    if (!value_) throw domain_error("zero has no group value");
    return *value_;
  }

  friend bool operator==(const BipotentElem&, const BipotentElem&) = default;

  // The semiring order: zero below everything, values ordered as rationals.
  friend std::strong_ordering operator<=>(const BipotentElem& a, const BipotentElem& b) {
    if (a.is_zero() || b.is_zero()) return b.is_zero() <=> a.is_zero();
    if (*a.value_ < *b.value_) return std::strong_ordering::less;
    if (*b.value_ < *a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  explicit BipotentElem(Rational g) : value_(std::move(g)) {}

  std::optional<Rational> value_;
};

inline BipotentElem bp_add(const BipotentElem& x, const BipotentElem& y) {
  return x < y ? y : x;
}

inline BipotentElem bp_mul(const BipotentElem& x, const BipotentElem& y) {
  if (x.is_zero() || y.is_zero()) return BipotentElem::zero();
  return BipotentElem::value(x.group_value() + y.group_value());
}

// a ≤ b ⟺ a + b = b
inline bool bp_leq(const BipotentElem& x, const BipotentElem& y) { return bp_add(x, y) == y; }

inline BipotentElem bp_inverse(const BipotentElem& x) {
  if (x.is_zero()) throw domain_error("zero of a bipotent semifield is not invertible");
  return BipotentElem::value(-x.group_value());
}

inline BipotentElem operator+(const BipotentElem& x, const BipotentElem& y) { return bp_add(x, y); }
inline BipotentElem operator*(const BipotentElem& x, const BipotentElem& y) { return bp_mul(x, y); }

inline std::string render(const BipotentElem& x) {
  return x.is_zero() ? std::string("-inf") : render_rational(x.group_value());
}

inline BipotentElem parse_bipotent(std::string_view text) {
  if (text == "-inf") return BipotentElem::zero();
  return BipotentElem::value(parse_rational(text));
}

inline std::ostream& operator<<(std::ostream& os, const BipotentElem& x) { return os << render(x); }

}  // namespace supertrop
