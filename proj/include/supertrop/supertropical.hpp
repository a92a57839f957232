#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "supertrop/bipotent.hpp"
#include "supertrop/errors.hpp"
#include "supertrop/rational.hpp"

namespace supertrop {

enum class Tag { zero, tangible, ghost };

/// Element of the standard supertropical semifield U(Γ) = 𝒯 ∪̇ 𝒢 ∪̇ {0}, Γ = (ℚ, +).
///
/// Tangible(g) and Ghost(g) share the value group; e = 1 + 1 is Ghost(0) and
/// the unit is Tangible(0). Zero is a third tag, so "𝒯 ∪ {0}" is expressed with
/// `is_tangible_or_zero()`.
class SupertropicalElem {
 public:
  SupertropicalElem() = default;  // zero

  static SupertropicalElem zero() { return {}; }
  static SupertropicalElem tangible(Rational g) { return {Tag::tangible, std::move(g)}; }
  static SupertropicalElem ghost(Rational g) { return {Tag::ghost, std::move(g)}; }
  static SupertropicalElem unit() { return tangible(Rational(0)); }
  static SupertropicalElem e() { return ghost(Rational(0)); }

  Tag tag() const noexcept { return tag_; }
  bool is_zero() const noexcept { return tag_ == Tag::zero; }
  bool is_tangible() const noexcept { return tag_ == Tag::tangible; }
  bool is_ghost() const noexcept { return tag_ == Tag::ghost; }
  bool is_tangible_or_zero() const noexcept { return tag_ != Tag::ghost; }

  // Precondition: !is_zero().
  const Rational& group_value() const {
    if (is_zero()) throw domain_error("zero has no group value");
    return value_;
  }

  // ν(x) read in M = eU: the e-value used by the ST3/ST4 comparisons.
  BipotentElem e_value() const {
    return is_zero() ? BipotentElem::zero() : BipotentElem::value(value_);
  }

  friend bool operator==(const SupertropicalElem& a, const SupertropicalElem& b) {
    return a.tag_ == b.tag_ && (a.is_zero() || a.value_ == b.value_);
  }

  // Arbitrary but total; used for ordered containers, not the semiring order.
  friend bool operator<(const SupertropicalElem& a, const SupertropicalElem& b) {
    if (a.tag_ != b.tag_) return a.tag_ < b.tag_;
    return !a.is_zero() && a.value_ < b.value_;
  }

 private:
  SupertropicalElem(Tag tag, Rational g) : tag_(tag), value_(std::move(g)) {}

  Tag tag_ = Tag::zero;
  Rational value_;
};

/// The image eU of the ghost map: zero or a ghost. Isomorphic to BipotentElem.
class GhostValue {
 public:
  GhostValue() = default;
  explicit GhostValue(BipotentElem e_value) : e_value_(std::move(e_value)) {}

  const BipotentElem& e_value() const noexcept { return e_value_; }
  bool is_zero() const noexcept { return e_value_.is_zero(); }

  SupertropicalElem elem() const {
    return is_zero() ? SupertropicalElem::zero() : SupertropicalElem::ghost(e_value_.group_value());
  }

  friend bool operator==(const GhostValue&, const GhostValue&) = default;

 private:
  BipotentElem e_value_;
};

inline SupertropicalElem embed_ghost(const BipotentElem& m) { return GhostValue(m).elem(); }

inline SupertropicalElem embed_tangible(const BipotentElem& m) {
  return m.is_zero() ? SupertropicalElem::zero() : SupertropicalElem::tangible(m.group_value());
}

inline GhostValue ghost_map(const SupertropicalElem& x) { return GhostValue(x.e_value()); }

// ST3: strictly larger e-value wins unchanged. ST4: equal e-values give the ghost.
inline SupertropicalElem st_add(const SupertropicalElem& x, const SupertropicalElem& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const Rational& gx = x.group_value();
  const Rational& gy = y.group_value();
  if (gx < gy) return y;
  if (gy < gx) return x;
  return SupertropicalElem::ghost(gx);
}

// ST5 with eU an ideal: tangible iff both factors are tangible.
inline SupertropicalElem st_mul(const SupertropicalElem& x, const SupertropicalElem& y) {
  if (x.is_zero() || y.is_zero()) return SupertropicalElem::zero();
  Rational g = x.group_value() + y.group_value();
  if (x.is_tangible() && y.is_tangible()) return SupertropicalElem::tangible(std::move(g));
  return SupertropicalElem::ghost(std::move(g));
}

inline SupertropicalElem operator+(const SupertropicalElem& x, const SupertropicalElem& y) {
  return st_add(x, y);
}
inline SupertropicalElem operator*(const SupertropicalElem& x, const SupertropicalElem& y) {
  return st_mul(x, y);
}

/// Ghost-surpassing relation x ⊨ y: some z ∈ eU has x = y + z.
///
/// Closed form: x ⊨ y iff x = y, or x is a ghost with e-value ≥ e-value of y.
/// With z = 0 the sum is y itself. With z = Ghost(g), ST3/ST4 give y + z = y
/// when g < ev(y) and Ghost(g) when g ≥ ev(y), so the reachable set is exactly
/// {y} ∪ {Ghost(g) : g ≥ ev(y)}.
inline bool gs_geq(const SupertropicalElem& x, const SupertropicalElem& y) {
  if (x == y) return true;
  return x.is_ghost() && y.e_value() <= x.e_value();
}

inline std::string render(const SupertropicalElem& x) {
  switch (x.tag()) {
    case Tag::zero:
      return "0";
    case Tag::tangible:
      return "t" + render_rational(x.group_value());
    case Tag::ghost:
      return "g" + render_rational(x.group_value());
  }
  return "?";
}

inline std::ostream& operator<<(std::ostream& os, const SupertropicalElem& x) { return os << render(x); }

// Grammar: `0` | `t<rational>` | `g<rational>`. Consumes from `pos`.
inline SupertropicalElem parse_supertropical_prefix(std::string_view text, std::size_t& pos,
                                                    std::size_t offset = 0) {
  if (pos >= text.size()) throw parse_error("expected element", offset + pos);
  const char c = text[pos];
  if (c == '0') {
    ++pos;
    return SupertropicalElem::zero();
  }
  if (c == 't' || c == 'g') {
    ++pos;
    Rational g = parse_rational_prefix(text, pos, offset);
    return c == 't' ? SupertropicalElem::tangible(std::move(g)) : SupertropicalElem::ghost(std::move(g));
  }
  throw parse_error(std::string("expected '0', 't' or 'g', found '") + c + "'", offset + pos);
}

inline SupertropicalElem parse_supertropical(std::string_view text) {
  std::size_t pos = 0;
  SupertropicalElem x = parse_supertropical_prefix(text, pos);
  if (pos != text.size()) throw parse_error("unexpected trailing input", pos);
  return x;
}

inline SupertropicalElem st_parse(std::string_view text) { return parse_supertropical(text); }
inline std::string st_render(const SupertropicalElem& x) { return render(x); }

}  // namespace supertrop
