#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supertrop/bipotent.hpp"
#include "supertrop/errors.hpp"
#include "supertrop/rational.hpp"
#include "supertrop/supertropical.hpp"
#include "supertrop/supervaluation.hpp"
#include "supertrop/valuation.hpp"

namespace supertrop {

/// Semiring operations for a coefficient kind.
template <typename C>
struct CoefficientOps;

template <>
struct CoefficientOps<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& c) { return c == 0; }
  static Rational add(const Rational& a, const Rational& b) { return a + b; }
  static Rational mul(const Rational& a, const Rational& b) { return a * b; }
};

template <>
struct CoefficientOps<BipotentElem> {
  static BipotentElem zero() { return BipotentElem::zero(); }
  static BipotentElem one() { return BipotentElem::unit(); }
  static bool is_zero(const BipotentElem& c) { return c.is_zero(); }
  static BipotentElem add(const BipotentElem& a, const BipotentElem& b) { return bp_add(a, b); }
  static BipotentElem mul(const BipotentElem& a, const BipotentElem& b) { return bp_mul(a, b); }
};

template <>
struct CoefficientOps<SupertropicalElem> {
  static SupertropicalElem zero() { return SupertropicalElem::zero(); }
  static SupertropicalElem one() { return SupertropicalElem::unit(); }
  static bool is_zero(const SupertropicalElem& c) { return c.is_zero(); }
  static SupertropicalElem add(const SupertropicalElem& a, const SupertropicalElem& b) { return st_add(a, b); }
  static SupertropicalElem mul(const SupertropicalElem& a, const SupertropicalElem& b) { return st_mul(a, b); }
};

template <typename C>
concept Coefficient = requires(const C& a) {
  { CoefficientOps<C>::zero() };
  { CoefficientOps<C>::is_zero(a) } -> std::convertible_to<bool>;
};

using Exponent = std::vector<std::uint32_t>;

// Tuple ξ ∈ Mⁿ.
using TropicalPoint = std::vector<BipotentElem>;

/// Sparse polynomial Σ c_i λ^i in n variables; zero coefficients are never stored.
template <Coefficient C>
class SparsePoly {
 public:
  using Ops = CoefficientOps<C>;
  using Terms = std::map<Exponent, C>;

  explicit SparsePoly(std::size_t nvars = 1) : nvars_(nvars) {}

  static SparsePoly constant(std::size_t nvars, C c) {
    SparsePoly f(nvars);
    f.add_term(Exponent(nvars, 0), std::move(c));
    return f;
  }

  static SparsePoly variable(std::size_t nvars, std::size_t index) {
    Exponent e(nvars, 0);
    e.at(index) = 1;
    SparsePoly f(nvars);
    f.add_term(std::move(e), Ops::one());
    return f;
  }

  // Merges c into the coefficient of λ^exponent with the semiring sum.
  void add_term(Exponent exponent, C c) {
    if (exponent.size() != nvars_) throw precondition_error("exponent length does not match variable count");
    if (Ops::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(exponent), c);
    if (!inserted) {
      it->second = Ops::add(it->second, c);
      if (Ops::is_zero(it->second)) terms_.erase(it);
    }
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) {
      std::uint32_t s = 0;
      for (auto k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  friend SparsePoly operator+(const SparsePoly& f, const SparsePoly& g) {
    require_same_arity(f, g);
    SparsePoly h = f;
    for (const auto& [e, c] : g.terms_) h.add_term(e, c);
    return h;
  }

  friend SparsePoly operator*(const SparsePoly& f, const SparsePoly& g) {
    require_same_arity(f, g);
    SparsePoly h(f.nvars_);
    for (const auto& [ef, cf] : f.terms_) {
      for (const auto& [eg, cg] : g.terms_) {
        Exponent e(f.nvars_);
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ef[k] + eg[k];
        h.add_term(std::move(e), Ops::mul(cf, cg));
      }
    }
    return h;
  }

 private:
  static void require_same_arity(const SparsePoly& f, const SparsePoly& g) {
    if (f.nvars_ != g.nvars_) throw precondition_error("polynomials have different variable counts");
  }

  std::size_t nvars_;
  Terms terms_;
};

using RationalPoly = SparsePoly<Rational>;
using BipotentPoly = SparsePoly<BipotentElem>;
using SupertropicalPoly = SparsePoly<SupertropicalElem>;

// x^0 is the unit for every x, including zero.
template <Coefficient C>
C semiring_power(const C& x, std::uint32_t k) {
  using Ops = CoefficientOps<C>;
  C result = Ops::one();
  for (std::uint32_t i = 0; i < k; ++i) result = Ops::mul(result, x);
  return result;
}

template <Coefficient C>
C monomial_value(const C& coefficient, const Exponent& exponent, std::span<const C> point) {
  using Ops = CoefficientOps<C>;
  C value = coefficient;
  for (std::size_t k = 0; k < exponent.size(); ++k) {
    if (exponent[k] != 0) value = Ops::mul(value, semiring_power(point[k], exponent[k]));
  }
  return value;
}

/// The evaluation homomorphism ε_a: Σ c_i a^i folded with the coefficient semiring's sum.
template <Coefficient C>
C poly_eval(const SparsePoly<C>& f, std::span<const C> point) {
  using Ops = CoefficientOps<C>;
  if (point.size() != f.nvars()) throw precondition_error("evaluation point arity does not match variable count");
  C sum = Ops::zero();
  for (const auto& [e, c] : f.terms()) sum = Ops::add(sum, monomial_value(c, e, point));
  return sum;
}

template <Coefficient C>
C poly_eval(const SparsePoly<C>& f, const std::vector<C>& point) {
  return poly_eval(f, std::span<const C>(point));
}

template <Coefficient D, Coefficient C, typename Fn>
SparsePoly<D> map_coefficients(const SparsePoly<C>& f, Fn&& fn) {
  SparsePoly<D> out(f.nvars());
  for (const auto& [e, c] : f.terms()) out.add_term(e, fn(c));
  return out;
}

// φ̃(Σ c_i λ^i) = Σ φ(c_i) λ^i
inline SupertropicalPoly tilde_map(const Supervaluation& phi, const RationalPoly& f) {
  return map_coefficients<SupertropicalElem>(f, [&phi](const Rational& c) { return phi(c); });
}

// ṽ(Σ c_i λ^i) = Σ v(c_i) λ^i
inline BipotentPoly tilde_v(const Valuation& v, const RationalPoly& f) {
  return map_coefficients<BipotentElem>(f, [&v](const Rational& c) { return v(c); });
}

/// v(c_i)·ξ^i for every stored term. Zero^0 is the unit, so constant terms
/// survive at points with zero coordinates.
inline std::map<Exponent, BipotentElem> tropical_term_values(const BipotentPoly& g, const TropicalPoint& xi) {
  if (xi.size() != g.nvars()) throw precondition_error("tropical point arity does not match variable count");
  std::map<Exponent, BipotentElem> values;
  for (const auto& [e, c] : g.terms()) values.emplace(e, monomial_value(c, e, std::span<const BipotentElem>(xi)));
  return values;
}

/// ξ ∈ Z₀(g): the maximum of the term values is attained by at least two terms.
/// A tie at the bottom value (all maximal terms zero) counts like any other tie.
inline bool corner_locus_member(const BipotentPoly& g, const TropicalPoint& xi) {
  if (g.is_zero()) throw precondition_error("corner locus of the zero polynomial is undefined");
  const auto values = tropical_term_values(g, xi);
  BipotentElem best = BipotentElem::zero();
  std::size_t attained = 0;
  for (const auto& [e, value] : values) {
    if (best < value) {
      best = value;
      attained = 1;
    } else if (value == best) {
      ++attained;
    }
  }
  return attained >= 2;
}

struct AxisRange {
  Rational start;
  Rational stop;
  Rational step;
};

/// Rectangular lattice; axis k ranges over start, start + step, … ≤ stop.
struct GridSpec {
  std::vector<AxisRange> axes;
  std::size_t max_points = 1'000'000;

  std::size_t axis_count(std::size_t k) const {
    const AxisRange& a = axes[k];
    const Rational span = (a.stop - a.start) / a.step;
    return static_cast<std::size_t>(
               boost::multiprecision::numerator(span) / boost::multiprecision::denominator(span)) + 1;
  }

  void validate() const {
    if (axes.empty()) throw precondition_error("grid has no axes");
    std::size_t total = 1;
    for (std::size_t k = 0; k < axes.size(); ++k) {
      if (axes[k].step <= 0) throw precondition_error("grid step must be positive");
      if (axes[k].stop < axes[k].start) throw precondition_error("grid axis has stop below start");
      const Rational span = (axes[k].stop - axes[k].start) / axes[k].step;
      if (span > Rational(static_cast<long long>(max_points))) throw limit_exceeded("grid has too many points");
      total *= axis_count(k);
      if (total > max_points) throw limit_exceeded("grid has more than " + std::to_string(max_points) + " points");
    }
  }

  // Row-major: the first axis varies slowest.
  std::vector<TropicalPoint> points() const {
    validate();
    std::vector<std::size_t> counts;
    for (std::size_t k = 0; k < axes.size(); ++k) counts.push_back(axis_count(k));
    std::vector<TropicalPoint> out;
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
      TropicalPoint p;
      for (std::size_t k = 0; k < axes.size(); ++k) {
        p.push_back(BipotentElem::value(axes[k].start + axes[k].step * Rational(static_cast<long long>(idx[k]))));
      }
      out.push_back(std::move(p));
      std::size_t k = axes.size();
      while (k > 0) {
        --k;
        if (++idx[k] < counts[k]) break;
        idx[k] = 0;
        if (k == 0) return out;
      }
    }
  }
};

namespace detail {

// x, y, z → 1, 2, 3; x<k> → k; anything else → 0.
inline std::size_t variable_index(std::string_view name) {
  if (name == "x") return 1;
  if (name == "y") return 2;
  if (name == "z") return 3;
  if (name.size() >= 2 && name[0] == 'x' && name.find_first_not_of("0123456789", 1) == std::string_view::npos &&
      name[1] != '0' && name.size() <= 6) {
    return static_cast<std::size_t>(std::stoul(std::string(name.substr(1))));
  }
  return 0;
}

inline std::string variable_name(std::size_t index, std::size_t nvars) {
  if (nvars <= 3) return std::string(1, "xyz"[index]);
  return "x" + std::to_string(index + 1);
}

}  // namespace detail

/// Grid spec `x=-4..1:1,y=-2..2:1/2`. Axes may use x,y,z or x1..xn and must
/// name each of the first n variables exactly once.
inline GridSpec parse_grid(std::string_view text, std::size_t nvars) {
  std::map<std::size_t, AxisRange> by_index;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eq = text.find('=', pos);
    if (eq == std::string_view::npos) throw parse_error("expected '=' in grid axis", pos);
    const std::size_t var = detail::variable_index(text.substr(pos, eq - pos));
    if (var == 0) throw parse_error("unknown grid variable", pos);
    pos = eq + 1;
    AxisRange axis;
    axis.start = parse_rational_prefix(text, pos);
    if (text.substr(pos, 2) != "..") throw parse_error("expected '..' in grid axis", pos);
    pos += 2;
    axis.stop = parse_rational_prefix(text, pos);
    axis.step = Rational(1);
    if (pos < text.size() && text[pos] == ':') {
      ++pos;
      axis.step = parse_rational_prefix(text, pos);
    }
    if (!by_index.emplace(var, axis).second) throw parse_error("grid variable given twice", eq);
    if (pos < text.size()) {
      if (text[pos] != ',') throw parse_error("expected ',' between grid axes", pos);
      ++pos;
    }
  }
  GridSpec grid;
  for (std::size_t k = 1; k <= nvars; ++k) {
    auto it = by_index.find(k);
    if (it == by_index.end()) throw precondition_error("grid does not cover variable " + detail::variable_name(k - 1, nvars));
    grid.axes.push_back(it->second);
  }
  if (by_index.size() != nvars) throw precondition_error("grid names more variables than the polynomial has");
  grid.validate();
  return grid;
}

inline std::vector<TropicalPoint> corner_locus_grid(const BipotentPoly& g, const GridSpec& grid) {
  if (grid.axes.size() != g.nvars()) throw precondition_error("grid dimension does not match variable count");
  std::vector<TropicalPoint> members;
  for (auto& p : grid.points()) {
    if (corner_locus_member(g, p)) members.push_back(std::move(p));
  }
  return members;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

  RationalPoly parse() {
    RationalPoly f = expr();
    skip_space();
    if (pos_ != text_.size()) throw parse_error("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return f;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalPoly constant(Rational c) const { return RationalPoly::constant(nvars_, std::move(c)); }

  RationalPoly expr() {
    RationalPoly f = term();
    while (true) {
      if (accept('+')) f = f + term();
      else if (accept('-')) f = f + constant(Rational(-1)) * term();
      else return f;
    }
  }

  RationalPoly term() {
    RationalPoly f = unary();
    while (true) {
      if (accept('*')) {
        f = f * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        RationalPoly d = unary();
        const auto& terms = d.terms();
        if (terms.size() != 1 || terms.begin()->first != Exponent(nvars_, 0)) {
          throw parse_error("division only by a nonzero constant", at);
        }
        f = f * constant(Rational(1) / terms.begin()->second);
      } else {
        return f;
      }
    }
  }

  RationalPoly unary() {
    if (accept('-')) return constant(Rational(-1)) * unary();
    if (accept('+')) return unary();
    return power();
  }

  RationalPoly power() {
    RationalPoly base = primary();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t at = pos_;
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits.push_back(text_[pos_++]);
    if (digits.empty()) throw parse_error("expected a nonnegative integer exponent", at);
    if (digits.size() > 3) throw parse_error("exponent too large", at);
    const auto k = static_cast<std::uint32_t>(std::stoul(digits));
    RationalPoly result = constant(Rational(1));
    for (std::uint32_t i = 0; i < k; ++i) result = result * base;
    return result;
  }

  RationalPoly primary() {
    skip_space();
    if (pos_ >= text_.size()) throw parse_error("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RationalPoly f = expr();
      if (!accept(')')) throw parse_error("expected ')'", pos_);
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits.push_back(text_[pos_++]);
      return constant(Rational(Integer(digits)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t at = pos_;
      std::string name;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) name.push_back(text_[pos_++]);
      const std::size_t index = variable_index(name);
      if (index == 0 || index > nvars_) throw parse_error("unknown variable '" + name + "'", at);
      return RationalPoly::variable(nvars_, index - 1);
    }
    throw parse_error("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t nvars_;
};

}  // namespace detail

/// Parses `x^2*y - 3/4*x + 5`. Variables are x,y,z or x1..xn; the variable
/// count is the largest index used, raised to `min_nvars` if that is larger.
inline RationalPoly parse_polynomial(std::string_view text, std::size_t min_nvars = 1) {
  std::size_t nvars = std::max<std::size_t>(min_nvars, 1);
  for (std::size_t i = 0; i < text.size();) {
    if (std::isalpha(static_cast<unsigned char>(text[i]))) {
      const std::size_t start = i;
      while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
      const std::size_t index = detail::variable_index(text.substr(start, i - start));
      if (index == 0) throw parse_error("unknown variable '" + std::string(text.substr(start, i - start)) + "'", start);
      nvars = std::max(nvars, index);
    } else {
      ++i;
    }
  }
  return detail::PolyParser(text, nvars).parse();
}

// Graded reverse order: highest total degree first, then lexicographically larger exponents.
inline std::vector<Exponent> display_order(const std::vector<Exponent>& exponents) {
  std::vector<Exponent> out = exponents;
  std::sort(out.begin(), out.end(), [](const Exponent& a, const Exponent& b) {
    std::uint64_t da = 0, db = 0;
    for (auto k : a) da += k;
    for (auto k : b) db += k;
    if (da != db) return da > db;
    return a > b;
  });
  return out;
}

inline std::string render_monomial(const Exponent& e) {
  std::string out;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!out.empty()) out += "*";
    out += detail::variable_name(k, e.size());
    if (e[k] > 1) out += "^" + std::to_string(e[k]);
  }
  return out;
}

/// Text form accepted back by parse_polynomial (given the same variable count).
inline std::string render(const RationalPoly& f) {
  if (f.is_zero()) return "0";
  std::vector<Exponent> exps;
  for (const auto& [e, c] : f.terms()) exps.push_back(e);
  std::string out;
  bool first = true;
  for (const auto& e : display_order(exps)) {
    Rational c = f.terms().at(e);
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    first = false;
    const std::string mono = render_monomial(e);
    if (mono.empty()) out += render_rational(c);
    else if (c == 1) out += mono;
    else out += render_rational(c) + "*" + mono;
  }
  return out;
}

inline std::string render_exponent(const Exponent& e) {
  std::string out;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(e[k]);
  }
  return out;
}

inline std::string render_point(const TropicalPoint& xi) {
  std::string out;
  for (std::size_t k = 0; k < xi.size(); ++k) {
    if (k) out += ";";
    out += render(xi[k]);
  }
  return out;
}

}  // namespace supertrop
