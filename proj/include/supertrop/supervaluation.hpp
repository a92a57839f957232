#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "supertrop/errors.hpp"
#include "supertrop/supertropical.hpp"
#include "supertrop/valuation.hpp"

namespace supertrop {

/// A supervaluation φ : R → U(ℚ) together with the valuation v = eφ it is meant to cover.
class Supervaluation {
 public:
  using Rule = std::function<SupertropicalElem(const Rational&)>;

  Supervaluation(std::string name, Valuation covered, Rule rule)
      : name_(std::move(name)), covered_(std::move(covered)), rule_(std::move(rule)) {}

  SupertropicalElem operator()(const Rational& a) const { return rule_(a); }

  const std::string& name() const noexcept { return name_; }
  const Valuation& covered() const noexcept { return covered_; }

 private:
  std::string name_;
  Valuation covered_;
  Rule rule_;
};

/// φ(a) = Tangible(v(a)): a tangible supervaluation covering v, strong whenever v is.
///
/// If φ(a) + φ(b) is tangible then v(a) ≠ v(b), so a strong v gives
/// v(a + b) = max(v(a), v(b)) and φ(a + b) equals the larger summand.
inline Supervaluation tangible_lift(const Valuation& v) {
  return Supervaluation("tangible_lift(" + v.name() + ")", v,
                        [v](const Rational& a) { return embed_tangible(v(a)); });
}

/// v itself, with M = eU viewed as a supertropical semifield without tangibles.
inline Supervaluation ghost_supervaluation(const Valuation& v) {
  return Supervaluation("ghost(" + v.name() + ")", v, [v](const Rational& a) { return embed_ghost(v(a)); });
}

// `tangible` | `ghost`
inline Supervaluation make_supervaluation(std::string_view kind, const Valuation& v) {
  if (kind == "tangible") return tangible_lift(v);
  if (kind == "ghost") return ghost_supervaluation(v);
  throw parse_error("unknown supervaluation kind '" + std::string(kind) + "' (expected tangible or ghost)", 0);
}

struct PairCheck {
  std::size_t pairs_checked = 0;
  std::vector<PairViolation> violations;

  bool holds() const { return violations.empty(); }
};

/// Multiplicativity, e-subadditivity and eφ = v, exactly, on every sampled pair.
inline PairCheck check_cover(const Supervaluation& phi, const std::vector<SamplePair>& samples) {
  PairCheck report;
  const Valuation& v = phi.covered();
  if (!phi(Rational(0)).is_zero()) report.violations.push_back({"zero", Rational(0), Rational(0)});
  if (ghost_map(phi(Rational(1))).elem() != SupertropicalElem::e()) {
    report.violations.push_back({"unit", Rational(1), Rational(1)});
  }
  for (const auto& [a, b] : samples) {
    ++report.pairs_checked;
    const SupertropicalElem pa = phi(a);
    const SupertropicalElem pb = phi(b);
    const SupertropicalElem psum = phi(a + b);
    const SupertropicalElem pprod = phi(a * b);
    if (pprod != st_mul(pa, pb)) report.violations.push_back({"multiplicative", a, b});
    if (!bp_leq(psum.e_value(), bp_add(pa.e_value(), pb.e_value()))) {
      report.violations.push_back({"e_subadditive", a, b});
    }
    if (pa.e_value() != v(a) || pb.e_value() != v(b) || psum.e_value() != v(a + b) || pprod.e_value() != v(a * b)) {
      report.violations.push_back({"covers", a, b});
    }
  }
  return report;
}

struct ElementCheck {
  std::size_t elements_checked = 0;
  std::vector<Rational> witnesses;

  bool holds() const { return witnesses.empty(); }
};

inline ElementCheck is_tangible(const Supervaluation& phi, const std::vector<Rational>& samples) {
  ElementCheck report;
  for (const auto& a : samples) {
    ++report.elements_checked;
    if (phi(a).is_ghost()) report.witnesses.push_back(a);
  }
  return report;
}

// φ(a) + φ(b) ∈ 𝒯 ⇒ φ(a + b) = φ(a) + φ(b)
inline PairCheck is_strong(const Supervaluation& phi, const std::vector<SamplePair>& samples) {
  PairCheck report;
  for (const auto& [a, b] : samples) {
    ++report.pairs_checked;
    const SupertropicalElem sum = st_add(phi(a), phi(b));
    if (sum.is_tangible() && phi(a + b) != sum) report.violations.push_back({"strong", a, b});
  }
  return report;
}

// φ(a) + φ(b) ⊨ φ(a + b)
inline PairCheck gs_strong_check(const Supervaluation& phi, const std::vector<SamplePair>& samples) {
  PairCheck report;
  for (const auto& [a, b] : samples) {
    ++report.pairs_checked;
    if (!gs_geq(st_add(phi(a), phi(b)), phi(a + b))) report.violations.push_back({"gs_strong", a, b});
  }
  return report;
}

/// A transmission map α between generated subsemirings. Partial: `apply`
/// returns nullopt where α is undefined (only possible for table maps).
class Transmission {
 public:
  using Fn = std::function<std::optional<SupertropicalElem>(const SupertropicalElem&)>;

  static Transmission identity() {
    return Transmission("identity", [](const SupertropicalElem& x) { return std::optional(x); });
  }

  static Transmission ghost() {
    return Transmission("ghost_map", [](const SupertropicalElem& x) { return std::optional(ghost_map(x).elem()); });
  }

  static Transmission table(std::map<SupertropicalElem, SupertropicalElem> entries) {
    auto shared = std::make_shared<const std::map<SupertropicalElem, SupertropicalElem>>(std::move(entries));
    return Transmission("table", [shared](const SupertropicalElem& x) -> std::optional<SupertropicalElem> {
      auto it = shared->find(x);
      if (it == shared->end()) return std::nullopt;
      return it->second;
    });
  }

  static Transmission custom(std::string name, Fn fn) { return Transmission(std::move(name), std::move(fn)); }

  // x ↦ second(first(x))
  static Transmission compose(const Transmission& first, const Transmission& second) {
    return Transmission(second.name_ + "∘" + first.name_,
                        [first, second](const SupertropicalElem& x) -> std::optional<SupertropicalElem> {
                          auto mid = first.apply(x);
                          if (!mid) return std::nullopt;
                          return second.apply(*mid);
                        });
  }

  std::optional<SupertropicalElem> apply(const SupertropicalElem& x) const { return fn_(x); }
  const std::string& name() const noexcept { return name_; }

 private:
  Transmission(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  std::string name_;
  Fn fn_;
};

struct DominanceWitness {
  Supervaluation source;
  Supervaluation target;
  Transmission alpha;
  std::vector<Rational> samples;
};

struct FragmentOptions {
  int depth = 2;
  std::size_t max_size = 512;
};

/// Sums and products of {0, φ(1)} ∪ {φ(a), eφ(a) : a ∈ samples}, closed to `depth`
/// rounds. Throws limit_exceeded instead of returning a truncated fragment.
inline std::vector<SupertropicalElem> generated_fragment(const Supervaluation& phi, const std::vector<Rational>& samples,
                                                         const FragmentOptions& options = {}) {
  std::set<SupertropicalElem> current{SupertropicalElem::zero(), phi(Rational(1))};
  auto insert = [&](std::set<SupertropicalElem>& into, SupertropicalElem x) {
    into.insert(std::move(x));
    if (into.size() > options.max_size) {
      throw limit_exceeded("generated fragment exceeds " + std::to_string(options.max_size) + " elements");
    }
  };
  for (const auto& a : samples) {
    const SupertropicalElem pa = phi(a);
    insert(current, pa);
    insert(current, ghost_map(pa).elem());
  }
  for (int round = 0; round < options.depth; ++round) {
    std::set<SupertropicalElem> next = current;
    for (auto x = current.begin(); x != current.end(); ++x) {
      for (auto y = x; y != current.end(); ++y) {
        insert(next, st_add(*x, *y));
        insert(next, st_mul(*x, *y));
      }
    }
    if (next.size() == current.size()) break;
    current = std::move(next);
  }
  return {current.begin(), current.end()};
}

struct DominanceFailure {
  std::string law;
  std::string detail;
};

struct DominanceReport {
  std::size_t fragment_size = 0;
  std::vector<DominanceFailure> failures;

  bool passed() const { return failures.empty(); }
};

/// Checks that α preserves 0, 1, + and · on the fragment generated by φ and
/// that ψ(a) = α(φ(a)) on every sample. One failure is reported per law.
inline DominanceReport verify_dominance(const DominanceWitness& w, const FragmentOptions& options = {}) {
  DominanceReport report;
  const auto fragment = generated_fragment(w.source, w.samples, options);
  report.fragment_size = fragment.size();
  std::set<std::string> seen;
  auto fail = [&](const std::string& law, std::string detail) {
    if (seen.insert(law).second) report.failures.push_back({law, std::move(detail)});
  };

  std::map<SupertropicalElem, SupertropicalElem> image;
  for (const auto& x : fragment) {
    auto ax = w.alpha.apply(x);
    if (!ax) {
      fail("defined", "alpha undefined at " + render(x));
      continue;
    }
    image.emplace(x, *ax);
  }
  auto alpha_at = [&](const SupertropicalElem& x) -> std::optional<SupertropicalElem> {
    auto it = image.find(x);
    if (it != image.end()) return it->second;
    return w.alpha.apply(x);
  };

  if (auto z = alpha_at(SupertropicalElem::zero()); !z || !z->is_zero()) fail("zero", "alpha(0) is not 0");
  const SupertropicalElem one_src = w.source(Rational(1));
  const SupertropicalElem one_dst = w.target(Rational(1));
  if (auto u = alpha_at(one_src); !u || *u != one_dst) {
    fail("unit", "alpha(" + render(one_src) + ") is not " + render(one_dst));
  }

  for (const auto& x : fragment) {
    for (const auto& y : fragment) {
      const auto ax = alpha_at(x);
      const auto ay = alpha_at(y);
      if (!ax || !ay) continue;
      if (auto s = alpha_at(st_add(x, y)); s && *s != st_add(*ax, *ay)) {
        fail("additive", "alpha(" + render(x) + " + " + render(y) + ") = " + render(*s) + " but alpha(x) + alpha(y) = " +
                             render(st_add(*ax, *ay)));
      }
      if (auto p = alpha_at(st_mul(x, y)); p && *p != st_mul(*ax, *ay)) {
        fail("multiplicative", "alpha(" + render(x) + " * " + render(y) + ") = " + render(*p) +
                                   " but alpha(x) * alpha(y) = " + render(st_mul(*ax, *ay)));
      }
    }
  }

  for (const auto& a : w.samples) {
    const auto mapped = alpha_at(w.source(a));
    const SupertropicalElem expected = w.target(a);
    if (!mapped || *mapped != expected) {
      fail("transports", "psi(" + render_rational(a) + ") = " + render(expected) + " differs from alpha(phi(a))");
    }
  }
  return report;
}

// {"kind": "tangible"|"ghost", "valuation": "padic:2"}
inline Supervaluation supervaluation_from_json(const nlohmann::json& j) {
  return make_supervaluation(j.at("kind").get<std::string>(), parse_valuation(j.at("valuation").get<std::string>()));
}

/// {"source": {...}, "target": {...}, "alpha": "ghost_map" | "identity" | [["t0","g0"], ...],
///  "samples": ["1", "2", "3/4"]}
inline DominanceWitness dominance_witness_from_json(const nlohmann::json& j) {
  try {
    std::optional<Transmission> alpha;
    const auto& a = j.at("alpha");
    if (a.is_string()) {
      const auto keyword = a.get<std::string>();
      if (keyword == "ghost_map") alpha = Transmission::ghost();
      else if (keyword == "identity") alpha = Transmission::identity();
      else throw precondition_error("unknown alpha keyword '" + keyword + "'");
    } else {
      std::map<SupertropicalElem, SupertropicalElem> entries;
      for (const auto& pair : a) {
        entries[parse_supertropical(pair.at(0).get<std::string>())] = parse_supertropical(pair.at(1).get<std::string>());
      }
      alpha = Transmission::table(std::move(entries));
    }
    std::vector<Rational> samples;
    for (const auto& s : j.at("samples")) samples.push_back(parse_rational(s.get<std::string>()));
    return {supervaluation_from_json(j.at("source")), supervaluation_from_json(j.at("target")), *alpha,
            std::move(samples)};
  } catch (const nlohmann::json::exception& e) {
    throw precondition_error(std::string("malformed dominance witness: ") + e.what());
  }
}

}  // namespace supertrop
