#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "supertrop/errors.hpp"
#include "supertrop/polynomial.hpp"
#include "supertrop/sampling.hpp"
#include "supertrop/supervaluation.hpp"
#include "supertrop/valuation.hpp"

namespace supertrop {

/// Data (f, a, φ) for the perturbation identity ε_{φ(a)} φ̃(f) ⊨ φ(ε_a(f)).
struct Theorem51Instance {
  RationalPoly f;
  std::vector<Rational> point;
  Supervaluation phi;
};

struct Theorem51Result {
  SupertropicalElem lhs;  // ε_{φ(a)} φ̃(f)
  SupertropicalElem rhs;  // φ(f(a))
  bool gs_holds = false;
  // lhs ≠ rhs only with a ghost lhs: a tangible lhs that surpasses rhs equals it.
  bool ghost_discrepancy_ok = false;
  // At a root with tangible summands, the largest e-value is attained at least twice.
  bool argmax_ok = true;
  std::size_t argmax_count = 0;

  bool refuted() const { return !gs_holds || !ghost_discrepancy_ok || !argmax_ok; }
};

/// Coefficients of f together with the coordinates of a, deduplicated.
inline std::vector<Rational> hypothesis_base(const RationalPoly& f, const std::vector<Rational>& point) {
  std::vector<Rational> base;
  auto add = [&base](const Rational& x) {
    if (std::find(base.begin(), base.end(), x) == base.end()) base.push_back(x);
  };
  for (const auto& [e, c] : f.terms()) add(c);
  for (const auto& x : point) add(x);
  return base;
}

/// Every unordered pair (x, y) over the base; checking cover and strongness on
/// these brings in the pairwise sums x + y and products x·y.
inline std::vector<SamplePair> hypothesis_pairs(const RationalPoly& f, const std::vector<Rational>& point) {
  const auto base = hypothesis_base(f, point);
  std::vector<SamplePair> pairs;
  pairs.reserve(base.size() * (base.size() + 1) / 2);
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i; j < base.size(); ++j) pairs.emplace_back(base[i], base[j]);
  return pairs;
}

// Throws precondition_error when φ is not a strong supervaluation on the instance's pairs.
inline void require_strong_supervaluation(const Supervaluation& phi, const RationalPoly& f,
                                          const std::vector<Rational>& point) {
  const auto pairs = hypothesis_pairs(f, point);
  if (const auto cover = check_cover(phi, pairs); !cover.holds()) {
    const auto& w = cover.violations.front();
    throw precondition_error(phi.name() + " is not a supervaluation covering " + phi.covered().name() + " (" + w.law +
                             " fails at " + render_rational(w.a) + ", " + render_rational(w.b) + ")");
  }
  if (const auto strong = is_strong(phi, pairs); !strong.holds()) {
    const auto& w = strong.violations.front();
    throw precondition_error(phi.name() + " is not strong (fails at " + render_rational(w.a) + ", " +
                             render_rational(w.b) + ")");
  }
}

inline Theorem51Result check_theorem51(const Theorem51Instance& inst, bool verify_hypothesis = true) {
  if (inst.point.size() != inst.f.nvars()) throw precondition_error("point arity does not match variable count");
  if (verify_hypothesis) require_strong_supervaluation(inst.phi, inst.f, inst.point);

  std::vector<SupertropicalElem> image;
  image.reserve(inst.point.size());
  for (const auto& a : inst.point) image.push_back(inst.phi(a));

  Theorem51Result r;
  const SupertropicalPoly lifted = tilde_map(inst.phi, inst.f);
  std::vector<SupertropicalElem> summands;
  for (const auto& [e, c] : lifted.terms()) {
    summands.push_back(monomial_value(c, e, std::span<const SupertropicalElem>(image)));
  }
  r.lhs = SupertropicalElem::zero();
  for (const auto& s : summands) r.lhs = st_add(r.lhs, s);
  r.rhs = inst.phi(poly_eval(inst.f, inst.point));
  r.gs_holds = gs_geq(r.lhs, r.rhs);
  r.ghost_discrepancy_ok = r.lhs == r.rhs || r.lhs.is_ghost();

  BipotentElem top = BipotentElem::zero();
  for (const auto& s : summands) top = bp_add(top, s.e_value());
  for (const auto& s : summands) r.argmax_count += (s.e_value() == top) ? 1 : 0;
  const bool tangible_summands =
      std::all_of(summands.begin(), summands.end(), [](const SupertropicalElem& s) { return s.is_tangible_or_zero(); });
  if (r.rhs.is_zero() && tangible_summands && !top.is_zero()) r.argmax_ok = r.argmax_count >= 2;
  return r;
}

/// A polynomial with a known exact zero, for the containment v(Z(f)) ⊂ Z₀(ṽ(f)).
struct KapranovInstance {
  RationalPoly f;
  std::vector<Rational> root;
  Valuation v;
};

struct KapranovResult {
  TropicalPoint xi;  // componentwise v(a)
  bool member = false;

  bool refuted() const { return !member; }
};

inline KapranovResult check_kapranov(const KapranovInstance& inst) {
  if (inst.root.size() != inst.f.nvars()) throw precondition_error("root arity does not match variable count");
  if (poly_eval(inst.f, inst.root) != 0) throw precondition_error("the given point is not a root of f");
  KapranovResult r;
  for (const auto& a : inst.root) r.xi.push_back(inst.v(a));
  r.member = corner_locus_member(tilde_v(inst.v, inst.f), r.xi);
  return r;
}

struct InstanceShape {
  std::int64_t p = 2;
  std::size_t nvars = 1;
  std::uint32_t degree = 2;
};

inline void validate_shape(const InstanceShape& shape) {
  if (!is_prime(shape.p)) throw precondition_error(std::to_string(shape.p) + " is not prime");
  if (shape.nvars < 1 || shape.nvars > 2) throw precondition_error("instance generation supports n in {1, 2}");
  if (shape.degree < 1 || shape.degree > 6) throw precondition_error("instance degree must be in 1..6");
}

namespace detail {

// ± p^k · m with k ∈ [lo, hi], m ∈ [1, max_m].
inline Rational padic_flavoured(std::mt19937_64& rng, std::int64_t p, int lo, int hi, int max_m) {
  const auto k = uniform_int(rng, lo, hi);
  Rational r(uniform_int(rng, 1, max_m));
  const Integer pk = power(p, static_cast<unsigned>(k < 0 ? -k : k));
  r = k < 0 ? Rational(r / Rational(pk)) : Rational(r * Rational(pk));
  return uniform_int(rng, 0, 1) == 0 ? r : Rational(-r);
}

}  // namespace detail

/// One deterministic root instance: a product of `degree` linear factors, the
/// first of which vanishes at the chosen root. Roots and coefficients are
/// small integers times powers of p.
inline KapranovInstance generate_root_instance(std::uint64_t seed, std::uint64_t index, const InstanceShape& shape) {
  validate_shape(shape);
  auto rng = make_rng(seed, index * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(shape.p) * 131 +
                                shape.nvars * 17 + shape.degree);
  const std::size_t n = shape.nvars;
  std::vector<Rational> root;
  for (std::size_t k = 0; k < n; ++k) root.push_back(detail::padic_flavoured(rng, shape.p, -2, 3, 5));

  RationalPoly f = RationalPoly::constant(n, Rational(1));
  for (std::uint32_t j = 0; j < shape.degree; ++j) {
    RationalPoly factor(n);
    if (n == 1) {
      const Rational r = (j == 0 || uniform_int(rng, 0, 2) == 0) ? root[0] : detail::padic_flavoured(rng, shape.p, -2, 3, 5);
      factor = RationalPoly::variable(1, 0) + RationalPoly::constant(1, -r);
    } else {
      const Rational c1 = detail::padic_flavoured(rng, shape.p, -1, 2, 3);
      const Rational c2 = detail::padic_flavoured(rng, shape.p, -1, 2, 3);
      Rational c0;
      if (j == 0 || uniform_int(rng, 0, 2) == 0) c0 = -(c1 * root[0] + c2 * root[1]);
      else if (uniform_int(rng, 0, 3) != 0) c0 = detail::padic_flavoured(rng, shape.p, -2, 3, 5);
      factor = RationalPoly::constant(2, c1) * RationalPoly::variable(2, 0) +
               RationalPoly::constant(2, c2) * RationalPoly::variable(2, 1) + RationalPoly::constant(2, c0);
    }
    f = f * factor;
  }
  if (poly_eval(f, root) != 0) throw std::logic_error("generated instance does not vanish at its root");
  return {std::move(f), std::move(root), padic_valuation(shape.p)};
}

inline std::vector<KapranovInstance> generate_root_instances(std::uint64_t seed, std::size_t count, std::int64_t p,
                                                             std::size_t n, std::uint32_t degree) {
  if (count > 1'000'000) throw precondition_error("instance count above 10^6");
  const InstanceShape shape{p, n, degree};
  validate_shape(shape);
  std::vector<KapranovInstance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(generate_root_instance(seed, i, shape));
  return out;
}

/// Runs `fn(i)` for i in [0, count) on up to `threads` workers; results are
/// stored by index so the merged output order never depends on scheduling.
template <typename R>
std::vector<R> parallel_indexed(std::size_t count, const std::function<R(std::size_t)>& fn, unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < count; i += threads) slots[i].emplace(fn(i));
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct BatchConfig {
  std::uint64_t seed = 7;
  std::size_t count = 10'000;
  std::vector<std::int64_t> primes = {2, 3, 5};
  unsigned threads = 0;
};

// Instance i cycles through primes, then n ∈ {1, 2}, then degree 1..6.
inline InstanceShape batch_shape(const BatchConfig& config, std::size_t i) {
  const std::size_t np = config.primes.size();
  return {config.primes[i % np], 1 + (i / np) % 2, static_cast<std::uint32_t>(1 + (i / (2 * np)) % 6)};
}

struct Theorem51Record {
  std::size_t index = 0;
  InstanceShape shape;
  RationalPoly f;
  std::vector<Rational> point;
  bool root = false;
  Theorem51Result result;

  nlohmann::json to_json() const {
    nlohmann::json pt = nlohmann::json::array();
    for (const auto& a : point) pt.push_back(render_rational(a));
    return {{"index", index},
            {"p", shape.p},
            {"n", shape.nvars},
            {"degree", shape.degree},
            {"poly", render(f)},
            {"point", pt},
            {"root", root},
            {"lhs", render(result.lhs)},
            {"rhs", render(result.rhs)},
            {"gs", result.gs_holds},
            {"ghost_discrepancy_ok", result.ghost_discrepancy_ok},
            {"argmax_ok", result.argmax_ok},
            {"refuted", result.refuted()}};
  }
};

/// Half the instances are evaluated at their generated root, half at a random
/// point (almost never a root), with φ the tangible lift of the p-adic valuation.
inline Theorem51Record run_theorem51_instance(const BatchConfig& config, std::size_t i) {
  Theorem51Record rec;
  rec.index = i;
  rec.shape = batch_shape(config, i);
  KapranovInstance base = generate_root_instance(config.seed, i, rec.shape);
  auto rng = make_rng(config.seed ^ 0x7eb1ULL, i);
  if (uniform_int(rng, 0, 1) == 0) {
    rec.point = base.root;
  } else {
    for (std::size_t k = 0; k < rec.shape.nvars; ++k) {
      rec.point.push_back(uniform_int(rng, 0, 9) == 0 ? Rational(0) : detail::padic_flavoured(rng, rec.shape.p, -2, 3, 7));
    }
  }
  rec.f = std::move(base.f);
  rec.root = poly_eval(rec.f, rec.point) == 0;
  rec.result = check_theorem51({rec.f, rec.point, tangible_lift(base.v)});
  return rec;
}

inline std::vector<Theorem51Record> run_theorem51_batch(const BatchConfig& config) {
  if (config.primes.empty()) throw precondition_error("no primes given");
  for (auto p : config.primes) validate_shape({p, 1, 1});
  return parallel_indexed<Theorem51Record>(
      config.count, [&config](std::size_t i) { return run_theorem51_instance(config, i); }, config.threads);
}

struct KapranovRecord {
  std::size_t index = 0;
  InstanceShape shape;
  RationalPoly f;
  std::vector<Rational> root;
  KapranovResult result;

  nlohmann::json to_json() const {
    nlohmann::json rt = nlohmann::json::array();
    for (const auto& a : root) rt.push_back(render_rational(a));
    nlohmann::json xi = nlohmann::json::array();
    for (const auto& x : result.xi) xi.push_back(render(x));
    return {{"index", index}, {"p", shape.p},   {"n", shape.nvars}, {"degree", shape.degree},
            {"poly", render(f)}, {"root", rt}, {"xi", xi},         {"member", result.member}};
  }
};

inline std::vector<KapranovRecord> run_kapranov_batch(const BatchConfig& config) {
  if (config.primes.empty()) throw precondition_error("no primes given");
  for (auto p : config.primes) validate_shape({p, 1, 1});
  return parallel_indexed<KapranovRecord>(
      config.count,
      [&config](std::size_t i) {
        KapranovRecord rec;
        rec.index = i;
        rec.shape = batch_shape(config, i);
        KapranovInstance inst = generate_root_instance(config.seed, i, rec.shape);
        rec.result = check_kapranov(inst);
        rec.f = std::move(inst.f);
        rec.root = std::move(inst.root);
        return rec;
      },
      config.threads);
}

struct MonotonicityReport {
  DominanceReport dominance;
  std::optional<Theorem51Result> source_result;
  std::optional<Theorem51Result> target_result;
  std::string theorem_error;  // set when a hypothesis check rejected φ or ψ
  bool transports_lhs = false;
  bool transports_rhs = false;

  bool passed() const {
    return dominance.passed() && theorem_error.empty() && source_result && !source_result->refuted() &&
           target_result && !target_result->refuted() && transports_lhs && transports_rhs;
  }
};

/// Theorem checks for φ and ψ on (f, a), plus α carrying φ's lhs/rhs onto ψ's.
/// Dominance failures are reported apart from theorem outcomes.
inline MonotonicityReport check_dominance_monotonicity(const RationalPoly& f, const std::vector<Rational>& point,
                                                       const Supervaluation& phi, const Supervaluation& psi,
                                                       const Transmission& alpha,
                                                       const FragmentOptions& options = {}) {
  MonotonicityReport report;
  std::vector<Rational> samples = hypothesis_base(f, point);
  report.dominance = verify_dominance({phi, psi, alpha, samples}, options);
  try {
    report.source_result = check_theorem51({f, point, phi});
    report.target_result = check_theorem51({f, point, psi});
  } catch (const precondition_error& e) {
    report.theorem_error = e.what();
    return report;
  }
  const auto lhs = alpha.apply(report.source_result->lhs);
  const auto rhs = alpha.apply(report.source_result->rhs);
  report.transports_lhs = lhs && *lhs == report.target_result->lhs;
  report.transports_rhs = rhs && *rhs == report.target_result->rhs;
  return report;
}

}  // namespace supertrop
