#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "supertrop/supertrop.hpp"

namespace supertrop::cli {

enum ExitCode : int { ok = 0, input_error = 1, refutation = 2 };

struct RunConfig {
  std::string subcommand;
  std::string action;  // verify target or supervaluation check
  std::string expr;
  std::string x, y;
  std::string table, src, dst;
  std::size_t max_source_size = 12;
  std::string valuation = "padic:2";
  std::string source = "Q";
  std::string kind = "tangible";
  std::size_t random = 1000;
  std::uint64_t seed = 7;
  std::string pairs_path;
  std::vector<std::string> at;
  std::string witness;
  std::string poly;
  std::size_t nvars = 1;
  std::string grid;
  std::string csv_path, svg_path, out_path;
  std::vector<std::int64_t> primes;
  std::vector<std::string> root;
  std::size_t count = 10'000;
  unsigned threads = 0;
};

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("SUPERTROP_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return 7;
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw precondition_error("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw precondition_error(path + ": " + e.what());
  }
}

inline std::vector<SamplePair> load_pairs(const RunConfig& c, SourceRing source) {
  std::vector<SamplePair> pairs;
  if (c.pairs_path.empty()) {
    pairs = random_pairs(c.seed, c.random, source);
  } else {
    for (const auto& p : read_json_file(c.pairs_path)) {
      pairs.emplace_back(parse_rational(p.at(0).get<std::string>()), parse_rational(p.at(1).get<std::string>()));
    }
  }
  require_in_source(source, pairs);
  return pairs;
}

inline nlohmann::json witnesses_json(const std::vector<PairViolation>& violations, std::size_t limit = 5) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < violations.size() && i < limit; ++i) {
    const auto& v = violations[i];
    out.push_back({{"law", v.law}, {"a", render_rational(v.a)}, {"b", render_rational(v.b)}});
  }
  return out;
}

inline nlohmann::json pairs_json(const std::vector<SamplePair>& pairs, std::size_t limit = 5) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < pairs.size() && i < limit; ++i) {
    out.push_back({render_rational(pairs[i].first), render_rational(pairs[i].second)});
  }
  return out;
}

class Writer {
 public:
  Writer(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw precondition_error("cannot open " + path + " for writing");
    }
    out_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

inline int run_eval(const RunConfig& c, std::ostream& out) {
  out << render(evaluate_expression(c.expr)) << "\n";
  return ok;
}

inline int run_gs(const RunConfig& c, std::ostream& out) {
  out << (gs_geq(parse_supertropical(c.x), parse_supertropical(c.y)) ? "true" : "false") << "\n";
  return ok;
}

inline int run_audit(const RunConfig& c, std::ostream& out) {
  const auto table = FiniteSemiringTable::from_json(read_json_file(c.table));
  out << audit_supertropical(table).to_json(table).dump(2) << "\n";
  return ok;
}

inline int run_homomorphisms(const RunConfig& c, std::ostream& out) {
  const auto src = FiniteSemiringTable::from_json(read_json_file(c.src));
  const auto dst = FiniteSemiringTable::from_json(read_json_file(c.dst));
  HomomorphismSearchOptions options;
  options.max_source_size = c.max_source_size;
  nlohmann::json maps = nlohmann::json::array();
  for (const auto& h : find_homomorphisms(src, dst, options)) {
    nlohmann::json m = nlohmann::json::object();
    for (std::size_t i = 0; i < h.size(); ++i) m[src.names[i]] = dst.names[h[i]];
    maps.push_back(std::move(m));
  }
  out << nlohmann::json{{"count", maps.size()}, {"homomorphisms", maps}}.dump(2) << "\n";
  return ok;
}

inline int run_valuation(const RunConfig& c, std::ostream& out) {
  const Valuation v = parse_valuation(c.valuation);
  const SourceRing source = parse_source_ring(c.source);
  const auto pairs = load_pairs(c, source);
  const auto axioms = check_valuation_axioms(v, pairs);
  const auto classes = classify_strict_strong(v, pairs);
  nlohmann::json j = {
      {"valuation", v.name()},
      {"source", to_string(source)},
      {"pairs", pairs.size()},
      {"axioms", {{"passed", axioms.passed()}, {"violations", axioms.violations.size()},
                  {"witnesses", witnesses_json(axioms.violations)}}},
      {"strict", {{"on_samples", classes.strict_on_samples()}, {"violations", classes.strict_violations.size()},
                  {"witnesses", pairs_json(classes.strict_violations)}}},
      {"strong", {{"on_samples", classes.strong_on_samples()}, {"violations", classes.strong_violations.size()},
                  {"witnesses", pairs_json(classes.strong_violations)}}}};
  if (!c.at.empty()) {
    nlohmann::json values = nlohmann::json::object();
    for (const auto& a : c.at) values[a] = render(v(parse_rational(a)));
    j["values"] = values;
  }
  out << j.dump(2) << "\n";
  return axioms.passed() ? ok : refutation;
}

inline int run_supervaluation(const RunConfig& c, std::ostream& out) {
  const Supervaluation phi = make_supervaluation(c.kind, parse_valuation(c.valuation));
  const SourceRing source = parse_source_ring(c.source);
  const auto pairs = load_pairs(c, source);
  nlohmann::json j = {{"supervaluation", phi.name()}, {"source", to_string(source)}, {"pairs", pairs.size()}};
  bool passed = true;
  if (c.action == "check-cover") {
    const auto cover = check_cover(phi, pairs);
    passed = cover.holds();
    j["check"] = "cover";
    j["holds"] = passed;
    j["witnesses"] = witnesses_json(cover.violations);
  } else if (c.action == "check-strong") {
    const auto strong = is_strong(phi, pairs);
    const auto gs = gs_strong_check(phi, pairs);
    passed = strong.holds() && gs.holds();
    j["check"] = "strong";
    j["strong"] = {{"holds", strong.holds()}, {"witnesses", witnesses_json(strong.violations)}};
    j["gs_strong"] = {{"holds", gs.holds()}, {"witnesses", witnesses_json(gs.violations)}};
  } else {
    std::vector<Rational> elements;
    for (const auto& [a, b] : pairs) {
      elements.push_back(a);
      elements.push_back(b);
    }
    const auto tangible = is_tangible(phi, elements);
    j["check"] = "tangible";
    j["holds"] = tangible.holds();
    nlohmann::json w = nlohmann::json::array();
    for (std::size_t i = 0; i < tangible.witnesses.size() && i < 5; ++i) w.push_back(render_rational(tangible.witnesses[i]));
    j["witnesses"] = w;
  }
  if (!c.at.empty()) {
    nlohmann::json values = nlohmann::json::object();
    for (const auto& a : c.at) values[a] = render(phi(parse_rational(a)));
    j["values"] = values;
  }
  out << j.dump(2) << "\n";
  // A non-tangible result is a classification, not a refutation.
  return passed || c.action == "check-tangible" ? ok : refutation;
}

inline int run_dominance(const RunConfig& c, std::ostream& out) {
  const auto w = dominance_witness_from_json(read_json_file(c.witness));
  const auto report = verify_dominance(w);
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : report.failures) failures.push_back({{"law", f.law}, {"detail", f.detail}});
  out << nlohmann::json{{"source", w.source.name()},
                        {"target", w.target.name()},
                        {"alpha", w.alpha.name()},
                        {"fragment_size", report.fragment_size},
                        {"passed", report.passed()},
                        {"failures", failures}}
             .dump(2)
      << "\n";
  return report.passed() ? ok : refutation;
}

inline nlohmann::json coefficient_map(const auto& g) {
  nlohmann::json m = nlohmann::json::object();
  for (const auto& [e, coeff] : g.terms()) m[render_exponent(e)] = render(coeff);
  return m;
}

inline int run_tropicalize(const RunConfig& c, std::ostream& out) {
  const RationalPoly f = parse_polynomial(c.poly, c.nvars);
  const Valuation v = parse_valuation(c.valuation);
  nlohmann::json j = {{"poly", render(f)}, {"valuation", v.name()}, {"coefficients", coefficient_map(tilde_v(v, f))}};
  if (c.kind == "tangible" || c.kind == "ghost") {
    const Supervaluation phi = make_supervaluation(c.kind, v);
    j["supervaluation"] = phi.name();
    j["lifted"] = coefficient_map(tilde_map(phi, f));
  }
  out << j.dump(2) << "\n";
  return ok;
}

inline int run_corner_locus(const RunConfig& c, std::ostream& out) {
  const RationalPoly f = parse_polynomial(c.poly, c.nvars);
  const BipotentPoly g = tilde_v(parse_valuation(c.valuation), f);
  const GridSpec grid = parse_grid(c.grid, f.nvars());
  std::vector<TropicalPoint> members;
  {
    Writer csv(c.csv_path, out);
    csv.stream() << "point,member\n";
    for (const auto& p : grid.points()) {
      const bool member = corner_locus_member(g, p);
      csv.stream() << render_point(p) << "," << (member ? "true" : "false") << "\n";
      if (member) members.push_back(p);
    }
  }
  if (!c.svg_path.empty()) emit_svg(members, c.svg_path);
  return ok;
}

inline int run_verify_theorem51(const RunConfig& c, std::ostream& out, std::ostream& err) {
  BatchConfig config;
  config.seed = c.seed;
  config.count = c.count;
  config.threads = c.threads;
  if (!c.primes.empty()) config.primes = c.primes;
  const auto records = run_theorem51_batch(config);
  std::size_t refuted = 0;
  {
    Writer w(c.out_path, out);
    for (const auto& r : records) {
      refuted += r.result.refuted() ? 1 : 0;
      w.stream() << r.to_json().dump() << "\n";
    }
  }
  err << "theorem51: " << records.size() << " instances, " << refuted << " refutations\n";
  if (refuted) {
    err << "REFUTATION: the ghost-surpassing identity failed on " << refuted << " instance(s)\n";
    return refutation;
  }
  return ok;
}

inline int run_verify_kapranov(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (!c.poly.empty()) {
    if (c.primes.size() > 1) throw precondition_error("a single --p is expected with --poly");
    const std::int64_t p = c.primes.empty() ? 2 : c.primes.front();
    const RationalPoly f = parse_polynomial(c.poly, std::max(c.nvars, c.root.size()));
    std::vector<Rational> root;
    for (const auto& r : c.root) root.push_back(parse_rational(r));
    const auto result = check_kapranov({f, root, padic_valuation(p)});
    nlohmann::json xi = nlohmann::json::array();
    for (const auto& x : result.xi) xi.push_back(render(x));
    out << nlohmann::json{{"poly", render(f)}, {"root", c.root}, {"p", p}, {"xi", xi}, {"member", result.member}}.dump()
        << "\n";
    if (!result.member) {
      err << "REFUTATION: v(a) is not in the corner locus\n";
      return refutation;
    }
    return ok;
  }
  BatchConfig config;
  config.seed = c.seed;
  config.count = c.count;
  config.threads = c.threads;
  if (!c.primes.empty()) config.primes = c.primes;
  const auto records = run_kapranov_batch(config);
  std::size_t refuted = 0;
  {
    Writer w(c.out_path, out);
    for (const auto& r : records) {
      refuted += r.result.refuted() ? 1 : 0;
      w.stream() << r.to_json().dump() << "\n";
    }
  }
  err << "kapranov: " << records.size() << " root instances, " << refuted << " refutations\n";
  return refuted ? refutation : ok;
}

inline int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.subcommand == "eval") return run_eval(c, out);
  if (c.subcommand == "gs") return run_gs(c, out);
  if (c.subcommand == "audit") return run_audit(c, out);
  if (c.subcommand == "homomorphisms") return run_homomorphisms(c, out);
  if (c.subcommand == "valuation") return run_valuation(c, out);
  if (c.subcommand == "supervaluation") return run_supervaluation(c, out);
  if (c.subcommand == "dominance") return run_dominance(c, out);
  if (c.subcommand == "tropicalize") return run_tropicalize(c, out);
  if (c.subcommand == "corner-locus") return run_corner_locus(c, out);
  if (c.subcommand == "verify") {
    if (c.action == "theorem51") return run_verify_theorem51(c, out, err);
    return run_verify_kapranov(c, out, err);
  }
  err << "unknown subcommand '" << c.subcommand << "'\n";
  return input_error;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  c.seed = default_seed();
  CLI::App app{"Supertropical arithmetic, valuations and tropical corner loci"};
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "Evaluate an expression over U(Q), e.g. \"(t2 + g1) * t-1\"");
  eval->add_option("--expr", c.expr, "Expression over elements 0 | t<q> | g<q>")->required();

  auto* gs = app.add_subcommand("gs", "Decide the ghost-surpassing relation x |= y");
  gs->add_option("--x", c.x)->required();
  gs->add_option("--y", c.y)->required();

  auto* audit = app.add_subcommand("audit", "Audit a finite table for semiring laws and ST1-ST5");
  audit->add_option("--table", c.table, "JSON table file")->required();

  auto* homs = app.add_subcommand("homomorphisms", "Enumerate semiring homomorphisms between finite tables");
  homs->add_option("--src", c.src)->required();
  homs->add_option("--dst", c.dst)->required();
  homs->add_option("--max-size", c.max_source_size, "Refuse sources larger than this");

  auto add_sampling = [&c](CLI::App* sub) {
    sub->add_option("--valuation", c.valuation, "padic:<p> | trivial");
    sub->add_option("--source", c.source, "Q | Qplus");
    sub->add_option("--random", c.random, "Number of random sample pairs");
    sub->add_option("--seed", c.seed, "Random seed (default $SUPERTROP_SEED or 7)");
    sub->add_option("--pairs", c.pairs_path, "JSON list of rational pairs instead of random samples");
    sub->add_option("--at", c.at, "Also report the value at these rationals");
  };

  auto* val = app.add_subcommand("valuation", "Check the valuation axioms and strict/strong behaviour on samples");
  add_sampling(val);

  auto* sup = app.add_subcommand("supervaluation", "Check a supervaluation on samples");
  add_sampling(sup);
  sup->add_option("--kind", c.kind, "tangible | ghost")->check(CLI::IsMember({"tangible", "ghost"}));
  sup->add_option("check", c.action, "check-cover | check-strong | check-tangible")
      ->required()
      ->check(CLI::IsMember({"check-cover", "check-strong", "check-tangible"}));

  auto* dom = app.add_subcommand("dominance", "Verify a dominance witness");
  dom->add_option("--witness", c.witness, "JSON witness file")->required();

  auto* trop = app.add_subcommand("tropicalize", "Apply v (and optionally a supervaluation) coefficientwise");
  trop->add_option("--poly", c.poly)->required();
  trop->add_option("--valuation", c.valuation, "padic:<p> | trivial");
  trop->add_option("--kind", c.kind, "Also lift with this supervaluation: tangible | ghost | none")
      ->check(CLI::IsMember({"tangible", "ghost", "none"}));
  trop->add_option("--nvars", c.nvars, "Minimum variable count");

  auto* corner = app.add_subcommand("corner-locus", "Sample the corner locus of v~(f) on a grid");
  corner->add_option("--poly", c.poly)->required();
  corner->add_option("--valuation", c.valuation, "padic:<p> | trivial");
  corner->add_option("--grid", c.grid, "e.g. x=-4..1:1,y=-2..2:1/2")->required();
  corner->add_option("--nvars", c.nvars, "Minimum variable count");
  corner->add_option("--csv", c.csv_path, "Write CSV here instead of stdout");
  corner->add_option("--svg", c.svg_path, "Write an SVG scatter of member points (n = 2)");

  auto* verify = app.add_subcommand("verify", "Machine-check the perturbation theorem or Kapranov containment");
  verify->add_option("target", c.action, "theorem51 | kapranov")
      ->required()
      ->check(CLI::IsMember({"theorem51", "kapranov"}));
  verify->add_option("--p", c.primes, "Prime(s); default cycles 2,3,5")->delimiter(',');
  verify->add_option("--count", c.count, "Number of generated instances");
  verify->add_option("--seed", c.seed, "Random seed (default $SUPERTROP_SEED or 7)");
  verify->add_option("--threads", c.threads, "Worker threads (0 = hardware)");
  verify->add_option("--out", c.out_path, "Write JSON lines here instead of stdout");
  verify->add_option("--poly", c.poly, "Single kapranov check for this polynomial");
  verify->add_option("--root", c.root, "Root coordinates for --poly")->delimiter(',');
  verify->add_option("--nvars", c.nvars, "Minimum variable count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Prints per-subcommand help for --help; everything else is a usage error.
    return app.exit(e, out, err) == 0 ? ok : input_error;
  }
  for (auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();

  try {
    return dispatch(c, out, err);
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const precondition_error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const limit_exceeded& e) {
    err << "refused: " << e.what() << "\n";
  } catch (const domain_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return input_error;
}

}  // namespace supertrop::cli
