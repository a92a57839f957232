#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stop_token>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "supertrop/errors.hpp"

namespace supertrop {

/// A finite commutative-semiring candidate given by Cayley tables over indices 0..n-1.
struct FiniteSemiringTable {
  using Index = std::size_t;
  using Table = std::vector<std::vector<Index>>;

  std::vector<std::string> names;
  Index zero = 0;
  Index one = 0;
  Table add;
  Table mul;

  std::size_t size() const noexcept { return names.size(); }
  Index sum(Index a, Index b) const { return add[a][b]; }
  Index product(Index a, Index b) const { return mul[a][b]; }

  // Throws precondition_error describing the first structural defect.
  void validate() const {
    const std::size_t n = names.size();
    if (n == 0) throw precondition_error("table has no elements");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (names[i] == names[j]) throw precondition_error("duplicate element name '" + names[i] + "'");
      }
    }
    if (zero >= n || one >= n) throw precondition_error("zero/one index out of range");
    if (zero == one && n != 1) throw precondition_error("zero and one coincide in a table with more than one element");
    auto check = [n](const Table& t, const char* which) {
      if (t.size() != n) throw precondition_error(std::string(which) + " table must have " + std::to_string(n) + " rows");
      for (const auto& row : t) {
        if (row.size() != n) throw precondition_error(std::string(which) + " table rows must have " + std::to_string(n) + " entries");
        for (Index v : row) {
          if (v >= n) throw precondition_error(std::string(which) + " table entry out of range");
        }
      }
    };
    check(add, "add");
    check(mul, "mul");
  }

  // {"names":[...], "zero":"...", "one":"...", "add":[[...]], "mul":[[...]]}, label matrices row-major.
  static FiniteSemiringTable from_json(const nlohmann::json& j) {
    FiniteSemiringTable t;
    try {
      t.names = j.at("names").get<std::vector<std::string>>();
      std::unordered_map<std::string, Index> index;
      for (Index i = 0; i < t.names.size(); ++i) index.emplace(t.names[i], i);
      auto lookup = [&index](const std::string& label) {
        auto it = index.find(label);
        if (it == index.end()) throw precondition_error("unknown element label '" + label + "'");
        return it->second;
      };
      t.zero = lookup(j.at("zero").get<std::string>());
      t.one = lookup(j.at("one").get<std::string>());
      auto read = [&](const char* key) {
        Table out;
        for (const auto& row : j.at(key)) {
          std::vector<Index> r;
          for (const auto& cell : row) r.push_back(lookup(cell.get<std::string>()));
          out.push_back(std::move(r));
        }
        return out;
      };
      t.add = read("add");
      t.mul = read("mul");
    } catch (const nlohmann::json::exception& e) {
      throw precondition_error(std::string("malformed table JSON: ") + e.what());
    }
    t.validate();
    return t;
  }

  nlohmann::json to_json() const {
    auto labels = [this](const Table& t) {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& row : t) {
        nlohmann::json r = nlohmann::json::array();
        for (Index v : row) r.push_back(names[v]);
        rows.push_back(std::move(r));
      }
      return rows;
    };
    return {{"names", names}, {"zero", names[zero]}, {"one", names[one]}, {"add", labels(add)}, {"mul", labels(mul)}};
  }
};

enum class LawStatus { passed, failed, skipped };

inline const char* to_string(LawStatus s) {
  switch (s) {
    case LawStatus::passed: return "pass";
    case LawStatus::failed: return "fail";
    case LawStatus::skipped: return "skipped";
  }
  return "?";
}

struct LawResult {
  std::string name;
  LawStatus status = LawStatus::passed;
  std::vector<FiniteSemiringTable::Index> witness;  // element indices, checkable by table lookup
  std::string note;
};

struct AuditReport {
  std::vector<LawResult> laws;
  bool semiring = false;
  bool supertropical = false;  // ST1–ST4
  bool st5 = false;
  bool bipotent = false;
  std::optional<FiniteSemiringTable::Index> e;
  std::vector<FiniteSemiringTable::Index> tangibles;
  std::vector<FiniteSemiringTable::Index> ghosts;

  const LawResult* find(const std::string& name) const {
    for (const auto& law : laws) {
      if (law.name == name) return &law;
    }
    return nullptr;
  }

  bool passed(const std::string& name) const {
    const LawResult* law = find(name);
    return law != nullptr && law->status == LawStatus::passed;
  }

  nlohmann::json to_json(const FiniteSemiringTable& t) const {
    auto labels = [&t](const std::vector<FiniteSemiringTable::Index>& idx) {
      nlohmann::json out = nlohmann::json::array();
      for (auto i : idx) out.push_back(t.names[i]);
      return out;
    };
    nlohmann::json laws_json = nlohmann::json::array();
    for (const auto& law : laws) {
      nlohmann::json l = {{"law", law.name}, {"status", to_string(law.status)}};
      if (!law.witness.empty()) l["witness"] = labels(law.witness);
      if (!law.note.empty()) l["note"] = law.note;
      laws_json.push_back(std::move(l));
    }
    nlohmann::json j = {{"semiring", semiring},
                        {"supertropical", supertropical},
                        {"st5", st5},
                        {"bipotent", bipotent},
                        {"laws", laws_json}};
    j["e"] = e ? nlohmann::json(t.names[*e]) : nlohmann::json(nullptr);
    j["tangibles"] = labels(tangibles);
    j["ghosts"] = labels(ghosts);
    return j;
  }
};

namespace detail {

using Index = FiniteSemiringTable::Index;

inline LawResult law_over_triples(const std::string& name, std::size_t n, auto&& holds) {
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c)
        if (!holds(a, b, c)) return {name, LawStatus::failed, {a, b, c}, {}};
  return {name, LawStatus::passed, {}, {}};
}

inline LawResult law_over_pairs(const std::string& name, std::size_t n, auto&& holds) {
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      if (!holds(a, b)) return {name, LawStatus::failed, {a, b}, {}};
  return {name, LawStatus::passed, {}, {}};
}

inline LawResult law_over_elements(const std::string& name, std::size_t n, auto&& holds) {
  for (Index a = 0; a < n; ++a)
    if (!holds(a)) return {name, LawStatus::failed, {a}, {}};
  return {name, LawStatus::passed, {}, {}};
}

inline std::vector<LawResult> semiring_laws(const FiniteSemiringTable& t) {
  const std::size_t n = t.size();
  const auto& add = t.add;
  const auto& mul = t.mul;
  std::vector<LawResult> laws;
  laws.push_back(law_over_triples("add_associative", n, [&](Index a, Index b, Index c) {
    return add[add[a][b]][c] == add[a][add[b][c]];
  }));
  laws.push_back(law_over_triples("mul_associative", n, [&](Index a, Index b, Index c) {
    return mul[mul[a][b]][c] == mul[a][mul[b][c]];
  }));
  laws.push_back(law_over_pairs("add_commutative", n, [&](Index a, Index b) { return add[a][b] == add[b][a]; }));
  laws.push_back(law_over_pairs("mul_commutative", n, [&](Index a, Index b) { return mul[a][b] == mul[b][a]; }));
  laws.push_back(law_over_elements("add_identity", n, [&](Index a) { return add[t.zero][a] == a && add[a][t.zero] == a; }));
  laws.push_back(law_over_elements("mul_identity", n, [&](Index a) { return mul[t.one][a] == a && mul[a][t.one] == a; }));
  laws.push_back(law_over_elements("zero_absorbing", n, [&](Index a) {
    return mul[t.zero][a] == t.zero && mul[a][t.zero] == t.zero;
  }));
  laws.push_back(law_over_triples("distributive", n, [&](Index a, Index b, Index c) {
    return mul[a][add[b][c]] == add[mul[a][b]][mul[a][c]] && mul[add[b][c]][a] == add[mul[b][a]][mul[c][a]];
  }));
  return laws;
}

}  // namespace detail

/// Checks the commutative-semiring laws; each failure carries the first witness found.
inline AuditReport audit_semiring(const FiniteSemiringTable& t) {
  t.validate();
  AuditReport report;
  report.laws = detail::semiring_laws(t);
  report.semiring = std::all_of(report.laws.begin(), report.laws.end(),
                                [](const LawResult& l) { return l.status == LawStatus::passed; });
  return report;
}

/// Semiring laws plus ST1–ST5. ST5 is reported on its own and does not affect
/// `supertropical`, so ST5-violating structures are identified rather than rejected.
inline AuditReport audit_supertropical(const FiniteSemiringTable& t) {
  using detail::Index;
  AuditReport report = audit_semiring(t);
  const std::size_t n = t.size();
  const auto& add = t.add;
  const auto& mul = t.mul;

  const std::vector<std::string> st_names = {"st1_e_idempotent", "st2_ghost_ideal_bipotent", "st3_dominant_summand",
                                             "st4_equal_ghosts",  "ghost_kernel_trivial",     "st5_tag_closure"};
  if (!report.semiring) {
    for (const auto& name : st_names) report.laws.push_back({name, LawStatus::skipped, {}, "semiring laws fail"});
    return report;
  }

  const Index e = add[t.one][t.one];
  report.e = e;
  LawResult st1{st_names[0], LawStatus::passed, {}, {}};
  if (mul[e][e] != e || add[e][e] != e) st1 = {st_names[0], LawStatus::failed, {e}, "e*e or e+e differs from e"};
  report.laws.push_back(st1);

  std::vector<bool> in_ghost_ideal(n, false);
  for (Index x = 0; x < n; ++x) in_ghost_ideal[mul[e][x]] = true;

  LawResult st2{st_names[1], LawStatus::passed, {}, {}};
  for (Index a = 0; a < n && st2.status == LawStatus::passed; ++a) {
    if (!in_ghost_ideal[a]) continue;
    for (Index b = 0; b < n; ++b) {
      if (in_ghost_ideal[b] && !in_ghost_ideal[add[a][b]]) {
        st2 = {st_names[1], LawStatus::failed, {a, b}, "eU not closed under addition"};
        break;
      }
      if (in_ghost_ideal[b] && add[a][b] != a && add[a][b] != b) {
        st2 = {st_names[1], LawStatus::failed, {a, b}, "eU not bipotent"};
        break;
      }
      if (!in_ghost_ideal[mul[a][b]]) {
        st2 = {st_names[1], LawStatus::failed, {a, b}, "eU not an ideal"};
        break;
      }
    }
  }
  report.laws.push_back(st2);

  if (st1.status != LawStatus::passed || st2.status != LawStatus::passed) {
    for (std::size_t k = 2; k < st_names.size(); ++k) {
      report.laws.push_back({st_names[k], LawStatus::skipped, {}, "requires ST1 and ST2"});
    }
    return report;
  }

  // On a bipotent eU: a < b ⟺ a + b = b and a ≠ b.
  auto ghost_less = [&](Index a, Index b) { return a != b && add[a][b] == b; };
  auto ghost = [&](Index x) { return mul[e][x]; };

  report.laws.push_back(detail::law_over_pairs(st_names[2], n, [&](Index x, Index y) {
    return !ghost_less(ghost(x), ghost(y)) || add[x][y] == y;
  }));
  report.laws.push_back(detail::law_over_pairs(st_names[3], n, [&](Index x, Index y) {
    return ghost(x) != ghost(y) || add[x][y] == ghost(x);
  }));
  report.laws.push_back(detail::law_over_elements(st_names[4], n, [&](Index x) {
    return ghost(x) != t.zero || x == t.zero;
  }));

  for (Index x = 0; x < n; ++x) {
    if (!in_ghost_ideal[x]) report.tangibles.push_back(x);
    else if (x != t.zero) report.ghosts.push_back(x);
  }
  auto tag_of = [&](Index x) { return x == t.zero ? 0 : (in_ghost_ideal[x] ? 2 : 1); };
  report.laws.push_back(detail::law_over_pairs(st_names[5], n, [&](Index x, Index y) {
    const int tx = tag_of(x);
    const int ty = tag_of(y);
    if (tx == 0 || ty == 0 || tx != ty) return true;
    return tag_of(mul[x][y]) == tx;
  }));

  report.supertropical = true;
  for (std::size_t k = 0; k + 1 < st_names.size(); ++k) {
    report.supertropical = report.supertropical && report.passed(st_names[k]);
  }
  report.st5 = report.passed(st_names[5]);
  report.bipotent = true;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      if (add[a][b] != a && add[a][b] != b) report.bipotent = false;
  return report;
}

struct HomomorphismSearchOptions {
  std::size_t max_source_size = 12;
  std::stop_token stop;
};

/// All maps src → dst preserving 0, 1, + and ·. Exhaustive over every
/// assignment of the non-unit elements; refuses sources above the size bound.
inline std::vector<std::vector<FiniteSemiringTable::Index>> find_homomorphisms(
    const FiniteSemiringTable& src, const FiniteSemiringTable& dst, const HomomorphismSearchOptions& options = {}) {
  using detail::Index;
  src.validate();
  dst.validate();
  if (src.size() > options.max_source_size) {
    throw limit_exceeded("source table has " + std::to_string(src.size()) + " elements; bound is " +
                         std::to_string(options.max_source_size));
  }
  std::vector<std::vector<Index>> found;
  const std::size_t n = src.size();
  const std::size_t m = dst.size();

  std::vector<Index> map(n, 0);
  std::vector<bool> fixed(n, false);
  map[src.zero] = dst.zero;
  fixed[src.zero] = true;
  if (fixed[src.one] && map[src.one] != dst.one) return found;
  map[src.one] = dst.one;
  fixed[src.one] = true;

  std::vector<Index> free_slots;
  for (Index i = 0; i < n; ++i)
    if (!fixed[i]) free_slots.push_back(i);

  auto is_homomorphism = [&]() {
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) {
        if (map[src.add[a][b]] != dst.add[map[a]][map[b]]) return false;
        if (map[src.mul[a][b]] != dst.mul[map[a]][map[b]]) return false;
      }
    return true;
  };

  std::uint64_t visited = 0;
  while (true) {
    if ((++visited & 0xfff) == 0 && options.stop.stop_requested()) throw cancelled();
    if (is_homomorphism()) found.push_back(map);
    std::size_t k = 0;
    for (; k < free_slots.size(); ++k) {
      Index& slot = map[free_slots[k]];
      if (++slot < m) break;
      slot = 0;
    }
    if (k == free_slots.size()) break;
  }
  return found;
}

}  // namespace supertrop
