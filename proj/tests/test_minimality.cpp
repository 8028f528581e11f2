#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "minimodel/minimality.hpp"
#include "testgen.hpp"

using namespace minimodel;

namespace {

Interpretation two_cycle() {
  Interpretation i;
  i.domain = {"d", "e"};
  i.individuals = {{"a", 0}, {"b", 1}};
  i.concepts["A"] = {0, 1};
  i.roles["r"] = {{0, 1}, {1, 0}};
  return i;
}

KnowledgeBase cycle_kb() {
  return parse_kb("exists r. A [= A\nr(a, b)\nr(b, a)\n");
}

// ---- independent brute-force reference, used to validate the library ----

struct BruteFact {
  bool is_role;
  std::string pred;
  int a, b;
};

struct BruteUniverse {
  std::vector<BruteFact> facts;
  Interpretation base;  // domain and individual map, empty extensions
  std::uint64_t forced = 0;
};

BruteUniverse make_universe(const KnowledgeBase& kb, int n) {
  BruteUniverse u;
  for (int d = 0; d < n; ++d) u.base.domain.push_back("e" + std::to_string(d));

  // individuals in first-appearance order, ABox first, then TBox nominals
  std::vector<std::string> inds;
  auto add_ind = [&](const std::string& s) {
    if (std::find(inds.begin(), inds.end(), s) == inds.end()) inds.push_back(s);
  };
  for (const auto& as : kb.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&as)) add_ind(ca->individual);
    else {
      add_ind(std::get<RoleAssertion>(as).subject);
      add_ind(std::get<RoleAssertion>(as).object);
    }
  }
  std::set<std::string> cs, rs, is;
  for (const auto& ax : kb.tbox) {
    detail::collect_names(ax.lhs, cs, rs, is);
    detail::collect_names(ax.rhs, cs, rs, is);
  }
  for (const auto& i : is) add_ind(i);
  REQUIRE(static_cast<int>(inds.size()) <= n);
  for (size_t k = 0; k < inds.size(); ++k) u.base.individuals[inds[k]] = static_cast<int>(k);

  Signature sig = signature(kb);
  for (const auto& c : sig.concept_names)
    for (int d = 0; d < n; ++d) u.facts.push_back({false, c, d, -1});
  for (const auto& r : sig.role_names)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) u.facts.push_back({true, r, x, y});

  for (const auto& as : kb.abox) {
    std::string pred;
    int a, b;
    if (const auto* ca = std::get_if<ConceptAssertion>(&as)) {
      pred = ca->concept_name;
      a = u.base.individuals.at(ca->individual);
      b = -1;
    } else {
      const auto& ra = std::get<RoleAssertion>(as);
      pred = ra.role;
      a = u.base.individuals.at(ra.subject);
      b = u.base.individuals.at(ra.object);
    }
    for (size_t f = 0; f < u.facts.size(); ++f)
      if (u.facts[f].pred == pred && u.facts[f].a == a && u.facts[f].b == b)
        u.forced |= 1ull << f;
  }
  return u;
}

Interpretation realize(const BruteUniverse& u, std::uint64_t mask) {
  Interpretation i = u.base;
  for (size_t f = 0; f < u.facts.size(); ++f) {
    if (!(mask >> f & 1)) continue;
    const BruteFact& fa = u.facts[f];
    if (fa.is_role) i.roles[fa.pred].insert({fa.a, fa.b});
    else i.concepts[fa.pred].insert(fa.a);
  }
  return i;
}

std::vector<std::uint64_t> all_model_masks(const KnowledgeBase& kb, const BruteUniverse& u) {
  std::vector<int> free;
  for (size_t f = 0; f < u.facts.size(); ++f)
    if (!(u.forced >> f & 1)) free.push_back(static_cast<int>(f));
  REQUIRE(free.size() <= 16);
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 0; s < (1ull << free.size()); ++s) {
    std::uint64_t mask = u.forced;
    for (size_t b = 0; b < free.size(); ++b)
      if (s >> b & 1) mask |= 1ull << free[b];
    if (is_model(realize(u, mask), kb)) out.push_back(mask);
  }
  return out;
}

std::vector<std::uint64_t> minimal_masks(const std::vector<std::uint64_t>& models) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m : models) {
    bool minimal = true;
    for (std::uint64_t m2 : models)
      if (m2 != m && (m2 & ~m) == 0) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(m);
  }
  return out;
}

// smaller model agreeing with m outside a single element
bool brute_pointwise_minimal(const BruteUniverse& u, const std::vector<std::uint64_t>& models,
                             std::uint64_t m, int n) {
  for (std::uint64_t m2 : models) {
    if (m2 == m || (m2 & ~m) != 0) continue;
    std::uint64_t dropped = m & ~m2;
    for (int e = 0; e < n; ++e) {
      bool all_touch_e = true;
      for (size_t f = 0; f < u.facts.size(); ++f) {
        if (!(dropped >> f & 1)) continue;
        const BruteFact& fa = u.facts[f];
        if (!(fa.a == e || (fa.is_role && fa.b == e))) {
          all_touch_e = false;
          break;
        }
      }
      if (all_touch_e) return false;
    }
  }
  return true;
}

// isomorphism over permutations of the domain that fix every individual image
bool isomorphic_fixing_individuals(const Interpretation& x, const Interpretation& y) {
  if (x.size() != y.size() || x.individuals != y.individuals) return false;
  int n = x.size();
  std::set<int> named;
  for (const auto& [_, e] : x.individuals) named.insert(e);
  std::vector<int> movable;
  for (int d = 0; d < n; ++d)
    if (!named.count(d)) movable.push_back(d);

  std::vector<int> arrangement = movable;
  do {
    std::vector<int> perm(n);
    for (int d = 0; d < n; ++d) perm[d] = d;
    for (size_t k = 0; k < movable.size(); ++k) perm[movable[k]] = arrangement[k];
    Interpretation mapped = y;  // same domain and individuals
    mapped.concepts.clear();
    mapped.roles.clear();
    for (const auto& [c, ext] : x.concepts)
      for (int e : ext) mapped.concepts[c].insert(perm[e]);
    for (const auto& [r, ext] : x.roles)
      for (auto [s, o] : ext) mapped.roles[r].insert({perm[s], perm[o]});
    if (compare(mapped, y) == Comparison::Equal) return true;
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  return false;
}

}  // namespace

TEST_CASE("the all-true cycle model shrinks to the empty extension") {
  Interpretation i = two_cycle();
  KnowledgeBase kb = cycle_kb();

  auto j = exists_smaller_model(i, kb);
  REQUIRE(j.has_value());
  CHECK(is_model(*j, kb));
  CHECK(compare(*j, i) == Comparison::StrictlySmaller);
  CHECK(eval_concept(*j, parse_concept("A")).empty());
  CHECK(j->roles.at("r") == std::set<std::pair<int, int>>{{0, 1}, {1, 0}});

  CHECK_FALSE(is_minimal(i, kb));
  CHECK(is_minimal(*j, kb));
}

TEST_CASE("the all-true cycle model is pointwise minimal but not minimal") {
  // dropping A at one element alone breaks the axiom at the other, so no
  // single-element repair exists even though the global drop succeeds
  Interpretation i = two_cycle();
  KnowledgeBase kb = cycle_kb();
  CHECK(is_pointwise_minimal(i, kb));
  CHECK_FALSE(is_minimal(i, kb));
}

TEST_CASE("ABox-forced facts are never dropped") {
  KnowledgeBase kb = parse_kb("A(a)\n");
  Interpretation i;
  i.domain = {"d"};
  i.individuals = {{"a", 0}};
  i.concepts["A"] = {0};
  CHECK_FALSE(exists_smaller_model(i, kb).has_value());
  CHECK(is_minimal(i, kb));
  CHECK(is_pointwise_minimal(i, kb));
}

TEST_CASE("facts demanded by an inclusion survive the drop search") {
  KnowledgeBase kb = parse_kb("A [= B\nA(a)\n");
  Interpretation i;
  i.domain = {"d"};
  i.individuals = {{"a", 0}};
  i.concepts["A"] = {0};
  i.concepts["B"] = {0};
  CHECK(is_minimal(i, kb));

  SECTION("a fact outside the axioms is dropped") {
    i.concepts["C"] = {0};
    auto j = exists_smaller_model(i, kb);
    REQUIRE(j.has_value());
    CHECK_FALSE(j->concepts.count("C"));
    CHECK(j->concepts.at("A") == std::set<int>{0});
    CHECK(j->concepts.at("B") == std::set<int>{0});
  }
}

TEST_CASE("drop-first order picks the lexicographically earliest repair") {
  KnowledgeBase kb = parse_kb("TOP [= (A or B)\n");
  Interpretation i;
  i.domain = {"d"};
  i.concepts["A"] = {0};
  i.concepts["B"] = {0};
  auto j = exists_smaller_model(i, kb);
  REQUIRE(j.has_value());
  // facts are ordered (A,0) < (B,0) and dropping is tried before keeping
  CHECK_FALSE(j->concepts.count("A"));
  CHECK(j->concepts.at("B") == std::set<int>{0});
}

TEST_CASE("value restrictions vanish with their source element") {
  KnowledgeBase kb = parse_kb("A [= forall r. B\n");
  Interpretation i;
  i.domain = {"x", "y"};
  i.concepts["A"] = {0};
  i.concepts["B"] = {1};
  i.roles["r"] = {{0, 1}};
  REQUIRE(is_model(i, kb));
  CHECK_FALSE(is_minimal(i, kb));
  // dropping A(x) and r(x,y) touches only element 0, so even the pointwise
  // check finds the repair
  CHECK_FALSE(is_pointwise_minimal(i, kb));
}

TEST_CASE("negative inclusions keep their minimal models incomparable") {
  KnowledgeBase kb = parse_kb("not A [= B\n");
  Interpretation all_a, all_b;
  all_a.domain = all_b.domain = {"d", "e"};
  all_a.concepts["A"] = {0, 1};
  all_b.concepts["B"] = {0, 1};
  CHECK(is_minimal(all_a, kb));
  CHECK(is_minimal(all_b, kb));

  auto models = enumerate_minimal_models(kb, 1, true);
  CHECK(models.size() == 2);
}

TEST_CASE("the smaller-model search requires a model") {
  KnowledgeBase kb = parse_kb("A [= B\n");
  Interpretation i;
  i.domain = {"d"};
  i.concepts["A"] = {0};
  CHECK_THROWS_WITH(exists_smaller_model(i, kb), "not a model");
  CHECK_THROWS_WITH(is_pointwise_minimal(i, kb), "not a model");
}

TEST_CASE("fact atoms are sorted and carry forced flags") {
  Interpretation i = two_cycle();
  KnowledgeBase kb = cycle_kb();
  auto atoms = fact_atoms(i, kb);
  REQUIRE(atoms.size() == 4);
  CHECK(atoms[0] == FactAtom{false, "A", 0, -1, false});
  CHECK(atoms[1] == FactAtom{false, "A", 1, -1, false});
  CHECK(atoms[2] == FactAtom{true, "r", 0, 1, true});
  CHECK(atoms[3] == FactAtom{true, "r", 1, 0, true});
}

TEST_CASE("enumeration folds symmetric anonymous successors together") {
  KnowledgeBase kb = parse_kb("A [= exists r. B\nA(a)\n");
  auto models = enumerate_minimal_models(kb, 3, true);
  // the witness is either the named element itself or one anonymous element;
  // the two anonymous choices are the same model up to renaming
  REQUIRE(models.size() == 2);
  for (const auto& m : models) {
    CHECK(is_model(m, kb));
    CHECK(is_minimal(m, kb));
  }
}

TEST_CASE("without unique names the individual map varies") {
  KnowledgeBase kb = parse_kb("A(a)\nB(b)\n");
  CHECK_THROWS_WITH(enumerate_minimal_models(kb, 1, true),
                    "domain size is smaller than the number of individuals");

  auto merged = enumerate_minimal_models(kb, 1, false);
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].individuals.at("a") == 0);
  CHECK(merged[0].individuals.at("b") == 0);

  // maps (0,1)/(1,0) collapse, as do (0,0)/(1,1)
  auto pair_domain = enumerate_minimal_models(kb, 2, false);
  CHECK(pair_domain.size() == 2);
}

TEST_CASE("the enumeration oracle rejects oversized instances") {
  KnowledgeBase kb = parse_kb("A [= exists r. B\n");
  CHECK_THROWS_WITH(enumerate_minimal_models(kb, 5, true), "oracle instance too large");
  CHECK_THROWS_WITH(enumerate_minimal_models(kb, 2, true, 3), "oracle instance too large");
  CHECK_THROWS_WITH(enumerate_minimal_models(kb, 0, true), "domain size must be at least 1");
}

TEST_CASE("minimality agrees with brute force on random knowledge bases") {
  testgen::Vocab alc{{"A", "B"}, {"r"}, {"a"}};
  testgen::Vocab el{{"A", "B", "C"}, {"r"}, {"a", "b"}};
  el.allow_alc = false;
  el.allow_inverse = false;
  el.allow_nominal = false;

  std::mt19937 rng(987654321);
  const int n = 2;
  for (int trial = 0; trial < 80; ++trial) {
    const testgen::Vocab& v = trial % 2 ? el : alc;
    std::uniform_int_distribution<int> nax(1, 2), nas(0, 2);
    KnowledgeBase kb = testgen::random_kb(v, nax(rng), nas(rng), 2, rng);
    INFO("trial " << trial << "\n" << render_kb(kb));

    BruteUniverse u = make_universe(kb, n);
    auto models = all_model_masks(kb, u);
    auto minimal = minimal_masks(models);

    // spot-check per-model verdicts against the brute reference
    for (size_t pick = 0; pick < models.size(); pick += std::max<size_t>(1, models.size() / 3)) {
      std::uint64_t m = models[pick];
      Interpretation i = realize(u, m);
      bool brute_min = std::find(minimal.begin(), minimal.end(), m) != minimal.end();
      auto witness = exists_smaller_model(i, kb);
      CHECK(witness.has_value() == !brute_min);
      if (witness) {
        CHECK(is_model(*witness, kb));
        CHECK(compare(*witness, i) == Comparison::StrictlySmaller);
      }
      CHECK(is_pointwise_minimal(i, kb) == brute_pointwise_minimal(u, models, m, n));
      if (brute_min) CHECK(is_pointwise_minimal(i, kb));  // minimal implies pointwise
    }

    // the enumeration oracle must produce exactly the minimal models, up to
    // renaming of anonymous elements
    auto oracle = enumerate_minimal_models(kb, n, true);
    for (const auto& o : oracle) {
      CHECK(is_model(o, kb));
      CHECK(is_minimal(o, kb));
    }
    for (size_t x = 0; x < oracle.size(); ++x)
      for (size_t y = x + 1; y < oracle.size(); ++y)
        CHECK_FALSE(isomorphic_fixing_individuals(oracle[x], oracle[y]));
    size_t covered = 0;
    for (std::uint64_t m : minimal) {
      Interpretation i = realize(u, m);
      bool found = false;
      for (const auto& o : oracle)
        if (isomorphic_fixing_individuals(i, o)) {
          found = true;
          break;
        }
      if (found) ++covered;
    }
    CHECK(covered == minimal.size());
  }
}
